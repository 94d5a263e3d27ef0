#pragma once

#include <string>

#include "json.hpp"

#include "harmext/constants.hpp"
#include "harmext/ellipticity.hpp"
#include "harmext/norm_report.hpp"

namespace harmext {

/// JSON has no infinities or NaN: they are written as the strings "inf",
/// "-inf" and "nan".
nlohmann::json json_number(double x);

nlohmann::json to_json(const NormReport &rep);
nlohmann::json to_json(const EllipticityReport &rep);
nlohmann::json to_json(const ConstantReport &rep);

/// Shortest round-trip decimal form, "inf"/"nan" for non-finite values.
std::string format_number(double x);

} // namespace harmext
