#include "harmext/report.hpp"

#include <charconv>
#include <cmath>

namespace harmext {

nlohmann::json json_number(double x) {
  if (std::isnan(x)) {
    return "nan";
  }
  if (std::isinf(x)) {
    return x > 0 ? "inf" : "-inf";
  }
  return x;
}

std::string format_number(double x) {
  if (std::isnan(x)) {
    return "nan";
  }
  if (std::isinf(x)) {
    return x > 0 ? "inf" : "-inf";
  }
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

nlohmann::json numbers(const std::vector<double> &xs) {
  auto out = nlohmann::json::array();
  for (double x : xs) {
    out.push_back(json_number(x));
  }
  return out;
}

} // namespace

nlohmann::json to_json(const NormReport &rep) {
  nlohmann::json j;
  j["kind"] = to_string(rep.kind);
  j["p"] = rep.p.to_string();
  j["value"] = rep.infinite ? nlohmann::json("inf") : json_number(rep.value);
  j["last_finite_value"] = json_number(rep.value);
  j["error_estimate"] = json_number(rep.error_estimate);
  j["infinite"] = rep.infinite;
  if (rep.radius) {
    j["radius"] = *rep.radius;
  }
  if (rep.extrapolated) {
    j["extrapolated"] = json_number(*rep.extrapolated);
  }
  j["monotone_certified"] = rep.monotone_certified;
  j["trend"] = numbers(rep.trend);
  if (rep.inner_integral) {
    j["inner_integral"] = json_number(*rep.inner_integral);
  }
  if (rep.outer_integral) {
    j["outer_integral"] = json_number(*rep.outer_integral);
  }
  j["degraded"] = rep.degraded;
  j["grid"] = {{"radial_nodes", rep.grid.radial_nodes},
               {"angular_nodes", rep.grid.angular_nodes},
               {"levels", rep.grid.levels}};
  if (!rep.note.empty()) {
    j["note"] = rep.note;
  }
  return j;
}

nlohmann::json to_json(const EllipticityReport &rep) {
  nlohmann::json j;
  j["K"] = rep.K;
  j["kprime_estimate"] = json_number(rep.kprime_estimate);
  j["kprime_extrapolated"] = json_number(rep.kprime_extrapolated);
  j["kprime_trend"] = numbers(rep.kprime_trend);
  j["qr_constant"] = json_number(rep.qr_constant);
  j["qr_trend"] = numbers(rep.qr_trend);
  j["qr_trends_to_one"] = rep.qr_trends_to_one;
  j["undefined_points"] = rep.undefined_points;
  j["sense"] = to_string(rep.sense);
  j["points"] = rep.points;
  j["grid"] = {{"levels", rep.grid.levels},
               {"base_angular", rep.grid.base_angular}};
  j["degraded"] = rep.degraded;
  if (!rep.classification.empty()) {
    j["classification"] = rep.classification;
  }
  if (rep.qr_K) {
    j["qr_K"] = json_number(*rep.qr_K);
  }
  if (!rep.kprime_scan.empty()) {
    auto scan = nlohmann::json::array();
    for (const auto &[K, kp] : rep.kprime_scan) {
      scan.push_back({{"K", K}, {"kprime", json_number(kp)}});
    }
    j["kprime_scan"] = scan;
  }
  return j;
}

nlohmann::json to_json(const ConstantReport &rep) {
  return {{"p", rep.p},
          {"C", json_number(rep.c_value)},
          {"upper_bound", json_number(rep.upper_bound)},
          {"margin", json_number(rep.margin())},
          {"quadrature_error", json_number(rep.quadrature_error)}};
}

} // namespace harmext
