#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "harmext/errors.hpp"

namespace harmext {

/// An L^p exponent in [1, inf]. Construction rejects p < 1 and NaN.
class Exponent {
public:
  explicit Exponent(double p) : p_(p) {
    if (std::isnan(p) || p < 1.0) {
      throw UnsupportedExponent("exponent must lie in [1, inf], got " +
                                std::to_string(p));
    }
  }

  static Exponent infinity() {
    return Exponent(std::numeric_limits<double>::infinity());
  }

  /// Accepts a decimal number or "inf".
  static Exponent parse(const std::string &text);

  double value() const noexcept { return p_; }
  bool is_infinite() const noexcept { return std::isinf(p_); }

  std::string to_string() const;

  friend bool operator==(Exponent a, Exponent b) noexcept {
    return a.p_ == b.p_;
  }

private:
  double p_;
};

} // namespace harmext
