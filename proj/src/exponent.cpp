#include "harmext/exponent.hpp"

#include <charconv>
#include <sstream>

namespace harmext {

Exponent Exponent::parse(const std::string &text) {
  if (text == "inf" || text == "Inf" || text == "infinity") {
    return infinity();
  }
  double p = 0.0;
  const char *first = text.data();
  const char *last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, p);
  if (ec != std::errc() || ptr != last) {
    throw InvalidInput("cannot parse exponent '" + text + "'");
  }
  return Exponent(p);
}

std::string Exponent::to_string() const {
  if (is_infinite()) {
    return "inf";
  }
  std::ostringstream os;
  os.precision(17);
  os << p_;
  return os.str();
}

} // namespace harmext
