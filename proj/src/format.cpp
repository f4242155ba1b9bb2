#include "costquery/format.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

namespace costquery {

std::string format_number(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  std::string out = ec == std::errc{} ? std::string(buf, end) : std::to_string(value);
  if (std::isfinite(value) && out.find_first_of(".e") == std::string::npos) out += ".0";
  return out;
}

}  // namespace costquery
