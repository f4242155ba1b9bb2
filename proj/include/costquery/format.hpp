#pragma once

#include <string>

namespace costquery {

/// Shortest round-trip decimal form; integral values keep a trailing ".0".
std::string format_number(double value);

}  // namespace costquery
