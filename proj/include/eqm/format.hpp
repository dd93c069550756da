#pragma once

#include <string>

namespace eqm {

/// Shortest decimal that round-trips, capped at 12 significant digits.
std::string format_number(double x);

}  // namespace eqm
