#include "eqm/format.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace eqm {

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0.0) return "0";
    char buf[64];
    int p = 1;
    for (; p < 12; ++p) {
        std::snprintf(buf, sizeof buf, "%.*g", p, x);
        if (std::strtod(buf, nullptr) == x) break;
    }
    // plain notation for integers like 10 or 1000 that %g would write as 1e+01
    const int e = static_cast<int>(std::floor(std::log10(std::abs(x))));
    if (e >= p && e < 12) p = e + 1;
    std::snprintf(buf, sizeof buf, "%.*g", p, x);
    return buf;
}

}  // namespace eqm
