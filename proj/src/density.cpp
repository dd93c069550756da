#include "eqm/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace eqm {

std::vector<double> Band::sine_coefficients() const {
    const int n = static_cast<int>(psi.size());
    const int interior = n - 2;
    if (!chebyshev || interior < 1) return {};
    // Ascending storage: psi[i] sits at θ_j with j = n − 1 − i.
    std::vector<double> b(interior, 0.0);
    const double dth = std::numbers::pi / (n - 1);
    for (int k = 0; k < interior; ++k) {
        double s = 0.0;
        for (int j = 1; j <= interior; ++j) s += psi[n - 1 - j] * std::sin((k + 1) * j * dth);
        b[k] = 2.0 * s / (n - 1);
    }
    return b;
}

void Band::prepare() { coeffs = sine_coefficients(); }

double DensityTable::mass() const {
    double m = 0.0;
    for (const auto& band : bands) {
        if (band.chebyshev && band.psi.size() >= 3) {
            const auto b = band.coeffs.empty() ? band.sine_coefficients() : band.coeffs;
            m += 0.5 * (band.hi - band.lo) * 0.5 * std::numbers::pi * b[0];
        } else {
            for (std::size_t j = 0; j + 1 < band.x.size(); ++j)
                m += 0.5 * (band.psi[j] + band.psi[j + 1]) * (band.x[j + 1] - band.x[j]);
        }
    }
    return m;
}

double DensityTable::min_value() const {
    double v = std::numeric_limits<double>::infinity();
    for (const auto& band : bands)
        for (double p : band.psi) v = std::min(v, p);
    return v;
}

double DensityTable::max_value() const {
    double v = -std::numeric_limits<double>::infinity();
    for (const auto& band : bands)
        for (double p : band.psi) v = std::max(v, p);
    return v;
}

double DensityTable::evaluate(double x) const {
    for (const auto& band : bands) {
        if (x < band.lo || x > band.hi || band.x.empty()) continue;
        auto it = std::upper_bound(band.x.begin(), band.x.end(), x);
        if (it == band.x.begin()) return band.psi.front();
        if (it == band.x.end()) return band.psi.back();
        const std::size_t j = static_cast<std::size_t>(it - band.x.begin());
        const double xa = band.x[j - 1], xb = band.x[j];
        const double w = xb > xa ? (x - xa) / (xb - xa) : 0.0;
        return band.psi[j - 1] + w * (band.psi[j] - band.psi[j - 1]);
    }
    return 0.0;
}

DensityTable DensityTable::scaled(double factor) const {
    DensityTable out = *this;
    for (auto& band : out.bands) {
        for (double& p : band.psi) p *= factor;
        for (double& c : band.coeffs) c *= factor;
    }
    return out;
}

}  // namespace eqm
