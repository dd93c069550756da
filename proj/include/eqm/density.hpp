#pragma once

#include <vector>

namespace eqm {

/// Samples of ψ on one support interval, ascending in x. When `chebyshev` is
/// set the abscissae are x_j = mid + half·cos(jπ/(n−1)) (endpoints included,
/// where ψ vanishes), which enables the spectral log-potential evaluator.
struct Band {
    double lo = 0.0;
    double hi = 0.0;
    std::vector<double> x;
    std::vector<double> psi;
    bool chebyshev = false;
    std::vector<double> coeffs;

    /// Fills `coeffs` from the samples (Chebyshev bands only).
    void prepare();

    /// Coefficients b_k of ψ(mid + half·cosθ) = Σ b_k sin((k+1)θ).
    std::vector<double> sine_coefficients() const;
};

/// Equilibrium density sampled on its support. Abscissae are expressed in the
/// local frame of the field used to build it; `origin` recovers global ξ.
/// `lagrange_l` is also local: Lψ − (V − V(origin)) on the support.
struct DensityTable {
    double origin = 0.0;
    std::vector<Band> bands;
    double lagrange_l = 0.0;

    double mass() const;
    double min_value() const;
    double max_value() const;
    /// Piecewise-linear interpolation in the local frame; zero off support.
    double evaluate(double x) const;
    DensityTable scaled(double factor) const;
};

}  // namespace eqm
