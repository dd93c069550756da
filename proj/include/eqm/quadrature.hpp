#pragma once

#include <functional>
#include <vector>

#include "eqm/density.hpp"

namespace eqm::quad {

using RealFn = std::function<double(double)>;

enum class WeightKind { chebyshev_first_kind, jacobi, legendre, pv_chebyshev };

/// Nodes in [−1, 1] (strictly increasing) with positive weights.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    WeightKind kind = WeightKind::legendre;
    double alpha = 0.0;
    double beta = 0.0;

    std::size_t size() const { return nodes.size(); }
};

/// Weight 1/√(1−x²).
QuadratureRule chebyshev_first_kind(int m);
/// Weight (1−x)^α (1+x)^β, α, β > −1. Rules are cached and shared.
const QuadratureRule& gauss_jacobi(int m, double alpha, double beta);
const QuadratureRule& gauss_legendre(int m);

inline constexpr int kDefaultNodes = 64;
inline constexpr int kMaxNodes = 4096;

/// ∫_{u2}^{u1} f(μ) / √((u1−μ)(μ−u2)) dμ with an m-point Gauss–Chebyshev rule.
double band_integral(const RealFn& f, double u1, double u2, int m);
/// Same, doubling m from 64 until successive values agree to `rel_tol`.
double band_integral(const RealFn& f, double u1, double u2, double rel_tol = 1e-12);

/// ∫_{u2}^{u1} f(μ) / √((u1²−μ²)(μ²−u2²)) dμ for 0 < u2 < u1.
double symmetric_band_integral(const RealFn& f, double u1, double u2, int m = kDefaultNodes);

/// PV ∫_{u2}^{u1} f(μ) / ((ξ−μ)√((u1−μ)(μ−u2))) dμ.
double pv_band_integral(const RealFn& f, double u1, double u2, double xi, int m = kDefaultNodes);

/// (1/π) ∫ log|x−μ| ψ(μ) dμ, x in the density's local frame.
double log_kernel_integral(const DensityTable& density, double x);

/// ∫_a^b f on a finite interval with an m-point Gauss–Legendre rule.
double legendre_integral(const RealFn& f, double a, double b, int m);

}  // namespace eqm::quad
