#pragma once

#include <optional>
#include <string>
#include <utility>

#include "eqm/density.hpp"
#include "eqm/field.hpp"
#include "eqm/onecut.hpp"

namespace eqm::twocut {

/// Support [−u1, −u2] ∪ [u2, u1] of an even field.
struct TwoCutSolution {
    double u1 = 0.0;
    double u2 = 0.0;
    /// Endpoints refined in extended precision (polynomial fields); equal to
    /// u1, u2 otherwise.
    long double u1_ext = 0.0L;
    long double u2_ext = 0.0L;
    double lagrange_l = 0.0;
    bool converged = false;
    double residual_norm = 0.0;
    int iterations = 0;
    std::string message;
};

/// (F1, F2) for the symmetric two-cut equations. Throws NegativeRadicand when
/// ∂Ψ1/∂u2 < 0 and InvalidInterval unless 0 < u2 < u1.
std::pair<double, double> residual(const LocalField& field, double u1, double u2);

TwoCutSolution solve_endpoints_symmetric(const FieldSpec& field,
                                         std::optional<std::pair<double, double>> guess = std::nullopt,
                                         const SolverOptions& opts = {});

/// ψ at ξ (zero off the support).
double psi(const TwoCutSolution& sol, const FieldSpec& field, double xi);

/// Two mirrored Chebyshev–Lobatto bands; also fills sol.lagrange_l.
DensityTable density_symmetric(TwoCutSolution& sol, const FieldSpec& field, int grid_n = 129);

}  // namespace eqm::twocut
