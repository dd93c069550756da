#pragma once

#include <optional>
#include <string>
#include <utility>

#include "eqm/density.hpp"
#include "eqm/field.hpp"

namespace eqm {

struct SolverOptions {
    double tol = 1e-10;
    int max_iter = 100;
    int max_halvings = 30;
};

}  // namespace eqm

namespace eqm::onecut {

/// Endpoints are kept in the frame centred at `origin` (the global minimizer
/// of V); u1()/u2() give global coordinates.
struct OneCutSolution {
    double origin = 0.0;
    double local_u1 = 0.0;
    double local_u2 = 0.0;
    double lagrange_l = 0.0;
    bool converged = false;
    double residual_norm = 0.0;
    int iterations = 0;
    std::string message;

    double u1() const { return origin + local_u1; }
    double u2() const { return origin + local_u2; }
};

/// (F1, F2) in the local frame of `field`. Throws NegativeRadicand when
/// ∂Ψ0/∂u2 < 0 and InvalidInterval unless a2 < a1.
std::pair<double, double> residual(const LocalField& field, double a1, double a2);

/// Damped Newton solve; `guess` is in global coordinates. A non-converged
/// result carries the best iterate.
OneCutSolution solve_endpoints(const FieldSpec& field, std::optional<std::pair<double, double>> guess = std::nullopt,
                               const SolverOptions& opts = {});

/// ψ at global ξ (zero off the support).
double psi(const OneCutSolution& sol, const FieldSpec& field, double xi);

/// Chebyshev–Lobatto samples of ψ on [u2, u1]; also fills sol.lagrange_l.
DensityTable density(OneCutSolution& sol, const FieldSpec& field, int grid_n = 129);

}  // namespace eqm::onecut
