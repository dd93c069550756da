#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "eqm/density.hpp"
#include "eqm/field.hpp"
#include "eqm/onecut.hpp"
#include "eqm/verify.hpp"

namespace eqm::pipeline {

enum class Ansatz { automatic, onecut, twocut_sym };

Ansatz parse_ansatz(const std::string& s);
std::string ansatz_name(Ansatz a);

struct SolveResult {
    Ansatz ansatz = Ansatz::onecut;
    /// Global support endpoints, descending.
    std::vector<double> endpoints;
    /// Same endpoints in the local frame of `density` (extended precision
    /// when available).
    std::vector<long double> local_endpoints;
    double lagrange_l = 0.0;
    double residual_norm = 0.0;
    int iterations = 0;
    std::vector<double> hodograph;
    double q_max = 0.0;
    DensityTable density;
    verify::VariationalReport report;
    bool verified = false;

    int gaps() const { return static_cast<int>(endpoints.size()) / 2 - 1; }
};

/// Solves with one ansatz. Throws NoConvergence, NegativeDensity, NotEven.
SolveResult solve_with(const FieldSpec& field, Ansatz ansatz, const SolverOptions& opts = {}, int grid_n = 129);

/// `automatic` tries one-cut, then the symmetric two-cut for even fields when
/// the one-cut attempt fails to solve or to verify.
SolveResult solve(const FieldSpec& field, Ansatz ansatz = Ansatz::automatic, const SolverOptions& opts = {},
                  int grid_n = 129);

/// Q-polynomial coefficients at the solved endpoints, optionally with one
/// global endpoint scaled by (1 + perturb) (mirrored for the
/// symmetric two-cut).
std::vector<double> q_coefficients(const SolveResult& r, const FieldSpec& field, std::size_t index = 0,
                                   double perturb = 0.0);

nlohmann::json report_json(const SolveResult& r);

}  // namespace eqm::pipeline
