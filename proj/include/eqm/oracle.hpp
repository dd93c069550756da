#pragma once

#include <memory>
#include <utility>
#include <vector>

#include <json.hpp>

#include "eqm/density.hpp"
#include "eqm/field.hpp"

namespace eqm::oracle {

/// Uniform grid of N cell centres on [a, b] with the cell-averaged kernel
/// K_ij = −(1/2π)·avg log|ξ−η| over cells i and j. K is symmetric Toeplitz
/// and is stored by its first column.
class DiscreteProblem {
public:
    DiscreteProblem(const FieldSpec& field, double a, double b, int n);

    int size() const { return static_cast<int>(grid_.size()); }
    double h() const { return h_; }
    const std::vector<double>& grid() const { return grid_; }
    const std::vector<double>& potential() const { return potential_; }
    double kernel(int i, int j) const { return column_[static_cast<std::size_t>(std::abs(i - j))]; }
    /// y = K·x by circulant embedding.
    std::vector<double> apply_kernel(const std::vector<double>& x) const;
    /// h²·ψᵀKψ + h·Vᵀψ.
    double energy(const std::vector<double>& psi) const;
    /// Variational gradient 2h·Kψ + V (the discrete V − Lψ).
    std::vector<double> gradient(const std::vector<double>& psi) const;
    void shift_potential(double c);

private:
    struct Fft;
    std::vector<double> grid_;
    std::vector<double> potential_;
    std::vector<double> column_;
    double h_ = 0.0;
    std::shared_ptr<Fft> fft_;
};

/// Cell-average of log|ξ−η| over two cells d apart, minus log h.
double cell_log_average(int d);

/// Euclidean projection onto {ψ ≥ 0, h·Σψ = 1}.
std::vector<double> project_simplex(const std::vector<double>& z, double h);

struct MinimizeResult {
    std::vector<double> psi;
    int iterations = 0;
    double residual = 0.0;
    bool converged = false;
};

/// Accelerated projected gradient (FISTA with adaptive restart). `step` ≤ 0
/// selects 1/Lipschitz from a power iteration.
MinimizeResult direct_minimize(const DiscreteProblem& problem, int iters, double step = 0.0, double tol = 1e-10);

struct Complementarity {
    double lambda = 0.0;
    double support_spread = 0.0;   // max |g_i − λ| where ψ_i > 1e−6
    double off_support_slack = 0.0;  // min (g_i − λ) where ψ_i = 0
    bool ok = false;
};

Complementarity complementarity(const DiscreteProblem& problem, const std::vector<double>& psi, double tol = 1e-3);

struct Metrics {
    double l1 = 0.0;
    int bands = 0;
    std::vector<std::pair<double, double>> edges;
    double edge_error = 0.0;
    double hausdorff = 0.0;
};

/// Bands of the grid density where ψ > threshold, as (lo, hi) grid abscissae.
std::vector<std::pair<double, double>> detect_bands(const DiscreteProblem& problem, const std::vector<double>& psi,
                                                    double threshold);

Metrics compare(const DiscreteProblem& problem, const DensityTable& constructed, const std::vector<double>& oracle,
                double threshold = 1e-4);
Metrics compare(const DiscreteProblem& problem, const std::vector<double>& a, const std::vector<double>& b,
                double threshold = 1e-4);

/// Constructed density interpolated onto the grid and rescaled to mass 1.
std::vector<double> sample_on_grid(const DiscreteProblem& problem, const DensityTable& density);

nlohmann::json to_json(const Metrics& m);

}  // namespace eqm::oracle
