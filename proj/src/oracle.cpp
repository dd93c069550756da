#include "eqm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <mutex>
#include <numbers>

#include <fftw3.h>

#include "eqm/errors.hpp"

namespace eqm::oracle {

namespace {

constexpr double pi = std::numbers::pi;

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

// Distance from x to a union of closed intervals.
double distance_to(const std::vector<std::pair<double, double>>& set, double x) {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& [lo, hi] : set) d = std::min(d, x < lo ? lo - x : (x > hi ? x - hi : 0.0));
    return d;
}

double directed_hausdorff(const std::vector<std::pair<double, double>>& A, const std::vector<std::pair<double, double>>& B) {
    double h = 0.0;
    for (const auto& [lo, hi] : A) {
        std::vector<double> cand{lo, hi};
        for (std::size_t k = 0; k + 1 < B.size(); ++k) {
            const double m = 0.5 * (B[k].second + B[k + 1].first);
            if (m > lo && m < hi) cand.push_back(m);
        }
        for (double x : cand) h = std::max(h, distance_to(B, x));
    }
    return h;
}

double hausdorff(const std::vector<std::pair<double, double>>& A, const std::vector<std::pair<double, double>>& B) {
    if (A.empty() || B.empty()) return A.empty() && B.empty() ? 0.0 : std::numeric_limits<double>::infinity();
    return std::max(directed_hausdorff(A, B), directed_hausdorff(B, A));
}

}  // namespace

struct DiscreteProblem::Fft {
    int n = 0, m = 0;
    std::vector<std::complex<double>> symbol;
    double* in = nullptr;
    fftw_complex* out = nullptr;
    fftw_plan forward = nullptr, backward = nullptr;

    Fft(const std::vector<double>& column) : n(static_cast<int>(column.size())) {
        m = 1;
        while (m < 2 * n) m <<= 1;
        std::lock_guard<std::mutex> lock(planner_mutex());
        in = fftw_alloc_real(static_cast<std::size_t>(m));
        out = fftw_alloc_complex(static_cast<std::size_t>(m / 2 + 1));
        forward = fftw_plan_dft_r2c_1d(m, in, out, FFTW_ESTIMATE);
        backward = fftw_plan_dft_c2r_1d(m, out, in, FFTW_ESTIMATE);
        std::fill(in, in + m, 0.0);
        for (int i = 0; i < n; ++i) in[i] = column[static_cast<std::size_t>(i)];
        for (int i = 1; i < n; ++i) in[m - i] = column[static_cast<std::size_t>(i)];
        fftw_execute(forward);
        symbol.resize(static_cast<std::size_t>(m / 2 + 1));
        for (int k = 0; k <= m / 2; ++k) symbol[static_cast<std::size_t>(k)] = {out[k][0], out[k][1]};
    }
    ~Fft() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(forward);
        fftw_destroy_plan(backward);
        fftw_free(in);
        fftw_free(out);
    }
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    // Buffers are per instance, so concurrent calls on one problem serialize.
    std::vector<double> apply(const std::vector<double>& x) {
        std::lock_guard<std::mutex> lock(mutex);
        std::fill(in, in + m, 0.0);
        std::copy(x.begin(), x.end(), in);
        fftw_execute_dft_r2c(forward, in, out);
        for (int k = 0; k <= m / 2; ++k) {
            const std::complex<double> v(out[k][0], out[k][1]);
            const auto w = v * symbol[static_cast<std::size_t>(k)];
            out[k][0] = w.real();
            out[k][1] = w.imag();
        }
        fftw_execute_dft_c2r(backward, out, in);
        std::vector<double> y(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] = in[i] / m;
        return y;
    }
    std::mutex mutex;
};

double cell_log_average(int d) {
    d = std::abs(d);
    if (d == 0) return -1.5;
    if (d == 1) return 2.0 * std::log(2.0) - 1.5;
    // ½[(d+1)²log(d+1) − 2d²log d + (d−1)²log(d−1)] − 3/2, log d terms collected
    const long double D = d;
    const long double s =
        (D + 1) * (D + 1) * std::log1p(1.0L / D) + (D - 1) * (D - 1) * std::log1p(-1.0L / D);
    return static_cast<double>(std::log(D) + 0.5L * s - 1.5L);
}

DiscreteProblem::DiscreteProblem(const FieldSpec& field, double a, double b, int n) {
    if (!(a < b)) throw InvalidInterval("oracle interval must satisfy a < b");
    if (n < 2) throw DomainError("oracle grid needs at least 2 points");
    h_ = (b - a) / n;
    grid_.resize(static_cast<std::size_t>(n));
    potential_.resize(static_cast<std::size_t>(n));
    column_.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        grid_[static_cast<std::size_t>(i)] = a + (i + 0.5) * h_;
        potential_[static_cast<std::size_t>(i)] = field.value(grid_[static_cast<std::size_t>(i)]);
        column_[static_cast<std::size_t>(i)] = -(std::log(h_) + cell_log_average(i)) / (2.0 * pi);
    }
    fft_ = std::make_shared<Fft>(column_);
}

std::vector<double> DiscreteProblem::apply_kernel(const std::vector<double>& x) const {
    if (x.size() != grid_.size()) throw DomainError("vector size does not match the grid");
    return fft_->apply(x);
}

double DiscreteProblem::energy(const std::vector<double>& psi) const {
    const auto k = apply_kernel(psi);
    double e = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) e += h_ * h_ * psi[i] * k[i] + h_ * potential_[i] * psi[i];
    return e;
}

std::vector<double> DiscreteProblem::gradient(const std::vector<double>& psi) const {
    auto g = apply_kernel(psi);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = 2.0 * h_ * g[i] + potential_[i];
    return g;
}

void DiscreteProblem::shift_potential(double c) {
    for (double& v : potential_) v += c;
}

std::vector<double> project_simplex(const std::vector<double>& z, double h) {
    const double target = 1.0 / h;
    std::vector<double> s(z);
    std::sort(s.begin(), s.end(), std::greater<>());
    double cum = 0.0, theta = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        cum += s[k];
        const double t = (cum - target) / static_cast<double>(k + 1);
        if (k + 1 == s.size() || s[k + 1] <= t) {
            theta = t;
            break;
        }
    }
    std::vector<double> out(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) out[i] = std::max(0.0, z[i] - theta);
    return out;
}

MinimizeResult direct_minimize(const DiscreteProblem& problem, int iters, double step, double tol) {
    const int n = problem.size();
    const double h = problem.h();
    if (step <= 0.0) {
        // Largest eigenvalue of 2h·K on mass-free vectors.
        std::vector<double> v(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = std::sin(0.7 * i + 0.3) + 0.1 * std::cos(2.9 * i);
        double lam = 0.0;
        for (int it = 0; it < 100; ++it) {
            double mean = 0.0;
            for (double x : v) mean += x;
            mean /= n;
            double nv = 0.0;
            for (double& x : v) {
                x -= mean;
                nv += x * x;
            }
            nv = std::sqrt(nv);
            for (double& x : v) x /= nv;
            auto w = problem.apply_kernel(v);
            lam = 0.0;
            for (int i = 0; i < n; ++i) lam += 2.0 * h * w[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)];
            for (auto& x : w) x *= 2.0 * h;
            v = std::move(w);
        }
        step = 1.0 / (1.05 * std::abs(lam));
    }
    std::vector<double> x(static_cast<std::size_t>(n), 1.0 / (h * n));
    std::vector<double> y = x, xprev = x;
    double tk = 1.0;
    MinimizeResult res;
    for (int it = 1; it <= iters; ++it) {
        const auto g = problem.gradient(y);
        std::vector<double> z(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) z[static_cast<std::size_t>(i)] = y[static_cast<std::size_t>(i)] - step * g[static_cast<std::size_t>(i)];
        xprev = x;
        x = project_simplex(z, h);
        double diff = 0.0, restart = 0.0;
        for (int i = 0; i < n; ++i) {
            const std::size_t k = static_cast<std::size_t>(i);
            diff = std::max(diff, std::abs(x[k] - y[k]));
            restart += (y[k] - x[k]) * (x[k] - xprev[k]);
        }
        res.iterations = it;
        res.residual = diff;
        if (diff < tol) {
            res.converged = true;
            break;
        }
        if (restart > 0.0) {
            tk = 1.0;
            y = x;
            continue;
        }
        const double tn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * tk * tk));
        const double beta = (tk - 1.0) / tn;
        for (int i = 0; i < n; ++i) {
            const std::size_t k = static_cast<std::size_t>(i);
            y[k] = x[k] + beta * (x[k] - xprev[k]);
        }
        tk = tn;
    }
    res.psi = std::move(x);
    return res;
}

Complementarity complementarity(const DiscreteProblem& problem, const std::vector<double>& psi, double tol) {
    const auto g = problem.gradient(psi);
    Complementarity c;
    double sum = 0.0;
    int count = 0;
    for (std::size_t i = 0; i < psi.size(); ++i)
        if (psi[i] > 1e-6) {
            sum += g[i];
            ++count;
        }
    if (count == 0) return c;
    c.lambda = sum / count;
    c.off_support_slack = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < psi.size(); ++i) {
        if (psi[i] > 1e-6)
            c.support_spread = std::max(c.support_spread, std::abs(g[i] - c.lambda));
        else if (psi[i] == 0.0)
            c.off_support_slack = std::min(c.off_support_slack, g[i] - c.lambda);
    }
    c.ok = c.support_spread < tol && c.off_support_slack >= -tol;
    return c;
}

std::vector<std::pair<double, double>> detect_bands(const DiscreteProblem& problem, const std::vector<double>& psi,
                                                    double threshold) {
    std::vector<std::pair<double, double>> bands;
    const auto& x = problem.grid();
    std::size_t i = 0;
    while (i < psi.size()) {
        if (psi[i] > threshold) {
            std::size_t j = i;
            while (j + 1 < psi.size() && psi[j + 1] > threshold) ++j;
            bands.emplace_back(x[i], x[j]);
            i = j + 1;
        } else {
            ++i;
        }
    }
    return bands;
}

std::vector<double> sample_on_grid(const DiscreteProblem& problem, const DensityTable& density) {
    std::vector<double> out(problem.grid().size());
    double mass = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = std::max(0.0, density.evaluate(problem.grid()[i] - density.origin));
        mass += problem.h() * out[i];
    }
    if (mass > 0.0)
        for (double& v : out) v /= mass;
    return out;
}

Metrics compare(const DiscreteProblem& problem, const DensityTable& constructed, const std::vector<double>& oracle,
                double threshold) {
    Metrics m;
    for (std::size_t i = 0; i < oracle.size(); ++i)
        m.l1 += problem.h() * std::abs(constructed.evaluate(problem.grid()[i] - constructed.origin) - oracle[i]);
    m.edges = detect_bands(problem, oracle, threshold);
    m.bands = static_cast<int>(m.edges.size());
    std::vector<std::pair<double, double>> truth;
    for (const auto& b : constructed.bands) truth.emplace_back(constructed.origin + b.lo, constructed.origin + b.hi);
    if (truth.size() == m.edges.size()) {
        for (std::size_t k = 0; k < truth.size(); ++k)
            m.edge_error = std::max({m.edge_error, std::abs(truth[k].first - m.edges[k].first),
                                     std::abs(truth[k].second - m.edges[k].second)});
    } else {
        m.edge_error = std::numeric_limits<double>::infinity();
    }
    m.hausdorff = hausdorff(m.edges, truth);
    return m;
}

Metrics compare(const DiscreteProblem& problem, const std::vector<double>& a, const std::vector<double>& b,
                double threshold) {
    Metrics m;
    for (std::size_t i = 0; i < a.size(); ++i) m.l1 += problem.h() * std::abs(a[i] - b[i]);
    m.edges = detect_bands(problem, b, threshold);
    m.bands = static_cast<int>(m.edges.size());
    const auto ea = detect_bands(problem, a, threshold);
    if (ea.size() == m.edges.size()) {
        for (std::size_t k = 0; k < ea.size(); ++k)
            m.edge_error = std::max({m.edge_error, std::abs(ea[k].first - m.edges[k].first),
                                     std::abs(ea[k].second - m.edges[k].second)});
    } else {
        m.edge_error = std::numeric_limits<double>::infinity();
    }
    m.hausdorff = hausdorff(ea, m.edges);
    return m;
}

nlohmann::json to_json(const Metrics& m) {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& [lo, hi] : m.edges) edges.push_back({lo, hi});
    return {{"l1", m.l1}, {"bands", m.bands}, {"edges", edges}, {"edge_error", m.edge_error}, {"hausdorff", m.hausdorff}};
}

}  // namespace eqm::oracle
