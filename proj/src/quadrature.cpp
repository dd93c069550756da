#include "eqm/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <tuple>

#include <Eigen/Eigenvalues>

#include "eqm/errors.hpp"

namespace eqm::quad {

namespace {

constexpr double pi = std::numbers::pi;

struct Recurrence {
    std::vector<double> a;      // diagonal
    std::vector<double> sqrtb;  // sqrtb[k] couples p_{k-1} and p_k, k >= 1
    double mu0 = 0.0;
};

Recurrence jacobi_recurrence(int m, double al, double be) {
    Recurrence r;
    r.a.resize(m);
    r.sqrtb.assign(m + 1, 0.0);
    const double ab = al + be;
    for (int k = 0; k < m; ++k) {
        if (k == 0)
            r.a[0] = (be - al) / (ab + 2.0);
        else
            r.a[k] = (be * be - al * al) / ((2 * k + ab) * (2 * k + ab + 2.0));
    }
    for (int k = 1; k <= m; ++k) {
        double b;
        if (k == 1) {
            b = 4.0 * (1 + al) * (1 + be) / ((2 + ab) * (2 + ab) * (3 + ab));
        } else {
            const double s = 2 * k + ab;
            b = 4.0 * k * (k + al) * (k + be) * (k + ab) / (s * s * (s + 1) * (s - 1));
        }
        r.sqrtb[k] = std::sqrt(b);
    }
    r.mu0 = std::exp((ab + 1) * std::log(2.0) + std::lgamma(al + 1) + std::lgamma(be + 1) -
                     std::lgamma(ab + 2));
    return r;
}

// Orthonormal polynomial values p_0..p_{m} and derivative of p_m at x.
void orthonormal(const Recurrence& r, int m, double x, std::vector<double>& p, double& dpm) {
    p.assign(m + 1, 0.0);
    std::vector<double> dp(m + 1, 0.0);
    p[0] = 1.0 / std::sqrt(r.mu0);
    for (int k = 0; k < m; ++k) {
        const double prev = k > 0 ? p[k - 1] : 0.0;
        const double dprev = k > 0 ? dp[k - 1] : 0.0;
        const double bk = k > 0 ? r.sqrtb[k] : 0.0;
        p[k + 1] = ((x - r.a[k]) * p[k] - bk * prev) / r.sqrtb[k + 1];
        dp[k + 1] = (p[k] + (x - r.a[k]) * dp[k] - bk * dprev) / r.sqrtb[k + 1];
    }
    dpm = dp[m];
}

QuadratureRule build_jacobi(int m, double al, double be) {
    const Recurrence r = jacobi_recurrence(m, al, be);
    Eigen::VectorXd diag(m), sub(std::max(m - 1, 0));
    for (int k = 0; k < m; ++k) diag[k] = r.a[k];
    for (int k = 1; k < m; ++k) sub[k - 1] = r.sqrtb[k];
    QuadratureRule rule;
    rule.kind = (al == 0.0 && be == 0.0) ? WeightKind::legendre : WeightKind::jacobi;
    rule.alpha = al;
    rule.beta = be;
    rule.nodes.resize(m);
    rule.weights.resize(m);
    if (m == 1) {
        rule.nodes[0] = r.a[0];
        rule.weights[0] = r.mu0;
        return rule;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    std::vector<double> p;
    for (int j = 0; j < m; ++j) {
        double x = es.eigenvalues()[j];
        for (int it = 0; it < 3; ++it) {
            double dpm;
            orthonormal(r, m, x, p, dpm);
            if (dpm == 0.0) break;
            const double dx = p[m] / dpm;
            if (std::abs(dx) > 1e-6) break;
            x -= dx;
        }
        double dpm;
        orthonormal(r, m, x, p, dpm);
        double s = 0.0;
        for (int k = 0; k < m; ++k) s += p[k] * p[k];
        rule.nodes[j] = x;
        rule.weights[j] = 1.0 / s;
    }
    return rule;
}

}  // namespace

QuadratureRule chebyshev_first_kind(int m) {
    if (m < 1) throw DomainError("rule size must be positive");
    QuadratureRule rule;
    rule.kind = WeightKind::chebyshev_first_kind;
    rule.alpha = rule.beta = -0.5;
    rule.nodes.resize(m);
    rule.weights.assign(m, pi / m);
    for (int j = 0; j < m; ++j) rule.nodes[j] = -std::cos((2.0 * j + 1.0) * pi / (2.0 * m));
    return rule;
}

const QuadratureRule& gauss_jacobi(int m, double alpha, double beta) {
    if (m < 1) throw DomainError("rule size must be positive");
    if (!(alpha > -1.0) || !(beta > -1.0)) throw DomainError("Jacobi parameters must exceed -1");
    static std::mutex mutex;
    static std::map<std::tuple<int, double, double>, std::unique_ptr<QuadratureRule>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[{m, alpha, beta}];
    if (!slot) slot = std::make_unique<QuadratureRule>(build_jacobi(m, alpha, beta));
    return *slot;
}

const QuadratureRule& gauss_legendre(int m) { return gauss_jacobi(m, 0.0, 0.0); }

double band_integral(const RealFn& f, double u1, double u2, int m) {
    if (!(u2 < u1)) throw InvalidInterval("band requires u2 < u1");
    if (m < 1) throw DomainError("rule size must be positive");
    const double c = 0.5 * (u1 + u2), h = 0.5 * (u1 - u2);
    double s = 0.0;
    for (int j = 0; j < m; ++j) s += f(c + h * std::cos((2.0 * j + 1.0) * pi / (2.0 * m)));
    return s * pi / m;
}

double band_integral(const RealFn& f, double u1, double u2, double rel_tol) {
    int m = kDefaultNodes;
    double prev = band_integral(f, u1, u2, m);
    while (m < kMaxNodes) {
        m *= 2;
        const double cur = band_integral(f, u1, u2, m);
        if (std::abs(cur - prev) <= rel_tol * std::max(1.0, std::abs(cur))) return cur;
        prev = cur;
    }
    return prev;
}

double symmetric_band_integral(const RealFn& f, double u1, double u2, int m) {
    if (!(0.0 < u2 && u2 < u1)) throw InvalidInterval("symmetric band requires 0 < u2 < u1");
    return band_integral(
        [&f](double s) {
            const double r = std::sqrt(s);
            return f(r) / (2.0 * r);
        },
        u1 * u1, u2 * u2, m);
}

double pv_band_integral(const RealFn& f, double u1, double u2, double xi, int m) {
    if (!(u2 < u1)) throw InvalidInterval("band requires u2 < u1");
    const double w = u1 - u2;
    if (std::abs(xi - u1) <= 1e-12 * w || std::abs(xi - u2) <= 1e-12 * w)
        throw SingularPoint("principal value evaluated at a band endpoint");
    if (xi > u1 || xi < u2) return band_integral([&](double mu) { return f(mu) / (xi - mu); }, u1, u2, m);
    const double c = 0.5 * (u1 + u2), h = 0.5 * w;
    // Avoid a node landing on ξ, where the difference quotient is 0/0.
    auto hits = [&](int mm) {
        for (int j = 0; j < mm; ++j)
            if (std::abs(c + h * std::cos((2.0 * j + 1.0) * pi / (2.0 * mm)) - xi) < 1e-9 * h) return true;
        return false;
    };
    while (hits(m)) ++m;
    const double fx = f(xi);
    return band_integral([&](double mu) { return (f(mu) - fx) / (xi - mu); }, u1, u2, m);
}

double legendre_integral(const RealFn& f, double a, double b, int m) {
    const auto& rule = gauss_legendre(m);
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t j = 0; j < rule.size(); ++j) s += rule.weights[j] * f(c + h * rule.nodes[j]);
    return s * h;
}

namespace {

// ∫ log|x0 − x| T_k(x)/√(1−x²) dx over [−1, 1].
void log_chebyshev_moments(double x0, int kmax, std::vector<double>& out) {
    out.assign(kmax + 1, 0.0);
    if (std::abs(x0) <= 1.0) {
        out[0] = -pi * std::log(2.0);
        const double th = std::acos(std::clamp(x0, -1.0, 1.0));
        for (int k = 1; k <= kmax; ++k) out[k] = -(pi / k) * std::cos(k * th);
    } else {
        const double ax = std::abs(x0);
        const double rho = ax + std::sqrt(ax * ax - 1.0);
        out[0] = pi * std::log(rho / 2.0);
        const double sg = x0 > 0 ? 1.0 : -1.0;
        double pw = 1.0;
        for (int k = 1; k <= kmax; ++k) {
            pw *= sg / rho;
            out[k] = -(pi / k) * pw;
            if (std::abs(pw) < 1e-300) break;
        }
    }
}

double spectral_log_band(const Band& band, double x) {
    const auto b = band.coeffs.empty() ? band.sine_coefficients() : band.coeffs;
    const double c = 0.5 * (band.hi + band.lo), h = 0.5 * (band.hi - band.lo);
    const int n = static_cast<int>(b.size());
    std::vector<double> I;
    log_chebyshev_moments((x - c) / h, n + 1, I);
    double s = std::log(h) * 0.5 * pi * (n > 0 ? b[0] : 0.0);
    for (int k = 0; k < n; ++k) s += b[k] * 0.5 * (I[k] - I[k + 2]);
    return h * s;
}

// ∫ log|s| ds and ∫ s log|s| ds antiderivatives.
double A0(double s) { return s == 0.0 ? 0.0 : s * std::log(std::abs(s)) - s; }
double A1(double s) { return s == 0.0 ? 0.0 : 0.5 * s * s * std::log(std::abs(s)) - 0.25 * s * s; }

double linear_log_band(const Band& band, double x) {
    double total = 0.0;
    for (std::size_t j = 0; j + 1 < band.x.size(); ++j) {
        const double xa = band.x[j], xb = band.x[j + 1];
        if (xb <= xa) continue;
        const double pa = band.psi[j], pb = band.psi[j + 1];
        const double slope = (pb - pa) / (xb - xa);
        // ψ(μ) = pa + slope·(μ − xa) = (pa + slope·(x − xa)) + slope·s, s = μ − x.
        const double sa = xa - x, sb = xb - x;
        const double c0 = pa + slope * (x - xa);
        total += c0 * (A0(sb) - A0(sa)) + slope * (A1(sb) - A1(sa));
    }
    return total;
}

}  // namespace

double log_kernel_integral(const DensityTable& density, double x) {
    double s = 0.0;
    for (const auto& band : density.bands)
        s += band.chebyshev ? spectral_log_band(band, x) : linear_log_band(band, x);
    return s / pi;
}

}  // namespace eqm::quad
