#include "eqm/epd.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <numbers>

#include "eqm/errors.hpp"
#include "eqm/quadrature.hpp"

namespace eqm::epd {

namespace {

constexpr double pi = std::numbers::pi;
constexpr int kMaxPoints = 6;

double factorial(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

// One stick-breaking dimension: s = (1+μ)/2 with normalized Beta weights.
struct Dim {
    std::vector<double> s, w;
    double raw_mass = 0.0;
};

Dim make_dim(int m, double alpha_k, double prefix) {
    const auto& rule = quad::gauss_jacobi(m, alpha_k - 1.0, prefix - 1.0);
    Dim d;
    d.s.resize(rule.size());
    d.w.resize(rule.size());
    for (double w : rule.weights) d.raw_mass += w;
    for (std::size_t j = 0; j < rule.size(); ++j) {
        d.s[j] = 0.5 * (1.0 + rule.nodes[j]);
        d.w[j] = rule.weights[j] / d.raw_mass;
    }
    return d;
}

template <class F>
double nest(const F& f, const std::array<Dim, kMaxPoints>& dims, const double* x, int k, int last, double y) {
    if (k > last) return f(y);
    const Dim& d = dims[static_cast<std::size_t>(k)];
    double acc = 0.0;
    for (std::size_t j = 0; j < d.s.size(); ++j) {
        const double s = d.s[j];
        acc += d.w[j] * nest(f, dims, x, k + 1, last, s * y + (1.0 - s) * x[k]);
    }
    return acc;
}

// E over Dirichlet(alpha) of f(Σ w_k x_k); raw_mass receives the product of
// unnormalized per-dimension weight sums.
template <class F>
double dirichlet_average(const F& f, const std::vector<double>& x, const std::vector<double>& alpha, int m,
                         double* raw_mass = nullptr) {
    const int K = static_cast<int>(x.size()) - 1;
    if (K + 1 > kMaxPoints) throw DomainError("too many points for the multiple integral");
    std::array<Dim, kMaxPoints> dims;
    double prefix = alpha[0];
    double mass = 1.0;
    for (int k = 1; k <= K; ++k) {
        dims[static_cast<std::size_t>(k)] = make_dim(m, alpha[static_cast<std::size_t>(k)], prefix);
        mass *= dims[static_cast<std::size_t>(k)].raw_mass;
        prefix += alpha[static_cast<std::size_t>(k)];
    }
    if (raw_mass) *raw_mass = mass;
    if (K == 0) return f(x[0]);
    return nest(f, dims, x.data(), 1, K, x[0]);
}

std::vector<double> base_alpha(int g) {
    std::vector<double> a(static_cast<std::size_t>(2 * g + 3), 0.5);
    a[0] = 1.0;
    return a;
}

std::vector<double> points(double xi, const std::vector<double>& u) {
    std::vector<double> x;
    x.reserve(u.size() + 1);
    x.push_back(xi);
    x.insert(x.end(), u.begin(), u.end());
    return x;
}

void check_args(const EpdSpec& spec, const std::vector<double>& u) {
    if (spec.g < 0 || spec.g > 1) throw DomainError("only g = 0 and g = 1 are supported");
    if (u.size() != static_cast<std::size_t>(2 * spec.g + 2)) throw DomainError("endpoint vector has wrong length");
}

double unnormalized(const EpdSpec& spec, double xi, const std::vector<double>& u, int m) {
    const int order = boundary_order(spec.g, spec.which);
    if (m <= 0) m = auto_nodes(spec.field, spec.g, order);
    double raw = 0.0;
    const double avg = dirichlet_average([&](double y) { return spec.field.derivative(y, order); }, points(xi, u),
                                         base_alpha(spec.g), m, &raw);
    return raw * avg;
}

double signed_root(double xi, double u1, double u2) {
    const double r = std::sqrt((xi - u1) * (xi - u2));
    return xi > u1 ? r : -r;
}

// E over Dirichlet(alpha) of y^j for j = 0..d via the generating function
// Σ_j (A)_j E[y^j] z^j / j! = ∏_k (1 − x_k z)^{−α_k}.
std::vector<long double> power_moments(const std::vector<long double>& x, const std::vector<double>& alpha, int d) {
    const std::size_t n = static_cast<std::size_t>(d + 1);
    std::vector<long double> acc(n, 0.0L);
    acc[0] = 1.0L;
    long double A = 0.0L;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const long double a = alpha[k];
        A += a;
        std::vector<long double> s(n);
        long double c = 1.0L;
        for (std::size_t j = 0; j < n; ++j) {
            s[j] = c;
            c *= (a + static_cast<long double>(j)) / static_cast<long double>(j + 1) * x[k];
        }
        std::vector<long double> next(n, 0.0L);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; i + j < n; ++j) next[i + j] += acc[i] * s[j];
        acc = std::move(next);
    }
    long double ratio = 1.0L;  // j!/(A)_j
    for (std::size_t j = 0; j < n; ++j) {
        acc[j] *= ratio;
        ratio *= static_cast<long double>(j + 1) / (A + static_cast<long double>(j));
    }
    return acc;
}

long double poly_average(const LocalField& field, int order, const std::vector<long double>& x,
                         const std::vector<double>& alpha) {
    if (!field.is_polynomial()) throw DomainError("extended evaluation requires a polynomial field");
    const auto& c = field.polynomial();
    const int d = static_cast<int>(c.size()) - 1 - order;
    if (d < 0) return 0.0L;
    const auto mom = power_moments(x, alpha, d);
    long double sum = 0.0L;
    for (int j = 0; j <= d; ++j) {
        long double f = c[static_cast<std::size_t>(j + order)];
        for (int k = 1; k <= order; ++k) f *= static_cast<long double>(j + k);
        sum += f * mom[static_cast<std::size_t>(j)];
    }
    return sum;
}

std::vector<long double> points_ext(long double xi, const std::vector<long double>& u) {
    std::vector<long double> x{xi};
    x.insert(x.end(), u.begin(), u.end());
    return x;
}

}  // namespace

int boundary_order(int g, Kind which) { return which == Kind::phi ? g + 2 : g + 1; }

int auto_nodes(const LocalField& field, int g, int derivative_order) {
    if (field.is_polynomial()) {
        const int d = field.polynomial_degree() - derivative_order;
        return std::max(1, (d + 2) / 2);
    }
    return g == 0 ? 32 : 24;
}

double normalization(int g, Kind which) {
    static std::mutex mutex;
    static std::array<std::array<double, 2>, 2> cache{};
    static std::array<std::array<bool, 2>, 2> ready{};
    if (g < 0 || g > 1) throw DomainError("only g = 0 and g = 1 are supported");
    const int w = which == Kind::phi ? 0 : 1;
    std::lock_guard<std::mutex> lock(mutex);
    if (!ready[g][w]) {
        // Evaluate the raw integral for V = ξ^{order} on the diagonal u = 1 and
        // match the boundary value (1/(2(g+1)!))·order!.
        const int order = boundary_order(g, which);
        double raw = 0.0;
        std::vector<double> x(static_cast<std::size_t>(2 * g + 3), 1.0);
        const double avg =
            dirichlet_average([order](double) { return factorial(order); }, x, base_alpha(g), 4, &raw);
        cache[g][w] = factorial(order) / (2.0 * factorial(g + 1)) / (raw * avg);
        ready[g][w] = true;
    }
    return cache[g][w];
}

double phi_eval(const EpdSpec& spec, double xi, const std::vector<double>& u, int m) {
    check_args(spec, u);
    return normalization(spec.g, spec.which) * unnormalized(spec, xi, u, m);
}

double phi_partial(const EpdSpec& spec, double xi, const std::vector<double>& u, int slot, int m) {
    check_args(spec, u);
    if (slot < 0 || slot > static_cast<int>(u.size())) throw DomainError("slot out of range");
    const int order = boundary_order(spec.g, spec.which) + 1;
    if (m <= 0) m = auto_nodes(spec.field, spec.g, order);
    auto alpha = base_alpha(spec.g);
    double total = 0.0;
    for (double a : alpha) total += a;
    const double factor = alpha[static_cast<std::size_t>(slot)] / total;
    alpha[static_cast<std::size_t>(slot)] += 1.0;
    const double avg =
        dirichlet_average([&](double y) { return spec.field.derivative(y, order); }, points(xi, u), alpha, m);
    return factor * avg / (2.0 * factorial(spec.g + 1));
}

long double phi_eval_ext(const EpdSpec& spec, long double xi, const std::vector<long double>& u) {
    if (spec.g < 0 || spec.g > 1 || u.size() != static_cast<std::size_t>(2 * spec.g + 2))
        throw DomainError("invalid genus or endpoint vector");
    const int order = boundary_order(spec.g, spec.which);
    return poly_average(spec.field, order, points_ext(xi, u), base_alpha(spec.g)) /
           static_cast<long double>(2.0 * factorial(spec.g + 1));
}

long double phi_partial_ext(const EpdSpec& spec, long double xi, const std::vector<long double>& u, int slot) {
    if (spec.g < 0 || spec.g > 1 || u.size() != static_cast<std::size_t>(2 * spec.g + 2))
        throw DomainError("invalid genus or endpoint vector");
    if (slot < 0 || slot > static_cast<int>(u.size())) throw DomainError("slot out of range");
    auto alpha = base_alpha(spec.g);
    double total = 0.0;
    for (double a : alpha) total += a;
    const long double factor = alpha[static_cast<std::size_t>(slot)] / total;
    alpha[static_cast<std::size_t>(slot)] += 1.0;
    const int order = boundary_order(spec.g, spec.which) + 1;
    return factor * poly_average(spec.field, order, points_ext(xi, u), alpha) /
           static_cast<long double>(2.0 * factorial(spec.g + 1));
}

double epd2_eval(const std::function<double(double)>& g, double rho, double x1, double x2, int m) {
    if (!(rho > 0.0)) throw DomainError("rho must be positive");
    if (x1 == x2) return g(x1);
    const auto& rule = quad::gauss_jacobi(m, -0.5, 0.5 * (rho - 2.0));
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < rule.size(); ++j) {
        const double s = 0.5 * (1.0 + rule.nodes[j]);
        num += rule.weights[j] * g(x2 + (x1 - x2) * s);
        den += rule.weights[j];
    }
    return num / den;
}

double phi0_closed(const LocalField& field, double xi, double u1, double u2, int m) {
    if (!(u2 < u1)) throw InvalidInterval("phi0_closed requires u2 < u1");
    const double scale = std::max(1.0, std::abs(u1 - u2));
    const double d = std::min(std::abs(xi - u1), std::abs(xi - u2));
    if (d <= 1e-14 * scale) throw SingularPoint("closed form evaluated at an endpoint");
    if (d <= 1e-6 * scale) return phi_eval(EpdSpec{0, Kind::phi, field}, xi, {u1, u2});
    auto dv = [&field](double mu) { return field.derivative(mu, 1); };
    const double pv = quad::pv_band_integral(dv, u1, u2, xi, m);
    if (xi > u1 || xi < u2) return field.derivative(xi, 1) / (2.0 * signed_root(xi, u1, u2)) - pv / (2.0 * pi);
    return -pv / (2.0 * pi);
}

double phi1_symmetric_closed(const LocalField& field, double xi, double u1, double u2, int m) {
    if (!field.is_even()) throw NotEven("phi1_symmetric_closed requires an even field");
    if (!(0.0 < u2 && u2 < u1)) throw InvalidInterval("requires 0 < u2 < u1");
    const double ax = std::abs(xi);
    const double scale = std::max(1.0, u1);
    const double d = std::min(std::abs(ax - u1), std::abs(ax - u2));
    if (d <= 1e-14 * scale) throw SingularPoint("closed form evaluated at an endpoint");
    if (d <= 1e-6 * scale) return phi_eval(EpdSpec{1, Kind::phi, field}, xi, {u1, u2, -u2, -u1});
    auto f = [&field](double s) {
        const double r = std::sqrt(s);
        return field.derivative(r, 1) / (2.0 * r);
    };
    // J = ∫ V′(μ) dμ / ((μ² − ξ²) W(μ)) in the variable s = μ².
    const double J = -quad::pv_band_integral(f, u1 * u1, u2 * u2, xi * xi, m);
    const double tail = xi / pi * J;
    if (ax > u1) return field.derivative(xi, 1) / (2.0 * std::sqrt((xi * xi - u1 * u1) * (xi * xi - u2 * u2))) + tail;
    if (ax < u2) return -field.derivative(xi, 1) / (2.0 * std::sqrt((u1 * u1 - xi * xi) * (u2 * u2 - xi * xi))) + tail;
    return tail;
}

double psi1_symmetric_sum(const LocalField& field, double u1, double u2, int m) {
    if (!field.is_even()) throw NotEven("psi1_symmetric_sum requires an even field");
    return quad::symmetric_band_integral([&field](double mu) { return field.derivative(mu, 1); }, u1, u2, m) / pi;
}

double epd_residual(const EpdSpec& spec, double xi, const std::vector<double>& u, int i, int j, double h) {
    if (i == j) throw DomainError("epd_residual requires distinct slots");
    if (j == 0) std::swap(i, j);
    auto eval = [&](double di, double dj) {
        std::vector<double> x = points(xi, u);
        x[static_cast<std::size_t>(i)] += di;
        x[static_cast<std::size_t>(j)] += dj;
        return phi_eval(spec, x[0], std::vector<double>(x.begin() + 1, x.end()));
    };
    const double fij = (eval(h, h) - eval(h, -h) - eval(-h, h) + eval(-h, -h)) / (4.0 * h * h);
    const double fi = (eval(h, 0) - eval(-h, 0)) / (2.0 * h);
    const double fj = (eval(0, h) - eval(0, -h)) / (2.0 * h);
    const double xi_i = i == 0 ? xi : u[static_cast<std::size_t>(i - 1)];
    const double xj = u[static_cast<std::size_t>(j - 1)];
    if (i == 0) return 2.0 * (xi_i - xj) * fij - fi + 2.0 * fj;
    return 2.0 * (xi_i - xj) * fij - fi + fj;
}

}  // namespace eqm::epd
