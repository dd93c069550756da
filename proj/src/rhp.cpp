#include "eqm/rhp.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "eqm/epd.hpp"
#include "eqm/errors.hpp"
#include "eqm/quadrature.hpp"

namespace eqm::rhp {

namespace {

constexpr double pi = std::numbers::pi;

// Series of ∏(1 − u_i x)^p to `count` terms.
template <class T>
std::vector<T> product_series(const std::vector<T>& u, T p, int count) {
    std::vector<T> acc(static_cast<std::size_t>(count), T(0));
    acc[0] = T(1);
    for (T ui : u) {
        std::vector<T> s(static_cast<std::size_t>(count), T(0));
        T c = T(1);  // binom(p, k)·(−u)^k
        for (int k = 0; k < count; ++k) {
            s[static_cast<std::size_t>(k)] = c;
            c *= (p - T(k)) / T(k + 1) * (-ui);
        }
        std::vector<T> next(static_cast<std::size_t>(count), T(0));
        for (int a = 0; a < count; ++a)
            for (int b = 0; a + b < count; ++b)
                next[static_cast<std::size_t>(a + b)] += acc[static_cast<std::size_t>(a)] * s[static_cast<std::size_t>(b)];
        acc = std::move(next);
    }
    return acc;
}

template <class T>
std::vector<T> poly_mul(const std::vector<T>& a, const std::vector<T>& b) {
    std::vector<T> r(a.size() + b.size() - 1, T(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

template <class T, class U>
void add_aligned(std::vector<T>& into, const std::vector<U>& p, T scale) {
    const std::size_t off = into.size() - p.size();
    for (std::size_t i = 0; i < p.size(); ++i) into[off + i] += scale * static_cast<T>(p[i]);
}

// ∫ over gap k (between u_{2k+1} and u_{2k}) of x^m / R.
double gap_moment(const EndpointVector& u, int k, int m) {
    const double top = u[static_cast<std::size_t>(2 * k - 1)];
    const double bot = u[static_cast<std::size_t>(2 * k)];
    const double sign = k % 2 == 1 ? -1.0 : 1.0;
    auto f = [&](double x) {
        double others = 1.0;
        for (std::size_t i = 0; i < u.size(); ++i)
            if (i != static_cast<std::size_t>(2 * k - 1) && i != static_cast<std::size_t>(2 * k)) others *= x - u[i];
        return std::pow(x, m) / (sign * std::sqrt(std::abs(others)));
    };
    return quad::band_integral(f, top, bot, 1e-13);
}

}  // namespace

EndpointVector::EndpointVector(int g, std::vector<double> u) : g_(g), u_(std::move(u)) {
    if (g_ < 0) throw DomainError("genus must be non-negative");
    if (u_.size() != static_cast<std::size_t>(2 * g_ + 2)) throw DomainError("endpoint vector must have 2g+2 entries");
    for (std::size_t i = 1; i < u_.size(); ++i)
        if (!(u_[i] < u_[i - 1])) throw DomainError("endpoints must be strictly decreasing");
}

EndpointVector EndpointVector::symmetric(double u1, double u2) { return EndpointVector(1, {u1, u2, -u2, -u1}); }

double EndpointVector::R_squared(double x) const {
    double r = 1.0;
    for (double ui : u_) r *= x - ui;
    return r;
}

int EndpointVector::band_of(double x) const {
    for (int k = 1; k <= bands(); ++k)
        if (x >= band_lo(k) && x <= band_hi(k)) return k;
    return 0;
}

double EndpointVector::R_modulus(double x) const { return std::sqrt(std::abs(R_squared(x))); }

double EndpointVector::R_real(double x) const {
    int passed = 0;
    for (int k = 1; k <= bands(); ++k)
        if (x < band_lo(k)) passed = k;
    return (passed % 2 == 0 ? 1.0 : -1.0) * R_modulus(x);
}

std::vector<double> gamma_coeffs(const EndpointVector& u, int count) {
    if (count < 1) return {};
    return product_series(u.u(), 0.5, count);
}

std::vector<double> inverse_gamma_coeffs(const EndpointVector& u, int count) {
    if (count < 1) return {};
    return product_series(u.u(), -0.5, count);
}

double poly_eval(const std::vector<double>& desc, double x) {
    double r = 0.0;
    for (double c : desc) r = r * x + c;
    return r;
}

std::vector<double> pgn_poly(const EndpointVector& u, int n) {
    const int g = u.g();
    if (n < 0 || n > g + 6) throw DomainError("pgn_poly requires 0 <= n <= g + 6");
    const int N = g + n;
    std::vector<double> out(static_cast<std::size_t>(N + 1), 0.0);
    out[0] = 1.0;
    if (N == 0) return out;
    const auto gp = inverse_gamma_coeffs(u, N + 2);
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(N, N);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(N);
    int row = 0;
    for (int p = 1; p <= n; ++p, ++row) {
        for (int j = 1; j <= p; ++j) M(row, j - 1) = gp[static_cast<std::size_t>(p - j)];
        rhs[row] = -gp[static_cast<std::size_t>(p)];
    }
    for (int k = 1; k <= g; ++k, ++row) {
        for (int j = 1; j <= N; ++j) M(row, j - 1) = gap_moment(u, k, N - j);
        rhs[row] = -gap_moment(u, k, N);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (sv[N - 1] <= 1e-13 * sv[0]) throw SingularSystem("P_{g,n} system is numerically rank deficient");
    Eigen::VectorXd a = svd.solve(rhs);
    for (int j = 1; j <= N; ++j) out[static_cast<std::size_t>(j)] = a[j - 1];
    return out;
}

double qgk_quadrature(const EndpointVector& u, int k, const LocalField& field) {
    const int g = u.g();
    double total = 0.0;
    for (int b = 1; b <= u.bands(); ++b) {
        const std::size_t hi = static_cast<std::size_t>(2 * b - 2), lo = hi + 1;
        auto f = [&](double x) {
            double others = 1.0;
            for (std::size_t i = 0; i < u.size(); ++i)
                if (i != hi && i != lo) others *= x - u[i];
            return field.value(x) * std::pow(x, g - k) / std::sqrt(std::abs(others));
        };
        total += EndpointVector::sigma(b) * quad::band_integral(f, u.band_hi(b), u.band_lo(b), 1e-13);
    }
    return total / pi;
}

double qgk(const EndpointVector& u, int k, const LocalField& field) {
    const int g = u.g();
    if (k < 0 || k > g) throw DomainError("qgk requires 0 <= k <= g");
    const auto& v = field.polynomial();
    const int d = static_cast<int>(v.size()) - 1;
    if (d > 80) throw PrecisionLoss("polynomial degree too large for the Laurent expansion");
    const auto gp = inverse_gamma_coeffs(u, std::max(1, d - k + 1));
    double q = 0.0;
    for (int j = k; j <= d; ++j) q += v[static_cast<std::size_t>(j)] * gp[static_cast<std::size_t>(j - k)];
    if (!field.abs_terms().empty()) {
        FieldSpec abs_only(field.abs_terms(), {0.0, 1.0}, 0.0);
        q += qgk_quadrature(u, k, LocalField(abs_only, field.origin()));
    }
    return q;
}

double QPolynomial::operator()(double x) const { return poly_eval(coefficients, x); }

double QPolynomial::max_abs() const {
    double m = 0.0;
    for (double c : coefficients) m = std::max(m, std::abs(c));
    return m;
}

QPolynomial q_polynomial(const EndpointVector& u, const LocalField& field) {
    const int g = u.g();
    if (g > 1) throw DomainError("q_polynomial is implemented for g <= 1");
    const epd::EpdSpec psi{g, epd::Kind::psi, field};
    QPolynomial Q;
    Q.coefficients.assign(u.size(), 0.0);
    for (std::size_t i = 0; i < u.size(); ++i) {
        std::vector<double> prod{1.0};
        for (std::size_t l = 0; l < u.size(); ++l)
            if (l != i) prod = poly_mul(prod, {1.0, -u[l]});
        add_aligned(Q.coefficients, prod, -epd::phi_eval(psi, u[i], u.u()));
    }
    add_aligned(Q.coefficients, pgn_poly(u, 0), 1.0 / pi);
    if (g >= 1) {
        const auto gam = gamma_coeffs(u, g + 1);
        std::vector<double> q(static_cast<std::size_t>(g + 1));
        for (int k = 1; k <= g; ++k) q[static_cast<std::size_t>(k)] = qgk(u, k, field);
        // With q in the Laurent convention the coefficient of P_{g,k} is −k·Σ Γ_l q_{g,k+l}.
        for (int k = 1; k <= g; ++k) {
            double c = 0.0;
            for (int l = 0; l <= g - k; ++l) c += gam[static_cast<std::size_t>(l)] * q[static_cast<std::size_t>(k + l)];
            add_aligned(Q.coefficients, pgn_poly(u, k), -k * c);
        }
    }
    return Q;
}

QPolynomial q_polynomial_ext(const std::vector<long double>& u, const LocalField& field) {
    const int g = static_cast<int>(u.size()) / 2 - 1;
    if (g < 0 || g > 1 || u.size() != static_cast<std::size_t>(2 * g + 2))
        throw DomainError("q_polynomial_ext is implemented for g <= 1");
    if (!field.is_polynomial()) throw DomainError("q_polynomial_ext requires a polynomial field");
    std::vector<double> ud(u.begin(), u.end());
    const EndpointVector ev(g, ud);
    const epd::EpdSpec psi{g, epd::Kind::psi, field};
    std::vector<long double> Q(u.size(), 0.0L);
    for (std::size_t i = 0; i < u.size(); ++i) {
        std::vector<long double> prod{1.0L};
        for (std::size_t l = 0; l < u.size(); ++l)
            if (l != i) prod = poly_mul<long double>(prod, {1.0L, -u[l]});
        add_aligned(Q, prod, -epd::phi_eval_ext(psi, u[i], u));
    }
    add_aligned(Q, pgn_poly(ev, 0), 1.0L / std::numbers::pi_v<long double>);
    if (g == 1) {
        const auto& v = field.polynomial();
        const int d = static_cast<int>(v.size()) - 1;
        const auto gp = product_series<long double>(u, -0.5L, std::max(1, d));
        long double q1 = 0.0L;
        for (int j = 1; j <= d; ++j) q1 += static_cast<long double>(v[static_cast<std::size_t>(j)]) * gp[static_cast<std::size_t>(j - 1)];
        if (q1 != 0.0L) add_aligned(Q, pgn_poly(ev, 1), -q1);
    }
    QPolynomial out;
    out.coefficients.assign(Q.begin(), Q.end());
    return out;
}

std::vector<double> hodograph_residual(const EndpointVector& u, const LocalField& field) {
    const auto Q = q_polynomial(u, field);
    const epd::EpdSpec phi{u.g(), epd::Kind::phi, field};
    std::vector<double> r(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        r[i] = 2.0 * u.R_squared(u[i]) * epd::phi_eval(phi, u[i], u.u()) - Q(u[i]);
    return r;
}

std::vector<double> hodograph_g0_direct(double u1, double u2, const LocalField& field) {
    const epd::EpdSpec psi{0, epd::Kind::psi, field};
    return {(u1 - u2) * epd::phi_eval(psi, u1, {u1, u2}) - 1.0 / pi,
            (u2 - u1) * epd::phi_eval(psi, u2, {u1, u2}) - 1.0 / pi};
}

}  // namespace eqm::rhp
