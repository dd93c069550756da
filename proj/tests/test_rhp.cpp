#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "eqm/epd.hpp"
#include "eqm/errors.hpp"
#include "eqm/quadrature.hpp"
#include "eqm/rhp.hpp"

using namespace eqm;
using namespace eqm::rhp;
using std::numbers::pi;

namespace {
LocalField lf(std::vector<PowerTerm> v, std::vector<double> p, double t) { return LocalField(FieldSpec(v, p, t)); }
LocalField quadratic(double t) { return lf({}, {0, 0, 1}, t); }
}  // namespace

TEST_CASE("gamma coefficients") {
    auto G = gamma_coeffs(EndpointVector(0, {1.0, -1.0}), 4);
    CHECK(G[0] == 1.0);
    CHECK(std::abs(G[1]) < 1e-15);
    CHECK(G[2] == doctest::Approx(-0.5));
    auto H = gamma_coeffs(EndpointVector(0, {2.5, -0.7}), 3);
    CHECK(H[1] == doctest::Approx(-(2.5 - 0.7) / 2));
    auto Z = gamma_coeffs(EndpointVector(1, {0.0, -1e-300, -2e-300, -3e-300}), 5);
    CHECK(Z[0] == 1.0);
    for (int l = 1; l < 5; ++l) CHECK(std::abs(Z[l]) < 1e-200);
}

TEST_CASE("gamma series reconstructs R") {
    EndpointVector u(1, {1.3, 0.4, -0.2, -1.1});
    const auto G = gamma_coeffs(u, 12);
    const double mu = 13.0;
    double s = 0.0;
    for (int l = 11; l >= 0; --l) s = s / mu + G[l];
    CHECK(s == doctest::Approx(std::sqrt(u.R_squared(mu)) / (mu * mu)).epsilon(1e-10));
}

TEST_CASE("P_{g,n}") {
    EndpointVector u0(0, {1.7, -0.4});
    CHECK(pgn_poly(u0, 0) == std::vector<double>{1.0});
    auto p1 = pgn_poly(u0, 1);
    CHECK(p1[1] == doctest::Approx(-(1.7 - 0.4) / 2));

    EndpointVector u1(1, {1.0, 0.5, -0.5, -1.0});
    auto p10 = pgn_poly(u1, 0);
    auto f = [&](double x) { return poly_eval(p10, x) / u1.R_real(x); };
    CHECK(std::abs(quad::legendre_integral(
              [&](double th) { return f(0.5 * std::sin(th)) * 0.5 * std::cos(th); }, -pi / 2, pi / 2, 60)) < 1e-10);

    // asymptotics P/R = ξ^{n−1} + O(ξ^{−2}) and zero gap integral, asymmetric u
    EndpointVector ua(1, {2.0, 0.9, -0.3, -1.2});
    for (int n = 0; n <= 3; ++n) {
        const auto p = pgn_poly(ua, n);
        const double X = 1e3;
        const double ratio = poly_eval(p, X) / ua.R_real(X) - std::pow(X, n - 1);
        CHECK(std::abs(ratio) * X * X < 50.0);
        auto g = [&](double x) { return poly_eval(p, x) / ua.R_real(x); };
        const double c = 0.3, h = 0.6;  // gap (−0.3, 0.9)
        CHECK(std::abs(quad::legendre_integral([&](double th) { return g(c + h * std::sin(th)) * h * std::cos(th); },
                                               -pi / 2, pi / 2, 80)) < 1e-9);
    }
}

TEST_CASE("q_{g,k}") {
    EndpointVector u(0, {1.0, -1.0});
    CHECK(qgk(u, 0, lf({PowerTerm::monomial(2, 1.0)}, {0, 1}, 0)) == doctest::Approx(0.5));
    CHECK(qgk(u, 0, lf({PowerTerm::monomial(0, 1.0)}, {0, 1}, 0)) == 0.0);  // local frame drops constants
    CHECK(qgk_quadrature(u, 0, LocalField(FieldSpec({PowerTerm::monomial(0, 1.0)}, {0, 1}, 0.0), 0.0)) == 0.0);
    CHECK(std::abs(qgk(u, 0, lf({}, {0, 1}, 1.0))) < 1e-15);
    // Laurent and quadrature paths agree on monomials, asymmetric g = 1
    EndpointVector ua(1, {2.0, 0.9, -0.3, -1.2});
    auto V = lf({PowerTerm::monomial(6, 1.0), PowerTerm::monomial(3, -0.7)}, {0, 1, 1}, -2.0);
    for (int k = 0; k <= 1; ++k) CHECK(qgk(ua, k, V) == doctest::Approx(qgk_quadrature(ua, k, V)).epsilon(1e-11));
}

TEST_CASE("Q vanishes at semicircle endpoints and discriminates") {
    const double r = 1.0 / std::sqrt(pi);
    auto V = quadratic(1.0);
    CHECK(q_polynomial(EndpointVector(0, {r, -r}), V).max_abs() < 1e-12);
    CHECK(q_polynomial(EndpointVector(0, {r + 0.1, -r}), V).max_abs() > 1e-3);
    auto res = hodograph_residual(EndpointVector(0, {r, -r}), V);
    for (double x : res) CHECK(std::abs(x) < 1e-12);
    // two formulations agree away from the solution as well
    auto a = hodograph_residual(EndpointVector(0, {1.3, -0.2}), V);
    auto b = hodograph_g0_direct(1.3, -0.2, V);
    CHECK(a[0] == doctest::Approx(b[0]).epsilon(1e-10));
    CHECK(a[1] == doctest::Approx(b[1]).epsilon(1e-10));
    auto c = hodograph_g0_direct(0.3 + 1e-9, 0.3, V);
    CHECK(c[0] == doctest::Approx(-1.0 / pi).epsilon(1e-6));
}

TEST_CASE("asymmetric two-cut: Q-formula yields equal multipliers on both bands") {
    auto V = lf({PowerTerm::monomial(4, 1.0), PowerTerm::monomial(1, -0.5), PowerTerm::monomial(3, 0.1)}, {0, 0, 1}, -10.0);
    const double a = std::sqrt((10 + std::sqrt(2 / pi)) / 2), b = std::sqrt((10 - std::sqrt(2 / pi)) / 2);
    Eigen::Vector4d x(a, b, -b, -a);
    auto F = [&](const Eigen::Vector4d& y) {
        auto r = hodograph_residual(EndpointVector(1, {y[0], y[1], y[2], y[3]}), V);
        return Eigen::Vector4d(r[0], r[1], r[2], r[3]);
    };
    for (int it = 0; it < 30 && F(x).norm() > 1e-13; ++it) {
        Eigen::Matrix4d J;
        for (int j = 0; j < 4; ++j) {
            Eigen::Vector4d p = x, m = x;
            p[j] += 1e-6;
            m[j] -= 1e-6;
            J.col(j) = (F(p) - F(m)) / 2e-6;
        }
        x -= J.fullPivLu().solve(F(x));
    }
    REQUIRE(F(x).norm() < 1e-12);
    EndpointVector u(1, {x[0], x[1], x[2], x[3]});
    CHECK(q_polynomial(u, V).max_abs() < 1e-12);
    DensityTable d;
    for (int k = 1; k <= 2; ++k) {
        Band band;
        band.lo = u.band_lo(k);
        band.hi = u.band_hi(k);
        band.chebyshev = true;
        const int n = 81;
        const double c = 0.5 * (band.lo + band.hi), h = 0.5 * (band.hi - band.lo);
        for (int i = 0; i < n; ++i) {
            const double xx = i == 0 ? band.lo : i == n - 1 ? band.hi : c + h * std::cos((n - 1 - i) * pi / (n - 1));
            band.x.push_back(xx);
            band.psi.push_back(i == 0 || i == n - 1 ? 0.0
                                                    : 2 * EndpointVector::sigma(k) * u.R_modulus(xx) *
                                                          epd::phi_eval({1, epd::Kind::phi, V}, xx, u.u()));
        }
        band.prepare();
        d.bands.push_back(band);
    }
    CHECK(d.mass() == doctest::Approx(1.0).epsilon(1e-11));
    CHECK(d.min_value() >= 0.0);
    auto eff = [&](double y) { return quad::log_kernel_integral(d, y) - V.value(y); };
    CHECK(eff(0.5 * (u[0] + u[1])) == doctest::Approx(eff(0.5 * (u[2] + u[3]))).epsilon(1e-11));
}

TEST_CASE("endpoint vector invariants") {
    CHECK_THROWS_AS(EndpointVector(0, {1.0, 1.0}), DomainError);
    CHECK_THROWS_AS(EndpointVector(1, {1.0, 0.5, -0.5}), DomainError);
    EndpointVector u(1, {2.0, 1.0, -1.0, -2.0});
    CHECK(u.R_real(3.0) > 0);
    CHECK(u.R_real(0.0) < 0);
    CHECK(u.R_real(-3.0) > 0);
    CHECK(u.band_of(1.5) == 1);
    CHECK(u.band_of(-1.5) == 2);
    CHECK(u.band_of(0.0) == 0);
}
