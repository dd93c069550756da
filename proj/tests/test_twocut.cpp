#include <doctest.h>

#include <cmath>
#include <numbers>

#include "eqm/errors.hpp"
#include "eqm/twocut.hpp"

using namespace eqm;
using std::numbers::pi;

namespace {
FieldSpec quartic(double t) { return FieldSpec({PowerTerm::monomial(4, 1.0)}, {0, 0, 1}, t); }
}  // namespace

TEST_CASE("quartic two-cut matches the resolvent relations") {
    const auto f = quartic(-10.0);
    auto sol = twocut::solve_endpoints_symmetric(f);
    REQUIRE(sol.converged);
    CHECK(std::abs(sol.u1 * sol.u1 + sol.u2 * sol.u2 - 10.0) < 1e-9);
    CHECK(std::abs(sol.u1 * sol.u1 - sol.u2 * sol.u2 - std::sqrt(2.0 / pi)) < 1e-9);
    CHECK(sol.u1 == doctest::Approx(2.323565).epsilon(1e-6));
    CHECK(sol.u2 == doctest::Approx(2.145006).epsilon(1e-6));
}

TEST_CASE("quartic density equals the closed form") {
    const auto f = quartic(-10.0);
    auto sol = twocut::solve_endpoints_symmetric(f);
    const double a = sol.u1 * sol.u1, b = sol.u2 * sol.u2;
    auto exact = [&](double x) { return 4.0 * std::abs(x) * std::sqrt(std::max(0.0, (a - x * x) * (x * x - b))); };
    double peak = 0.0, err = 0.0;
    for (int i = 1; i < 200; ++i) {
        const double x = sol.u2 + (sol.u1 - sol.u2) * i / 200.0;
        peak = std::max(peak, exact(x));
        err = std::max({err, std::abs(twocut::psi(sol, f, x) - exact(x)), std::abs(twocut::psi(sol, f, -x) - exact(x))});
    }
    CHECK(err / peak < 1e-6);
    // x = mid + half·cos θ makes the integrand smooth and periodic
    const double mid = 0.5 * (sol.u1 + sol.u2), half = 0.5 * (sol.u1 - sol.u2);
    double mass = 0.0;
    const int n = 400;
    for (int k = 0; k < n; ++k) {
        const double th = pi * (k + 0.5) / n;
        mass += exact(mid + half * std::cos(th)) * half * std::sin(th) * pi / n;
    }
    mass *= 2.0;
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(twocut::psi(sol, f, 0.0) == 0.0);
    const auto d = twocut::density_symmetric(sol, f);
    CHECK(d.bands.size() == 2);
    CHECK(d.mass() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("large negative t approaches the well constant") {
    const auto sol = twocut::solve_endpoints_symmetric(quartic(-1e4));
    REQUIRE(sol.converged);
    CHECK(std::abs(sol.u1 / 100.0 - std::sqrt(0.5)) < 0.01 * std::sqrt(0.5));
    CHECK(std::abs(sol.u2 / 100.0 - std::sqrt(0.5)) < 0.01 * std::sqrt(0.5));
    CHECK(std::abs(sol.u1 * sol.u1 + sol.u2 * sol.u2 - 1e4) < 1e-6);
}

TEST_CASE("odd fields are rejected") {
    const FieldSpec f({PowerTerm::monomial(6, 1.0)}, {0, 0, 0, 1}, -10.0);
    CHECK_THROWS_AS(twocut::solve_endpoints_symmetric(f), NotEven);
    CHECK_THROWS_AS(twocut::residual(LocalField(quartic(-10.0)), 1.0, 2.0), InvalidInterval);
}
