#include <doctest.h>

#include <cmath>
#include <numbers>

#include "eqm/asymptotics.hpp"
#include "eqm/errors.hpp"

using namespace eqm;
using namespace eqm::asymptotics;

TEST_CASE("double factorial") {
    CHECK(double_factorial(-1) == 1.0);
    CHECK(double_factorial(0) == 1.0);
    CHECK(double_factorial(1) == 1.0);
    CHECK(double_factorial(5) == 15.0);
    CHECK(double_factorial(6) == 48.0);
}

TEST_CASE("regime constants") {
    const FieldSpec sext({PowerTerm::monomial(6, 1.0)}, {0, 0, 0, 1}, -1.0);
    const auto a = predict(sext, -1);
    CHECK(a.regime == Regime::odd_n_neg_t);
    CHECK(a.scaling_exponent == doctest::Approx(1.0 / 3.0));
    CHECK(a.limit_constant == doctest::Approx(0.7937005259840998).epsilon(1e-12));

    const FieldSpec quart({PowerTerm::monomial(4, 1.0)}, {0, 0, 1}, -1.0);
    const auto b = predict(quart, -1);
    CHECK(b.regime == Regime::even_n_neg_t);
    CHECK(b.scaling_exponent == doctest::Approx(0.5));
    CHECK(b.limit_constant == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));

    const auto c = predict(quart, 1);
    CHECK(c.regime == Regime::even_n_pos_t_convex);
    CHECK(c.scaling_exponent == doctest::Approx(-0.5));
    CHECK(c.limit_constant == doctest::Approx(1.0 / std::sqrt(std::numbers::pi)).epsilon(1e-12));
}

TEST_CASE("sub-dominant terms leave the constant unchanged") {
    const FieldSpec a({PowerTerm::monomial(6, 1.0)}, {0, 0, 0, 1}, -1.0);
    const FieldSpec b({PowerTerm::monomial(6, 1.0), PowerTerm::monomial(2, 1.0)}, {0, 0, 0, 1}, -1.0);
    CHECK(predict(a, -1).limit_constant == doctest::Approx(predict(b, -1).limit_constant));
}

TEST_CASE("non-convex p with positive t is unsupported") {
    const FieldSpec f({PowerTerm::monomial(8, 1.0)}, {0, 0, -3, 0, 1}, 1.0);
    CHECK_THROWS_AS(predict(f, 1), UnsupportedRegime);
}

TEST_CASE("odd regime study") {
    const FieldSpec f({PowerTerm::monomial(6, 1.0)}, {0, 0, 0, 1}, -1.0);
    const auto rows = scaling_study(f, -1, 4);
    REQUIRE(rows.size() == 4);
    for (const auto& r : rows) {
        CHECK(r.solved);
        CHECK(r.verified);
        CHECK(r.gaps == 0);
        CHECK(r.well_inside);
    }
    CHECK(deviations_monotone(rows));
    const auto csv = study_csv(rows);
    CHECK(csv.rfind("t,u1,u2,u3,u4,scaled_u1,scaled_u2,deviation,width,gaps,well_inside\n", 0) == 0);
}

TEST_CASE("even regimes gap counts") {
    const FieldSpec f({PowerTerm::monomial(4, 1.0)}, {0, 0, 1}, 1.0);
    for (const auto& r : scaling_study(f, -1, 3)) {
        CHECK(r.gaps == 1);
        CHECK(r.well_inside);
    }
    for (const auto& r : scaling_study(f, 1, 3)) {
        CHECK(r.gaps == 0);
        CHECK(r.well_inside);
    }
}

TEST_CASE("decades must be at least three") { CHECK_THROWS(scaling_study(FieldSpec({}, {0, 0, 1}, 1.0), 1, 2)); }
