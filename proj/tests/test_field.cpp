#include <doctest.h>

#include <cmath>

#include "eqm/errors.hpp"
#include "eqm/field.hpp"

using namespace eqm;

namespace {
FieldSpec poly(std::vector<PowerTerm> v, std::vector<double> p, double t) { return FieldSpec(std::move(v), std::move(p), t); }
}  // namespace

TEST_CASE("derivative examples") {
    FieldSpec quad({}, {0, 0, 1}, 1.0);
    CHECK(quad.eval_derivative(7.0, 2) == doctest::Approx(2.0));

    FieldSpec f = poly({PowerTerm::monomial(6, 1.0)}, {0, 0, 0, 1}, -1.0);
    CHECK(f.eval_derivative(1.0, 1) == doctest::Approx(3.0));

    FieldSpec a = poly({PowerTerm::abs_power(4.5, 2.0)}, {0, 1}, 0.0);
    CHECK(a.eval_derivative(-1.0, 1) == doctest::Approx(-9.0));
    // symbolic oracle: 9·|ξ|^3.5·sign(ξ), then 31.5·|ξ|^2.5
    CHECK(a.eval_derivative(2.0, 2) == doctest::Approx(31.5 * std::pow(2.0, 2.5)));
    CHECK(a.eval_derivative(0.0, 4) == doctest::Approx(0.0));
}

TEST_CASE("abs-power singular derivative at zero") {
    FieldSpec a = poly({PowerTerm::abs_power(3.5, 1.0)}, {0, 1}, 0.0);
    CHECK_THROWS_AS(a.eval_derivative(0.0, 4), DomainError);
    CHECK(a.eval_derivative(0.0, 3) == 0.0);
    LocalField even4(poly({PowerTerm::abs_power(4.0, 1.0)}, {0, 1}, 0.0));
    CHECK(even4.derivative(0.0, 4) == doctest::Approx(24.0));
}

TEST_CASE("growth validation") {
    CHECK(poly({PowerTerm::monomial(6, 1.0)}, {0, 0, 0, 1}, -100).validate_growth().ok);
    auto cubic = poly({}, {0, 0, 0, 1}, -1.0).validate_growth();
    CHECK_FALSE(cubic.ok);
    CHECK(cubic.diagnostic.find("+inf") != std::string::npos);
    auto tie = poly({PowerTerm::abs_power(4.0, 1.0)}, {0, 0, 0, 0, 1}, -2.0).validate_growth();
    CHECK_FALSE(tie.ok);
    CHECK_FALSE(poly({}, {0, 0, 1}, 0.0).validate_growth().ok);
    CHECK_FALSE(poly({}, {0, 1}, 5.0).validate_growth().ok);
}

TEST_CASE("monic and exponent invariants") {
    CHECK_THROWS_AS(FieldSpec({}, {0, 2.0}, 1.0), InvalidField);
    CHECK_THROWS_AS(PowerTerm::abs_power(2.5, 1.0), InvalidField);
}

TEST_CASE("termwise linearity") {
    FieldSpec F = poly({PowerTerm::monomial(4, 1.0), PowerTerm::abs_power(4.5, 0.3)}, {0, 0, 1}, -2.0);
    FieldSpec G = poly({PowerTerm::monomial(6, 0.5)}, {0, 1, 0, 1}, 3.0);
    const double al = 1.7, be = -0.4;
    std::vector<PowerTerm> terms;
    for (auto t : F.vstar()) { t.coefficient *= al; terms.push_back(t); }
    for (auto t : G.vstar()) { t.coefficient *= be; terms.push_back(t); }
    // t·p parts folded into monomials so the combined p stays monic
    for (std::size_t j = 0; j < F.p_coeffs().size(); ++j)
        terms.push_back(PowerTerm::monomial(static_cast<int>(j), al * F.t() * F.p_coeffs()[j]));
    for (std::size_t j = 0; j < G.p_coeffs().size(); ++j)
        terms.push_back(PowerTerm::monomial(static_cast<int>(j), be * G.t() * G.p_coeffs()[j]));
    FieldSpec H(terms, {0, 1}, 0.0);
    for (double x : {-2.3, -0.7, 0.4, 1.9})
        for (int k = 0; k <= 4; ++k)
            CHECK(H.eval_derivative(x, k) ==
                  doctest::Approx(al * F.eval_derivative(x, k) + be * G.eval_derivative(x, k)).epsilon(1e-12));
}

TEST_CASE("evenness") {
    FieldSpec e = poly({PowerTerm::monomial(4, 1.0), PowerTerm::abs_power(5.5, 2.0)}, {0, 0, 1}, -3.0);
    CHECK(e.is_even());
    for (int k = 0; k <= 4; ++k) {
        const double s = k % 2 == 0 ? 1.0 : -1.0;
        CHECK(e.eval_derivative(-1.3, k) == doctest::Approx(s * e.eval_derivative(1.3, k)));
    }
    CHECK_FALSE(poly({PowerTerm::monomial(6, 1.0)}, {0, 0, 0, 1}, -1.0).is_even());
    CHECK(poly({PowerTerm::monomial(6, 1.0)}, {0, 0, 0, 1}, 0.0).is_even());
}

TEST_CASE("local frame matches the global field") {
    FieldSpec f = poly({PowerTerm::monomial(6, 1.0), PowerTerm::abs_power(4.5, 0.3)}, {0, 0, 0, 1}, -1e6);
    const double c = 79.37;
    LocalField lf(f, c);
    for (double x : {-0.5, 0.01, 0.3})
        for (int k = 1; k <= 4; ++k)
            CHECK(lf.derivative(x, k) == doctest::Approx(f.eval_derivative(c + x, k)).epsilon(1e-9));
    CHECK(lf.value(0.0) == 0.0);
    CHECK(lf.value(0.2) == doctest::Approx(f.value(c + 0.2) - f.value(c)).epsilon(1e-6));
}

TEST_CASE("json round trip") {
    const std::string text =
        R"({"vstar":[{"kind":"monomial","k":6,"c":1.0},{"kind":"abs_power","a":4.5,"c":0.3}],"p":{"coeffs":[0.0,0.0,0.0,1.0]},"t":-100.0})";
    auto j = nlohmann::json::parse(text);
    FieldSpec f = field_from_json(j);
    CHECK(f.t() == -100.0);
    CHECK(f.vstar().size() == 2);
    CHECK(field_to_json(f) == j);
    auto bad = nlohmann::json::parse(R"({"p":{"coeffs":[0.0,2.0]},"t":1})");
    CHECK_THROWS_AS(field_from_json(bad), ParseError);
}
