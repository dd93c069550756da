#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace eqm {

enum class TermKind { monomial, abs_power };

/// One additive term of V*: c·ξ^k (monomial) or c·|ξ|^a (abs_power, a > 3).
struct PowerTerm {
    TermKind kind = TermKind::monomial;
    double exponent = 0.0;
    double coefficient = 0.0;

    static PowerTerm monomial(int k, double c);
    static PowerTerm abs_power(double a, double c);

    double derivative(double xi, int order) const;
};

struct GrowthCheck {
    bool ok = false;
    std::string diagnostic;
};

/// V(ξ) = V*(ξ) + t·p(ξ) with p monic (ascending coefficients).
class FieldSpec {
public:
    FieldSpec() = default;
    FieldSpec(std::vector<PowerTerm> vstar, std::vector<double> p_coeffs, double t);

    const std::vector<PowerTerm>& vstar() const { return vstar_; }
    const std::vector<double>& p_coeffs() const { return p_; }
    double t() const { return t_; }
    int degree_p() const { return static_cast<int>(p_.size()) - 1; }

    FieldSpec with_t(double t) const;

    /// d^order V / dξ^order, order in 0..4.
    double eval_derivative(double xi, int order) const;
    double value(double xi) const { return eval_derivative(xi, 0); }

    GrowthCheck validate_growth() const;
    bool is_even() const;

    /// Ascending coefficients of every monomial contribution (V* monomials plus t·p).
    std::vector<double> polynomial_part() const;
    std::vector<PowerTerm> abs_terms() const;
    bool is_polynomial() const { return abs_terms().empty(); }

private:
    std::vector<PowerTerm> vstar_;
    std::vector<double> p_{0.0, 1.0};
    double t_ = 0.0;
};

/// Translated field x ↦ V(origin + x) − V(origin). The polynomial part is
/// re-expanded about the origin in extended precision.
class LocalField {
public:
    LocalField() = default;
    explicit LocalField(const FieldSpec& spec, double origin = 0.0);

    double origin() const { return origin_; }
    const FieldSpec& spec() const { return spec_; }

    /// Orders 0..6 are supported.
    double derivative(double x, int order) const;
    double value(double x) const { return derivative(x, 0); }

    bool is_even() const { return origin_ == 0.0 && spec_.is_even(); }
    bool is_polynomial() const { return abs_.empty(); }
    int polynomial_degree() const { return static_cast<int>(poly_.size()) - 1; }
    const std::vector<double>& polynomial() const { return poly_; }
    const std::vector<PowerTerm>& abs_terms() const { return abs_; }

private:
    FieldSpec spec_;
    double origin_ = 0.0;
    std::vector<double> poly_;
    std::vector<std::vector<double>> dpoly_;
    std::vector<PowerTerm> abs_;
    double abs_at_origin_ = 0.0;
};

FieldSpec field_from_json(const nlohmann::json& j);
nlohmann::json field_to_json(const FieldSpec& f);

}  // namespace eqm
