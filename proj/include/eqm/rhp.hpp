#pragma once

#include <vector>

#include "eqm/field.hpp"

namespace eqm::rhp {

/// Sorted support endpoints u1 > u2 > … > u_{2g+2}; band k is (u_{2k}, u_{2k−1}).
class EndpointVector {
public:
    EndpointVector(int g, std::vector<double> u);
    static EndpointVector symmetric(double u1, double u2);

    int g() const { return g_; }
    const std::vector<double>& u() const { return u_; }
    double operator[](std::size_t i) const { return u_[i]; }
    std::size_t size() const { return u_.size(); }
    int bands() const { return g_ + 1; }
    double band_hi(int k) const { return u_[static_cast<std::size_t>(2 * k - 2)]; }
    double band_lo(int k) const { return u_[static_cast<std::size_t>(2 * k - 1)]; }

    double R_squared(double x) const;
    /// 1-based band containing x, or 0 when x is off the support.
    int band_of(double x) const;
    /// |R| anywhere on the real line.
    double R_modulus(double x) const;
    /// Real value of R off the support, branch R > 0 for x > u1.
    double R_real(double x) const;
    /// On band k the upper boundary value is R₊ = i·sigma(k)·|R|.
    static double sigma(int k) { return k % 2 == 1 ? 1.0 : -1.0; }

private:
    int g_;
    std::vector<double> u_;
};

/// Γ_0..Γ_{count−1} with R(μ) = μ^{g+1}·Σ Γ_l μ^{−l}.
std::vector<double> gamma_coeffs(const EndpointVector& u, int count);
/// Coefficients of μ^{g+1}/R(μ) = Σ γ'_l μ^{−l}.
std::vector<double> inverse_gamma_coeffs(const EndpointVector& u, int count);

/// P_{g,n}, descending coefficients [1, a_1, …, a_{g+n}].
std::vector<double> pgn_poly(const EndpointVector& u, int n);

/// q_{g,k}: Laurent μ^{−1} coefficient for the polynomial part plus band
/// quadrature for abs-power terms.
double qgk(const EndpointVector& u, int k, const LocalField& field);
/// Band-quadrature evaluation of q_{g,k} for any field (validation path).
double qgk_quadrature(const EndpointVector& u, int k, const LocalField& field);

struct QPolynomial {
    std::vector<double> coefficients;  // descending, length 2g+2

    double operator()(double x) const;
    double max_abs() const;
};

QPolynomial q_polynomial(const EndpointVector& u, const LocalField& field);

/// Same polynomial with endpoints and Ψ values carried in extended precision
/// (polynomial fields, g <= 1).
QPolynomial q_polynomial_ext(const std::vector<long double>& u, const LocalField& field);

/// P(u_i) = 2R²(u_i)Φ_g(u_i) − Q(u_i) for every endpoint.
std::vector<double> hodograph_residual(const EndpointVector& u, const LocalField& field);

/// g = 0 form: (u1−u2)Ψ0(u1,·) − 1/π and (u2−u1)Ψ0(u2,·) − 1/π.
std::vector<double> hodograph_g0_direct(double u1, double u2, const LocalField& field);

/// Polynomial helpers on descending coefficient vectors.
double poly_eval(const std::vector<double>& desc, double x);

}  // namespace eqm::rhp
