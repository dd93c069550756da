#pragma once

#include <functional>
#include <vector>

#include "eqm/field.hpp"

namespace eqm::epd {

enum class Kind { phi, psi };

struct EpdSpec {
    int g = 0;
    Kind which = Kind::phi;
    LocalField field;
};

/// Order of V-derivative integrated by the representation: g+2 (phi), g+1 (psi).
int boundary_order(int g, Kind which);

/// Nodes per dimension used when the caller passes m = 0: exact count for
/// polynomial fields, otherwise 32 (g = 0) or 24 (g = 1).
int auto_nodes(const LocalField& field, int g, int derivative_order);

/// Normalization constant of the multiple-integral representation, derived
/// from the diagonal boundary condition once per (g, which).
double normalization(int g, Kind which);

/// Φ_g(ξ, u) or Ψ_g(ξ, u), u descending of length 2g+2.
double phi_eval(const EpdSpec& spec, double xi, const std::vector<double>& u, int m = 0);

/// Exact partial derivative of phi_eval with respect to slot 0 (ξ) or slot i
/// (u_i, 1-based).
double phi_partial(const EpdSpec& spec, double xi, const std::vector<double>& u, int slot, int m = 0);

/// Extended-precision Φ_g/Ψ_g and exact partials for polynomial fields,
/// evaluated from Dirichlet power moments without quadrature.
long double phi_eval_ext(const EpdSpec& spec, long double xi, const std::vector<long double>& u);
long double phi_partial_ext(const EpdSpec& spec, long double xi, const std::vector<long double>& u, int slot);

/// Solution of the two-variable problem with diagonal data g and parameter ρ.
double epd2_eval(const std::function<double(double)>& g, double rho, double x1, double x2, int m = 64);

/// Closed form of Φ_0 (principal-value variant inside the band).
double phi0_closed(const LocalField& field, double xi, double u1, double u2, int m = 128);

/// Closed form of Φ_1(ξ, u1, u2, −u2, −u1) for even fields.
double phi1_symmetric_closed(const LocalField& field, double xi, double u1, double u2, int m = 128);

/// Ψ_1(u1, ·) + Ψ_1(u2, ·) at the symmetric configuration, as one quadrature.
double psi1_symmetric_sum(const LocalField& field, double u1, double u2, int m = 128);

/// Central-difference residual of the EPD equation coupling slots i and j
/// (slot 0 is ξ, slots 1.. are endpoints).
double epd_residual(const EpdSpec& spec, double xi, const std::vector<double>& u, int i, int j, double h);

}  // namespace eqm::epd
