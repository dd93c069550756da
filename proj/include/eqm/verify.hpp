#pragma once

#include <json.hpp>

#include "eqm/density.hpp"
#include "eqm/field.hpp"
#include "eqm/rhp.hpp"

namespace eqm::verify {

struct Tolerances {
    double eq = 1e-6;
    double ineq = 1e-8;
    double mass = 1e-8;
};

struct SignGapReport {
    bool constraint_sign_ok = false;
    bool gap_integral_ok = false;
    /// Smallest σ_k·Φ_g over the band samples.
    double min_band_sign = 0.0;
    /// Smallest signed gap or exterior integral (positive when satisfied).
    double min_integral = 0.0;
};

struct VariationalReport {
    double equality_deviation = 0.0;
    double inequality_margin = 0.0;
    double mass_residual = 0.0;
    bool constraint_sign_ok = true;
    bool gap_integral_ok = true;
    /// Mean of Lψ − V over the support samples (local frame).
    double lagrange_mean = 0.0;
    /// max |Lψ(x) − (1/π)log|x − c|| at ±100·max(u_max, 1) about the
    /// centre of mass c.
    double far_field_error = 0.0;
    int gaps = 0;

    bool passed(const Tolerances& tol = {}) const;
};

/// Lψ(ξ) − (V(ξ) − V(origin)) at global ξ.
double effective_potential(const DensityTable& density, const FieldSpec& field, double xi);

VariationalReport check_variational(const DensityTable& density, const FieldSpec& field, int probe_n = 400,
                                    const Tolerances& tol = {});

/// Sign of Φ_g on the bands and the gap/exterior integral conditions, with u
/// and `field` in the same local frame.
SignGapReport check_sign_and_gaps(const rhp::EndpointVector& u, const LocalField& field);

/// check_variational plus check_sign_and_gaps on the density's own support.
VariationalReport certify(const DensityTable& density, const FieldSpec& field, int probe_n = 400,
                          const Tolerances& tol = {});

nlohmann::json to_json(const VariationalReport& r);

}  // namespace eqm::verify
