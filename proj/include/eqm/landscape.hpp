#pragma once

#include <vector>

#include "eqm/field.hpp"

namespace eqm {

struct Minimum {
    double x = 0.0;
    double value = 0.0;
};

/// Radius beyond which V′(ξ) has the sign of ξ.
double critical_point_bound(const FieldSpec& field);

/// Local minimizers of V, ascending in x.
std::vector<Minimum> local_minima(const FieldSpec& field);

/// Lowest local minimum; exact ties resolve to the larger x.
Minimum global_minimum(const FieldSpec& field);

/// Radius r with (V(c+r) + V(c−r))/2 − V(c) = mass/π about the local-frame
/// origin c; this is exact for quadratic wells.
double mass_radius(const LocalField& field, double mass);

}  // namespace eqm
