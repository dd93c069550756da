#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eqm/field.hpp"

namespace eqm::asymptotics {

enum class Regime { odd_n_neg_t, odd_n_pos_t, even_n_neg_t, even_n_pos_t_convex };

std::string regime_name(Regime r);

struct AsymptoticPrediction {
    Regime regime = Regime::odd_n_neg_t;
    double scaling_exponent = 0.0;
    double limit_constant = 0.0;
    /// Argmin of V at |t| (or 1 when t = 0) with the requested sign.
    double well_location = 0.0;
    /// Side of the real line the support concentrates on (+1, −1, or 0 when
    /// it is centred at the origin).
    int side = 0;
    /// Exponents and constants of the dominant V* terms and of p.
    int n = 0;
    double M = 0.0;
    double C = 0.0;
};

/// n!! with (−1)!! = 0!! = 1.
double double_factorial(int n);

/// Leading-order endpoint behaviour for sign(t) = sign_of_t. Throws
/// UnsupportedRegime when no constant applies.
AsymptoticPrediction predict(const FieldSpec& field, int sign_of_t);

/// Predicted endpoints u_i ≈ side·C·|t|^e at the field's own t.
std::pair<double, double> predicted_endpoints(const AsymptoticPrediction& p, double t);

/// Global-coordinate Newton seed for a one-cut (g = 0) or symmetric two-cut
/// (g = 1, returns (u1, u2) with u2 > 0) solve, when a regime applies.
std::optional<std::pair<double, double>> seed_endpoints(const FieldSpec& field, int g);

/// Whether the global minimizer of V (every local minimizer when
/// `all_minima`) lies in the support given as descending endpoint pairs.
bool wells_inside(const FieldSpec& field, const std::vector<double>& endpoints, bool all_minima);

struct StudyRow {
    double t = 0.0;
    bool solved = false;
    std::string ansatz;
    std::vector<double> endpoints;
    double scaled_u1 = 0.0;
    double scaled_u2 = 0.0;
    double deviation = 0.0;
    double width = 0.0;
    int gaps = -1;
    bool verified = false;
    bool well_inside = false;
    std::string error;
};

/// Solves at |t| = 10^1 … 10^decades and compares against the prediction.
std::vector<StudyRow> scaling_study(const FieldSpec& field, int sign_of_t, int decades);

/// Rows are nonincreasing in deviation beyond the first decade.
bool deviations_monotone(const std::vector<StudyRow>& rows);

std::string study_csv(const std::vector<StudyRow>& rows);

}  // namespace eqm::asymptotics
