#include "eqm/landscape.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "eqm/errors.hpp"

namespace eqm {

namespace {

double side_bound(const FieldSpec& field, int s) {
    // V′(s·y) as Σ c_e y^e for y > 0.
    std::map<double, double> terms;
    const auto poly = field.polynomial_part();
    for (std::size_t j = 1; j < poly.size(); ++j) {
        double c = static_cast<double>(j) * poly[j];
        if (s < 0 && (j - 1) % 2 == 1) c = -c;
        terms[static_cast<double>(j - 1)] += c;
    }
    for (const auto& a : field.abs_terms()) terms[a.exponent - 1.0] += s * a.exponent * a.coefficient;
    double lead_e = 0.0, lead_c = 0.0;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it)
        if (it->second != 0.0) {
            lead_e = it->first;
            lead_c = it->second * s;
            break;
        }
    if (!(lead_c > 0.0)) throw InvalidField("field does not grow on both sides");
    double rest = 0.0, next_e = -1.0;
    for (const auto& [e, c] : terms) {
        if (e >= lead_e) continue;
        rest += std::abs(c);
        if (c != 0.0) next_e = std::max(next_e, e);
    }
    if (rest == 0.0) return 1.0;
    return std::max(1.0, std::pow(rest / lead_c, 1.0 / (lead_e - std::max(next_e, 0.0))));
}

double bisect_root(const FieldSpec& f, double a, double b) {
    double fa = f.eval_derivative(a, 1);
    for (int it = 0; it < 200 && b - a > 0.0; ++it) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;
        const double fm = f.eval_derivative(m, 1);
        if (fm == 0.0) return m;
        if ((fm < 0.0) == (fa < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

double critical_point_bound(const FieldSpec& field) { return std::max(side_bound(field, 1), side_bound(field, -1)); }

std::vector<Minimum> local_minima(const FieldSpec& field) {
    const double B = 1.05 * critical_point_bound(field) + 1e-3;
    constexpr int n = 20000;
    std::vector<Minimum> out;
    double xa = -B, da = field.eval_derivative(xa, 1);
    for (int i = 1; i <= n; ++i) {
        const double xb = -B + 2.0 * B * i / n;
        const double db = field.eval_derivative(xb, 1);
        if (da < 0.0 && db >= 0.0) {
            const double x = db == 0.0 ? xb : bisect_root(field, xa, xb);
            out.push_back({x, field.value(x)});
        }
        xa = xb;
        da = db;
    }
    if (out.empty()) throw InvalidField("no local minimum located");
    return out;
}

Minimum global_minimum(const FieldSpec& field) {
    const auto mins = local_minima(field);
    Minimum best = mins.front();
    for (const auto& m : mins)
        if (m.value <= best.value) best = m;
    return best;
}

double mass_radius(const LocalField& field, double mass) {
    const double target = mass / std::numbers::pi;
    auto excess = [&](double r) { return 0.5 * (field.value(r) + field.value(-r)) - target; };
    double lo = 0.0, hi = 1e-8;
    int guard = 0;
    while (excess(hi) < 0.0) {
        lo = hi;
        hi *= 2.0;
        if (++guard > 200) throw InvalidField("mass radius diverged");
    }
    for (int it = 0; it < 200; ++it) {
        const double m = 0.5 * (lo + hi);
        if (m <= lo || m >= hi) break;
        (excess(m) < 0.0 ? lo : hi) = m;
    }
    return 0.5 * (lo + hi);
}

}  // namespace eqm
