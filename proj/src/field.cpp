#include "eqm/field.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "eqm/errors.hpp"

namespace eqm {

namespace {

#ifdef __SIZEOF_FLOAT128__
using wide = __float128;
#else
using wide = long double;
#endif

double falling(double a, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= a - i;
    return r;
}

double horner(const std::vector<double>& c, double x) {
    double r = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
    return r;
}

std::vector<double> differentiate(const std::vector<double>& c) {
    if (c.size() <= 1) return {0.0};
    std::vector<double> d(c.size() - 1);
    for (std::size_t j = 1; j < c.size(); ++j) d[j - 1] = c[j] * static_cast<double>(j);
    return d;
}

std::string side_name(int s) { return s > 0 ? "+inf" : "-inf"; }

}  // namespace

PowerTerm PowerTerm::monomial(int k, double c) {
    if (k < 0) throw InvalidField("monomial exponent must be a non-negative integer");
    return PowerTerm{TermKind::monomial, static_cast<double>(k), c};
}

PowerTerm PowerTerm::abs_power(double a, double c) {
    if (!(a > 3.0)) throw InvalidField("abs_power exponent must exceed 3");
    return PowerTerm{TermKind::abs_power, a, c};
}

double PowerTerm::derivative(double xi, int order) const {
    if (order < 0) throw DomainError("negative derivative order");
    if (kind == TermKind::monomial) {
        const int k = static_cast<int>(exponent);
        if (order > k) return 0.0;
        return coefficient * falling(k, order) * std::pow(xi, k - order);
    }
    const double a = exponent;
    const double rest = a - order;
    const double sgn = (order % 2 == 0 || xi >= 0.0) ? 1.0 : -1.0;
    if (xi == 0.0) {
        if (rest > 0.0) return 0.0;
        if (rest == 0.0 && order % 2 == 0) return coefficient * falling(a, order);
        std::ostringstream os;
        os << "derivative of order " << order << " of |x|^" << a << " does not exist at 0";
        throw DomainError(os.str());
    }
    return coefficient * falling(a, order) * std::pow(std::abs(xi), rest) * sgn;
}

FieldSpec::FieldSpec(std::vector<PowerTerm> vstar, std::vector<double> p_coeffs, double t)
    : vstar_(std::move(vstar)), p_(std::move(p_coeffs)), t_(t) {
    if (p_.size() < 2) throw InvalidField("p must have degree at least 1");
    if (p_.back() != 1.0) throw InvalidField("p must be monic (last coefficient exactly 1)");
    for (const auto& term : vstar_) {
        if (term.kind == TermKind::monomial) {
            if (term.exponent < 0 || term.exponent != std::floor(term.exponent))
                throw InvalidField("monomial exponent must be a non-negative integer");
        } else if (!(term.exponent > 3.0)) {
            throw InvalidField("abs_power exponent must exceed 3");
        }
        if (!std::isfinite(term.coefficient)) throw InvalidField("non-finite coefficient");
    }
    if (!std::isfinite(t_)) throw InvalidField("non-finite t");
}

FieldSpec FieldSpec::with_t(double t) const { return FieldSpec(vstar_, p_, t); }

double FieldSpec::eval_derivative(double xi, int order) const {
    if (order < 0 || order > 4) throw DomainError("derivative order must lie in 0..4");
    double s = 0.0;
    for (const auto& term : vstar_) s += term.derivative(xi, order);
    std::vector<double> c = p_;
    for (int i = 0; i < order; ++i) c = differentiate(c);
    return s + t_ * horner(c, xi);
}

GrowthCheck FieldSpec::validate_growth() const {
    for (int s : {+1, -1}) {
        std::map<double, double> lead;
        for (const auto& term : vstar_) {
            double c = term.coefficient;
            if (term.kind == TermKind::monomial && s < 0 && static_cast<int>(term.exponent) % 2 == 1)
                c = -c;
            lead[term.exponent] += c;
        }
        for (std::size_t j = 0; j < p_.size(); ++j) {
            double c = t_ * p_[j];
            if (s < 0 && j % 2 == 1) c = -c;
            lead[static_cast<double>(j)] += c;
        }
        double exponent = 0.0, coef = 0.0;
        for (auto it = lead.rbegin(); it != lead.rend(); ++it) {
            if (it->second != 0.0) {
                exponent = it->first;
                coef = it->second;
                break;
            }
        }
        if (exponent == 0.0 || coef <= 0.0) {
            std::ostringstream os;
            os << "growth fails at " << side_name(s) << ": dominant term has exponent " << exponent
               << " and coefficient " << coef;
            return {false, os.str()};
        }
    }
    return {true, "ok"};
}

bool FieldSpec::is_even() const {
    for (const auto& term : vstar_)
        if (term.kind == TermKind::monomial && static_cast<int>(term.exponent) % 2 == 1 &&
            term.coefficient != 0.0)
            return false;
    for (std::size_t j = 1; j < p_.size(); j += 2)
        if (t_ * p_[j] != 0.0) return false;
    return true;
}

std::vector<double> FieldSpec::polynomial_part() const {
    std::size_t deg = p_.size() - 1;
    for (const auto& term : vstar_)
        if (term.kind == TermKind::monomial) deg = std::max(deg, static_cast<std::size_t>(term.exponent));
    std::vector<double> c(deg + 1, 0.0);
    for (std::size_t j = 0; j < p_.size(); ++j) c[j] += t_ * p_[j];
    for (const auto& term : vstar_)
        if (term.kind == TermKind::monomial) c[static_cast<std::size_t>(term.exponent)] += term.coefficient;
    while (c.size() > 1 && c.back() == 0.0) c.pop_back();
    return c;
}

std::vector<PowerTerm> FieldSpec::abs_terms() const {
    std::vector<PowerTerm> out;
    for (const auto& term : vstar_)
        if (term.kind == TermKind::abs_power && term.coefficient != 0.0) out.push_back(term);
    return out;
}

LocalField::LocalField(const FieldSpec& spec, double origin)
    : spec_(spec), origin_(origin), abs_(spec.abs_terms()) {
    const std::vector<double> a = spec.polynomial_part();
    // Taylor shift by repeated synthetic division.
    std::vector<wide> b(a.begin(), a.end());
    const wide c = origin;
    const std::size_t n = b.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = n - 1; j > i; --j) b[j - 1] += c * b[j];
    poly_.resize(n);
    for (std::size_t j = 0; j < n; ++j) poly_[j] = static_cast<double>(b[j]);
    poly_[0] = 0.0;
    dpoly_.push_back(poly_);
    for (int k = 1; k <= 6; ++k) dpoly_.push_back(differentiate(dpoly_.back()));
    for (const auto& term : abs_) abs_at_origin_ += term.coefficient * std::pow(std::abs(origin), term.exponent);
}

double LocalField::derivative(double x, int order) const {
    if (order < 0 || order > 6) throw DomainError("derivative order must lie in 0..6");
    double s = horner(dpoly_[static_cast<std::size_t>(order)], x);
    if (abs_.empty()) return s;
    const double y = origin_ + x;
    if (order == 0) {
        if (origin_ != 0.0 && x / origin_ > -1.0) {
            const double q = std::log1p(x / origin_);
            for (const auto& term : abs_)
                s += term.coefficient * std::pow(std::abs(origin_), term.exponent) *
                     std::expm1(term.exponent * q);
            return s;
        }
        for (const auto& term : abs_) s += term.derivative(y, 0);
        return s - abs_at_origin_;
    }
    for (const auto& term : abs_) s += term.derivative(y, order);
    return s;
}

FieldSpec field_from_json(const nlohmann::json& j) {
    try {
        std::vector<PowerTerm> terms;
        if (j.contains("vstar")) {
            for (const auto& e : j.at("vstar")) {
                const std::string kind = e.at("kind").get<std::string>();
                const double c = e.at("c").get<double>();
                if (kind == "monomial") {
                    const auto& k = e.at("k");
                    if (!k.is_number_integer() && !(k.is_number() && k.get<double>() == std::floor(k.get<double>())))
                        throw ParseError("monomial exponent k must be an integer");
                    terms.push_back(PowerTerm::monomial(static_cast<int>(k.get<double>()), c));
                } else if (kind == "abs_power") {
                    terms.push_back(PowerTerm::abs_power(e.at("a").get<double>(), c));
                } else {
                    throw ParseError("unknown term kind '" + kind + "'");
                }
            }
        }
        auto coeffs = j.at("p").at("coeffs").get<std::vector<double>>();
        return FieldSpec(std::move(terms), std::move(coeffs), j.at("t").get<double>());
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid field JSON: ") + e.what());
    } catch (const InvalidField& e) {
        throw ParseError(e.what());
    }
}

nlohmann::json field_to_json(const FieldSpec& f) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& term : f.vstar()) {
        if (term.kind == TermKind::monomial)
            terms.push_back({{"kind", "monomial"}, {"k", static_cast<int>(term.exponent)}, {"c", term.coefficient}});
        else
            terms.push_back({{"kind", "abs_power"}, {"a", term.exponent}, {"c", term.coefficient}});
    }
    return {{"vstar", terms}, {"p", {{"coeffs", f.p_coeffs()}}}, {"t", f.t()}};
}

}  // namespace eqm
