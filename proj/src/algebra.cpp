#include "ncg/algebra.hpp"

#include <algorithm>
#include <cmath>

namespace ncg {

AlgebraElement AlgebraElement::delta(const Group& g, const GroupElement& x, cplx c) {
    AlgebraElement f(g);
    f.add_term(x, c);
    return f;
}

cplx AlgebraElement::at(const GroupElement& x) const {
    auto it = std::lower_bound(
        terms_.begin(), terms_.end(), x,
        [&](const auto& t, const GroupElement& v) { return canonical_less(group_, t.first, v); });
    if (it != terms_.end() && it->first == x) return it->second;
    return {0.0, 0.0};
}

void AlgebraElement::set(const GroupElement& x, cplx c) {
    auto it = std::lower_bound(
        terms_.begin(), terms_.end(), x,
        [&](const auto& t, const GroupElement& v) { return canonical_less(group_, t.first, v); });
    if (it != terms_.end() && it->first == x) {
        if (c == cplx{}) {
            terms_.erase(it);
        } else {
            it->second = c;
        }
    } else if (c != cplx{}) {
        terms_.insert(it, {x, c});
    }
}

void AlgebraElement::add_term(const GroupElement& x, cplx c) {
    if (c == cplx{}) return;
    auto it = std::lower_bound(
        terms_.begin(), terms_.end(), x,
        [&](const auto& t, const GroupElement& v) { return canonical_less(group_, t.first, v); });
    if (it != terms_.end() && it->first == x) {
        it->second += c;
        if (it->second == cplx{}) terms_.erase(it);
    } else {
        terms_.insert(it, {x, c});
    }
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
    AlgebraElement r = *this;
    for (const auto& [x, c] : o.terms_) r.add_term(x, c);
    return r;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
    AlgebraElement r = *this;
    for (const auto& [x, c] : o.terms_) r.add_term(x, -c);
    return r;
}

AlgebraElement AlgebraElement::operator*(cplx s) const {
    AlgebraElement r(group_);
    if (s == cplx{}) return r;
    r.terms_ = terms_;
    for (auto& [x, c] : r.terms_) c *= s;
    return r;
}

double AlgebraElement::ell1() const {
    double s = 0;
    for (const auto& [x, c] : terms_) s += std::abs(c);
    return s;
}

double AlgebraElement::weighted_ell1(const LengthFunction& w) const {
    double s = 0;
    for (const auto& [x, c] : terms_) s += std::abs(c) * w(group_, x);
    return s;
}

AlgebraElement twisted_convolution(const Cocycle& sigma, const AlgebraElement& f1,
                                   const AlgebraElement& f2) {
    const Group& g = f1.group();
    AlgebraElement r(g);
    for (const auto& [x, cx] : f1.terms())
        for (const auto& [y, cy] : f2.terms())
            r.add_term(add(g, x, y), cx * cy * sigma(g, x, y));
    return r;
}

AlgebraElement involution(const Cocycle& sigma, const AlgebraElement& f) {
    const Group& g = f.group();
    AlgebraElement r(g);
    for (const auto& [x, c] : f.terms()) {
        GroupElement xi = inverse(g, x);
        r.add_term(xi, std::conj(sigma(g, xi, x)) * std::conj(c));
    }
    return r;
}

AlgebraElement symmetrize(const Cocycle& sigma, const AlgebraElement& f) {
    return (f + involution(sigma, f)) * cplx(0.5, 0.0);
}

cplx trace(const AlgebraElement& f) { return f.at(identity(f.group())); }

namespace {

double fejer_1d(double m, unsigned k) {
    double v = 1.0 - std::abs(m) / static_cast<double>(k);
    return v > 0 ? v : 0.0;
}

}  // namespace

double fejer_coefficient(const Group& g, const GroupElement& x, unsigned k,
                         unsigned support_level) {
    switch (g.kind) {
        case FamilyKind::Solenoid: {
            // Identify G_L with Z^d and damp each integer coordinate.
            double c = 1.0;
            for (const SolCoord& sc : x.sol.coords) {
                BigInt a = sc.num * pow_int(g.prime, support_level - sc.exp);
                c *= fejer_1d(to_double(a), k);
            }
            return c;
        }
        case FamilyKind::BunceDeddens:
            // Root factor reproduced exactly; integer factor damped.
            return g.bd_integer_factor ? fejer_1d(to_double(x.bd.z), k) : 1.0;
        case FamilyKind::FiniteTest:
            return 1.0;
    }
    return 1.0;
}

AlgebraElement fejer_average(const AlgebraElement& f, unsigned k) {
    if (k < 1) throw std::invalid_argument("fejer_average: k >= 1 required");
    const Group& g = f.group();
    unsigned L = 0;
    for (const auto& [x, c] : f.terms()) L = std::max(L, level(g, x));
    AlgebraElement r(g);
    for (const auto& [x, c] : f.terms()) {
        double w = fejer_coefficient(g, x, k, L);
        if (w > 0) r.add_term(x, c * w);
    }
    return r;
}

}  // namespace ncg
