#include "ncg/length.hpp"

#include <cmath>
#include <numbers>

namespace ncg {

Rational Scale::at(const Group& g, unsigned n) const {
    if (family_default) {
        switch (g.kind) {
            case FamilyKind::Solenoid: return Rational(pow_int(g.prime, n));
            case FamilyKind::BunceDeddens:
                if (n >= g.alpha.size()) throw std::out_of_range("scale: level beyond tower");
                return Rational(g.alpha[n]);
            case FamilyKind::FiniteTest: return Rational(n + 1);
        }
    }
    if (n >= table.size()) throw std::out_of_range("scale: level beyond table");
    return table[n];
}

std::optional<unsigned> Scale::max_level_within(const Group& g, const Rational& r,
                                                unsigned level_cap) const {
    std::optional<unsigned> best;
    for (unsigned n = 0; n <= level_cap; ++n) {
        Rational s;
        try {
            s = at(g, n);
        } catch (const std::out_of_range&) {
            break;
        }
        if (s <= r)
            best = n;
        else
            break;  // strictly increasing
    }
    return best;
}

LengthFunction LengthFunction::h_norm(HNorm n) {
    LengthFunction l;
    l.kind_ = Kind::H;
    l.hnorm_ = n;
    return l;
}

LengthFunction LengthFunction::h_circle(CircleLength c) {
    LengthFunction l;
    l.kind_ = Kind::H;
    l.circle_ = c;
    return l;
}

LengthFunction LengthFunction::f_scale(Scale s) {
    if (!s.family_default) {
        if (s.table.empty()) throw std::invalid_argument("scale table empty");
        if (s.table[0] < 0) throw std::invalid_argument("scale must be nonnegative");
        for (size_t i = 1; i < s.table.size(); ++i)
            if (!(s.table[i] > s.table[i - 1]))
                throw std::invalid_argument("scale must be strictly increasing");
    }
    LengthFunction l;
    l.kind_ = Kind::F;
    l.scale_ = std::move(s);
    return l;
}

LengthFunction LengthFunction::combine(LengthFunction a, LengthFunction b, Combinator c,
                                       double pnorm_p) {
    if (c == Combinator::PNorm && !(pnorm_p >= 1.0))
        throw std::invalid_argument("combine: p-norm requires p >= 1 (monotone)");
    LengthFunction l;
    l.kind_ = Kind::Combined;
    l.comb_ = c;
    l.pnorm_p_ = pnorm_p;
    l.left_ = std::make_shared<LengthFunction>(std::move(a));
    l.right_ = std::make_shared<LengthFunction>(std::move(b));
    return l;
}

namespace {

double h_value(const LengthFunction& l, const Group& g, const GroupElement& x) {
    switch (g.kind) {
        case FamilyKind::Solenoid: {
            double acc = 0;
            for (const SolCoord& c : x.sol.coords) {
                double v = std::abs(to_double(c.num)) / to_double(pow_int(g.prime, c.exp));
                switch (l.hnorm()) {
                    case HNorm::Max: acc = std::max(acc, v); break;
                    case HNorm::One: acc += v; break;
                    case HNorm::Euclidean: acc += v * v; break;
                }
            }
            return l.hnorm() == HNorm::Euclidean ? std::sqrt(acc) : acc;
        }
        case FamilyKind::BunceDeddens: {
            Rational t = bd_turn(g, x);  // in [0,1)
            double theta = to_double(t);
            if (theta > 0.5) theta = 1.0 - theta;
            double lz = l.circle() == CircleLength::Arc
                            ? 2.0 * std::numbers::pi * theta
                            : 2.0 * std::sin(std::numbers::pi * theta);
            if (g.bd_integer_factor) lz += std::abs(to_double(x.bd.z));
            return lz;
        }
        case FamilyKind::FiniteTest: {
            // Cyclic distance per coordinate, combined by the selected norm.
            double acc = 0;
            for (const BigInt& c : x.fin.coords) {
                BigInt d = c;
                if (2 * d > g.finite_modulus) d = g.finite_modulus - d;
                double v = to_double(d);
                switch (l.hnorm()) {
                    case HNorm::Max: acc = std::max(acc, v); break;
                    case HNorm::One: acc += v; break;
                    case HNorm::Euclidean: acc += v * v; break;
                }
            }
            return l.hnorm() == HNorm::Euclidean ? std::sqrt(acc) : acc;
        }
    }
    return 0;
}

std::optional<Rational> h_exact(const LengthFunction& l, const Group& g, const GroupElement& x) {
    switch (g.kind) {
        case FamilyKind::Solenoid: {
            if (l.hnorm() == HNorm::Euclidean) return std::nullopt;  // sqrt needed
            Rational acc = 0;
            for (const SolCoord& c : x.sol.coords) {
                Rational v(abs(c.num), pow_int(g.prime, c.exp));
                if (l.hnorm() == HNorm::Max)
                    acc = std::max(acc, v);
                else
                    acc += v;
            }
            return acc;
        }
        case FamilyKind::BunceDeddens:
            return std::nullopt;  // arc/chord lengths are irrational
        case FamilyKind::FiniteTest: {
            if (l.hnorm() == HNorm::Euclidean) return std::nullopt;
            Rational acc = 0;
            for (const BigInt& c : x.fin.coords) {
                BigInt d = c;
                if (2 * d > g.finite_modulus) d = g.finite_modulus - d;
                if (l.hnorm() == HNorm::Max)
                    acc = std::max(acc, Rational(d));
                else
                    acc += Rational(d);
            }
            return acc;
        }
    }
    return std::nullopt;
}

// Exact square of the H part, for the euclidean coordinate norm.
std::optional<Rational> h_exact_square(const LengthFunction& l, const Group& g,
                                       const GroupElement& x) {
    if (g.kind != FamilyKind::Solenoid && g.kind != FamilyKind::FiniteTest) return std::nullopt;
    if (l.hnorm() != HNorm::Euclidean) {
        auto v = h_exact(l, g, x);
        if (!v) return std::nullopt;
        return (*v) * (*v);
    }
    Rational acc = 0;
    if (g.kind == FamilyKind::Solenoid) {
        for (const SolCoord& c : x.sol.coords) {
            Rational v(c.num, pow_int(g.prime, c.exp));
            acc += v * v;
        }
    } else {
        for (const BigInt& c : x.fin.coords) {
            BigInt d = c;
            if (2 * d > g.finite_modulus) d = g.finite_modulus - d;
            acc += Rational(d * d);
        }
    }
    return acc;
}

Rational f_exact(const LengthFunction& l, const Group& g, const GroupElement& x) {
    if (is_identity(g, x)) return 0;
    unsigned n = level(g, x);
    // On G_0 \ {1} the value is pinned to scale(0).
    return l.scale().at(g, n);
}

}  // namespace

double LengthFunction::operator()(const Group& g, const GroupElement& x) const {
    switch (kind_) {
        case Kind::H: return h_value(*this, g, x);
        case Kind::F: return to_double(f_exact(*this, g, x));
        case Kind::Combined: {
            double a = (*left_)(g, x), b = (*right_)(g, x);
            switch (comb_) {
                case Combinator::Max: return std::max(a, b);
                case Combinator::Sum: return a + b;
                case Combinator::Euclidean: return std::hypot(a, b);
                case Combinator::PNorm:
                    return std::pow(std::pow(a, pnorm_p_) + std::pow(b, pnorm_p_), 1.0 / pnorm_p_);
            }
        }
    }
    return 0;
}

std::optional<Rational> LengthFunction::exact(const Group& g, const GroupElement& x) const {
    switch (kind_) {
        case Kind::H: return h_exact(*this, g, x);
        case Kind::F: return f_exact(*this, g, x);
        case Kind::Combined: {
            if (comb_ != Combinator::Max && comb_ != Combinator::Sum) return std::nullopt;
            auto a = left_->exact(g, x);
            auto b = right_->exact(g, x);
            if (!a || !b) return std::nullopt;
            return comb_ == Combinator::Max ? std::max(*a, *b) : *a + *b;
        }
    }
    return std::nullopt;
}

std::optional<Rational> LengthFunction::exact_square(const Group& g, const GroupElement& x) const {
    switch (kind_) {
        case Kind::H: return h_exact_square(*this, g, x);
        case Kind::F: {
            Rational v = f_exact(*this, g, x);
            return v * v;
        }
        case Kind::Combined: {
            if (comb_ == Combinator::Euclidean) {
                auto a = left_->exact_square(g, x);
                auto b = right_->exact_square(g, x);
                if (!a || !b) return std::nullopt;
                return *a + *b;
            }
            auto v = exact(g, x);
            if (!v) return std::nullopt;
            return (*v) * (*v);
        }
    }
    return std::nullopt;
}

bool LengthFunction::has_f() const {
    switch (kind_) {
        case Kind::H: return false;
        case Kind::F: return true;
        case Kind::Combined: return left_->has_f() || right_->has_f();
    }
    return false;
}

bool LengthFunction::has_h() const {
    switch (kind_) {
        case Kind::H: return true;
        case Kind::F: return false;
        case Kind::Combined: return left_->has_h() || right_->has_h();
    }
    return false;
}

bool LengthFunction::proper_on(const Group& g) const {
    switch (g.kind) {
        case FamilyKind::FiniteTest:
            return true;
        case FamilyKind::Solenoid:
            // Levels must be bounded by F and coordinates by H.
            return has_f() && has_h();
        case FamilyKind::BunceDeddens:
            // F bounds the level; with the integer factor, H is needed to
            // bound z. Without it, every level set is already finite.
            return has_f() && (!g.bd_integer_factor || has_h());
    }
    return false;
}

LengthFunction default_length_h(const Group& g, HNorm n, CircleLength c) {
    if (g.kind == FamilyKind::BunceDeddens) return LengthFunction::h_circle(c);
    return LengthFunction::h_norm(n);
}

LengthFunction default_length_f(const Group& g) {
    (void)g;
    return LengthFunction::f_scale(Scale{});
}

LengthFunction default_length(const Group& g, Combinator c, HNorm n, CircleLength cl) {
    return LengthFunction::combine(default_length_h(g, n, cl), default_length_f(g), c);
}

}  // namespace ncg
