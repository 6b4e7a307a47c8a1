#include "ncg/ball.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

namespace ncg {

namespace {

// Membership test L(x) <= r, exact when the length tree supports it.
bool in_ball(const Group& g, const LengthFunction& l, const GroupElement& x, const Rational& r) {
    if (auto v = l.exact(g, x)) return *v <= r;
    if (auto v2 = l.exact_square(g, x)) return *v2 <= r * r;
    return l(g, x) <= to_double(r);
}

// Level cap for elements of the ball: F(g) <= r constrains the level as soon
// as the length tree contains F (all monotone combinators satisfy
// ||(0,y)|| = y for our presets). Returns nullopt when only the identity and
// G_0 can appear.
std::optional<unsigned> level_cap(const Group& g, const LengthFunction& l, const Rational& r) {
    // Locate an F node; default scale if absent (proper_on already vetoes
    // pure-H lengths on infinite families).
    const LengthFunction* f = nullptr;
    std::function<void(const LengthFunction&)> walk = [&](const LengthFunction& node) {
        if (node.kind() == LengthFunction::Kind::F) {
            f = &node;
        } else if (node.kind() == LengthFunction::Kind::Combined) {
            walk(node.left());
            walk(node.right());
        }
    };
    walk(l);
    Scale s = f ? f->scale() : Scale{};
    return s.max_level_within(g, r, g.max_level());
}

[[noreturn]] void budget_error(long long need, long long budget) {
    std::ostringstream os;
    os << "ball enumeration budget exceeded: needs " << need << " candidates, budget " << budget;
    throw std::runtime_error(os.str());
}

}  // namespace

Ball enumerate_ball(const Group& g, const LengthFunction& length, const Rational& radius,
                    long long budget) {
    if (radius < 0) throw std::invalid_argument("enumerate_ball: negative radius");
    if (!length.proper_on(g))
        throw std::invalid_argument(
            "enumerate_ball: length is not proper on this family (needs an F component)");

    Ball ball;
    ball.group = g;
    ball.length = std::make_shared<LengthFunction>(length);
    ball.radius = radius;
    std::vector<GroupElement> found;

    switch (g.kind) {
        case FamilyKind::Solenoid: {
            auto cap = level_cap(g, length, radius);
            unsigned nmax = cap.value_or(0);
            // Coordinates of ball elements satisfy |a_j / p^e| <= r, so at
            // the common level nmax the numerators lie in a box.
            BigInt pn = pow_int(g.prime, nmax);
            BigInt nbound = (numerator(radius) * pn) / denominator(radius);
            if (!cap) nbound = 0;  // only the identity can satisfy F <= r
            double per_axis = 2.0 * to_double(nbound) + 1.0;
            double vol = std::pow(per_axis, g.rank);
            if (vol > static_cast<double>(budget))
                budget_error(static_cast<long long>(vol), budget);

            std::vector<BigInt> a(g.rank, -nbound);
            bool done = false;
            while (!done) {
                GroupElement x = make_solenoid_element_raw(g, a, nmax);
                if (in_ball(g, length, x, radius)) found.push_back(std::move(x));
                // odometer
                unsigned j = 0;
                for (; j < g.rank; ++j) {
                    if (a[j] < nbound) {
                        ++a[j];
                        for (unsigned k = 0; k < j; ++k) a[k] = -nbound;
                        break;
                    }
                }
                if (j == g.rank) done = true;
            }
            break;
        }
        case FamilyKind::BunceDeddens: {
            auto cap = level_cap(g, length, radius);
            unsigned nmax = cap.value_or(0);
            BigInt an = g.alpha[nmax];
            BigInt zb = 0;
            if (g.bd_integer_factor) zb = numerator(radius) / denominator(radius);
            double vol = to_double(an) * (2.0 * to_double(zb) + 1.0);
            if (!cap) vol = g.bd_integer_factor ? (2.0 * to_double(zb) + 1.0) : 1.0;
            if (vol > static_cast<double>(budget))
                budget_error(static_cast<long long>(vol), budget);

            BigInt res_hi = cap ? an : BigInt(1);
            for (BigInt res = 0; res < res_hi; ++res) {
                for (BigInt z = -zb; z <= zb; ++z) {
                    GroupElement x = make_bd_element(g, res, nmax, z);
                    if (in_ball(g, length, x, radius)) found.push_back(std::move(x));
                    if (!g.bd_integer_factor) break;
                }
            }
            break;
        }
        case FamilyKind::FiniteTest: {
            double vol = std::pow(static_cast<double>(g.finite_modulus), g.rank);
            if (vol > static_cast<double>(budget))
                budget_error(static_cast<long long>(vol), budget);
            std::vector<BigInt> a(g.rank, 0);
            bool done = false;
            while (!done) {
                GroupElement x = make_finite_element(g, a);
                if (in_ball(g, length, x, radius)) found.push_back(std::move(x));
                unsigned j = 0;
                for (; j < g.rank; ++j) {
                    if (a[j] + 1 < g.finite_modulus) {
                        ++a[j];
                        for (unsigned k = 0; k < j; ++k) a[k] = 0;
                        break;
                    }
                }
                if (j == g.rank) done = true;
            }
            break;
        }
    }

    std::sort(found.begin(), found.end(),
              [&](const GroupElement& a, const GroupElement& b) { return canonical_less(g, a, b); });
    ball.elems = std::move(found);
    return ball;
}

DoublingReport doubling_report(const Group& g, const LengthFunction& length, double theta,
                               const std::vector<Rational>& radii, double c, long long budget) {
    if (!(theta > 1.0)) throw std::invalid_argument("doubling_report: theta must be > 1");
    DoublingReport rep;
    rep.theta = theta;
    rep.c = c;
    for (const Rational& r : radii) {
        if (r < 1) throw std::invalid_argument("doubling_report: radii must be >= 1");
        DoublingRow row;
        row.radius = r;
        // theta * r as an exact rational when theta is representable; the
        // interesting thetas (2, integer powers) are exact in double.
        Rational tr = Rational(theta) * r;
        row.ball_small = enumerate_ball(g, length, r, budget).size();
        row.ball_large = enumerate_ball(g, length, tr, budget).size();
        row.ratio = row.ball_small > 0
                        ? static_cast<double>(row.ball_large) / static_cast<double>(row.ball_small)
                        : 0.0;
        rep.max_ratio = std::max(rep.max_ratio, row.ratio);
        rep.rows.push_back(row);
    }
    rep.bounded_by_c = rep.max_ratio <= c;
    return rep;
}

double distance_to_level(const Group& g, const LengthFunction& length_h, const GroupElement& x,
                         unsigned n) {
    switch (g.kind) {
        case FamilyKind::Solenoid: {
            // Per-coordinate nearest point of (1/p^n)Z, then the selected norm.
            double acc = 0;
            for (const SolCoord& c : x.sol.coords) {
                Rational d = 0;
                if (c.exp > n) {
                    BigInt m = pow_int(g.prime, c.exp - n);
                    BigInt r = symmetric_mod(c.num, m);
                    d = Rational(abs(r), pow_int(g.prime, c.exp));
                }
                double v = to_double(d);
                switch (length_h.hnorm()) {
                    case HNorm::Max: acc = std::max(acc, v); break;
                    case HNorm::One: acc += v; break;
                    case HNorm::Euclidean: acc += v * v; break;
                }
            }
            return length_h.hnorm() == HNorm::Euclidean ? std::sqrt(acc) : acc;
        }
        case FamilyKind::BunceDeddens: {
            // Distance from the root to the alpha_n-th roots; the integer
            // factor contributes nothing (G_n contains all of Z).
            if (x.bd.level <= n) return 0.0;
            Rational q = Rational(x.bd.residue * g.alpha[n], g.alpha[x.bd.level]);
            BigInt nearest = (numerator(q) * 2 + denominator(q)) / (2 * denominator(q));
            Rational dturn = abs(q - Rational(nearest)) / Rational(g.alpha[n]);
            double t = to_double(dturn);
            return length_h.circle() == CircleLength::Arc ? 2.0 * std::numbers::pi * t
                                                          : 2.0 * std::sin(std::numbers::pi * t);
        }
        case FamilyKind::FiniteTest:
            return 0.0;
    }
    return 0.0;
}

HausdorffEstimate hausdorff_subgroup_distance(const Group& g, const LengthFunction& length_h,
                                              const LengthFunction& window_length, unsigned n,
                                              const Rational& window_radius, long long budget) {
    HausdorffEstimate est;
    est.window_radius = window_radius;
    Ball window = enumerate_ball(g, window_length, window_radius, budget);
    est.window_size = window.size();
    for (const GroupElement& x : window.elems)
        est.enumerated = std::max(est.enumerated, distance_to_level(g, length_h, x, n));

    if (g.kind == FamilyKind::Solenoid && length_h.hnorm() == HNorm::Max) {
        est.exact = 0.5 / to_double(pow_int(g.prime, n));
    } else if (g.kind == FamilyKind::BunceDeddens && length_h.circle() == CircleLength::Arc) {
        est.exact = std::numbers::pi / to_double(g.alpha[n]);
    }
    return est;
}

}  // namespace ncg
