#include "ncg/group.hpp"

#include <algorithm>
#include <sstream>

namespace ncg {

namespace {

bool is_prime_small(const BigInt& n) {
    if (n < 2) return false;
    for (BigInt d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

void reduce_sol(SolCoord& c, unsigned p) {
    if (c.num == 0) {
        c.exp = 0;
        return;
    }
    while (c.exp > 0 && c.num % p == 0) {
        c.num /= p;
        --c.exp;
    }
}

// Reduce a BD root to its minimal level: divide out the prime tower ratios
// while they divide the residue.
void reduce_bd(BDElem& e, const std::vector<BigInt>& alpha) {
    e.residue %= alpha[e.level];
    if (e.residue < 0) e.residue += alpha[e.level];
    if (e.residue == 0) {
        e.level = 0;
        return;
    }
    while (e.level > 0) {
        BigInt q = alpha[e.level] / alpha[e.level - 1];
        if (e.residue % q == 0)
            e.residue /= q, --e.level;
        else
            break;
    }
    // Level 0 roots keep their residue mod alpha[0]; residue 0 means the
    // trivial character.
}

int cmp(const BigInt& a, const BigInt& b) { return a < b ? -1 : (b < a ? 1 : 0); }

// Compare a/p^ea against b/p^eb exactly.
int cmp_sol(const SolCoord& a, const SolCoord& b, unsigned p) {
    unsigned e = std::max(a.exp, b.exp);
    return cmp(a.num * pow_int(p, e - a.exp), b.num * pow_int(p, e - b.exp));
}

}  // namespace

Group Group::solenoid(unsigned p, unsigned d) {
    if (!is_prime_small(p)) throw std::invalid_argument("solenoid: p must be prime");
    if (d < 1) throw std::invalid_argument("solenoid: rank must be >= 1");
    Group g;
    g.kind = FamilyKind::Solenoid;
    g.prime = p;
    g.rank = d;
    return g;
}

Group Group::bunce_deddens(std::vector<BigInt> alpha, bool with_integer_factor) {
    if (alpha.empty()) throw std::invalid_argument("bunce_deddens: empty tower");
    if (alpha[0] < 1) throw std::invalid_argument("bunce_deddens: alpha_0 must be >= 1");
    for (size_t i = 1; i < alpha.size(); ++i) {
        if (alpha[i] % alpha[i - 1] != 0 || !is_prime_small(alpha[i] / alpha[i - 1]))
            throw std::invalid_argument("bunce_deddens: successive ratios must be prime");
    }
    Group g;
    g.kind = FamilyKind::BunceDeddens;
    g.alpha = std::move(alpha);
    g.bd_integer_factor = with_integer_factor;
    return g;
}

Group Group::finite_test(unsigned m, unsigned d) {
    if (m < 1 || d < 1) throw std::invalid_argument("finite_test: bad parameters");
    Group g;
    g.kind = FamilyKind::FiniteTest;
    g.finite_modulus = m;
    g.rank = d;
    return g;
}

unsigned Group::max_level() const {
    switch (kind) {
        case FamilyKind::Solenoid: return 64;  // soft cap; balls bound levels far below this
        case FamilyKind::BunceDeddens: return static_cast<unsigned>(alpha.size() - 1);
        case FamilyKind::FiniteTest: return 0;
    }
    return 0;
}

std::string Group::describe() const {
    std::ostringstream os;
    switch (kind) {
        case FamilyKind::Solenoid:
            os << "Z[1/" << prime << "]^" << rank;
            break;
        case FamilyKind::BunceDeddens:
            os << "Z(alpha)" << (bd_integer_factor ? " x Z" : "") << ", alpha=(";
            for (size_t i = 0; i < alpha.size(); ++i) os << (i ? "," : "") << alpha[i];
            os << ")";
            break;
        case FamilyKind::FiniteTest:
            os << "(Z/" << finite_modulus << ")^" << rank;
            break;
    }
    return os.str();
}

GroupElement identity(const Group& g) {
    GroupElement x;
    x.kind = g.kind;
    switch (g.kind) {
        case FamilyKind::Solenoid:
            x.sol.coords.assign(g.rank, SolCoord{0, 0});
            break;
        case FamilyKind::BunceDeddens:
            x.bd = BDElem{0, 0, 0};
            break;
        case FamilyKind::FiniteTest:
            x.fin.coords.assign(g.rank, BigInt(0));
            break;
    }
    return x;
}

bool is_identity(const Group& g, const GroupElement& x) { return x == identity(g); }

GroupElement make_solenoid_element(const Group& g, const std::vector<Rational>& coords) {
    if (g.kind != FamilyKind::Solenoid) throw std::invalid_argument("wrong family");
    if (coords.size() != g.rank) throw std::invalid_argument("wrong rank");
    GroupElement x;
    x.kind = g.kind;
    x.sol.coords.reserve(g.rank);
    for (const Rational& q : coords) {
        BigInt den = denominator(q);
        unsigned e = 0;
        BigInt d = den;
        while (d % g.prime == 0) d /= g.prime, ++e;
        if (d != 1) throw std::invalid_argument("coordinate denominator is not a power of p");
        SolCoord c{numerator(q), e};
        reduce_sol(c, g.prime);
        x.sol.coords.push_back(std::move(c));
    }
    return x;
}

GroupElement make_solenoid_element_raw(const Group& g, std::vector<BigInt> nums, unsigned lvl) {
    if (g.kind != FamilyKind::Solenoid) throw std::invalid_argument("wrong family");
    if (nums.size() != g.rank) throw std::invalid_argument("wrong rank");
    GroupElement x;
    x.kind = g.kind;
    x.sol.coords.reserve(g.rank);
    for (BigInt& n : nums) {
        SolCoord c{std::move(n), lvl};
        reduce_sol(c, g.prime);
        x.sol.coords.push_back(std::move(c));
    }
    return x;
}

GroupElement make_bd_element(const Group& g, const BigInt& residue, unsigned lvl, const BigInt& z) {
    if (g.kind != FamilyKind::BunceDeddens) throw std::invalid_argument("wrong family");
    if (lvl >= g.alpha.size()) throw std::invalid_argument("level beyond stored tower");
    if (!g.bd_integer_factor && z != 0)
        throw std::invalid_argument("family has no integer factor");
    GroupElement x;
    x.kind = g.kind;
    x.bd = BDElem{residue, lvl, z};
    reduce_bd(x.bd, g.alpha);
    return x;
}

GroupElement make_finite_element(const Group& g, std::vector<BigInt> coords) {
    if (g.kind != FamilyKind::FiniteTest) throw std::invalid_argument("wrong family");
    if (coords.size() != g.rank) throw std::invalid_argument("wrong rank");
    GroupElement x;
    x.kind = g.kind;
    for (BigInt& c : coords) {
        c %= g.finite_modulus;
        if (c < 0) c += g.finite_modulus;
    }
    x.fin.coords = std::move(coords);
    return x;
}

GroupElement add(const Group& g, const GroupElement& a, const GroupElement& b) {
    GroupElement x;
    x.kind = g.kind;
    switch (g.kind) {
        case FamilyKind::Solenoid: {
            x.sol.coords.resize(g.rank);
            for (unsigned j = 0; j < g.rank; ++j) {
                const SolCoord& u = a.sol.coords[j];
                const SolCoord& v = b.sol.coords[j];
                unsigned e = std::max(u.exp, v.exp);
                SolCoord c{u.num * pow_int(g.prime, e - u.exp) + v.num * pow_int(g.prime, e - v.exp), e};
                reduce_sol(c, g.prime);
                x.sol.coords[j] = std::move(c);
            }
            break;
        }
        case FamilyKind::BunceDeddens: {
            unsigned L = std::max(a.bd.level, b.bd.level);
            const BigInt& aL = g.alpha[L];
            BigInt r = a.bd.residue * (aL / g.alpha[a.bd.level]) +
                       b.bd.residue * (aL / g.alpha[b.bd.level]);
            x.bd = BDElem{r, L, a.bd.z + b.bd.z};
            reduce_bd(x.bd, g.alpha);
            break;
        }
        case FamilyKind::FiniteTest: {
            x.fin.coords.resize(g.rank);
            for (unsigned j = 0; j < g.rank; ++j) {
                BigInt c = a.fin.coords[j] + b.fin.coords[j];
                if (c >= g.finite_modulus) c -= g.finite_modulus;
                x.fin.coords[j] = std::move(c);
            }
            break;
        }
    }
    return x;
}

GroupElement inverse(const Group& g, const GroupElement& a) {
    GroupElement x;
    x.kind = g.kind;
    switch (g.kind) {
        case FamilyKind::Solenoid: {
            x.sol.coords.resize(g.rank);
            for (unsigned j = 0; j < g.rank; ++j)
                x.sol.coords[j] = SolCoord{-a.sol.coords[j].num, a.sol.coords[j].exp};
            break;
        }
        case FamilyKind::BunceDeddens: {
            BigInt r = a.bd.residue == 0 ? BigInt(0) : g.alpha[a.bd.level] - a.bd.residue;
            x.bd = BDElem{r, a.bd.level, -a.bd.z};
            // Negating the residue never changes divisibility by tower ratios.
            break;
        }
        case FamilyKind::FiniteTest: {
            x.fin.coords.resize(g.rank);
            for (unsigned j = 0; j < g.rank; ++j) {
                BigInt c = a.fin.coords[j] == 0 ? BigInt(0) : g.finite_modulus - a.fin.coords[j];
                x.fin.coords[j] = std::move(c);
            }
            break;
        }
    }
    return x;
}

unsigned level(const Group& g, const GroupElement& x) {
    switch (g.kind) {
        case FamilyKind::Solenoid: {
            unsigned m = 0;
            for (const SolCoord& c : x.sol.coords) m = std::max(m, c.exp);
            return m;
        }
        case FamilyKind::BunceDeddens:
            return x.bd.level;
        case FamilyKind::FiniteTest:
            return 0;
    }
    return 0;
}

bool canonical_less(const Group& g, const GroupElement& a, const GroupElement& b) {
    unsigned la = level(g, a), lb = level(g, b);
    if (la != lb) return la < lb;
    switch (g.kind) {
        case FamilyKind::Solenoid: {
            for (unsigned j = 0; j < g.rank; ++j) {
                int c = cmp_sol(a.sol.coords[j], b.sol.coords[j], g.prime);
                if (c != 0) return c < 0;
            }
            return false;
        }
        case FamilyKind::BunceDeddens: {
            // Same level, so same alpha denominator.
            int c = cmp(a.bd.residue, b.bd.residue);
            if (c != 0) return c < 0;
            return a.bd.z < b.bd.z;
        }
        case FamilyKind::FiniteTest: {
            for (unsigned j = 0; j < g.rank; ++j) {
                int c = cmp(a.fin.coords[j], b.fin.coords[j]);
                if (c != 0) return c < 0;
            }
            return false;
        }
    }
    return false;
}

std::vector<Rational> solenoid_coords(const Group& g, const GroupElement& x) {
    std::vector<Rational> out;
    out.reserve(x.sol.coords.size());
    for (const SolCoord& c : x.sol.coords)
        out.emplace_back(c.num, pow_int(g.prime, c.exp));
    return out;
}

Rational bd_turn(const Group& g, const GroupElement& x) {
    return Rational(x.bd.residue, g.alpha[x.bd.level]);
}

std::string to_string(const Group& g, const GroupElement& x) {
    std::ostringstream os;
    switch (g.kind) {
        case FamilyKind::Solenoid: {
            os << "(";
            for (unsigned j = 0; j < g.rank; ++j) {
                if (j) os << ",";
                os << x.sol.coords[j].num;
                if (x.sol.coords[j].exp > 0) os << "/" << pow_int(g.prime, x.sol.coords[j].exp);
            }
            os << ")";
            break;
        }
        case FamilyKind::BunceDeddens:
            os << "(e(" << x.bd.residue << "/" << g.alpha[x.bd.level] << ")";
            if (g.bd_integer_factor) os << "," << x.bd.z;
            os << ")";
            break;
        case FamilyKind::FiniteTest: {
            os << "(";
            for (unsigned j = 0; j < g.rank; ++j) os << (j ? "," : "") << x.fin.coords[j];
            os << ")";
            break;
        }
    }
    return os.str();
}

}  // namespace ncg
