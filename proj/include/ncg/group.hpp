#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ncg/numbers.hpp"

namespace ncg {

// The three group families handled by this library. All are discrete abelian
// and written additively except for the root-of-unity part of Z(alpha), which
// we store as a fraction of a full turn.
enum class FamilyKind { Solenoid, BunceDeddens, FiniteTest };

// Family descriptor. Elements do not carry their family; all arithmetic goes
// through free functions taking the Group.
struct Group {
    FamilyKind kind = FamilyKind::Solenoid;

    // Solenoid Z[1/p]^d: G_n = (1/p^n Z)^d.
    unsigned prime = 2;
    unsigned rank = 1;

    // Bunce-Deddens Z(alpha) or Z(alpha) x Z: alpha is a strictly increasing
    // divisibility tower with prime successive ratios. Only the stored prefix
    // of the tower is reachable by finite truncations.
    std::vector<BigInt> alpha;
    bool bd_integer_factor = true;

    // Finite test family (Z/m)^d, every element at level 0.
    unsigned finite_modulus = 2;

    static Group solenoid(unsigned p, unsigned d);
    static Group bunce_deddens(std::vector<BigInt> alpha, bool with_integer_factor = true);
    static Group zalpha(std::vector<BigInt> alpha) { return bunce_deddens(std::move(alpha), false); }
    static Group finite_test(unsigned m, unsigned d);

    unsigned max_level() const;
    std::string describe() const;
};

// One solenoid coordinate a/p^e in lowest p-terms (e == 0 or p does not
// divide a).
struct SolCoord {
    BigInt num;
    unsigned exp = 0;

    bool operator==(const SolCoord&) const = default;
};

struct SolenoidElem {
    std::vector<SolCoord> coords;
    bool operator==(const SolenoidElem&) const = default;
};

// Root of unity exp(2*pi*i*residue/alpha[level]) at its minimal level,
// together with the integer component z (unused when the family has no
// integer factor).
struct BDElem {
    BigInt residue;
    unsigned level = 0;
    BigInt z;
    bool operator==(const BDElem&) const = default;
};

struct FiniteElem {
    std::vector<BigInt> coords;  // residues in [0, m)
    bool operator==(const FiniteElem&) const = default;
};

struct GroupElement {
    // Exactly one payload is active, matching the family used to build it.
    SolenoidElem sol;
    BDElem bd;
    FiniteElem fin;
    FamilyKind kind = FamilyKind::Solenoid;

    bool operator==(const GroupElement&) const = default;
};

GroupElement identity(const Group& g);
bool is_identity(const Group& g, const GroupElement& x);

// Construction with reduction to canonical form.
GroupElement make_solenoid_element(const Group& g, const std::vector<Rational>& coords);
GroupElement make_solenoid_element_raw(const Group& g, std::vector<BigInt> nums, unsigned level);
GroupElement make_bd_element(const Group& g, const BigInt& residue, unsigned level, const BigInt& z);
GroupElement make_finite_element(const Group& g, std::vector<BigInt> coords);

GroupElement add(const Group& g, const GroupElement& a, const GroupElement& b);
GroupElement inverse(const Group& g, const GroupElement& a);

// Smallest n with x in G_n. For solenoids the largest coordinate exponent,
// for Z(alpha) the minimal level of the root of unity, 0 for finite tests.
unsigned level(const Group& g, const GroupElement& x);

// Canonical total order: (level, coordinates) lexicographic. Fixes matrix
// indexing everywhere.
bool canonical_less(const Group& g, const GroupElement& a, const GroupElement& b);

// Exact coordinate views.
std::vector<Rational> solenoid_coords(const Group& g, const GroupElement& x);
// Angle of the root of unity as a fraction of a full turn, in [0,1).
Rational bd_turn(const Group& g, const GroupElement& x);

std::string to_string(const Group& g, const GroupElement& x);

}  // namespace ncg
