#pragma once

#include <memory>
#include <optional>

#include "ncg/group.hpp"

namespace ncg {

// Norm selector for the word/embedding length component.
enum class HNorm { Max, One, Euclidean };

// Length on the root-of-unity factor of Z(alpha).
enum class CircleLength { Arc, Chord };

// Monotone combinators on R^2; these are exactly the monotone norms we
// accept (a p-norm with p >= 1 is monotone).
enum class Combinator { Max, Sum, Euclidean, PNorm };

// Scale for the subgroup filtration: strictly increasing and unbounded.
// Family defaults are p^n for solenoids and alpha_n for Z(alpha) towers.
struct Scale {
    bool family_default = true;
    std::vector<Rational> table;  // used when !family_default

    Rational at(const Group& g, unsigned n) const;
    // Largest n with scale(n) <= r, or nullopt if even scale(0) > r.
    std::optional<unsigned> max_level_within(const Group& g, const Rational& r,
                                             unsigned level_cap) const;
};

// Composable length evaluator. H is the geometric part (a norm pulled back
// from the ambient space), F is scale(level), and Combined glues two children
// through a monotone combinator. Lengths are reported as doubles; ball
// membership tests go through exact predicates where the family allows it
// (see ball.cpp).
class LengthFunction {
  public:
    enum class Kind { H, F, Combined };

    static LengthFunction h_norm(HNorm n);
    static LengthFunction h_circle(CircleLength c);  // Bunce-Deddens L_Z(+|z|)
    static LengthFunction f_scale(Scale s = {});
    static LengthFunction combine(LengthFunction a, LengthFunction b, Combinator c,
                                  double pnorm_p = 2.0);

    Kind kind() const { return kind_; }
    HNorm hnorm() const { return hnorm_; }
    CircleLength circle() const { return circle_; }
    const Scale& scale() const { return scale_; }
    Combinator combinator() const { return comb_; }
    double pnorm_p() const { return pnorm_p_; }
    const LengthFunction& left() const { return *left_; }
    const LengthFunction& right() const { return *right_; }

    double operator()(const Group& g, const GroupElement& x) const;

    // Exact value when the length is rational-valued on this family
    // (solenoid coordinate norms, F, and max/sum combinations thereof).
    std::optional<Rational> exact(const Group& g, const GroupElement& x) const;

    // Exact square, additionally covering the euclidean combinator.
    std::optional<Rational> exact_square(const Group& g, const GroupElement& x) const;

    // True if closed balls of this length are finite on the family.
    bool proper_on(const Group& g) const;

    // True if the evaluation tree contains an F component.
    bool has_f() const;
    bool has_h() const;

  private:
    Kind kind_ = Kind::H;
    HNorm hnorm_ = HNorm::Max;
    CircleLength circle_ = CircleLength::Arc;
    Scale scale_;
    Combinator comb_ = Combinator::Max;
    double pnorm_p_ = 2.0;
    std::shared_ptr<const LengthFunction> left_, right_;
};

// Convenience builders for the standard lengths of each family.
LengthFunction default_length_h(const Group& g, HNorm n = HNorm::Max,
                                CircleLength c = CircleLength::Arc);
LengthFunction default_length_f(const Group& g);
// max{L_H, F} (or another combinator), the proper length driving truncations.
LengthFunction default_length(const Group& g, Combinator c = Combinator::Max,
                              HNorm n = HNorm::Max, CircleLength cl = CircleLength::Arc);

}  // namespace ncg
