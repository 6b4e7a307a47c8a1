#pragma once

#include "ncg/cocycle.hpp"
#include "ncg/length.hpp"

namespace ncg {

// Finitely supported function G -> C, the dense *-algebra behind every
// seminorm computation. Terms are kept sorted in the canonical element order
// with zero coefficients dropped.
class AlgebraElement {
  public:
    AlgebraElement() = default;
    explicit AlgebraElement(const Group& g) : group_(g) {}

    static AlgebraElement delta(const Group& g, const GroupElement& x, cplx c = {1.0, 0.0});

    const Group& group() const { return group_; }
    const std::vector<std::pair<GroupElement, cplx>>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    size_t support_size() const { return terms_.size(); }

    cplx at(const GroupElement& x) const;
    void set(const GroupElement& x, cplx c);
    void add_term(const GroupElement& x, cplx c);

    AlgebraElement operator+(const AlgebraElement& o) const;
    AlgebraElement operator-(const AlgebraElement& o) const;
    AlgebraElement operator*(cplx s) const;

    double ell1() const;
    // sum |f(g)| w(g) for a weight length; the commutator upper bound uses
    // w = L_H + F.
    double weighted_ell1(const LengthFunction& w) const;

    static constexpr double kDropTol = 0.0;  // exact zero pruning only

  private:
    Group group_;
    std::vector<std::pair<GroupElement, cplx>> terms_;
};

// Twisted convolution: (f1 * f2)(gh) += f1(g) f2(h) sigma(g, h), realizing
// lambda(f1) lambda(f2) = lambda(f1 * f2).
AlgebraElement twisted_convolution(const Cocycle& sigma, const AlgebraElement& f1,
                                   const AlgebraElement& f2);

// f*(g) = conj(sigma(g, g^-1)) conj(f(g^-1)); lambda(f*) = lambda(f)^*.
AlgebraElement involution(const Cocycle& sigma, const AlgebraElement& f);

// (f + f*)/2.
AlgebraElement symmetrize(const Cocycle& sigma, const AlgebraElement& f);

// tr(f) = f(identity).
cplx trace(const AlgebraElement& f);

// Fejer averaging: multiplies each coefficient by a kernel weight in [0,1]
// that is 1 at the identity, symmetric under inversion, and increases to 1
// pointwise in k. Solenoid coordinates are damped by the classical Fejer
// coefficients at the support's common level; root-of-unity factors are
// reproduced exactly (the finite dual average); integer factors get the
// classical coefficients.
AlgebraElement fejer_average(const AlgebraElement& f, unsigned k);

// The kernel weight itself (exposed for tests).
double fejer_coefficient(const Group& g, const GroupElement& x, unsigned k,
                         unsigned support_level);

}  // namespace ncg
