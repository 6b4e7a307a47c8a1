#pragma once

#include "ncg/triple.hpp"

namespace ncg {

// [D, lambda_E(f)] compressed to the truncation: the block sending
// delta_h to delta_{gh} carries f(g) sigma(g,h) ((L_H(gh)-L_H(h)) gamma1 +
// (F(gh)-F(h)) gamma2).
SpCMat commutator(const TruncatedTriple& t, const AlgebraElement& f);

// Odd diagnostic [M_w, lambda(f)] on the scalar truncation l^2(B); the
// weights w are evaluated by the given length.
SpCMat multiplication_commutator(const Ball& b, const Cocycle& sigma, const LengthFunction& w,
                                 const AlgebraElement& f);

// Certified interval for the Lipschitz seminorm of f at this truncation:
// lower is the truncated commutator norm (monotone in the radius), upper the
// l^1-weighted length bound sum |f(g)| (L_H(g) + F(g)).
struct SeminormBracket {
    double lower = 0;
    double upper = 0;
    Rational radius;
    bool lower_converged = true;
};

SeminormBracket seminorm_bracket(const TruncatedTriple& t, const LengthFunction& length_h,
                                 const LengthFunction& length_f, const AlgebraElement& f,
                                 double tol = 1e-9);

// Norm of a translation commutator, with the exact single-shift closed form
// (max over h of the 2x2 block norm) when the support is a singleton.
OpNormResult commutator_norm(const TruncatedTriple& t, const AlgebraElement& f, double tol = 1e-9);

// Connes odd-triple diagnostic: || [M_L, lambda(f)] || on l^2(B). Exact
// (max over translation pairs) for a single delta; iterative otherwise.
double connes_commutator_norm(const Ball& b, const Cocycle& sigma, const LengthFunction& length,
                              const AlgebraElement& f, double tol = 1e-9);

// Block seminorm of the coset l^2(G_n k): assembles [D_infty, f] on the
// window {hk : h in B_n} via the right-translation identification. F must be
// constant on the sampled coset window.
double coset_block_seminorm(const TruncatedTriple& level_triple, const LengthFunction& length_h,
                            const LengthFunction& length_f, const AlgebraElement& f,
                            const GroupElement& coset_rep, double tol = 1e-9);

}  // namespace ncg
