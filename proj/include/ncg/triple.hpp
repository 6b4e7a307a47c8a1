#pragma once

#include <optional>

#include "ncg/opnorm.hpp"

namespace ncg {

// Weyl pair on C^2: gamma1 = diag(1,-1), gamma2 = antidiag(1,1); larger even
// fibers repeat the pair blockwise.
struct CliffordPair {
    static Eigen::Matrix2cd gamma1();
    static Eigen::Matrix2cd gamma2();
    // grading i * gamma1 * gamma2
    static Eigen::Matrix2cd grading();
};

// Truncation of the even triple to a finite ball: the Dirac operator is the
// direct sum over ball elements of the 2x2 blocks L_H(g) gamma1 + F(g) gamma2
// (repeated fiber_blocks times). It is never stored as a dense matrix; exact
// spectra, dynamics and functional calculus come from the block structure.
struct TruncatedTriple {
    Ball ball;
    std::vector<double> len_h;
    std::vector<double> len_f;
    Cocycle cocycle;
    int fiber_blocks = 1;              // dim E = 2 * fiber_blocks
    std::optional<unsigned> level_tag; // finite level, or nullopt for an infinity window

    int fiber_dim() const { return 2 * fiber_blocks; }
    int dim() const { return ball.size() * fiber_dim(); }
    double block_mass(int i) const { return std::hypot(len_h[i], len_f[i]); }
};

TruncatedTriple make_triple(Ball ball, const LengthFunction& length_h, const LengthFunction& length_f,
                            Cocycle sigma = Cocycle::trivial(), int fiber_blocks = 1,
                            std::optional<unsigned> level_tag = std::nullopt);

// Ball of G_n inside the ambient group: keep the elements of level <= n.
Ball restrict_to_level(const Ball& b, unsigned n);

// Blockwise operator diag_g (c0(g) I + c1(g) (a gamma1 + b gamma2)); closed
// under the functional calculus of the Dirac operator.
struct BlockDiagOp {
    const TruncatedTriple* triple = nullptr;
    std::vector<Eigen::Matrix2cd> blocks;  // one per ball element

    CVec apply(const CVec& xi) const;
    SpCMat to_sparse() const;
};

CVec dirac_apply(const TruncatedTriple& t, const CVec& xi);
SpCMat dirac_sparse(const TruncatedTriple& t);
SpCMat grading_sparse(const TruncatedTriple& t);

struct SpectrumEntry {
    double value = 0;
    int multiplicity = 0;
    GroupElement generator;
};

// Exact spectrum { +-sqrt(L_H(g)^2 + F(g)^2) } with multiplicity dim(E)/2,
// ascending.
std::vector<SpectrumEntry> spectrum(const TruncatedTriple& t);

// #{ eigenvalues of |D| <= r } = dim(E) * #{ g : sqrt(L_H^2+F^2) <= r }.
long long eigenvalue_counting(const TruncatedTriple& t, double r);

// || xi || + || D xi ||.
double dn_norm(const TruncatedTriple& t, const CVec& xi);

// exp(i s D), assembled blockwise in closed form.
BlockDiagOp unitary_dynamics(const TruncatedTriple& t, double s);

// f(D) via the 2x2 eigenprojections; exact for the block model.
BlockDiagOp functional_calculus(const TruncatedTriple& t, const std::function<cplx(double)>& f);

// lambda_E(f): lambda_of(f) acting on the fiber diagonally.
SpCMat lambda_e(const TruncatedTriple& t, const AlgebraElement& f);

}  // namespace ncg
