#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "ncg/algebra.hpp"
#include "ncg/ball.hpp"

namespace ncg {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using SpCMat = Eigen::SparseMatrix<cplx>;

// Compression P_B lambda(g) P_B of the left regular sigma-projective
// representation: entry (gk, k) = sigma(g, k) whenever k and gk lie in B.
SpCMat lambda_matrix(const Cocycle& sigma, const GroupElement& g, const Ball& B);

// Right regular representation compression: (rho(k) xi)(h) = sigma(hk, k^-1) xi(hk),
// so entry (h, hk) = sigma(hk, k^-1).
SpCMat rho_matrix(const Cocycle& sigma, const GroupElement& k, const Ball& B);

// P_B lambda(f) P_B = sum_g f(g) lambda_matrix(g, B).
SpCMat lambda_of(const Cocycle& sigma, const AlgebraElement& f, const Ball& B);

inline CMat dense(const SpCMat& m) { return CMat(m); }

}  // namespace ncg
