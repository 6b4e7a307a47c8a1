#pragma once

#include "ncg/rep.hpp"

namespace ncg {

// Largest singular value by deterministic block subspace iteration on A^* A,
// with a certified bracket: `lower` is a Rayleigh quotient (always a valid
// lower bound), `upper` is min(Frobenius, sqrt(||A||_1 ||A||_inf)). When the
// iteration hits its cap without stabilizing, `converged` is false and the
// bracket is the honest answer.
struct OpNormResult {
    double value = 0;
    double lower = 0;
    double upper = 0;
    bool converged = false;
    int iterations = 0;
};

OpNormResult op_norm(const SpCMat& a, double rel_tol = 1e-9, int max_iter = 20000,
                     std::uint64_t seed = 0x5eedULL);

inline double op_norm_value(const SpCMat& a, double rel_tol = 1e-9) {
    return op_norm(a, rel_tol).value;
}

}  // namespace ncg
