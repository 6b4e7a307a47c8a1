#include "ncg/opnorm.hpp"

#include <random>

namespace ncg {

namespace {

double norm_1(const SpCMat& a) {
    std::vector<double> col(a.cols(), 0.0);
    for (int k = 0; k < a.outerSize(); ++k)
        for (SpCMat::InnerIterator it(a, k); it; ++it) col[it.col()] += std::abs(it.value());
    double m = 0;
    for (double v : col) m = std::max(m, v);
    return m;
}

double norm_inf(const SpCMat& a) {
    std::vector<double> row(a.rows(), 0.0);
    for (int k = 0; k < a.outerSize(); ++k)
        for (SpCMat::InnerIterator it(a, k); it; ++it) row[it.row()] += std::abs(it.value());
    double m = 0;
    for (double v : row) m = std::max(m, v);
    return m;
}

}  // namespace

OpNormResult op_norm(const SpCMat& a, double rel_tol, int max_iter, std::uint64_t seed) {
    OpNormResult res;
    const int n = static_cast<int>(a.cols());
    if (n == 0 || a.nonZeros() == 0) {
        res.converged = true;
        return res;
    }
    double frob = 0;
    for (int k = 0; k < a.outerSize(); ++k)
        for (SpCMat::InnerIterator it(a, k); it; ++it) frob += std::norm(it.value());
    frob = std::sqrt(frob);
    res.upper = std::min(frob, std::sqrt(norm_1(a) * norm_inf(a)));

    const int block = std::min(n, 8);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    CMat v(n, block);
    for (int j = 0; j < block; ++j)
        for (int i = 0; i < n; ++i) v(i, j) = cplx(gauss(rng), gauss(rng));

    SpCMat ah = a.adjoint();
    double prev = 0;
    int stable = 0;
    for (int it = 1; it <= max_iter; ++it) {
        // orthonormalize, then one application of A^* A
        Eigen::HouseholderQR<CMat> qr(v);
        CMat q = qr.householderQ() * CMat::Identity(n, block);
        CMat av = a * q;
        CMat w = ah * av;
        // Ritz values of A^* A on the block span
        CMat t = q.adjoint() * w;
        Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (t + t.adjoint()));
        double lam = es.eigenvalues().maxCoeff();
        double sigma = lam > 0 ? std::sqrt(lam) : 0.0;
        res.iterations = it;
        if (std::abs(sigma - prev) <= rel_tol * std::max(1.0, sigma))
            ++stable;
        else
            stable = 0;
        prev = sigma;
        v = w;
        if (stable >= 3) {
            res.converged = true;
            break;
        }
    }
    // Certified Rayleigh lower bound from the best Ritz vector.
    Eigen::HouseholderQR<CMat> qr(v);
    CMat q = qr.householderQ() * CMat::Identity(n, block);
    CMat av = a * q;
    CMat t = q.adjoint() * (ah * av);
    Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (t + t.adjoint()));
    int which = 0;
    es.eigenvalues().maxCoeff(&which);
    CVec top = q * es.eigenvectors().col(which);
    double denom = top.norm();
    res.lower = denom > 0 ? (a * top).norm() / denom : 0.0;
    res.value = res.lower;
    res.upper = std::max(res.upper, res.lower);
    return res;
}

}  // namespace ncg
