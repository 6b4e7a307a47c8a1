#include "ncg/seminorm.hpp"

#include <cmath>
#include <sstream>

namespace ncg {

SpCMat commutator(const TruncatedTriple& t, const AlgebraElement& f) {
    const Group& G = t.ball.group;
    const int s = t.fiber_blocks;
    std::vector<Eigen::Triplet<cplx>> trip;
    trip.reserve(f.support_size() * t.ball.elems.size() * 4 * s);
    for (const auto& [g, c] : f.terms()) {
        for (int j = 0; j < t.ball.size(); ++j) {
            const GroupElement& h = t.ball.elems[j];
            int i = t.ball.index_of(add(G, g, h));
            if (i < 0) continue;
            cplx v = c * t.cocycle(G, g, h);
            double da = t.len_h[i] - t.len_h[j];
            double db = t.len_f[i] - t.len_f[j];
            for (int d = 0; d < s; ++d) {
                int r = i * 2 * s + 2 * d, q = j * 2 * s + 2 * d;
                if (da != 0) {
                    trip.emplace_back(r, q, v * da);
                    trip.emplace_back(r + 1, q + 1, -v * da);
                }
                if (db != 0) {
                    trip.emplace_back(r, q + 1, v * db);
                    trip.emplace_back(r + 1, q, v * db);
                }
            }
        }
    }
    SpCMat m(t.dim(), t.dim());
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
}

SpCMat multiplication_commutator(const Ball& b, const Cocycle& sigma, const LengthFunction& w,
                                 const AlgebraElement& f) {
    const Group& G = b.group;
    std::vector<double> wv(b.elems.size());
    for (size_t i = 0; i < b.elems.size(); ++i) wv[i] = w(G, b.elems[i]);
    std::vector<Eigen::Triplet<cplx>> trip;
    trip.reserve(f.support_size() * b.elems.size());
    for (const auto& [g, c] : f.terms()) {
        for (int j = 0; j < b.size(); ++j) {
            const GroupElement& h = b.elems[j];
            int i = b.index_of(add(G, g, h));
            if (i < 0) continue;
            double dw = wv[i] - wv[j];
            if (dw != 0) trip.emplace_back(i, j, c * sigma(G, g, h) * dw);
        }
    }
    SpCMat m(b.size(), b.size());
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
}

OpNormResult commutator_norm(const TruncatedTriple& t, const AlgebraElement& f, double tol) {
    if (f.support_size() == 1) {
        // Single shift: the norm is the largest block norm
        // |c| sqrt(da^2 + db^2), exact by the Clifford norm identity.
        const auto& [g, c] = f.terms()[0];
        const Group& G = t.ball.group;
        double best = 0;
        for (int j = 0; j < t.ball.size(); ++j) {
            int i = t.ball.index_of(add(G, g, t.ball.elems[j]));
            if (i < 0) continue;
            double da = t.len_h[i] - t.len_h[j];
            double db = t.len_f[i] - t.len_f[j];
            best = std::max(best, std::hypot(da, db));
        }
        OpNormResult r;
        r.value = r.lower = r.upper = std::abs(c) * best;
        r.converged = true;
        return r;
    }
    return op_norm(commutator(t, f), tol);
}

SeminormBracket seminorm_bracket(const TruncatedTriple& t, const LengthFunction& length_h,
                                 const LengthFunction& length_f, const AlgebraElement& f,
                                 double tol) {
    AlgebraElement sym = symmetrize(t.cocycle, f);
    SeminormBracket br;
    br.radius = t.ball.radius;
    OpNormResult low = commutator_norm(t, sym, tol);
    br.lower = low.value;
    br.lower_converged = low.converged;
    double up = 0;
    for (const auto& [g, c] : sym.terms())
        up += std::abs(c) * (length_h(t.ball.group, g) + length_f(t.ball.group, g));
    br.upper = up;
    return br;
}

double connes_commutator_norm(const Ball& b, const Cocycle& sigma, const LengthFunction& length,
                              const AlgebraElement& f, double tol) {
    if (f.empty()) return 0.0;
    if (f.support_size() == 1) {
        const Group& G = b.group;
        const auto& [g, c] = f.terms()[0];
        double best = 0;
        for (int j = 0; j < b.size(); ++j) {
            int i = b.index_of(add(G, g, b.elems[j]));
            if (i < 0) continue;
            best = std::max(best, std::abs(length(G, b.elems[i]) - length(G, b.elems[j])));
        }
        return std::abs(c) * best;
    }
    return op_norm(multiplication_commutator(b, sigma, length, f), tol).value;
}

double coset_block_seminorm(const TruncatedTriple& level_triple, const LengthFunction& length_h,
                            const LengthFunction& length_f, const AlgebraElement& f,
                            const GroupElement& coset_rep, double tol) {
    const Group& G = level_triple.ball.group;
    const Ball& bn = level_triple.ball;
    // Precompute lengths on the translated window and check F is constant on it.
    std::vector<double> wh(bn.elems.size()), wf(bn.elems.size());
    double f_ref = 0;
    for (int j = 0; j < bn.size(); ++j) {
        GroupElement hk = add(G, bn.elems[j], coset_rep);
        wh[j] = length_h(G, hk);
        wf[j] = length_f(G, hk);
        if (j == 0) f_ref = wf[j];
    }
    bool on_subgroup = is_identity(G, coset_rep) || bn.contains(coset_rep);
    if (!on_subgroup) {
        for (double v : wf)
            if (v != f_ref) {
                std::ostringstream os;
                os << "coset_block_seminorm: F non-constant on the sampled coset window";
                throw std::runtime_error(os.str());
            }
    }

    const int s = level_triple.fiber_blocks;
    std::vector<Eigen::Triplet<cplx>> trip;
    for (const auto& [g, c] : f.terms()) {
        for (int j = 0; j < bn.size(); ++j) {
            const GroupElement& h = bn.elems[j];
            int i = bn.index_of(add(G, g, h));
            if (i < 0) continue;
            GroupElement hk = add(G, h, coset_rep);
            cplx v = c * level_triple.cocycle(G, g, hk);
            double da = wh[i] - wh[j];
            double db = wf[i] - wf[j];
            for (int d = 0; d < s; ++d) {
                int r = i * 2 * s + 2 * d, q = j * 2 * s + 2 * d;
                if (da != 0) {
                    trip.emplace_back(r, q, v * da);
                    trip.emplace_back(r + 1, q + 1, -v * da);
                }
                if (db != 0) {
                    trip.emplace_back(r, q + 1, v * db);
                    trip.emplace_back(r + 1, q, v * db);
                }
            }
        }
    }
    SpCMat m(level_triple.dim(), level_triple.dim());
    m.setFromTriplets(trip.begin(), trip.end());
    if (f.support_size() == 1) {
        // exact max block norm over the coset window
        const auto& [g, c] = f.terms()[0];
        double best = 0;
        for (int j = 0; j < bn.size(); ++j) {
            int i = bn.index_of(add(G, g, bn.elems[j]));
            if (i < 0) continue;
            best = std::max(best, std::hypot(wh[i] - wh[j], wf[i] - wf[j]));
        }
        return std::abs(c) * best;
    }
    return op_norm(m, tol).value;
}

}  // namespace ncg
