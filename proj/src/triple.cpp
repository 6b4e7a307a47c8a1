#include "ncg/triple.hpp"

#include <algorithm>
#include <cmath>

namespace ncg {

Eigen::Matrix2cd CliffordPair::gamma1() {
    Eigen::Matrix2cd m;
    m << 1, 0, 0, -1;
    return m;
}

Eigen::Matrix2cd CliffordPair::gamma2() {
    Eigen::Matrix2cd m;
    m << 0, 1, 1, 0;
    return m;
}

Eigen::Matrix2cd CliffordPair::grading() { return cplx(0, 1) * gamma1() * gamma2(); }

TruncatedTriple make_triple(Ball ball, const LengthFunction& length_h,
                            const LengthFunction& length_f, Cocycle sigma, int fiber_blocks,
                            std::optional<unsigned> level_tag) {
    if (fiber_blocks < 1) throw std::invalid_argument("fiber_blocks >= 1 required");
    TruncatedTriple t;
    t.len_h.reserve(ball.elems.size());
    t.len_f.reserve(ball.elems.size());
    for (const GroupElement& g : ball.elems) {
        t.len_h.push_back(length_h(ball.group, g));
        t.len_f.push_back(length_f(ball.group, g));
    }
    t.ball = std::move(ball);
    t.cocycle = std::move(sigma);
    t.fiber_blocks = fiber_blocks;
    t.level_tag = level_tag;
    return t;
}

Ball restrict_to_level(const Ball& b, unsigned n) {
    Ball r;
    r.group = b.group;
    r.length = b.length;
    r.radius = b.radius;
    for (const GroupElement& g : b.elems)
        if (level(b.group, g) <= n) r.elems.push_back(g);
    return r;
}

namespace {

// 2x2 block a*gamma1 + b*gamma2.
inline Eigen::Matrix2cd clifford_block(double a, double b) {
    Eigen::Matrix2cd m;
    m << a, b, b, -a;
    return m;
}

}  // namespace

CVec BlockDiagOp::apply(const CVec& xi) const {
    const int s = triple->fiber_blocks;
    CVec out(xi.size());
    for (int g = 0; g < triple->ball.size(); ++g) {
        const Eigen::Matrix2cd& m = blocks[g];
        for (int c = 0; c < s; ++c) {
            int base = g * 2 * s + 2 * c;
            out(base) = m(0, 0) * xi(base) + m(0, 1) * xi(base + 1);
            out(base + 1) = m(1, 0) * xi(base) + m(1, 1) * xi(base + 1);
        }
    }
    return out;
}

SpCMat BlockDiagOp::to_sparse() const {
    const int s = triple->fiber_blocks;
    std::vector<Eigen::Triplet<cplx>> trip;
    trip.reserve(blocks.size() * 4 * s);
    for (int g = 0; g < triple->ball.size(); ++g) {
        for (int c = 0; c < s; ++c) {
            int base = g * 2 * s + 2 * c;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    if (blocks[g](i, j) != cplx{})
                        trip.emplace_back(base + i, base + j, blocks[g](i, j));
        }
    }
    SpCMat m(triple->dim(), triple->dim());
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
}

CVec dirac_apply(const TruncatedTriple& t, const CVec& xi) {
    const int s = t.fiber_blocks;
    CVec out(xi.size());
    for (int g = 0; g < t.ball.size(); ++g) {
        double a = t.len_h[g], b = t.len_f[g];
        for (int c = 0; c < s; ++c) {
            int base = g * 2 * s + 2 * c;
            out(base) = a * xi(base) + b * xi(base + 1);
            out(base + 1) = b * xi(base) - a * xi(base + 1);
        }
    }
    return out;
}

SpCMat dirac_sparse(const TruncatedTriple& t) {
    BlockDiagOp op;
    op.triple = &t;
    op.blocks.reserve(t.ball.size());
    for (int g = 0; g < t.ball.size(); ++g)
        op.blocks.push_back(clifford_block(t.len_h[g], t.len_f[g]));
    return op.to_sparse();
}

SpCMat grading_sparse(const TruncatedTriple& t) {
    BlockDiagOp op;
    op.triple = &t;
    op.blocks.assign(t.ball.size(), CliffordPair::grading());
    return op.to_sparse();
}

std::vector<SpectrumEntry> spectrum(const TruncatedTriple& t) {
    std::vector<SpectrumEntry> out;
    out.reserve(2 * t.ball.size());
    for (int g = 0; g < t.ball.size(); ++g) {
        double m = t.block_mass(g);
        out.push_back({-m, t.fiber_blocks, t.ball.elems[g]});
        out.push_back({+m, t.fiber_blocks, t.ball.elems[g]});
    }
    std::sort(out.begin(), out.end(),
              [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.value < b.value; });
    return out;
}

long long eigenvalue_counting(const TruncatedTriple& t, double r) {
    if (r < 0) throw std::invalid_argument("eigenvalue_counting: r >= 0 required");
    long long count = 0;
    for (int g = 0; g < t.ball.size(); ++g)
        if (t.block_mass(g) <= r) ++count;
    return count * t.fiber_dim();
}

double dn_norm(const TruncatedTriple& t, const CVec& xi) {
    return xi.norm() + dirac_apply(t, xi).norm();
}

BlockDiagOp unitary_dynamics(const TruncatedTriple& t, double s) {
    BlockDiagOp op;
    op.triple = &t;
    op.blocks.reserve(t.ball.size());
    for (int g = 0; g < t.ball.size(); ++g) {
        double a = t.len_h[g], b = t.len_f[g];
        double m = std::hypot(a, b);
        Eigen::Matrix2cd blk;
        if (m == 0.0) {
            blk = Eigen::Matrix2cd::Identity();
        } else {
            blk = std::cos(s * m) * Eigen::Matrix2cd::Identity() +
                  cplx(0, 1) * (std::sin(s * m) / m) * clifford_block(a, b);
        }
        op.blocks.push_back(blk);
    }
    return op;
}

BlockDiagOp functional_calculus(const TruncatedTriple& t, const std::function<cplx(double)>& f) {
    BlockDiagOp op;
    op.triple = &t;
    op.blocks.reserve(t.ball.size());
    for (int g = 0; g < t.ball.size(); ++g) {
        double a = t.len_h[g], b = t.len_f[g];
        double m = std::hypot(a, b);
        Eigen::Matrix2cd blk;
        if (m == 0.0) {
            blk = f(0.0) * Eigen::Matrix2cd::Identity();
        } else {
            cplx even = (f(m) + f(-m)) * 0.5;
            cplx odd = (f(m) - f(-m)) * (0.5 / m);
            blk = even * Eigen::Matrix2cd::Identity() + odd * clifford_block(a, b);
        }
        op.blocks.push_back(blk);
    }
    return op;
}

SpCMat lambda_e(const TruncatedTriple& t, const AlgebraElement& f) {
    const Group& G = t.ball.group;
    const int s = t.fiber_blocks;
    std::vector<Eigen::Triplet<cplx>> trip;
    trip.reserve(f.support_size() * t.ball.elems.size() * 2 * s);
    for (const auto& [g, c] : f.terms()) {
        for (int j = 0; j < t.ball.size(); ++j) {
            const GroupElement& k = t.ball.elems[j];
            int i = t.ball.index_of(add(G, g, k));
            if (i < 0) continue;
            cplx v = c * t.cocycle(G, g, k);
            for (int d = 0; d < 2 * s; ++d) trip.emplace_back(i * 2 * s + d, j * 2 * s + d, v);
        }
    }
    SpCMat m(t.dim(), t.dim());
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
}

}  // namespace ncg
