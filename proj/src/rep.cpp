#include "ncg/rep.hpp"

namespace ncg {

SpCMat lambda_matrix(const Cocycle& sigma, const GroupElement& g, const Ball& B) {
    const Group& G = B.group;
    std::vector<Eigen::Triplet<cplx>> trip;
    trip.reserve(B.elems.size());
    for (int j = 0; j < B.size(); ++j) {
        const GroupElement& k = B.elems[j];
        GroupElement gk = add(G, g, k);
        int i = B.index_of(gk);
        if (i >= 0) trip.emplace_back(i, j, sigma(G, g, k));
    }
    SpCMat m(B.size(), B.size());
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
}

SpCMat rho_matrix(const Cocycle& sigma, const GroupElement& k, const Ball& B) {
    const Group& G = B.group;
    GroupElement kinv = inverse(G, k);
    std::vector<Eigen::Triplet<cplx>> trip;
    trip.reserve(B.elems.size());
    for (int i = 0; i < B.size(); ++i) {
        const GroupElement& h = B.elems[i];
        GroupElement hk = add(G, h, k);
        int j = B.index_of(hk);
        if (j >= 0) trip.emplace_back(i, j, sigma(G, hk, kinv));
    }
    SpCMat m(B.size(), B.size());
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
}

SpCMat lambda_of(const Cocycle& sigma, const AlgebraElement& f, const Ball& B) {
    const Group& G = B.group;
    std::vector<Eigen::Triplet<cplx>> trip;
    trip.reserve(f.support_size() * B.elems.size());
    for (const auto& [g, c] : f.terms()) {
        for (int j = 0; j < B.size(); ++j) {
            const GroupElement& k = B.elems[j];
            GroupElement gk = add(G, g, k);
            int i = B.index_of(gk);
            if (i >= 0) trip.emplace_back(i, j, c * sigma(G, g, k));
        }
    }
    SpCMat m(B.size(), B.size());
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
}

}  // namespace ncg
