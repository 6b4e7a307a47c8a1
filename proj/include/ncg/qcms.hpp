#pragma once

#include <random>
#include <string>

#include "ncg/lp.hpp"

namespace ncg {

// Sparse rational linear form on R^dim.
struct SeminormForm {
    std::vector<std::pair<int, Rational>> c;

    template <class T>
    T dot(const std::vector<T>& f) const {
        T s{};
        for (const auto& [j, v] : c) {
            if constexpr (std::is_floating_point_v<T>)
                s += to_double(v) * f[j];
            else
                s += T(v) * f[j];
        }
        return s;
    }
};

// One group of forms combined by max |.|, weighted, attached to a "side".
// A plain Lipschitz seminorm is a single block of pairwise difference
// quotients; the dilated interval seminorm is two weighted blocks; a tunnel
// seminorm is three sides glued by an outer max.
struct SeminormBlock {
    Rational weight{1};
    int side = 0;
    std::vector<SeminormForm> forms;
};

// L(u) = max_side sum_{blocks on side} weight * max_i |<c_i, u>|, with the
// gauge coordinate pinned to zero in every LP.
struct PolyhedralSeminorm {
    int dim = 0;
    int gauge = 0;
    std::vector<SeminormBlock> blocks;

    int num_sides() const;
    template <class T>
    T eval(const std::vector<T>& f) const {
        std::vector<T> side_val(static_cast<size_t>(num_sides()), T{});
        for (const auto& b : blocks) {
            T mx{};
            for (const auto& fm : b.forms) {
                T v = fm.dot(f);
                if (v < T{}) v = -v;
                if (v > mx) mx = v;
            }
            if constexpr (std::is_floating_point_v<T>)
                side_val[b.side] += to_double(b.weight) * mx;
            else
                side_val[b.side] += T(b.weight) * mx;
        }
        T out{};
        for (const T& v : side_val)
            if (v > out) out = v;
        return out;
    }
    // Every form must annihilate constants; throws otherwise.
    void check_annihilates_constants() const;
};

// Finite commutative quantum compact metric space: functions on `m` labeled
// points with a polyhedral Lipschitz seminorm.
struct FiniteQcms {
    std::vector<std::string> labels;
    std::vector<Rational> coords;  // optional 1-d geometry (empty if none)
    PolyhedralSeminorm seminorm;

    int points() const { return seminorm.dim; }

    // All-pairs difference-quotient seminorm for a metric given by exact
    // pairwise distances.
    static FiniteQcms from_metric(const std::vector<std::vector<Rational>>& dist);
    // Line metric on exact coordinates. Uses all pairs up to `all_pairs_cap`
    // points, consecutive differences beyond (an equal seminorm on collinear
    // points; see lipschitz_sup for the definitional evaluation).
    static FiniteQcms line_metric(std::vector<Rational> coords, int all_pairs_cap = 24);

    template <class T>
    T eval(const std::vector<T>& f) const {
        return seminorm.eval(f);
    }
    // Definitional sup over all pairs for coordinate metrics (independent of
    // the stored generating forms).
    Rational lipschitz_sup(const std::vector<Rational>& f) const;
};

struct KantorovichResult {
    LPStatus status = LPStatus::Infeasible;
    double value = 0;
    std::optional<Rational> exact;           // set in exact mode
    std::vector<double> witness;             // optimal u (gauge-fixed)
    bool exact_mode = false;
};

inline constexpr int kExactDimCap = 16;

// Monge-Kantorovich distance between two states (probability vectors):
// max <phi - psi, u> over the seminorm unit ball with u[gauge] = 0. Exact
// rational simplex when dim <= kExactDimCap; above that the transport dual
// (whose row count is the point count, not the form count) in double;
// "unbounded" reports a degenerate seminorm.
KantorovichResult kantorovich(const PolyhedralSeminorm& q, const std::vector<Rational>& phi,
                              const std::vector<Rational>& psi);

// Distance from phi to the set { pullback states supported on the given
// columns }: min over states psi on the columns of mk(phi, psi-pullback),
// as one joint LP in the transport-dual variables.
double distance_to_state_set(const PolyhedralSeminorm& q, const std::vector<Rational>& phi,
                             const std::vector<int>& pullback_cols);

inline KantorovichResult kantorovich(const FiniteQcms& q, const std::vector<Rational>& phi,
                                     const std::vector<Rational>& psi) {
    return kantorovich(q.seminorm, phi, psi);
}

// Support point of the unit ball in a given direction (an extreme point for
// generic directions); used for vertex sampling.
KantorovichResult ball_support_point(const PolyhedralSeminorm& q,
                                     const std::vector<Rational>& direction);

// max over Dirac pairs (extreme-point reduction on commutative algebras).
double qdiam(const FiniteQcms& q, int pair_budget = 4096);

struct NormBoundCheck {
    double lhs = 0;    // max_z |f(z) - mu(f)|
    double bound = 0;  // L(f) * qdiam
    double slack = 0;
    bool ok = false;
};

// || f - mu(f) 1 || <= L(f) qdiam.
NormBoundCheck norm_bound_check(const FiniteQcms& q, const std::vector<Rational>& f,
                                const std::vector<Rational>& mu);

// Vertices of { L <= 1, <mu, u> = 0 } by brute-force active sets; only
// available for single-block seminorms and small form counts.
std::vector<std::vector<Rational>> unit_ball_vertices(const PolyhedralSeminorm& q,
                                                      const std::vector<Rational>& mu,
                                                      long long budget = 2'000'000);

struct EpsilonNet {
    std::vector<std::vector<double>> centers;
    bool from_vertices = false;
    double certified_cover_radius = 0;  // max over fresh samples of sup-distance to the net
    int certification_samples = 0;
};

// Finite eps-net (sup norm) of { L <= 1, mu(f) = 0 }: vertex enumeration for
// small single-block seminorms, greedy farthest-point sampling otherwise.
EpsilonNet epsilon_net(const FiniteQcms& q, const std::vector<Rational>& mu, double eps,
                       std::mt19937_64& rng, long long vertex_budget = 2'000'000,
                       int sample_pool = 4000);

// Dirac state at point i.
std::vector<Rational> dirac_state(int m, int i);

// Random exact state: integer weights normalized.
std::vector<Rational> random_state(int m, std::mt19937_64& rng);

}  // namespace ncg
