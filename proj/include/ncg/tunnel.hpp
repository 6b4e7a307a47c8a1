#pragma once

#include "ncg/qcms.hpp"

namespace ncg {

// Direct-sum tunnel data between two finite commutative quantum metric
// spaces. The bridge is a comparison relation R between X_A and X_B points,
//   T(a, b) = max{ L_A(a), L_B(b), (1/eps) max_{(x,y) in R} |a(x) - b(y)| },
// usually the graph of a point map X_B -> X_A (pullback of a *-morphism);
// merged points contribute one extra comparison pair. The relation must
// cover every point on both sides so that each coordinate projection admits
// the pairing of states used for the extent bound.
struct TunnelSpec {
    FiniteQcms a;
    FiniteQcms b;
    std::vector<std::pair<int, int>> bridge_pairs;  // (x in X_A, y in X_B)
    Rational eps;

    static TunnelSpec from_point_map(FiniteQcms a, FiniteQcms b, const std::vector<int>& pt,
                                     Rational eps);

    int dim() const { return a.points() + b.points(); }
    // one chosen pair per Y point / per X point, for the two pairings
    std::vector<int> a_transport() const;  // y -> x
    std::vector<int> b_section() const;    // x -> y
};

// T as a polyhedral seminorm on R^{mA + mB} (sides 0 = A, 1 = B, 2 = bridge).
PolyhedralSeminorm tunnel_seminorm(const TunnelSpec& t);

struct IsometryCheck {
    bool ok = true;
    double worst_excess = 0;  // max over probes of the relaxation value (<= 0 when feasible)
    int probes = 0;
};

// Coordinate projections of a tunnel must be quantum isometries: for each
// probe a on the L_A unit sphere there must be b with L_B(b) <= 1 and
// bridge(a,b) <= eps (and symmetrically). Probed on normalized Diracs plus
// support points of random directions.
IsometryCheck quantum_isometry_check(const TunnelSpec& t, int probes, std::mt19937_64& rng,
                                     double tol = 1e-7);

struct ExtentBounds {
    double upper = 0;                 // eps, when certified
    bool upper_certified = false;
    double max_pairing_distance = 0;  // exact LP distances of the paired states
    double lower = 0;                 // max over sampled states of dist to the pullback sets
    int samples = 0;
    IsometryCheck isometry;
};

// Certified bracket for the tunnel extent: the upper bound is eps via the
// pairing construction (each sampled state of the direct sum lies within eps
// of both pullback state sets, each distance an exact LP); the lower bound
// maximizes, over sampled states, the exact LP distance to the nearest
// pullback state.
ExtentBounds tunnel_extent_bounds(const TunnelSpec& t, int samples, std::mt19937_64& rng);

// Distance from a state phi on the direct sum to the pullback state set of
// side `side` (0 = A, 1 = B): a single joint LP over the opposing simplex.
double distance_to_pullback(const TunnelSpec& t, const std::vector<Rational>& phi, int side);

// A pair (big, sub) of spaces over the same algebra-with-quotient: functions
// on sub pull back along `embed` (a surjection X_big -> X_sub).
struct InclusionPair {
    FiniteQcms big;
    FiniteQcms sub;
    std::vector<int> embed;  // size big.points()
};

struct BridgeBuilderReport {
    bool holds = false;
    bool exhaustive = false;      // vertex enumeration completed on both sides
    std::string failed_direction; // "forward" or "backward" when holds == false
    std::vector<double> witness;  // the probe with no feasible partner
    double witness_excess = 0;
    int probes_forward = 0;
    int probes_backward = 0;
};

// Checks both bridge-builder conditions at tolerance eps with the bridge map
// pi realized as a point map on X_big: for every probe a with L_big(a) = 1
// there must be b with L_sub(b) <= 1 and ||pi(a) - b o embed|| < eps, and
// symmetrically. Probes are unit-ball vertices when enumeration fits the
// budget (making the verdict exhaustive by convexity), otherwise normalized
// Diracs plus sampled support points.
BridgeBuilderReport bridge_builder_check(const InclusionPair& pair,
                                         const std::vector<int>& pi_map, const Rational& eps,
                                         int sample_probes, long long vertex_budget,
                                         std::mt19937_64& rng, double tol = 1e-7);

}  // namespace ncg
