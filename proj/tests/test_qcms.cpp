#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ncg/qcms.hpp"
#include "ncg/tunnel.hpp"

using namespace ncg;

namespace {

std::mt19937_64 rng(31337);

// Classical W1 on a line metric via the cumulative-mass formula; exact.
Rational w1_line_oracle(const std::vector<Rational>& coords, const std::vector<Rational>& phi,
                        const std::vector<Rational>& psi) {
    Rational acc = 0, cum = 0;
    for (size_t i = 0; i + 1 < coords.size(); ++i) {
        cum += phi[i] - psi[i];
        acc += abs(cum) * (coords[i + 1] - coords[i]);
    }
    return acc;
}

std::vector<Rational> sorted_random_coords(int m, std::mt19937_64& r) {
    std::uniform_int_distribution<int> num(1, 40);
    std::vector<Rational> c = {Rational(0)};
    for (int i = 1; i < m; ++i) c.push_back(c.back() + Rational(num(r), 7));
    return c;
}

}  // namespace

TEST_CASE("simplex solver basics") {
    // max x0 + x1 s.t. x0 <= 2, x1 <= 3, x >= 0
    LPProblem<Rational> lp;
    int x0 = lp.add_var(1), x1 = lp.add_var(1);
    lp.maximize = true;
    lp.add_row({{{x0, Rational(1)}}, RowSense::LE, Rational(2)});
    lp.add_row({{{x1, Rational(1)}}, RowSense::LE, Rational(3)});
    auto sol = solve_lp(lp);
    REQUIRE(sol.status == LPStatus::Optimal);
    CHECK(sol.value == Rational(5));
    CHECK(sol.x[x0] == Rational(2));
    CHECK(sol.x[x1] == Rational(3));
    // duals: both rows active with price 1
    CHECK(sol.row_dual[0] == Rational(1));
    CHECK(sol.row_dual[1] == Rational(1));

    // infeasible: x0 <= 1 and x0 >= 2
    LPProblem<Rational> bad;
    int y = bad.add_var(0);
    bad.add_row({{{y, Rational(1)}}, RowSense::LE, Rational(1)});
    bad.add_row({{{y, Rational(1)}}, RowSense::GE, Rational(2)});
    CHECK(solve_lp(bad).status == LPStatus::Infeasible);

    // unbounded: max x, no constraints binding
    LPProblem<Rational> ub;
    int z = ub.add_var(1);
    ub.maximize = true;
    ub.add_row({{{z, Rational(1)}}, RowSense::GE, Rational(0)});
    CHECK(solve_lp(ub).status == LPStatus::Unbounded);

    // equality row with a mix: min x0 + 2 x1 s.t. x0 + x1 = 4, x0 <= 1
    LPProblem<double> eq;
    int a = eq.add_var(1.0), b = eq.add_var(2.0);
    eq.add_row({{{a, 1.0}, {b, 1.0}}, RowSense::EQ, 4.0});
    eq.add_row({{{a, 1.0}}, RowSense::LE, 1.0});
    auto es = solve_lp(eq);
    REQUIRE(es.status == LPStatus::Optimal);
    CHECK(es.value == doctest::Approx(7.0));
}

TEST_CASE("kantorovich: trivial, two-point space, three-point line") {
    // phi == psi
    FiniteQcms line = FiniteQcms::line_metric({Rational(0), Rational(1), Rational(2)});
    auto same = kantorovich(line, dirac_state(3, 1), dirac_state(3, 1));
    REQUIRE(same.exact);
    CHECK(*same.exact == 0);

    // two-point space at distance eps
    Rational eps(3, 7);
    FiniteQcms two = FiniteQcms::from_metric({{Rational(0), eps}, {eps, Rational(0)}});
    auto d = kantorovich(two, dirac_state(2, 0), dirac_state(2, 1));
    REQUIRE(d.exact);
    CHECK(*d.exact == eps);

    // d(1,2)=1, d(2,3)=1, d(1,3)=2: Dirac endpoints at distance 2
    auto ends = kantorovich(line, dirac_state(3, 0), dirac_state(3, 2));
    REQUIRE(ends.exact);
    CHECK(*ends.exact == 2);
}

TEST_CASE("kantorovich equals the classical W1 oracle on line metrics, exactly") {
    for (int m = 2; m <= 6; ++m) {
        std::vector<Rational> coords = sorted_random_coords(m, rng);
        FiniteQcms q = FiniteQcms::line_metric(coords);
        for (int trial = 0; trial < 12; ++trial) {
            std::vector<Rational> phi = random_state(m, rng);
            std::vector<Rational> psi = random_state(m, rng);
            auto r = kantorovich(q, phi, psi);
            REQUIRE(r.exact);
            CHECK(*r.exact == w1_line_oracle(coords, phi, psi));
        }
    }
}

TEST_CASE("kantorovich metric axioms and ground-metric recovery") {
    std::vector<Rational> coords = sorted_random_coords(5, rng);
    FiniteQcms q = FiniteQcms::line_metric(coords);
    // Dirac states recover the ground metric exactly
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            auto r = kantorovich(q, dirac_state(5, i), dirac_state(5, j));
            REQUIRE(r.exact);
            CHECK(*r.exact == abs(coords[i] - coords[j]));
        }
    // symmetry and triangle inequality on random triples
    for (int trial = 0; trial < 8; ++trial) {
        auto a = random_state(5, rng), b = random_state(5, rng), c = random_state(5, rng);
        Rational ab = *kantorovich(q, a, b).exact;
        Rational ba = *kantorovich(q, b, a).exact;
        Rational ac = *kantorovich(q, a, c).exact;
        Rational cb = *kantorovich(q, c, b).exact;
        CHECK(ab == ba);
        CHECK(ab <= ac + cb);
        CHECK(ab >= 0);
    }
}

TEST_CASE("scale covariance and translation invariance") {
    std::vector<Rational> coords = sorted_random_coords(4, rng);
    FiniteQcms q = FiniteQcms::line_metric(coords);
    FiniteQcms q3 = q;
    for (auto& blk : q3.seminorm.blocks)
        for (auto& f : blk.forms)
            for (auto& [j, v] : f.c) v *= 3;  // L -> 3L
    auto phi = random_state(4, rng), psi = random_state(4, rng);
    Rational d1 = *kantorovich(q, phi, psi).exact;
    Rational d3 = *kantorovich(q3, phi, psi).exact;
    CHECK(d1 == 3 * d3);

    std::uniform_int_distribution<int> num(-20, 20);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Rational> f(4);
        for (auto& v : f) v = Rational(num(rng), 3);
        Rational base = q.eval(f);
        Rational shift(num(rng), 5);
        std::vector<Rational> g = f;
        for (auto& v : g) v += shift;
        CHECK(q.eval(g) == base);
    }
}

TEST_CASE("transport dual agrees with the exact primal") {
    // dist to a singleton pullback set equals mk to that Dirac state
    std::vector<Rational> coords = sorted_random_coords(5, rng);
    FiniteQcms q = FiniteQcms::line_metric(coords);
    for (int i = 0; i < 5; ++i) {
        auto phi = random_state(5, rng);
        Rational direct = *kantorovich(q, phi, dirac_state(5, i)).exact;
        double via_set = distance_to_state_set(q.seminorm, phi, {i});
        CHECK(via_set == doctest::Approx(to_double(direct)).epsilon(1e-12));
    }

    // above the exact cap, the dual path must match the independent W1 oracle
    std::vector<Rational> coords2 = sorted_random_coords(20, rng);
    FiniteQcms big = FiniteQcms::line_metric(coords2);
    for (int trial = 0; trial < 5; ++trial) {
        auto phi = random_state(20, rng), psi = random_state(20, rng);
        auto r = kantorovich(big, phi, psi);
        CHECK(r.value ==
              doctest::Approx(to_double(w1_line_oracle(coords2, phi, psi))).epsilon(1e-8));
    }
}

TEST_CASE("qdiam examples") {
    FiniteQcms one;
    one.seminorm.dim = 1;
    CHECK(qdiam(one) == 0.0);

    Rational eps(2, 5);
    FiniteQcms two = FiniteQcms::from_metric({{Rational(0), eps}, {eps, Rational(0)}});
    CHECK(qdiam(two) == doctest::Approx(to_double(eps)));

    std::vector<Rational> grid;
    for (int j = 0; j <= 10; ++j) grid.push_back(Rational(j, 10));
    FiniteQcms q = FiniteQcms::line_metric(grid);
    CHECK(qdiam(q) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("norm bound check") {
    std::vector<Rational> coords = {Rational(0), Rational(1), Rational(2)};
    FiniteQcms q = FiniteQcms::line_metric(coords);
    std::vector<Rational> mu = {Rational(1, 3), Rational(1, 3), Rational(1, 3)};

    NormBoundCheck c1 = norm_bound_check(q, {Rational(5), Rational(5), Rational(5)}, mu);
    CHECK(c1.ok);
    CHECK(c1.lhs == 0.0);

    std::uniform_int_distribution<int> num(-9, 9);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Rational> f = {Rational(num(rng)), Rational(num(rng)), Rational(num(rng))};
        CHECK(norm_bound_check(q, f, mu).ok);
    }
}

TEST_CASE("unit ball vertices of small seminorm balls") {
    // two-point space at distance eps: ball through f(0)=0 is the segment
    Rational eps(1, 2);
    FiniteQcms two = FiniteQcms::from_metric({{Rational(0), eps}, {eps, Rational(0)}});
    std::vector<Rational> gauge = {Rational(1), Rational(0)};  // pin f(0) = 0
    auto verts = unit_ball_vertices(two.seminorm, gauge);
    REQUIRE(verts.size() == 2);
    CHECK(verts[0][1] == -eps);
    CHECK(verts[1][1] == eps);

    // path metric 0-1-2: vertices (0,1,2), (0,1,0), (0,-1,0), (0,-1,-2)
    FiniteQcms line = FiniteQcms::line_metric({Rational(0), Rational(1), Rational(2)});
    auto v3 = unit_ball_vertices(line.seminorm, {Rational(1), Rational(0), Rational(0)});
    CHECK(v3.size() == 4);
    for (const auto& v : v3) CHECK(abs(v[1]) == 1);
}

TEST_CASE("epsilon net with certification") {
    Rational eps(1, 2);
    FiniteQcms two = FiniteQcms::from_metric({{Rational(0), eps}, {eps, Rational(0)}});
    std::vector<Rational> mu = {Rational(1), Rational(0)};
    EpsilonNet net = epsilon_net(two, mu, 0.1, rng);
    CHECK(net.from_vertices);
    CHECK(net.certified_cover_radius <= 0.1);

    FiniteQcms line = FiniteQcms::line_metric({Rational(0), Rational(1), Rational(2)});
    std::vector<Rational> mu3 = {Rational(1, 3), Rational(1, 3), Rational(1, 3)};
    EpsilonNet net3 = epsilon_net(line, mu3, 0.25, rng);
    CHECK(net3.certified_cover_radius <= 0.25);
    // volumetric sanity: at most C (1/eps)^{m-1} centers
    CHECK(static_cast<double>(net3.centers.size()) <= 64.0 * std::pow(4.0, 2.0));

    // greedy path (no vertex enumeration) on a larger grid
    std::vector<Rational> grid;
    for (int j = 0; j <= 6; ++j) grid.push_back(Rational(j, 2));
    FiniteQcms q = FiniteQcms::line_metric(grid);
    std::vector<Rational> mug(7, Rational(1, 7));
    EpsilonNet ng = epsilon_net(q, mug, 0.75, rng, /*vertex_budget=*/10);
    CHECK(!ng.from_vertices);
    CHECK(ng.certified_cover_radius <= 0.75);
}

TEST_CASE("identity tunnel has vanishing extent bounds") {
    FiniteQcms line = FiniteQcms::line_metric({Rational(0), Rational(1), Rational(2)});
    std::vector<int> id = {0, 1, 2};
    TunnelSpec t = TunnelSpec::from_point_map(line, line, id, Rational(1, 1000));
    ExtentBounds eb = tunnel_extent_bounds(t, 10, rng);
    CHECK(eb.isometry.ok);
    CHECK(eb.upper_certified);
    CHECK(eb.upper == doctest::Approx(0.001));
    CHECK(eb.lower <= 0.001 + 1e-9);
    CHECK(eb.max_pairing_distance <= 0.001 + 1e-12);
}

TEST_CASE("distance to pullback sets: zero on the set, dominated by pointwise mk") {
    FiniteQcms a = FiniteQcms::line_metric({Rational(0), Rational(1)});
    FiniteQcms b = FiniteQcms::line_metric({Rational(0), Rational(1), Rational(2)});
    std::vector<int> pt = {0, 1, 1};
    TunnelSpec t = TunnelSpec::from_point_map(a, b, pt, Rational(1, 2));
    PolyhedralSeminorm T = tunnel_seminorm(t);

    // a state already in the A-pullback set has distance zero to it
    std::vector<Rational> phi(5, Rational(0));
    phi[0] = Rational(1, 3);
    phi[1] = Rational(2, 3);
    CHECK(distance_to_pullback(t, phi, 0) <= 1e-12);

    // dominated by the distance to each specific pullback state
    auto mixed = random_state(5, rng);
    double dist = distance_to_pullback(t, mixed, 0);
    for (int x = 0; x < 2; ++x) {
        std::vector<Rational> target(5, Rational(0));
        target[x] = 1;
        CHECK(dist <= kantorovich(T, mixed, target).value + 1e-9);
    }
}

TEST_CASE("bridge builder check passes on identical spaces") {
    FiniteQcms line = FiniteQcms::line_metric({Rational(0), Rational(1), Rational(2)});
    std::vector<int> id = {0, 1, 2};
    InclusionPair pair{line, line, id};
    BridgeBuilderReport rep = bridge_builder_check(pair, id, Rational(1, 100), 6, 2'000'000, rng);
    CHECK(rep.holds);
    CHECK(rep.exhaustive);
}

TEST_CASE("degenerate seminorm is reported") {
    // two points, no forms: kernel is everything
    FiniteQcms degenerate;
    degenerate.seminorm.dim = 2;
    CHECK_THROWS(kantorovich(degenerate, dirac_state(2, 0), dirac_state(2, 1)));

    // forms must annihilate constants
    PolyhedralSeminorm bad;
    bad.dim = 2;
    SeminormBlock blk;
    blk.forms.push_back({{{0, Rational(1)}}});
    bad.blocks.push_back(blk);
    CHECK_THROWS(bad.check_annihilates_constants());
}
