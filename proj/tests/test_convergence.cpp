#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ncg/experiments.hpp"

using namespace ncg;

namespace {

ExperimentConfig small_solenoid() {
    ExperimentConfig cfg;
    cfg.family_kind = "solenoid";
    cfg.p = 2;
    cfg.d = 1;
    cfg.levels = {1, 2};
    cfg.radii = {Rational(1), Rational(2)};
    cfg.samples = 10;
    cfg.support = 3;
    cfg.seed = 555;
    return cfg;
}

}  // namespace

TEST_CASE("seminorm comparison: level vs window, no violations") {
    ExperimentConfig cfg = small_solenoid();
    SeminormComparisonReport rep = seminorm_comparison(cfg);
    CHECK(rep.verdict == Verdict::Pass);
    CHECK(rep.violations == 0);
    for (const auto& r : rep.rows) {
        CHECK(r.ln_lower <= r.ln_upper + 1e-9);
        CHECK(r.lw_lower <= r.lw_upper + 1e-9);
        CHECK(r.ln_lower <= r.lw_lower + 1e-8);
        if (r.ratio_defined) CHECK(r.ratio >= 1.0 - 1e-8);
    }
    CHECK(rep.predicted_ratio_bound > 1.0);
}

TEST_CASE("delta elements: L_n equals the window value for deep interior shifts") {
    // f = delta_g with g in G_n: both truncations see the same exact
    // single-shift bound once the window dominates
    ExperimentConfig cfg = small_solenoid();
    Group g = cfg.group();
    Cocycle sigma = cfg.cocycle();
    LengthFunction H = cfg.length_h(), F = cfg.length_f(), L = cfg.length();
    Ball bn = restrict_to_level(enumerate_ball(g, L, 2, cfg.budget), 1);
    Ball bw = enumerate_ball(g, L, 8, cfg.budget);
    TruncatedTriple tn = make_triple(bn, H, F, sigma, 1, 1);
    TruncatedTriple tw = make_triple(bw, H, F, sigma);
    GroupElement x = make_solenoid_element(g, {Rational(1, 2)});
    AlgebraElement f = AlgebraElement::delta(g, x);
    double ln = commutator_norm(tn, f).value;
    double lw = commutator_norm(tw, f).value;
    CHECK(ln <= lw + 1e-12);
}

TEST_CASE("functional calculus deviations: exact zeros and monotone trend") {
    ExperimentConfig cfg = small_solenoid();
    cfg.levels = {1, 2, 3, 4};
    cfg.radii = {Rational(2)};
    cfg.window_factor = 4;  // window radius 8: saturated by level 3
    auto f = [](double x) { return cplx(1.0 / (1.0 + x * x)); };
    FuncCalcReport rep = functional_calculus_convergence(cfg, f, "1/(1+x^2)");
    REQUIRE(rep.rows.size() == 4);
    CHECK(rep.non_increasing);
    CHECK(rep.verdict == Verdict::Pass);
    // window saturation: G_3 contains every window element, so the operators
    // coincide and the deviation vanishes exactly
    CHECK(rep.rows[2].deviation == 0.0);
    CHECK(rep.rows[3].deviation == 0.0);
    CHECK(rep.rows[0].deviation > rep.rows[1].deviation);

    // the zero function gives all-zero deviations
    FuncCalcReport zero =
        functional_calculus_convergence(cfg, [](double) { return cplx(0.0); }, "0");
    for (const auto& r : zero.rows) CHECK(r.deviation == 0.0);
}

TEST_CASE("dynamics deviations decrease in the level and stay lipschitz") {
    ExperimentConfig cfg = small_solenoid();
    cfg.levels = {1, 2, 3};
    cfg.samples = 20;
    DynamicsReport rep = dynamics_deviation(cfg);
    REQUIRE(rep.rows.size() == 3);
    CHECK(rep.verdict == Verdict::Pass);
    for (const auto& r : rep.rows) CHECK(r.lipschitz_violation <= 1e-10);
    CHECK(rep.rows[0].max_deviation >= rep.rows[1].max_deviation - 1e-9);
    CHECK(rep.rows[1].max_deviation >= rep.rows[2].max_deviation - 1e-9);
}

TEST_CASE("bridge certificate: certified on the minimal suite samples") {
    ExperimentConfig cfg = small_solenoid();
    cfg.samples = 16;
    BridgeCertificateReport rep = bridge_builder_certificate(cfg, 1, 0.0);
    CHECK(rep.verdict == Verdict::Pass);
    CHECK(rep.epsilon > 0);
    CHECK(rep.epsilon < rep.diameter_proxy / 2);
    bool has_identity_route = false, has_lift = false;
    for (const auto& s : rep.samples) {
        if (s.direction == "approx-from-limit") has_identity_route = true;
        if (s.direction == "lift-from-level") has_lift = true;
    }
    CHECK(has_identity_route);
    CHECK(has_lift);
    CHECK_THROWS(bridge_builder_certificate(cfg, 1, rep.diameter_proxy));  // eps >= C/2
}

TEST_CASE("suites pass end to end and are deterministic under the seed") {
    ExperimentConfig cfg = small_solenoid();
    cfg.samples = 6;
    ConvergenceReport a = run_solenoid_suite(cfg);
    CHECK(a.overall == Verdict::Pass);
    ConvergenceReport b = run_solenoid_suite(cfg);
    REQUIRE(a.seminorms.rows.size() == b.seminorms.rows.size());
    for (size_t i = 0; i < a.seminorms.rows.size(); ++i) {
        CHECK(a.seminorms.rows[i].ln_lower == b.seminorms.rows[i].ln_lower);
        CHECK(a.seminorms.rows[i].lw_lower == b.seminorms.rows[i].lw_lower);
    }
    REQUIRE(a.dynamics.rows.size() == b.dynamics.rows.size());
    for (size_t i = 0; i < a.dynamics.rows.size(); ++i)
        CHECK(a.dynamics.rows[i].max_deviation == b.dynamics.rows[i].max_deviation);

    ExperimentConfig bd;
    bd.family_kind = "bunce-deddens";
    bd.alpha = {2, 4, 8};
    bd.cocycle_kind = "bunce-deddens";
    bd.circle = CircleLength::Chord;
    bd.levels = {1, 2};
    bd.radii = {Rational(1), Rational(2)};
    bd.samples = 6;
    ConvergenceReport c = run_bd_suite(bd);
    CHECK(c.overall == Verdict::Pass);
    // the circle-part ball identity rows B[alpha_d] = alpha_d
    REQUIRE(c.ball_rows.size() == 3);
    for (const auto& row : c.ball_rows) CHECK(row.count == row.expected);

    CHECK_THROWS(run_solenoid_suite(bd));
    CHECK_THROWS(run_bd_suite(cfg));
}

TEST_CASE("coset representatives by nearest-point rounding keep F constant") {
    // the Lip-n-infty inequality machinery: block values at sampled coset
    // representatives stay below (1/(1-eps/C)) L_n within tolerance
    ExperimentConfig cfg = small_solenoid();
    Group g = cfg.group();
    Cocycle sigma = cfg.cocycle();
    LengthFunction H = cfg.length_h(), F = cfg.length_f(), L = cfg.length();
    unsigned n = 1;
    Ball bn = restrict_to_level(enumerate_ball(g, L, 2, cfg.budget), n);
    TruncatedTriple tn = make_triple(bn, H, F, sigma, 1, n);
    std::mt19937_64 rng(9);
    auto samples = sample_level_elements(cfg, n, 2, 8, rng, true);

    // representatives of distinct cosets with small L_H: 1/4, 1/8, 3/8
    std::vector<GroupElement> reps = {make_solenoid_element(g, {Rational(1, 4)}),
                                      make_solenoid_element(g, {Rational(1, 8)}),
                                      make_solenoid_element(g, {Rational(3, 8)})};
    for (const AlgebraElement& f : samples) {
        double ln = commutator_norm(tn, f).value;
        double sup_block = ln;  // k = identity gives the level seminorm itself
        for (const GroupElement& k : reps)
            sup_block = std::max(sup_block, coset_block_seminorm(tn, H, F, f, k));
        // measured Hausdorff at this level bounds L_H(kows); the inequality
        // uses the norm bound with the heuristic proxy
        double c_proxy = 2.0;
        double epsC = H(g, reps[1]) * c_proxy;  // L_H(k) <= 1/8 here
        double bound = ln / (1.0 - epsC) + 1e-9;
        CHECK(sup_block <= bound + f.ell1() * 2.0 * H(g, reps[2]));
    }
}
