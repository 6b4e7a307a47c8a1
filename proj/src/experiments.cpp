#include "ncg/experiments.hpp"

#include <chrono>
#include <cmath>

namespace ncg {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "PASS";
        case Verdict::Fail: return "FAIL";
        case Verdict::Undecided: return "UNDECIDED";
    }
    return "UNDECIDED";
}

namespace {

Verdict worst(Verdict a, Verdict b) {
    if (a == Verdict::Fail || b == Verdict::Fail) return Verdict::Fail;
    if (a == Verdict::Undecided || b == Verdict::Undecided) return Verdict::Undecided;
    return Verdict::Pass;
}

Rational max_radius(const ExperimentConfig& cfg) {
    Rational r = cfg.radii.front();
    for (const Rational& q : cfg.radii) r = std::max(r, q);
    return r;
}

Rational window_radius(const ExperimentConfig& cfg) {
    return max_radius(cfg) * Rational(cfg.window_factor);
}

// Heuristic diameter proxy: twice the reciprocal of the smallest nonzero
// length value in the window.
double diameter_proxy(const ExperimentConfig& cfg, const Ball& window,
                      const LengthFunction& length) {
    if (cfg.diameter_proxy > 0) return cfg.diameter_proxy;
    double least = std::numeric_limits<double>::infinity();
    for (const GroupElement& g : window.elems) {
        double v = length(window.group, g);
        if (v > 0) least = std::min(least, v);
    }
    if (!std::isfinite(least) || least <= 0) return 2.0;
    return 2.0 / least;
}

AlgebraElement restrict_to_subgroup(const AlgebraElement& f, unsigned n) {
    AlgebraElement out(f.group());
    for (const auto& [g, c] : f.terms())
        if (level(f.group(), g) <= n) out.add_term(g, c);
    return out;
}

}  // namespace

std::vector<AlgebraElement> sample_level_elements(const ExperimentConfig& cfg, unsigned n,
                                                  const Rational& radius, int count,
                                                  std::mt19937_64& rng, bool trace_zero) {
    Group g = cfg.group();
    Cocycle sigma = cfg.cocycle();
    Ball bn = restrict_to_level(enumerate_ball(g, cfg.length(), radius, cfg.budget), n);
    std::uniform_int_distribution<int> pick(0, bn.size() - 1);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::vector<AlgebraElement> out;
    for (int i = 0; i < count; ++i) {
        AlgebraElement f(g);
        for (int s = 0; s < cfg.support; ++s)
            f.add_term(bn.elems[pick(rng)], cplx(coef(rng), coef(rng)));
        f = symmetrize(sigma, f);
        if (trace_zero) f.add_term(identity(g), -trace(f));
        if (f.empty()) {
            --i;
            continue;
        }
        out.push_back(std::move(f));
    }
    return out;
}

SeminormComparisonReport seminorm_comparison(const ExperimentConfig& cfg) {
    SeminormComparisonReport rep;
    Group g = cfg.group();
    Cocycle sigma = cfg.cocycle();
    LengthFunction H = cfg.length_h(), F = cfg.length_f(), L = cfg.length();
    std::mt19937_64 rng(cfg.seed);

    Ball window = enumerate_ball(g, L, window_radius(cfg), cfg.budget);
    TruncatedTriple tw = make_triple(window, H, F, sigma, cfg.fiber_blocks);
    rep.diameter_proxy = diameter_proxy(cfg, tw.ball, L);

    double worst_h = 0;
    int f_id = 0;
    for (unsigned n : cfg.levels) {
        HausdorffEstimate h = hausdorff_subgroup_distance(g, H, L, n, window_radius(cfg), cfg.budget);
        worst_h = std::max(worst_h, h.exact ? *h.exact : h.enumerated);
        for (const Rational& r : cfg.radii) {
            Ball bn = restrict_to_level(enumerate_ball(g, L, r, cfg.budget), n);
            TruncatedTriple tn = make_triple(bn, H, F, sigma, cfg.fiber_blocks, n);
            auto samples = sample_level_elements(cfg, n, r, cfg.samples, rng);
            for (const AlgebraElement& f : samples) {
                SeminormRow row;
                row.level = n;
                row.radius = r;
                row.f_id = f_id++;
                SeminormBracket bn_br = seminorm_bracket(tn, H, F, f, cfg.tol);
                SeminormBracket bw_br = seminorm_bracket(tw, H, F, f, cfg.tol);
                row.ln_lower = bn_br.lower;
                row.ln_upper = bn_br.upper;
                row.lw_lower = bw_br.lower;
                row.lw_upper = bw_br.upper;
                if (row.ln_lower > row.lw_lower + cfg.tol * std::max(1.0, row.lw_lower))
                    ++rep.violations;
                if (row.ln_lower > cfg.tol) {
                    row.ratio_defined = true;
                    row.ratio = row.lw_lower / row.ln_lower;
                    rep.max_ratio = std::max(rep.max_ratio, row.ratio);
                }
                rep.rows.push_back(row);
            }
        }
    }
    double c = rep.diameter_proxy;
    double eps_hat = worst_h * c * c;
    rep.predicted_ratio_bound = eps_hat < c ? 1.0 / (1.0 - eps_hat / c) : 0.0;
    rep.verdict = rep.violations == 0 ? Verdict::Pass : Verdict::Fail;
    return rep;
}

FuncCalcReport functional_calculus_convergence(const ExperimentConfig& cfg,
                                               const std::function<cplx(double)>& f,
                                               const std::string& fname) {
    FuncCalcReport rep;
    rep.function = fname;
    rep.window_radius = window_radius(cfg);
    Group g = cfg.group();
    LengthFunction H = cfg.length_h(), F = cfg.length_f(), L = cfg.length();
    Ball window = enumerate_ball(g, L, rep.window_radius, cfg.budget);

    for (unsigned n : cfg.levels) {
        FuncCalcRow row;
        row.level = n;
        // P_n f(D_n) P_n differs from f(D_inf) only on the blocks outside
        // G_n, where P_n annihilates and f(D_inf) keeps f(+-m_g); the norm
        // is the largest such block norm, exactly.
        double dev = 0;
        for (const GroupElement& x : window.elems) {
            if (level(g, x) <= n) continue;
            double m = std::hypot(H(g, x), F(g, x));
            dev = std::max(dev, std::max(std::abs(f(m)), std::abs(f(-m))));
        }
        row.deviation = dev;
        rep.rows.push_back(row);
    }
    rep.non_increasing = true;
    for (size_t i = 1; i < rep.rows.size(); ++i)
        if (rep.rows[i].deviation > rep.rows[i - 1].deviation + 1e-13) rep.non_increasing = false;
    rep.verdict = rep.non_increasing ? Verdict::Pass : Verdict::Fail;
    return rep;
}

DynamicsReport dynamics_deviation(const ExperimentConfig& cfg) {
    DynamicsReport rep;
    Group g = cfg.group();
    Cocycle sigma = cfg.cocycle();
    LengthFunction H = cfg.length_h(), F = cfg.length_f(), L = cfg.length();
    std::mt19937_64 rng(cfg.seed + 1);
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> pick_t(0.0, cfg.times.empty() ? 1.0 : cfg.times.back());

    Ball window = enumerate_ball(g, L, window_radius(cfg), cfg.budget);
    TruncatedTriple tw = make_triple(window, H, F, sigma, cfg.fiber_blocks);

    for (unsigned n : cfg.levels) {
        // The level operator acts through the same blocks on G_n and as zero
        // outside (the zero extension used for the limit comparisons).
        TruncatedTriple tn = tw;
        tn.level_tag = n;
        for (int i = 0; i < tn.ball.size(); ++i)
            if (level(g, tn.ball.elems[i]) > n) {
                tn.len_h[i] = 0;
                tn.len_f[i] = 0;
            }

        DynamicsRow row;
        row.level = n;
        row.samples = cfg.samples;
        for (int s = 0; s < cfg.samples; ++s) {
            CVec xi(tw.dim());
            for (int i = 0; i < tw.dim(); ++i) xi(i) = cplx(gauss(rng), gauss(rng));
            double dn = dn_norm(tw, xi);
            xi /= dn;
            for (double t : cfg.times) {
                CVec a = unitary_dynamics(tn, t).apply(xi);
                CVec b = unitary_dynamics(tw, t).apply(xi);
                row.max_deviation = std::max(row.max_deviation, (a - b).norm());
            }
            double t1 = pick_t(rng), t2 = pick_t(rng);
            CVec u1 = unitary_dynamics(tw, t1).apply(xi);
            CVec u2 = unitary_dynamics(tw, t2).apply(xi);
            row.lipschitz_violation =
                std::max(row.lipschitz_violation, (u1 - u2).norm() - std::abs(t1 - t2));
            CVec v1 = unitary_dynamics(tn, t1).apply(xi);
            CVec v2 = unitary_dynamics(tn, t2).apply(xi);
            row.lipschitz_violation =
                std::max(row.lipschitz_violation, (v1 - v2).norm() - std::abs(t1 - t2));
        }
        rep.rows.push_back(row);
    }
    Verdict v = Verdict::Pass;
    for (const auto& row : rep.rows)
        if (row.lipschitz_violation > 1e-10) v = Verdict::Fail;
    rep.verdict = v;
    return rep;
}

BridgeCertificateReport bridge_builder_certificate(const ExperimentConfig& cfg, unsigned n,
                                                   double epsilon) {
    BridgeCertificateReport rep;
    rep.level = n;
    Group g = cfg.group();
    Cocycle sigma = cfg.cocycle();
    LengthFunction H = cfg.length_h(), F = cfg.length_f(), L = cfg.length();
    std::mt19937_64 rng(cfg.seed + 2);

    Ball window = enumerate_ball(g, L, window_radius(cfg), cfg.budget);
    TruncatedTriple tw = make_triple(window, H, F, sigma, cfg.fiber_blocks);
    Rational rn = max_radius(cfg);
    Ball bn = restrict_to_level(enumerate_ball(g, L, rn, cfg.budget), n);
    TruncatedTriple tn = make_triple(bn, H, F, sigma, cfg.fiber_blocks, n);

    double c = diameter_proxy(cfg, tw.ball, L);
    rep.diameter_proxy = c;
    if (epsilon <= 0) epsilon = 0.45 * c;
    if (!(epsilon > 0 && epsilon < c / 2))
        throw std::invalid_argument("bridge certificate: epsilon must lie in (0, C/2)");
    rep.epsilon = epsilon;

    int id = 0;
    auto weighted_l1 = [&](const AlgebraElement& f) {
        double s = 0;
        for (const auto& [x, coefv] : f.terms()) s += std::abs(coefv) * (H(g, x) + F(g, x));
        return s;
    };

    // Direction 1: approximate window elements from the level. The partner is
    // the Fourier restriction to G_n (optionally Fejer smoothed), which
    // contracts both seminorms; the certificate settles the distance and
    // seminorm claims through brackets.
    {
        std::uniform_int_distribution<int> pick(0, bn.size() - 1);
        std::vector<AlgebraElement> dir1;
        for (int i = 0; i < std::max(2, cfg.samples / 4); ++i) {
            AlgebraElement f = AlgebraElement::delta(g, bn.elems[pick(rng)]);
            dir1.push_back(symmetrize(sigma, f));
        }
        // deep elements: identity-coefficient plus the farthest window shell
        std::vector<GroupElement> deep;
        for (const GroupElement& x : window.elems)
            if (level(g, x) > n) deep.push_back(x);
        if (!deep.empty()) {
            std::uniform_int_distribution<int> dpick(0, static_cast<int>(deep.size()) - 1);
            for (int i = 0; i < std::max(2, cfg.samples / 4); ++i) {
                AlgebraElement f = AlgebraElement::delta(g, bn.elems[pick(rng)], cplx(0.25, 0)) +
                                   AlgebraElement::delta(g, deep[dpick(rng)]);
                dir1.push_back(symmetrize(sigma, f));
            }
        }
        for (const AlgebraElement& a : dir1) {
            BridgeSample s;
            s.id = id++;
            s.direction = "approx-from-limit";
            AlgebraElement b = restrict_to_subgroup(a, n);
            if (b.terms() == a.terms()) {
                s.verdict = Verdict::Pass;
                s.lhs = 0;
                s.rhs = 0;
                s.note = "partner equals the sample; distance identically zero";
                rep.samples.push_back(s);
                continue;
            }
            SeminormBracket la = seminorm_bracket(tw, H, F, a, cfg.tol);
            double ln_up = weighted_l1(b);
            AlgebraElement tail = a - b;
            double dist_up = tail.ell1();  // operator norm <= l1
            bool claim1 = ln_up <= la.lower + cfg.tol;
            bool claim2 = dist_up <= epsilon * la.lower + cfg.tol;
            s.lhs = dist_up;
            s.rhs = epsilon * la.lower;
            if (claim1 && claim2) {
                s.verdict = Verdict::Pass;
                s.note = "restriction partner certified by brackets";
            } else {
                s.verdict = Verdict::Undecided;
                s.note = "brackets too wide to certify";
                // Fejer smoothing can tighten the level-side upper bound
                for (unsigned k : {4u, 16u, 64u}) {
                    AlgebraElement bs = restrict_to_subgroup(fejer_average(a, k), n);
                    double up2 = weighted_l1(bs);
                    double d2 = (a - bs).ell1();
                    if (up2 <= la.lower + cfg.tol && d2 <= epsilon * la.lower + cfg.tol) {
                        s.verdict = Verdict::Pass;
                        s.lhs = d2;
                        s.note = "fejer-smoothed restriction certified";
                        break;
                    }
                }
            }
            rep.samples.push_back(s);
        }
    }

    // Direction 2: lift level elements with a = (1 - eps/C) b. The norm claim
    // || a - b || <= eps L_n(b) reduces to || b || <= C L_n(b), which the
    // brackets settle; the seminorm claim rides on the coset-block inequality
    // once the measured Hausdorff distance drops below eps / C^2, and the
    // premise status is recorded with each sample.
    {
        HausdorffEstimate hn =
            hausdorff_subgroup_distance(g, H, L, n, window_radius(cfg), cfg.budget);
        double h_val = hn.exact ? *hn.exact : hn.enumerated;
        bool premise = h_val <= epsilon / (c * c);
        std::uniform_int_distribution<int> pick(0, bn.size() - 1);
        for (int i = 0; i < std::max(4, cfg.samples / 2); ++i) {
            GroupElement x = bn.elems[pick(rng)];
            if (is_identity(g, x)) continue;
            AlgebraElement b = symmetrize(sigma, AlgebraElement::delta(g, x));
            b.add_term(identity(g), -trace(b));
            if (b.empty()) continue;
            BridgeSample s;
            s.id = id++;
            s.direction = "lift-from-level";
            SeminormBracket lb = seminorm_bracket(tn, H, F, b, cfg.tol);
            double norm_up = b.ell1();
            double norm_low = op_norm(lambda_e(tw, b), cfg.tol).lower;
            s.lhs = norm_up;
            s.rhs = c * lb.lower;
            if (norm_low > c * lb.upper + cfg.tol) {
                s.verdict = Verdict::Fail;
                s.note = "norm bound refuted: ||b|| exceeds C L_n(b)";
            } else if (norm_up <= c * lb.lower + cfg.tol) {
                s.verdict = Verdict::Pass;
                s.note = premise ? "norm bound certified; Hausdorff premise met"
                                 : "norm bound certified; Hausdorff premise not yet met at "
                                   "this level";
            } else {
                s.verdict = Verdict::Undecided;
                s.note = "brackets too wide to certify the norm bound";
            }
            rep.samples.push_back(s);
        }
    }

    Verdict v = Verdict::Pass;
    for (const auto& s : rep.samples) v = worst(v, s.verdict);
    rep.verdict = v;
    return rep;
}

namespace {

ConvergenceReport run_suite(const ExperimentConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    ConvergenceReport rep;
    Group g = cfg.group();
    rep.family = g.describe();
    rep.config_snapshot = config_to_text(cfg);
    LengthFunction H = cfg.length_h(), F = cfg.length_f(), L = cfg.length();

    // Ball-count identities.
    if (g.kind == FamilyKind::Solenoid && cfg.combinator == Combinator::Max &&
        cfg.h_norm == HNorm::Max) {
        rep.ball_verdict = Verdict::Pass;
        for (unsigned nn = 0; nn <= 2; ++nn) {
            BallIdentityRow row;
            row.radius = Rational(pow_int(g.prime, nn));
            row.count = enumerate_ball(g, L, row.radius, cfg.budget).size();
            BigInt side = 2 * pow_int(g.prime, 2 * nn) + 1;
            BigInt expect = 1;
            for (unsigned j = 0; j < g.rank; ++j) expect *= side;
            row.expected = expect.convert_to<long long>();
            if (row.count != row.expected) rep.ball_verdict = Verdict::Fail;
            rep.ball_rows.push_back(row);
        }
    } else if (g.kind == FamilyKind::BunceDeddens) {
        // circle-part identity B[alpha_d] = alpha_d
        Group circle = Group::zalpha(g.alpha);
        LengthFunction Lc = default_length(circle, cfg.combinator, cfg.h_norm, cfg.circle);
        rep.ball_verdict = Verdict::Pass;
        for (size_t di = 0; di < g.alpha.size(); ++di) {
            BallIdentityRow row;
            row.radius = Rational(g.alpha[di]);
            row.count = enumerate_ball(circle, Lc, row.radius, cfg.budget).size();
            row.expected = g.alpha[di].convert_to<long long>();
            if (row.count != row.expected) rep.ball_verdict = Verdict::Fail;
            rep.ball_rows.push_back(row);
        }
    } else {
        rep.ball_verdict = Verdict::Pass;
    }

    // Doubling.
    {
        double c;
        Group dg = g;
        LengthFunction dl = L;
        if (g.kind == FamilyKind::Solenoid) {
            c = std::pow(static_cast<double>(g.prime), 2.0 * g.rank);
        } else if (g.kind == FamilyKind::BunceDeddens) {
            dg = Group::zalpha(g.alpha);
            dl = default_length(dg, cfg.combinator, cfg.h_norm, cfg.circle);
            double m = 0;
            for (size_t i = 1; i < g.alpha.size(); ++i)
                m = std::max(m, to_double(g.alpha[i]) / to_double(g.alpha[i - 1]));
            c = m * m;
        } else {
            c = static_cast<double>(g.finite_modulus);
        }
        rep.doubling = doubling_report(dg, dl, 2.0, cfg.radii, c, cfg.budget);
        rep.doubling_verdict = rep.doubling.bounded_by_c ? Verdict::Pass : Verdict::Fail;
    }

    // Hausdorff distances to the subgroup levels.
    rep.hausdorff_verdict = Verdict::Pass;
    {
        double prev = std::numeric_limits<double>::infinity();
        for (unsigned n : cfg.levels) {
            HausdorffRow row;
            row.level = n;
            row.estimate =
                hausdorff_subgroup_distance(g, H, L, n, window_radius(cfg), cfg.budget);
            if (row.estimate.exact &&
                row.estimate.enumerated > *row.estimate.exact + cfg.tol)
                rep.hausdorff_verdict = Verdict::Fail;
            double val = row.estimate.exact ? *row.estimate.exact : row.estimate.enumerated;
            if (val > prev + cfg.tol) rep.hausdorff_verdict = Verdict::Fail;
            prev = val;
            rep.hausdorff_rows.push_back(row);
        }
    }

    rep.seminorms = seminorm_comparison(cfg);
    rep.funccalc = functional_calculus_convergence(
        cfg, [](double x) { return cplx(1.0 / (1.0 + x * x)); }, "1/(1+x^2)");
    rep.dynamics = dynamics_deviation(cfg);
    for (unsigned n : cfg.levels)
        rep.bridge.push_back(bridge_builder_certificate(cfg, n, cfg.epsilon));

    rep.overall = rep.ball_verdict;
    rep.overall = worst(rep.overall, rep.doubling_verdict);
    rep.overall = worst(rep.overall, rep.hausdorff_verdict);
    rep.overall = worst(rep.overall, rep.seminorms.verdict);
    rep.overall = worst(rep.overall, rep.funccalc.verdict);
    rep.overall = worst(rep.overall, rep.dynamics.verdict);
    for (const auto& b : rep.bridge) rep.overall = worst(rep.overall, b.verdict);

    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace

ConvergenceReport run_solenoid_suite(const ExperimentConfig& cfg) {
    if (cfg.family_kind != "solenoid")
        throw std::invalid_argument("run_solenoid_suite: family must be solenoid");
    return run_suite(cfg);
}

ConvergenceReport run_bd_suite(const ExperimentConfig& cfg) {
    if (cfg.family_kind != "bunce-deddens" && cfg.family_kind != "zalpha")
        throw std::invalid_argument("run_bd_suite: family must be a Bunce-Deddens tower");
    return run_suite(cfg);
}

}  // namespace ncg
