// Acceptance runner: every certification target gets one PASS/FAIL line, all
// tolerances pinned in code. Exits nonzero when anything fails.

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "ncg/experiments.hpp"
#include "ncg/io.hpp"
#include "ncg/metric_examples.hpp"

using namespace ncg;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
    std::cout << "criterion " << std::setw(2) << id << " [" << (ok ? "PASS" : "FAIL") << "] "
              << name;
    if (!detail.empty()) std::cout << " -- " << detail;
    std::cout << "\n";
    if (!ok) ++g_failures;
}

double elapsed(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// exact W1 on a line by cumulative mass
Rational w1_line(const std::vector<Rational>& coords, const std::vector<Rational>& phi,
                 const std::vector<Rational>& psi) {
    Rational acc = 0, cum = 0;
    for (size_t i = 0; i + 1 < coords.size(); ++i) {
        cum += phi[i] - psi[i];
        acc += abs(cum) * (coords[i + 1] - coords[i]);
    }
    return acc;
}

AlgebraElement random_symmetric(const Group& g, const Cocycle& sigma, const Ball& support_ball,
                                int support, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> pick(0, support_ball.size() - 1);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    AlgebraElement f(g);
    for (int s = 0; s < support; ++s)
        f.add_term(support_ball.elems[pick(rng)], cplx(coef(rng), coef(rng)));
    return symmetrize(sigma, f);
}

void criterion_1() {
    auto t0 = Clock::now();
    Group g = Group::solenoid(2, 2);
    LengthFunction L = default_length(g, Combinator::Max, HNorm::Max);
    bool ok = true;
    std::ostringstream detail;
    for (unsigned n = 0; n <= 2 && ok; ++n) {
        long long count = enumerate_ball(g, L, Rational(pow_int(2, n))).size();
        long long side = 2 * (1LL << (2 * n)) + 1;
        long long expected = side * side;
        detail << "|B(2^" << n << ")|=" << count << " ";
        if (count != expected) ok = false;
    }
    double dt = elapsed(t0);
    ok = ok && dt < 5.0;
    detail << "(" << std::fixed << std::setprecision(2) << dt << " s)";
    report(1, "ball-count identity (2 p^{2n} + 1)^d", ok, detail.str());
}

void criterion_2() {
    auto t0 = Clock::now();
    bool ok = true;
    std::ostringstream detail;

    Group g = Group::solenoid(2, 2);
    LengthFunction L = default_length(g, Combinator::Max, HNorm::Max);
    DoublingReport sol =
        doubling_report(g, L, 2.0, {Rational(1), Rational(2), Rational(4)}, 16.0);
    if (!sol.bounded_by_c) ok = false;
    detail << "solenoid max ratio " << sol.max_ratio << " <= 16; ";

    Group z = Group::zalpha({2, 4, 8});
    LengthFunction Lz = default_length(z, Combinator::Max, HNorm::Max, CircleLength::Chord);
    for (size_t i = 1; i < z.alpha.size(); ++i) {
        Rational r = Rational(z.alpha[i]) / 2;
        long long small = enumerate_ball(z, Lz, r).size();
        long long large = enumerate_ball(z, Lz, Rational(z.alpha[i])).size();
        Rational expect = Rational(z.alpha[i]) / Rational(z.alpha[i - 1]);
        if (Rational(large, small) != expect) ok = false;
        detail << "B[" << z.alpha[i] << "]/B[" << r << "]=" << large << "/" << small << " ";
    }
    double dt = elapsed(t0);
    ok = ok && dt < 10.0;
    detail << "(" << std::fixed << std::setprecision(2) << dt << " s)";
    report(2, "doubling constants", ok, detail.str());
}

void criterion_3() {
    bool ok = true;
    std::ostringstream detail;
    // two families, balls in the hundreds of elements
    {
        Group g = Group::solenoid(2, 1);
        LengthFunction H = default_length_h(g), F = default_length_f(g);
        Ball b = enumerate_ball(g, default_length(g), 8);  // 257 elements
        TruncatedTriple t = make_triple(b, H, F, Cocycle::trivial());
        Eigen::SelfAdjointEigenSolver<CMat> es(dense(dirac_sparse(t)));
        auto sp = spectrum(t);
        std::vector<double> flat;
        for (const auto& e : sp)
            for (int m = 0; m < e.multiplicity; ++m) flat.push_back(e.value);
        double worst = 0;
        for (int i = 0; i < t.dim(); ++i)
            worst = std::max(worst, std::abs(flat[i] - es.eigenvalues()(i)));
        detail << "solenoid ball " << b.size() << ", max dev " << worst << "; ";
        if (worst > 1e-10) ok = false;
    }
    {
        Group g = Group::bunce_deddens({2, 4, 8});
        LengthFunction H = default_length_h(g), F = default_length_f(g);
        Ball b = enumerate_ball(g, default_length(g), 8);
        TruncatedTriple t = make_triple(b, H, F, Cocycle::bunce_deddens());
        Eigen::SelfAdjointEigenSolver<CMat> es(dense(dirac_sparse(t)));
        auto sp = spectrum(t);
        std::vector<double> flat;
        for (const auto& e : sp)
            for (int m = 0; m < e.multiplicity; ++m) flat.push_back(e.value);
        double worst = 0;
        for (int i = 0; i < t.dim(); ++i)
            worst = std::max(worst, std::abs(flat[i] - es.eigenvalues()(i)));
        detail << "bd ball " << b.size() << ", max dev " << worst;
        if (worst > 1e-10) ok = false;
    }
    report(3, "exact Dirac spectrum vs dense eigensolver (1e-10)", ok, detail.str());
}

void criterion_4() {
    bool ok = true;
    std::ostringstream detail;
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    auto g1 = CliffordPair::gamma1(), g2 = CliffordPair::gamma2();
    double worst = 0;
    for (int i = 0; i < 500; ++i) {
        double a = u(rng), b = u(rng);
        Eigen::Vector2cd xi(cplx(u(rng), u(rng)), cplx(u(rng), u(rng)));
        double lhs = ((a * g1 + b * g2) * xi).squaredNorm();
        double rhs = (a * a + b * b) * xi.squaredNorm();
        worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, rhs));
    }
    detail << "clifford identity residual " << worst << "; ";
    if (worst > 1e-12) ok = false;

    Group g = Group::solenoid(2, 1);
    LengthFunction H = default_length_h(g), F = default_length_f(g);
    Ball b = enumerate_ball(g, default_length(g), 4);
    TruncatedTriple t = make_triple(b, H, F, Cocycle::trivial(), 2);
    CMat d = dense(dirac_sparse(t));
    CMat gam = dense(grading_sparse(t));
    double anti = (d * gam + gam * d).cwiseAbs().maxCoeff();
    detail << "grading anticommutator " << anti << "; ";
    if (anti > 1e-12) ok = false;

    AlgebraElement f = random_symmetric(g, t.cocycle, b, 4, rng);
    CMat a = dense(lambda_e(t, f));
    double comm = (a * gam - gam * a).cwiseAbs().maxCoeff();
    detail << "algebra-grading commutator " << comm << "; ";
    if (comm > 1e-12) ok = false;

    CMat lhs = d * d + CMat::Identity(t.dim(), t.dim());
    double sq = 0;
    for (int i = 0; i < t.ball.size(); ++i) {
        double v = t.len_h[i] * t.len_h[i] + t.len_f[i] * t.len_f[i] + 1.0;
        for (int c = 0; c < t.fiber_dim(); ++c) {
            int idx = i * t.fiber_dim() + c;
            lhs(idx, idx) -= v;
        }
    }
    sq = lhs.cwiseAbs().maxCoeff();
    detail << "D^2+1 identity residual " << sq;
    if (sq > 1e-12) ok = false;

    report(4, "clifford, grading and D^2 + 1 identities (1e-12)", ok, detail.str());
}

void criterion_5() {
    Group g = Group::solenoid(2, 1);
    LengthFunction H = default_length_h(g), F = default_length_f(g);
    LengthFunction Lsum = LengthFunction::combine(H, F, Combinator::Sum);
    Ball b = enumerate_ball(g, default_length(g), 8);
    bool ok = true;
    std::ostringstream detail;
    for (const Rational& q :
         {Rational(1), Rational(1, 2), Rational(3, 4), Rational(5, 8), Rational(2)}) {
        GroupElement x = make_solenoid_element(g, {q});
        double got = connes_commutator_norm(b, Cocycle::trivial(), Lsum,
                                            AlgebraElement::delta(g, x));
        double want = Lsum(g, x);
        if (std::abs(got - want) > 1e-13 * std::max(1.0, want)) {
            ok = false;
            detail << "mismatch at " << to_string(g, x) << ": " << got << " vs " << want << "; ";
        }
    }
    if (ok) detail << "exact on all probes";
    report(5, "Connes odd-triple norm equals the length", ok, detail.str());
}

void criterion_6() {
    Group g = Group::solenoid(2, 1);
    Cocycle sigma = Cocycle::trivial();
    LengthFunction H = default_length_h(g), F = default_length_f(g);
    LengthFunction L = default_length(g);
    LengthFunction Lsum = LengthFunction::combine(H, F, Combinator::Sum);
    Ball window = enumerate_ball(g, L, 8);
    TruncatedTriple tw = make_triple(window, H, F, sigma);
    std::mt19937_64 rng(202);
    int violations = 0;
    int total = 0;
    for (unsigned n : {1u, 2u}) {
        Ball bn = restrict_to_level(enumerate_ball(g, L, 2), n);
        TruncatedTriple tn = make_triple(bn, H, F, sigma, 1, n);
        for (int i = 0; i < 100; ++i) {
            AlgebraElement f = random_symmetric(g, sigma, bn, 3, rng);
            if (f.empty()) continue;
            ++total;
            double dn = op_norm(commutator(tw, f)).value;
            double mh = op_norm(multiplication_commutator(window, sigma, H, f)).value;
            double mf = op_norm(multiplication_commutator(window, sigma, F, f)).value;
            double ml = op_norm(multiplication_commutator(window, sigma, Lsum, f)).value;
            double ln = op_norm(commutator(tn, f)).value;
            double slack = 1e-8 * std::max(1.0, dn);
            if (mh > dn + slack) ++violations;
            if (mf > dn + slack) ++violations;
            if (ml > 2.0 * dn + slack) ++violations;
            if (ln > dn + slack) ++violations;
        }
    }
    std::ostringstream detail;
    detail << total << " samples, " << violations << " violations";
    report(6, "seminorm comparison inequalities", violations == 0 && total >= 200, detail.str());
}

void criterion_7() {
    bool ok = true;
    std::ostringstream detail;
    std::mt19937_64 rng(7);
    for (int n = 2; n <= 6; ++n) {
        int m = 4 * n * n;
        int samples = n <= 3 ? 10 : 6;
        IntervalExampleReport rep = interval_example(n, m, samples, rng);
        double tol = 2.0 / m;
        bool l1_ok = std::abs(to_double(rep.l_base_of_witness) - 1.0) <= tol;
        bool ln_ok = std::abs(to_double(rep.l_n_of_witness) - 1.0 / n) <= tol;
        bool ext_ok = rep.extent.upper_certified && rep.eps_used <= 1.0 / n + 1e-12;
        if (!(l1_ok && ln_ok && ext_ok)) {
            ok = false;
            detail << "n=" << n << " failed (L=" << rep.l_base_of_witness
                   << ", Ln=" << rep.l_n_of_witness << ", eps=" << rep.eps_used
                   << (rep.extent.upper_certified ? "" : " uncertified") << "); ";
        } else {
            detail << "n=" << n << " eps=" << rep.eps_used << "; ";
        }
    }
    report(7, "interval example: witness seminorms and extent <= 1/n", ok, detail.str());
}

void criterion_8() {
    std::mt19937_64 rng(8);
    int n = 4, m = 7;
    NbarExampleReport rep = nbar_example(n, m, 10, rng);
    bool values = rep.l_inf_delta0 == 2 && rep.l_n_delta0 == n &&
                  rep.obstruction == Rational(1, n);
    bool extent = rep.extent.upper_certified && 1.0 / (n + 1) < rep.eps_used / 2;
    bool bridge = !rep.bridge.holds && !rep.bridge.witness.empty();
    // the witness must genuinely violate |f(1) - f(0)| <= 1/n transfer:
    // its endpoint gap exceeds what any level partner can track
    bool witness_gap = false;
    if (bridge) {
        double gap = std::abs(rep.bridge.witness[0] - rep.bridge.witness[1]);
        witness_gap = gap > 1.0 / n + 2.0 * rep.bridge_eps;
    }
    std::ostringstream detail;
    detail << "L_inf(d0)=" << rep.l_inf_delta0 << ", L_n(d0)=" << rep.l_n_delta0
           << ", obstruction=" << rep.obstruction << ", extent<=" << rep.eps_used
           << (rep.extent.upper_certified ? " (certified)" : " (uncertified)")
           << ", bridge holds=" << (rep.bridge.holds ? "yes" : "no");
    report(8, "nbar example: exact values, extent, no bridge builder",
           values && extent && bridge && witness_gap, detail.str());
}

void criterion_9() {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> num(1, 30);
    bool ok = true;
    int checked = 0;
    for (int m = 2; m <= 6; ++m) {
        std::vector<Rational> coords = {Rational(0)};
        for (int i = 1; i < m; ++i) coords.push_back(coords.back() + Rational(num(rng), 11));
        FiniteQcms q = FiniteQcms::line_metric(coords);
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<Rational> phi = random_state(m, rng);
            std::vector<Rational> psi = random_state(m, rng);
            KantorovichResult r = kantorovich(q, phi, psi);
            if (!r.exact || *r.exact != w1_line(coords, phi, psi)) {
                ok = false;
                break;
            }
            ++checked;
        }
    }
    std::ostringstream detail;
    detail << checked << " exact-rational instances, zero tolerance";
    report(9, "Kantorovich LP equals classical W1 on line metrics", ok && checked == 50,
           detail.str());
}

void criterion_10() {
    Group g = Group::solenoid(2, 1);
    LengthFunction H = default_length_h(g), F = default_length_f(g);
    Ball b = enumerate_ball(g, default_length(g), 4);
    TruncatedTriple t = make_triple(b, H, F, Cocycle::trivial());
    std::mt19937_64 rng(10);
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> time(-4.0, 4.0);
    int violations = 0;
    for (int i = 0; i < 1000; ++i) {
        CVec xi(t.dim());
        for (int k = 0; k < t.dim(); ++k) xi(k) = cplx(gauss(rng), gauss(rng));
        xi /= dn_norm(t, xi);
        double s = time(rng), tt = time(rng);
        CVec a = unitary_dynamics(t, tt).apply(xi);
        CVec bb = unitary_dynamics(t, s).apply(xi);
        if ((a - bb).norm() > std::abs(tt - s) + 1e-10) ++violations;
    }
    std::ostringstream detail;
    detail << "1000 samples, " << violations << " violations";
    report(10, "dynamics lipschitz bound |t - s|", violations == 0, detail.str());
}

void criterion_11() {
    ExperimentConfig cfg;
    cfg.family_kind = "solenoid";
    cfg.p = 2;
    cfg.d = 1;
    cfg.levels = {1, 2, 3, 4};
    cfg.radii = {Rational(2)};
    cfg.window_factor = 4;  // fixed window radius 8
    FuncCalcReport rep = functional_calculus_convergence(
        cfg, [](double x) { return cplx(1.0 / (1.0 + x * x)); }, "1/(1+x^2)");
    std::ostringstream detail;
    for (const auto& r : rep.rows) detail << "n=" << r.level << ": " << r.deviation << "; ";
    bool saturates = !rep.rows.empty() && rep.rows.back().deviation == 0.0;
    report(11, "functional calculus deviation non-increasing over levels",
           rep.non_increasing && saturates, detail.str());
}

void criterion_12() {
    Group g = Group::solenoid(2, 1);
    Cocycle sigma = Cocycle::trivial();
    LengthFunction H = default_length_h(g), F = default_length_f(g);
    LengthFunction L = default_length(g);
    Ball window = enumerate_ball(g, L, 8);
    TruncatedTriple tw = make_triple(window, H, F, sigma);
    std::mt19937_64 rng(12);
    int violations = 0;
    Ball support = enumerate_ball(g, L, 4);
    for (int i = 0; i < 100; ++i) {
        AlgebraElement f = random_symmetric(g, sigma, support, 4, rng);
        if (f.empty()) continue;
        double base = op_norm(commutator(tw, f)).value;
        double prev_gap = std::numeric_limits<double>::infinity();
        for (unsigned k : {2u, 8u, 32u, 1u << 20}) {
            AlgebraElement fk = fejer_average(f, k);
            double smoothed = op_norm(commutator(tw, fk)).value;
            if (smoothed > base + 1e-8 * std::max(1.0, base)) ++violations;
            double gap = (fk - f).ell1();
            if (gap > prev_gap + 1e-12) ++violations;  // pointwise kernel growth
            prev_gap = gap;
        }
        if (prev_gap > 1e-4 * std::max(1.0, f.ell1())) ++violations;  // k -> inf recovery
    }
    std::ostringstream detail;
    detail << "100 samples, " << violations << " violations";
    report(12, "fejer contraction and convergence", violations == 0, detail.str());
}

void criterion_13() {
    bool ok = true;
    std::ostringstream detail;
    {
        ExperimentConfig cfg;
        cfg.family_kind = "solenoid";
        cfg.p = 2;
        cfg.d = 1;
        cfg.levels = {1, 2};
        cfg.radii = {Rational(1), Rational(2)};
        cfg.samples = 20;
        auto t0 = Clock::now();
        ConvergenceReport rep = run_solenoid_suite(cfg);
        double dt = elapsed(t0);
        detail << "solenoid " << verdict_name(rep.overall) << " in " << std::fixed
               << std::setprecision(1) << dt << " s; ";
        if (rep.overall != Verdict::Pass || dt >= 60.0) ok = false;
    }
    {
        ExperimentConfig cfg;
        cfg.family_kind = "bunce-deddens";
        cfg.alpha = {2, 4, 8};
        cfg.cocycle_kind = "bunce-deddens";
        cfg.circle = CircleLength::Chord;
        cfg.levels = {1, 2};
        cfg.radii = {Rational(1), Rational(2)};
        cfg.samples = 20;
        auto t0 = Clock::now();
        ConvergenceReport rep = run_bd_suite(cfg);
        double dt = elapsed(t0);
        detail << "bd " << verdict_name(rep.overall) << " in " << std::fixed
               << std::setprecision(1) << dt << " s";
        if (rep.overall != Verdict::Pass || dt >= 60.0) ok = false;
    }
    report(13, "minimal suites pass under 60 s", ok, detail.str());
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    criterion_13();
    if (g_failures > 0) {
        std::cout << g_failures << " criterion(s) FAILED\n";
        return 1;
    }
    std::cout << "all 13 criteria PASS\n";
    return 0;
}
