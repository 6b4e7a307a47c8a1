#include "ncg/tunnel.hpp"

#include <algorithm>
#include <cmath>

namespace ncg {

TunnelSpec TunnelSpec::from_point_map(FiniteQcms a, FiniteQcms b, const std::vector<int>& pt,
                                      Rational eps) {
    TunnelSpec t;
    t.a = std::move(a);
    t.b = std::move(b);
    t.eps = std::move(eps);
    for (int y = 0; y < static_cast<int>(pt.size()); ++y) t.bridge_pairs.push_back({pt[y], y});
    return t;
}

std::vector<int> TunnelSpec::a_transport() const {
    std::vector<int> out(b.points(), -1);
    for (const auto& [x, y] : bridge_pairs)
        if (out[y] < 0) out[y] = x;
    return out;
}

std::vector<int> TunnelSpec::b_section() const {
    std::vector<int> out(a.points(), -1);
    for (const auto& [x, y] : bridge_pairs)
        if (out[x] < 0) out[x] = y;
    return out;
}

namespace {

void check_bridge(const TunnelSpec& t) {
    if (t.bridge_pairs.empty()) throw std::invalid_argument("tunnel: empty bridge");
    std::vector<bool> hit_x(t.a.points(), false), hit_y(t.b.points(), false);
    for (const auto& [x, y] : t.bridge_pairs) {
        if (x < 0 || x >= t.a.points() || y < 0 || y >= t.b.points())
            throw std::invalid_argument("tunnel: bridge pair out of range");
        hit_x[x] = true;
        hit_y[y] = true;
    }
    for (bool h : hit_x)
        if (!h) throw std::invalid_argument("tunnel: bridge must cover every X_A point");
    for (bool h : hit_y)
        if (!h) throw std::invalid_argument("tunnel: bridge must cover every X_B point");
    if (t.eps <= 0) throw std::invalid_argument("tunnel: eps > 0 required");
}

}  // namespace

PolyhedralSeminorm tunnel_seminorm(const TunnelSpec& t) {
    check_bridge(t);
    const int ma = t.a.points();
    PolyhedralSeminorm q;
    q.dim = ma + t.b.points();
    q.gauge = 0;
    for (const auto& blk : t.a.seminorm.blocks) {
        SeminormBlock nb;
        nb.weight = blk.weight;
        nb.side = 0;
        nb.forms = blk.forms;
        q.blocks.push_back(std::move(nb));
    }
    for (const auto& blk : t.b.seminorm.blocks) {
        SeminormBlock nb;
        nb.weight = blk.weight;
        nb.side = 1;
        for (const auto& f : blk.forms) {
            SeminormForm nf;
            for (const auto& [j, v] : f.c) nf.c.push_back({ma + j, v});
            nb.forms.push_back(std::move(nf));
        }
        q.blocks.push_back(std::move(nb));
    }
    SeminormBlock bridge;
    bridge.side = 2;
    Rational inv_eps = Rational(1) / t.eps;
    for (const auto& [x, y] : t.bridge_pairs) {
        SeminormForm f;
        f.c = {{x, inv_eps}, {ma + y, -inv_eps}};
        bridge.forms.push_back(std::move(f));
    }
    q.blocks.push_back(std::move(bridge));
    q.check_annihilates_constants();
    return q;
}

namespace {

// min s such that L_partner(b) <= 1 + s and |target_i - b[compare_map[i]]|
// <= eps_scale (1 + s); the probe side is feasible at its own seminorm level
// exactly when the optimum is <= 0.
double partner_excess(const FiniteQcms& partner, const std::vector<int>& compare_map,
                      const std::vector<double>& target, double eps_scale) {
    LPProblem<double> lp;
    const int mb = partner.points();
    std::vector<int> bpos(mb), bneg(mb);
    for (int j = 0; j < mb; ++j) {
        bpos[j] = lp.add_var(0.0);
        bneg[j] = lp.add_var(0.0);
    }
    std::vector<int> tvar;
    for (size_t k = 0; k < partner.seminorm.blocks.size(); ++k) tvar.push_back(lp.add_var(0.0));
    int spos = lp.add_var(1.0), sneg = lp.add_var(-1.0);
    lp.maximize = false;

    for (size_t k = 0; k < partner.seminorm.blocks.size(); ++k) {
        for (const auto& fm : partner.seminorm.blocks[k].forms) {
            for (int sgn : {+1, -1}) {
                LPRow<double> row;
                for (const auto& [j, v] : fm.c) {
                    row.terms.push_back({bpos[j], sgn * to_double(v)});
                    row.terms.push_back({bneg[j], -sgn * to_double(v)});
                }
                row.terms.push_back({tvar[k], -1.0});
                row.sense = RowSense::LE;
                row.rhs = 0.0;
                lp.add_row(std::move(row));
            }
        }
    }
    int sides = partner.seminorm.num_sides();
    for (int s = 0; s < sides; ++s) {
        LPRow<double> row;
        for (size_t k = 0; k < partner.seminorm.blocks.size(); ++k)
            if (partner.seminorm.blocks[k].side == s)
                row.terms.push_back({tvar[k], to_double(partner.seminorm.blocks[k].weight)});
        row.terms.push_back({spos, -1.0});
        row.terms.push_back({sneg, 1.0});
        row.sense = RowSense::LE;
        row.rhs = 1.0;
        lp.add_row(std::move(row));
    }
    for (size_t i = 0; i < compare_map.size(); ++i) {
        int j = compare_map[i];
        for (int sgn : {+1, -1}) {
            // sgn*(target_i - b_j) <= eps_scale (1 + s)
            LPRow<double> row;
            row.terms.push_back({bpos[j], -sgn * 1.0});
            row.terms.push_back({bneg[j], sgn * 1.0});
            row.terms.push_back({spos, -eps_scale});
            row.terms.push_back({sneg, eps_scale});
            row.sense = RowSense::LE;
            row.rhs = eps_scale - sgn * target[i];
            lp.add_row(std::move(row));
        }
    }
    LPSolution<double> sol = solve_lp(lp);
    if (sol.status != LPStatus::Optimal)
        throw std::runtime_error("partner_excess: relaxation LP failed to solve");
    return sol.value;
}

// Normalized probe functions on a space: Diracs (strided down to half the
// budget on large spaces) plus support points of random directions (vertices
// of the ball for generic directions).
std::vector<std::vector<double>> probe_functions(const FiniteQcms& q, int count,
                                                 std::mt19937_64& rng) {
    std::vector<std::vector<double>> probes;
    const int m = q.points();
    int dirac_budget = m <= count ? m : std::max(1, count / 2);
    int stride = std::max(1, m / dirac_budget);
    for (int i = 0; i < m; i += stride) {
        std::vector<double> f(m, 0.0);
        f[i] = 1.0;
        double L = q.eval(f);
        if (L <= 0) continue;
        for (double& v : f) v /= L;
        probes.push_back(std::move(f));
    }
    std::uniform_int_distribution<int> coef(-50, 50);
    while (static_cast<int>(probes.size()) < count) {
        std::vector<Rational> dir(m);
        for (int i = 0; i < m; ++i) dir[i] = coef(rng);
        KantorovichResult r = ball_support_point(q.seminorm, dir);
        if (r.status != LPStatus::Optimal) continue;
        std::vector<double> f = r.witness;
        double L = q.eval(f);
        if (L <= 1e-12) continue;
        for (double& v : f) v /= L;
        probes.push_back(std::move(f));
    }
    return probes;
}

}  // namespace

IsometryCheck quantum_isometry_check(const TunnelSpec& t, int probes, std::mt19937_64& rng,
                                     double tol) {
    check_bridge(t);
    IsometryCheck chk;
    double eps = to_double(t.eps);
    const size_t npairs = t.bridge_pairs.size();

    // A side: for a with L_A(a) = 1 find b with L_B(b) <= 1 and
    // |a(x) - b(y)| <= eps on every bridge pair.
    std::vector<int> cmp_b(npairs), cmp_a(npairs);
    for (size_t i = 0; i < npairs; ++i) {
        cmp_a[i] = t.bridge_pairs[i].first;
        cmp_b[i] = t.bridge_pairs[i].second;
    }
    for (const auto& a : probe_functions(t.a, probes, rng)) {
        std::vector<double> target(npairs);
        for (size_t i = 0; i < npairs; ++i) target[i] = a[t.bridge_pairs[i].first];
        double s = partner_excess(t.b, cmp_b, target, eps);
        chk.worst_excess = std::max(chk.worst_excess, s);
        ++chk.probes;
    }
    // B side, symmetrically.
    for (const auto& b : probe_functions(t.b, probes, rng)) {
        std::vector<double> target(npairs);
        for (size_t i = 0; i < npairs; ++i) target[i] = b[t.bridge_pairs[i].second];
        double s = partner_excess(t.a, cmp_a, target, eps);
        chk.worst_excess = std::max(chk.worst_excess, s);
        ++chk.probes;
    }
    chk.ok = chk.worst_excess <= tol;
    return chk;
}

double distance_to_pullback(const TunnelSpec& t, const std::vector<Rational>& phi, int side) {
    check_bridge(t);
    PolyhedralSeminorm q = tunnel_seminorm(t);
    const int ma = t.a.points();
    std::vector<int> cols;
    if (side == 0) {
        for (int x = 0; x < ma; ++x) cols.push_back(x);
    } else {
        for (int y = 0; y < t.b.points(); ++y) cols.push_back(ma + y);
    }
    return distance_to_state_set(q, phi, cols);
}

ExtentBounds tunnel_extent_bounds(const TunnelSpec& t, int samples, std::mt19937_64& rng) {
    check_bridge(t);
    ExtentBounds out;
    const int ma = t.a.points(), mb = t.b.points();
    const int n = ma + mb;
    PolyhedralSeminorm T = tunnel_seminorm(t);

    std::vector<int> transport = t.a_transport();  // y -> x
    std::vector<int> section = t.b_section();      // x -> y

    std::vector<std::vector<Rational>> states;
    if (n <= 2 * samples) {
        for (int i = 0; i < n; ++i) states.push_back(dirac_state(n, i));
    } else {
        int stride = std::max(1, n / samples);
        for (int i = 0; i < n; i += stride) states.push_back(dirac_state(n, i));
    }
    int target = std::max(samples, static_cast<int>(states.size()) + samples / 2);
    while (static_cast<int>(states.size()) < target) states.push_back(random_state(n, rng));

    for (const auto& phi : states) {
        // paired state on the A side: transport Y-mass along the bridge
        std::vector<Rational> mu_a(n, Rational(0));
        for (int x = 0; x < ma; ++x) mu_a[x] = phi[x];
        for (int y = 0; y < mb; ++y) mu_a[transport[y]] += phi[ma + y];
        // paired state on the B side: transport X-mass along the section
        std::vector<Rational> mu_b(n, Rational(0));
        for (int y = 0; y < mb; ++y) mu_b[ma + y] = phi[ma + y];
        for (int x = 0; x < ma; ++x) mu_b[ma + section[x]] += phi[x];

        double da = kantorovich(T, phi, mu_a).value;
        double db = kantorovich(T, phi, mu_b).value;
        out.max_pairing_distance = std::max({out.max_pairing_distance, da, db});

        out.lower = std::max({out.lower, distance_to_pullback(t, phi, 0),
                              distance_to_pullback(t, phi, 1)});
        ++out.samples;
    }
    out.isometry = quantum_isometry_check(t, std::min(samples, 12), rng);
    double eps = to_double(t.eps);
    out.upper = eps;
    out.upper_certified = out.isometry.ok && out.max_pairing_distance <= eps + 1e-7;
    return out;
}

BridgeBuilderReport bridge_builder_check(const InclusionPair& pair, const std::vector<int>& pi_map,
                                         const Rational& eps, int sample_probes,
                                         long long vertex_budget, std::mt19937_64& rng,
                                         double tol) {
    const int mbig = pair.big.points();
    if (static_cast<int>(pair.embed.size()) != mbig)
        throw std::invalid_argument("bridge_builder_check: embed size mismatch");
    if (static_cast<int>(pi_map.size()) != mbig)
        throw std::invalid_argument("bridge_builder_check: pi map size mismatch");
    double e = to_double(eps);

    BridgeBuilderReport rep;
    rep.holds = true;

    auto run_direction = [&](const FiniteQcms& from, const FiniteQcms& to, bool forward) -> bool {
        bool exhaustive = false;
        std::vector<std::vector<double>> probes;
        // vertex enumeration makes the verdict exhaustive by convexity
        if (from.seminorm.blocks.size() == 1 && from.seminorm.blocks[0].weight == 1) {
            try {
                std::vector<Rational> gauge_dir(from.points(), Rational(0));
                gauge_dir[from.seminorm.gauge] = 1;
                auto verts = unit_ball_vertices(from.seminorm, gauge_dir, vertex_budget);
                for (const auto& v : verts) {
                    std::vector<double> f(from.points());
                    for (int i = 0; i < from.points(); ++i) f[i] = to_double(v[i]);
                    double L = from.eval(f);
                    if (L <= 1e-12) continue;
                    for (double& x : f) x /= L;
                    probes.push_back(std::move(f));
                }
                exhaustive = true;
            } catch (const std::runtime_error&) {
            }
        }
        if (probes.empty()) {
            probes = probe_functions(from, sample_probes, rng);
            exhaustive = false;
        }
        int& counter = forward ? rep.probes_forward : rep.probes_backward;
        for (const auto& probe : probes) {
            ++counter;
            double s;
            if (forward) {
                // probe lives on big; partner b on sub compared through embed
                std::vector<double> target(mbig);
                for (int x = 0; x < mbig; ++x) target[x] = probe[pi_map[x]];
                s = partner_excess(pair.sub, pair.embed, target, e);
            } else {
                // probe lives on sub; partner a on big with pi(a) compared to
                // the pullback of the probe
                std::vector<double> target(mbig);
                for (int x = 0; x < mbig; ++x) target[x] = probe[pair.embed[x]];
                s = partner_excess(pair.big, pi_map, target, e);
            }
            if (s > tol) {
                rep.holds = false;
                rep.failed_direction = forward ? "forward" : "backward";
                rep.witness = probe;
                rep.witness_excess = s;
                return exhaustive;
            }
        }
        return exhaustive;
    };

    bool ex_f = run_direction(pair.big, pair.sub, true);
    if (!rep.holds) {
        rep.exhaustive = false;
        return rep;
    }
    bool ex_b = run_direction(pair.sub, pair.big, false);
    rep.exhaustive = ex_f && ex_b;
    return rep;
}

}  // namespace ncg
