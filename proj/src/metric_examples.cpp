#include "ncg/metric_examples.hpp"

#include <algorithm>

namespace ncg {

namespace {

// Difference-quotient forms over a coordinate range [lo, hi]; all pairs while
// the range is small, consecutive pairs beyond (equal on collinear points).
std::vector<SeminormForm> range_forms(const std::vector<Rational>& coords, int lo, int hi,
                                      int all_pairs_cap) {
    std::vector<SeminormForm> forms;
    if (hi - lo + 1 <= all_pairs_cap) {
        for (int i = lo; i <= hi; ++i)
            for (int j = i + 1; j <= hi; ++j) {
                Rational w = Rational(1) / (coords[j] - coords[i]);
                forms.push_back({{{i, w}, {j, -w}}});
            }
    } else {
        for (int i = lo; i < hi; ++i) {
            Rational w = Rational(1) / (coords[i + 1] - coords[i]);
            forms.push_back({{{i, w}, {i + 1, -w}}});
        }
    }
    return forms;
}

std::vector<Rational> grid_coords(int m) {
    std::vector<Rational> coords(m + 1);
    for (int j = 0; j <= m; ++j) coords[j] = Rational(j, m);
    return coords;
}

void check_interval_params(int n, int m) {
    if (n < 2) throw std::invalid_argument("interval example: n >= 2 required");
    if (m < 4 * n * n || m % (n * n) != 0)
        throw std::invalid_argument(
            "interval example: grid too coarse to resolve 1/n^2 (need m >= 4 n^2, n^2 | m)");
}

}  // namespace

FiniteQcms interval_base_qcms(int m) {
    return FiniteQcms::line_metric(grid_coords(m));
}

FiniteQcms interval_dilated_qcms(int n, int m) {
    check_interval_params(n, m);
    std::vector<Rational> coords = grid_coords(m);
    int jc = m - m / (n * n);  // grid index of 1 - 1/n^2
    FiniteQcms q;
    q.seminorm.dim = m + 1;
    SeminormBlock low;
    low.weight = 1;
    low.side = 0;
    low.forms = range_forms(coords, 0, jc, 24);
    SeminormBlock high;
    high.weight = Rational(1, n);
    high.side = 0;
    high.forms = range_forms(coords, jc, m, 24);
    q.seminorm.blocks = {std::move(low), std::move(high)};
    q.seminorm.check_annihilates_constants();
    q.coords = std::move(coords);
    for (int i = 0; i <= m; ++i) q.labels.push_back("x" + std::to_string(i));
    return q;
}

std::vector<Rational> interval_witness(int n, int m) {
    check_interval_params(n, m);
    Rational c = Rational(1) - Rational(1, n * n);
    std::vector<Rational> f(m + 1);
    for (int j = 0; j <= m; ++j) {
        Rational x(j, m);
        f[j] = x > c ? x - c : Rational(0);
    }
    return f;
}

IntervalExampleReport interval_example(int n, int m, int samples, std::mt19937_64& rng) {
    check_interval_params(n, m);
    IntervalExampleReport rep;
    rep.n = n;
    rep.grid_m = m;

    FiniteQcms base = interval_base_qcms(m);
    FiniteQcms dilated = interval_dilated_qcms(n, m);
    std::vector<Rational> fn = interval_witness(n, m);

    // definitional all-pairs evaluations
    rep.l_base_of_witness = base.lipschitz_sup(fn);
    int jc = m - m / (n * n);
    Rational low = 0, high = 0;
    for (int i = 0; i <= jc; ++i)
        for (int j = i + 1; j <= jc; ++j)
            low = std::max(low, Rational(abs(fn[j] - fn[i]) / (base.coords[j] - base.coords[i])));
    for (int i = jc; i <= m; ++i)
        for (int j = i + 1; j <= m; ++j)
            high = std::max(high, Rational(abs(fn[j] - fn[i]) / (base.coords[j] - base.coords[i])));
    rep.l_n_of_witness = low + Rational(1, n) * high;
    rep.ratio = to_double(rep.l_base_of_witness) / to_double(rep.l_n_of_witness);

    // tunnel with the identity point map; the paper's (n+1)-weighted bridge
    // gives eps = 1/(n+1), with 1/n as fallback when grid effects spoil the
    // sharper certification
    std::vector<int> id_map(m + 1);
    for (int i = 0; i <= m; ++i) id_map[i] = i;
    for (const Rational& eps : {Rational(1, n + 1), Rational(1, n)}) {
        TunnelSpec t = TunnelSpec::from_point_map(base, dilated, id_map, eps);
        rep.extent = tunnel_extent_bounds(t, samples, rng);
        rep.eps_used = to_double(eps);
        if (rep.extent.upper_certified) break;
    }

    // identity bridge map at eps = 1/n
    InclusionPair pair{base, dilated, id_map};
    rep.bridge_eps = 1.0 / n;
    rep.bridge = bridge_builder_check(pair, id_map, Rational(1, n), std::min(samples, 12),
                                      2'000'000, rng);
    return rep;
}

FiniteQcms nbar_level_qcms(int n) {
    if (n < 1) throw std::invalid_argument("nbar example: n >= 1 required");
    // points 0..n with weights phi_n(0) = 1 + 1/n, phi_n(k) = 1/k; the last
    // point is the constant tail of the level-n algebra
    std::vector<Rational> w(n + 1);
    w[0] = Rational(1) + Rational(1, n);
    for (int k = 1; k <= n; ++k) w[k] = Rational(1, k);
    int mm = n + 1;
    std::vector<std::vector<Rational>> dist(mm, std::vector<Rational>(mm, Rational(0)));
    for (int i = 0; i < mm; ++i)
        for (int j = 0; j < mm; ++j)
            if (i != j) dist[i][j] = abs(w[i] - w[j]);
    FiniteQcms q = FiniteQcms::from_metric(dist);
    for (int i = 0; i < mm; ++i) q.labels[i] = (i == n ? "tail" : std::to_string(i));
    return q;
}

FiniteQcms nbar_limit_qcms(int m) {
    if (m < 2) throw std::invalid_argument("nbar example: m >= 2 required");
    std::vector<Rational> w(m + 1);
    for (int k = 0; k <= m; ++k) w[k] = Rational(1, k + 1);
    std::vector<std::vector<Rational>> dist(m + 1, std::vector<Rational>(m + 1, Rational(0)));
    for (int i = 0; i <= m; ++i)
        for (int j = 0; j <= m; ++j)
            if (i != j) dist[i][j] = abs(w[i] - w[j]);
    FiniteQcms q = FiniteQcms::from_metric(dist);
    for (int i = 0; i <= m; ++i) q.labels[i] = std::to_string(i);
    return q;
}

NbarExampleReport nbar_example(int n, int m, int samples, std::mt19937_64& rng) {
    if (m <= n + 2) throw std::invalid_argument("nbar example: m > n + 2 required");
    NbarExampleReport rep;
    rep.n = n;
    rep.truncation_m = m;

    FiniteQcms level = nbar_level_qcms(n);
    FiniteQcms limit = nbar_limit_qcms(m);

    std::vector<Rational> d0_level(n + 1, Rational(0));
    d0_level[0] = 1;
    std::vector<Rational> d0_limit(m + 1, Rational(0));
    d0_limit[0] = 1;
    rep.l_n_delta0 = level.eval(d0_level);
    rep.l_inf_delta0 = limit.eval(d0_limit);

    // any f with L_n(f) <= 1 has |f(1) - f(0)| <= 1/n
    std::vector<Rational> dir(n + 1, Rational(0));
    dir[1] = 1;
    dir[0] = -1;
    KantorovichResult ob = ball_support_point(level.seminorm, dir);
    if (ob.exact)
        rep.obstruction = *ob.exact;
    else
        rep.obstruction = Rational(ob.value);

    // tunnel: merge the first two points at infinity. The B side carries the
    // shifted limit seminorm (Y-point j-1 reads sequence index j, weight 1/j
    // for j = 1..m); the bridge compares sequences index by index, so the
    // merged point y_1 is checked against both level points 0 and 1.
    FiniteQcms shifted;
    {
        std::vector<Rational> w(m);
        for (int j = 1; j <= m; ++j) w[j - 1] = Rational(1, j);
        std::vector<std::vector<Rational>> dist(m, std::vector<Rational>(m, Rational(0)));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                if (i != j) dist[i][j] = abs(w[i] - w[j]);
        shifted = FiniteQcms::from_metric(dist);
    }
    Rational eps(2, n);
    TunnelSpec t;
    t.a = level;
    t.b = shifted;
    t.eps = eps;
    t.bridge_pairs.push_back({0, 0});  // sequence index 0 vs merged point
    for (int j = 1; j <= m; ++j) t.bridge_pairs.push_back({std::min(j, n), j - 1});
    rep.eps_used = to_double(eps);
    rep.extent = tunnel_extent_bounds(t, samples, rng);

    // no bridge builder: the identity map fails at delta_0 once
    // 1/2 - 2 eps > 1/n
    std::vector<int> embed(m + 1);
    for (int x = 0; x <= m; ++x) embed[x] = std::min(x, n);
    std::vector<int> id_map(m + 1);
    for (int x = 0; x <= m; ++x) id_map[x] = x;
    InclusionPair pair{limit, level, embed};
    Rational bridge_eps(1, 4 * n);
    rep.bridge_eps = to_double(bridge_eps);
    rep.bridge = bridge_builder_check(pair, id_map, bridge_eps, std::min(samples, 12), 500'000,
                                      rng);
    return rep;
}

}  // namespace ncg
