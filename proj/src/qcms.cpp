#include "ncg/qcms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace ncg {

int PolyhedralSeminorm::num_sides() const {
    int s = 0;
    for (const auto& b : blocks) s = std::max(s, b.side + 1);
    return s;
}

void PolyhedralSeminorm::check_annihilates_constants() const {
    for (const auto& b : blocks)
        for (const auto& f : b.forms) {
            Rational s = 0;
            for (const auto& [j, v] : f.c) s += v;
            if (s != 0)
                throw std::invalid_argument("seminorm form does not annihilate constants");
        }
}

FiniteQcms FiniteQcms::from_metric(const std::vector<std::vector<Rational>>& dist) {
    int m = static_cast<int>(dist.size());
    FiniteQcms q;
    q.seminorm.dim = m;
    SeminormBlock blk;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            if (dist[i][j] <= 0) throw std::invalid_argument("from_metric: nonpositive distance");
            SeminormForm f;
            Rational w = Rational(1) / dist[i][j];
            f.c = {{i, w}, {j, -w}};
            blk.forms.push_back(std::move(f));
        }
    q.seminorm.blocks.push_back(std::move(blk));
    q.seminorm.check_annihilates_constants();
    for (int i = 0; i < m; ++i) q.labels.push_back("p" + std::to_string(i));
    return q;
}

FiniteQcms FiniteQcms::line_metric(std::vector<Rational> coords, int all_pairs_cap) {
    int m = static_cast<int>(coords.size());
    if (!std::is_sorted(coords.begin(), coords.end()))
        throw std::invalid_argument("line_metric: coordinates must be sorted");
    FiniteQcms q;
    q.seminorm.dim = m;
    SeminormBlock blk;
    if (m <= all_pairs_cap) {
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) {
                Rational w = Rational(1) / (coords[j] - coords[i]);
                blk.forms.push_back({{{i, w}, {j, -w}}});
            }
    } else {
        for (int i = 0; i + 1 < m; ++i) {
            Rational w = Rational(1) / (coords[i + 1] - coords[i]);
            blk.forms.push_back({{{i, w}, {i + 1, -w}}});
        }
    }
    q.seminorm.blocks.push_back(std::move(blk));
    q.seminorm.check_annihilates_constants();
    q.coords = std::move(coords);
    for (int i = 0; i < m; ++i) q.labels.push_back("x" + std::to_string(i));
    return q;
}

Rational FiniteQcms::lipschitz_sup(const std::vector<Rational>& f) const {
    if (coords.empty()) {
        // fall back to the stored forms
        return seminorm.eval(f);
    }
    Rational best = 0;
    int m = points();
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            Rational d = coords[j] - coords[i];
            if (d == 0) continue;
            Rational v = abs(f[j] - f[i]) / d;
            if (v > best) best = v;
        }
    return best;
}

namespace {

// Shared LP builder. Variables: u as two nonnegative parts (gauge coordinate
// omitted), then one t per block, then optional caller extensions. Rows:
// +-form <= t_block, per-side sum w t <= 1.
template <class T>
struct BallLP {
    LPProblem<T> lp;
    std::vector<int> u_pos, u_neg;  // per coordinate; -1 at the gauge
    std::vector<int> t_var;         // per block

    static T conv(const Rational& v) {
        if constexpr (std::is_floating_point_v<T>)
            return to_double(v);
        else
            return v;
    }

    explicit BallLP(const PolyhedralSeminorm& q) {
        u_pos.assign(q.dim, -1);
        u_neg.assign(q.dim, -1);
        for (int j = 0; j < q.dim; ++j) {
            if (j == q.gauge) continue;
            u_pos[j] = lp.add_var(T(0));
            u_neg[j] = lp.add_var(T(0));
        }
        for (size_t k = 0; k < q.blocks.size(); ++k) t_var.push_back(lp.add_var(T(0)));
        // form rows
        for (size_t k = 0; k < q.blocks.size(); ++k) {
            for (const auto& fm : q.blocks[k].forms) {
                for (int sgn : {+1, -1}) {
                    LPRow<T> row;
                    for (const auto& [j, v] : fm.c) {
                        if (j == q.gauge) continue;
                        T w = conv(v) * T(sgn);
                        row.terms.push_back({u_pos[j], w});
                        row.terms.push_back({u_neg[j], -w});
                    }
                    row.terms.push_back({t_var[k], T(-1)});
                    row.sense = RowSense::LE;
                    row.rhs = T(0);
                    lp.add_row(std::move(row));
                }
            }
        }
        // side rows
        int sides = q.num_sides();
        for (int s = 0; s < sides; ++s) {
            LPRow<T> row;
            for (size_t k = 0; k < q.blocks.size(); ++k)
                if (q.blocks[k].side == s)
                    row.terms.push_back({t_var[k], conv(q.blocks[k].weight)});
            row.sense = RowSense::LE;
            row.rhs = T(1);
            lp.add_row(std::move(row));
        }
    }

    void set_objective(const PolyhedralSeminorm& q, const std::vector<Rational>& delta,
                       bool maximize) {
        lp.maximize = maximize;
        for (int j = 0; j < q.dim; ++j) {
            if (j == q.gauge) continue;
            lp.objective[u_pos[j]] = conv(delta[j]);
            lp.objective[u_neg[j]] = -conv(delta[j]);
        }
    }

    std::vector<double> extract_u(const PolyhedralSeminorm& q, const LPSolution<T>& sol) const {
        std::vector<double> u(q.dim, 0.0);
        for (int j = 0; j < q.dim; ++j) {
            if (j == q.gauge) continue;
            if constexpr (std::is_floating_point_v<T>)
                u[j] = sol.x[u_pos[j]] - sol.x[u_neg[j]];
            else
                u[j] = to_double(sol.x[u_pos[j]] - sol.x[u_neg[j]]);
        }
        return u;
    }
};

template <class T>
KantorovichResult solve_ball_lp(const PolyhedralSeminorm& q, const std::vector<Rational>& delta) {
    BallLP<T> builder(q);
    builder.set_objective(q, delta, true);
    LPSolution<T> sol = solve_lp(builder.lp);
    KantorovichResult res;
    res.status = sol.status;
    if (sol.status == LPStatus::Unbounded)
        throw std::runtime_error(
            "kantorovich: unbounded LP; the seminorm kernel is larger than the constants");
    if (sol.status != LPStatus::Optimal) return res;
    if constexpr (std::is_floating_point_v<T>) {
        res.value = sol.value;
    } else {
        res.exact = sol.value;
        res.value = to_double(sol.value);
        res.exact_mode = true;
    }
    res.witness = builder.extract_u(q, sol);
    return res;
}

std::vector<Rational> state_difference(const std::vector<Rational>& phi,
                                       const std::vector<Rational>& psi) {
    if (phi.size() != psi.size()) throw std::invalid_argument("state size mismatch");
    Rational sp = 0, sq = 0;
    for (const Rational& v : phi) {
        if (v < 0) throw std::invalid_argument("state has negative mass");
        sp += v;
    }
    for (const Rational& v : psi) {
        if (v < 0) throw std::invalid_argument("state has negative mass");
        sq += v;
    }
    if (sp != 1 || sq != 1) throw std::invalid_argument("states must sum to one");
    std::vector<Rational> d(phi.size());
    for (size_t i = 0; i < phi.size(); ++i) d[i] = phi[i] - psi[i];
    return d;
}

// Transport reformulation: mk(phi, chi) equals
//   min sum_s rho_s
//   s.t. sum_{k,i} (y+_{k,i} - y-_{k,i}) c_{k,i}[j] (+ (M psi)_j) = delta_j  (j != gauge)
//        sum_i (y+ + y-)_{k,i} <= w_k rho_{side(k)}
//        (psi >= 0, sum psi = 1 when minimizing over a pullback state set)
// by LP duality against the unit-ball program. Rows scale with the point
// count rather than the number of forms.
template <class T>
double transport_lp(const PolyhedralSeminorm& q, const std::vector<Rational>& delta,
                    const std::vector<int>* pullback_cols, Rational* exact_out = nullptr) {
    auto conv = [](const Rational& v) {
        if constexpr (std::is_floating_point_v<T>)
            return to_double(v);
        else
            return T(v);
    };
    LPProblem<T> lp;
    lp.maximize = false;
    struct Ref {
        int block, ypos, yneg;
    };
    std::vector<Ref> refs;
    for (size_t k = 0; k < q.blocks.size(); ++k)
        for (size_t i = 0; i < q.blocks[k].forms.size(); ++i)
            refs.push_back({static_cast<int>(k), lp.add_var(T(0)), lp.add_var(T(0))});
    int sides = q.num_sides();
    std::vector<int> rho(sides);
    for (int s = 0; s < sides; ++s) rho[s] = lp.add_var(T(1));
    std::vector<int> psi;
    if (pullback_cols)
        for (size_t p = 0; p < pullback_cols->size(); ++p) psi.push_back(lp.add_var(T(0)));

    std::vector<LPRow<T>> rows(q.dim);
    for (auto& r : rows) r.sense = RowSense::EQ;
    size_t ref_at = 0;
    for (size_t k = 0; k < q.blocks.size(); ++k)
        for (size_t i = 0; i < q.blocks[k].forms.size(); ++i, ++ref_at)
            for (const auto& [j, v] : q.blocks[k].forms[i].c) {
                rows[j].terms.push_back({refs[ref_at].ypos, conv(v)});
                rows[j].terms.push_back({refs[ref_at].yneg, -conv(v)});
            }
    if (pullback_cols)
        for (size_t p = 0; p < pullback_cols->size(); ++p)
            rows[(*pullback_cols)[p]].terms.push_back({psi[p], T(1)});
    for (int j = 0; j < q.dim; ++j) {
        if (j == q.gauge) continue;
        rows[j].rhs = conv(delta[j]);
        lp.add_row(std::move(rows[j]));
    }
    ref_at = 0;
    for (size_t k = 0; k < q.blocks.size(); ++k) {
        LPRow<T> row;
        for (size_t i = 0; i < q.blocks[k].forms.size(); ++i, ++ref_at) {
            row.terms.push_back({refs[ref_at].ypos, T(1)});
            row.terms.push_back({refs[ref_at].yneg, T(1)});
        }
        row.terms.push_back({rho[q.blocks[k].side], -conv(q.blocks[k].weight)});
        row.sense = RowSense::LE;
        row.rhs = T(0);
        lp.add_row(std::move(row));
    }
    if (pullback_cols) {
        LPRow<T> srow;
        for (int pv : psi) srow.terms.push_back({pv, T(1)});
        srow.sense = RowSense::EQ;
        srow.rhs = T(1);
        lp.add_row(std::move(srow));
    }
    LPSolution<T> sol = solve_lp(lp);
    if (sol.status == LPStatus::Infeasible)
        throw std::runtime_error(
            "transport LP infeasible; the seminorm kernel is larger than the constants");
    if (sol.status != LPStatus::Optimal) throw std::runtime_error("transport LP failed");
    if constexpr (std::is_floating_point_v<T>) {
        return sol.value;
    } else {
        if (exact_out) *exact_out = sol.value;
        return to_double(sol.value);
    }
}

}  // namespace

namespace {

long long total_forms(const PolyhedralSeminorm& q) {
    long long n = 0;
    for (const auto& b : q.blocks) n += static_cast<long long>(b.forms.size());
    return n;
}

}  // namespace

KantorovichResult kantorovich(const PolyhedralSeminorm& q, const std::vector<Rational>& phi,
                              const std::vector<Rational>& psi) {
    std::vector<Rational> delta = state_difference(phi, psi);
    KantorovichResult res;
    if (q.dim <= kExactDimCap) {
        // Transport rows scale with the point count; prefer them unless the
        // problem is tiny (where the primal also yields the witness).
        if (total_forms(q) <= 2 * q.dim) return solve_ball_lp<Rational>(q, delta);
        res.status = LPStatus::Optimal;
        res.exact = Rational(0);
        Rational v = Rational(0);
        {
            double dummy = transport_lp<Rational>(q, delta, nullptr, &v);
            (void)dummy;
        }
        res.exact = v;
        res.value = to_double(v);
        res.exact_mode = true;
        return res;
    }
    res.status = LPStatus::Optimal;
    res.value = transport_lp<double>(q, delta, nullptr, nullptr);
    return res;
}

double distance_to_state_set(const PolyhedralSeminorm& q, const std::vector<Rational>& phi,
                             const std::vector<int>& pullback_cols) {
    Rational sp = 0;
    for (const Rational& v : phi) sp += v;
    if (sp != 1) throw std::invalid_argument("distance_to_state_set: phi must be a state");
    if (q.dim <= kExactDimCap) return transport_lp<Rational>(q, phi, &pullback_cols, nullptr);
    return transport_lp<double>(q, phi, &pullback_cols, nullptr);
}

KantorovichResult ball_support_point(const PolyhedralSeminorm& q,
                                     const std::vector<Rational>& direction) {
    if (q.dim <= kExactDimCap) return solve_ball_lp<Rational>(q, direction);
    return solve_ball_lp<double>(q, direction);
}

double qdiam(const FiniteQcms& q, int pair_budget) {
    int m = q.points();
    if (static_cast<long long>(m) * (m - 1) / 2 > pair_budget)
        throw std::runtime_error("qdiam: pair budget exceeded");
    double best = 0;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            KantorovichResult r = kantorovich(q, dirac_state(m, i), dirac_state(m, j));
            best = std::max(best, r.value);
        }
    return best;
}

NormBoundCheck norm_bound_check(const FiniteQcms& q, const std::vector<Rational>& f,
                                const std::vector<Rational>& mu) {
    NormBoundCheck out;
    Rational mean = 0, total = 0;
    for (size_t i = 0; i < f.size(); ++i) {
        mean += mu[i] * f[i];
        total += mu[i];
    }
    if (total != 1) throw std::invalid_argument("norm_bound_check: mu must be a state");
    Rational lhs = 0;
    for (size_t i = 0; i < f.size(); ++i) lhs = std::max(lhs, Rational(abs(f[i] - mean)));
    out.lhs = to_double(lhs);
    out.bound = to_double(q.eval(f)) * qdiam(q);
    out.slack = out.bound - out.lhs;
    out.ok = out.slack >= -1e-9;
    return out;
}

namespace {

// Solve the square rational system given by rows (forms with signs) plus the
// gauge row; returns nullopt if singular.
std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a,
                                                  std::vector<Rational> rhs) {
    int n = static_cast<int>(rhs.size());
    std::vector<Rational>& b = rhs;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (a[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return std::nullopt;
        std::swap(a[col], a[piv]);
        std::swap(b[col], b[piv]);
        Rational d = a[col][col];
        for (int j = col; j < n; ++j) a[col][j] /= d;
        b[col] /= d;
        for (int r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Rational f = a[r][col];
            for (int j = col; j < n; ++j) a[r][j] -= f * a[col][j];
            b[r] -= f * b[col];
        }
    }
    return b;
}

long long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long double r = 1;
    for (int i = 0; i < k; ++i) {
        r = r * (n - i) / (i + 1);
        if (r > 9e17L) return 1LL << 62;
    }
    return static_cast<long long>(r + 0.5L);
}

}  // namespace

std::vector<std::vector<Rational>> unit_ball_vertices(const PolyhedralSeminorm& q,
                                                      const std::vector<Rational>& mu,
                                                      long long budget) {
    if (q.blocks.size() != 1 || q.blocks[0].weight != 1)
        throw std::runtime_error("unit_ball_vertices: only single-block seminorms supported");
    const auto& forms = q.blocks[0].forms;
    int d = q.dim;
    int need = d - 1;  // active forms beside the gauge row
    int F = static_cast<int>(forms.size());
    long long combos = binom(F, need);
    if (need >= 60 || combos >= (1LL << 62) / (1LL << std::min(need, 60)) ||
        combos * (1LL << need) > budget)
        throw std::runtime_error("unit_ball_vertices: enumeration budget exceeded");

    std::vector<std::vector<Rational>> vertices;
    std::vector<int> idx(need);
    std::iota(idx.begin(), idx.end(), 0);

    auto try_combo = [&](const std::vector<int>& sel) {
        // Solve with all sign patterns folded in: the system rows are the
        // selected forms set to s_i in {-1, +1}. Solving once per sign
        // pattern is exponential; instead solve with +1 and exploit that a
        // sign flip of row i flips the solution only through linearity, so we
        // enumerate sign patterns but solve via precomputed LU... For the
        // small dimensions used here, direct enumeration is affordable.
        int patterns = 1 << need;
        for (int p = 0; p < patterns; ++p) {
            std::vector<std::vector<Rational>> a(d, std::vector<Rational>(d, Rational(0)));
            std::vector<Rational> rhs(d, Rational(0));
            for (int r = 0; r < need; ++r) {
                for (const auto& [j, v] : forms[sel[r]].c) a[r][j] = v;
                rhs[r] = (p >> r) & 1 ? Rational(-1) : Rational(1);
            }
            for (int j = 0; j < d; ++j) a[need][j] = mu[j];
            rhs[need] = 0;
            auto u = solve_square(a, rhs);
            if (!u) continue;
            bool feasible = true;
            for (const auto& fm : forms) {
                Rational v = fm.dot(*u);
                if (v > 1 || v < -1) {
                    feasible = false;
                    break;
                }
            }
            if (feasible) vertices.push_back(*u);
        }
    };

    if (need == 0) {
        return {};
    }
    // iterate combinations
    while (true) {
        try_combo(idx);
        int i = need - 1;
        while (i >= 0 && idx[i] == F - need + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < need; ++j) idx[j] = idx[j - 1] + 1;
    }
    // dedup
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    return vertices;
}

std::vector<Rational> dirac_state(int m, int i) {
    std::vector<Rational> s(m, Rational(0));
    s[i] = 1;
    return s;
}

std::vector<Rational> random_state(int m, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> w(0, 1000);
    std::vector<Rational> s(m);
    Rational total = 0;
    for (int i = 0; i < m; ++i) {
        s[i] = w(rng) + 1;
        total += s[i];
    }
    for (int i = 0; i < m; ++i) s[i] /= total;
    return s;
}

EpsilonNet epsilon_net(const FiniteQcms& q, const std::vector<Rational>& mu, double eps,
                       std::mt19937_64& rng, long long vertex_budget, int sample_pool) {
    if (eps <= 0) throw std::invalid_argument("epsilon_net: eps > 0 required");
    int m = q.points();
    EpsilonNet net;

    std::vector<std::vector<double>> pool;
    bool have_vertices = false;
    if (q.seminorm.blocks.size() == 1 && q.seminorm.blocks[0].weight == 1) {
        try {
            auto verts = unit_ball_vertices(q.seminorm, mu, vertex_budget);
            if (!verts.empty()) {
                have_vertices = true;
                // The ball is the convex hull of its vertices; cover it with
                // random convex combinations plus the vertices themselves.
                for (const auto& v : verts) {
                    std::vector<double> u(m);
                    for (int i = 0; i < m; ++i) u[i] = to_double(v[i]);
                    pool.push_back(std::move(u));
                }
                std::uniform_real_distribution<double> unif(0.0, 1.0);
                std::uniform_int_distribution<size_t> pick(0, verts.size() - 1);
                while (static_cast<int>(pool.size()) < sample_pool) {
                    std::vector<double> u(m, 0.0);
                    double wsum = 0;
                    for (int c = 0; c < 4; ++c) {
                        double w = unif(rng);
                        const auto& v = verts[pick(rng)];
                        for (int i = 0; i < m; ++i) u[i] += w * to_double(v[i]);
                        wsum += w;
                    }
                    for (int i = 0; i < m; ++i) u[i] /= wsum;
                    pool.push_back(std::move(u));
                }
            }
        } catch (const std::runtime_error&) {
            have_vertices = false;
        }
    }
    if (pool.empty()) {
        // Greedy sampling without vertices: random directions, normalized to
        // the unit sphere of the seminorm, then scaled into the ball.
        std::normal_distribution<double> gauss;
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        while (static_cast<int>(pool.size()) < sample_pool) {
            std::vector<double> u(m);
            for (int i = 0; i < m; ++i) u[i] = gauss(rng);
            // gauge: mu(u) = 0
            double mean = 0;
            for (int i = 0; i < m; ++i) mean += to_double(mu[i]) * u[i];
            for (int i = 0; i < m; ++i) u[i] -= mean;
            double L = q.eval(u);
            if (L <= 0) continue;
            double scale = std::pow(unif(rng), 1.0 / std::max(1, m - 1)) / L;
            for (int i = 0; i < m; ++i) u[i] *= scale;
            pool.push_back(std::move(u));
        }
    }
    net.from_vertices = have_vertices;

    auto sup_dist = [m](const std::vector<double>& a, const std::vector<double>& b) {
        double d = 0;
        for (int i = 0; i < m; ++i) d = std::max(d, std::abs(a[i] - b[i]));
        return d;
    };

    // Greedy farthest point on the pool.
    net.centers.push_back(std::vector<double>(m, 0.0));
    while (true) {
        double worst = 0;
        int worst_i = -1;
        for (size_t i = 0; i < pool.size(); ++i) {
            double d = 1e300;
            for (const auto& c : net.centers) d = std::min(d, sup_dist(pool[i], c));
            if (d > worst) {
                worst = d;
                worst_i = static_cast<int>(i);
            }
        }
        if (worst <= 0.9 * eps || worst_i < 0) break;
        net.centers.push_back(pool[worst_i]);
    }

    // Certify on fresh random samples of the ball.
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    int cert = 500;
    double worst = 0;
    for (int s = 0; s < cert; ++s) {
        std::vector<double> u(m);
        for (int i = 0; i < m; ++i) u[i] = gauss(rng);
        double mean = 0;
        for (int i = 0; i < m; ++i) mean += to_double(mu[i]) * u[i];
        for (int i = 0; i < m; ++i) u[i] -= mean;
        double L = q.eval(u);
        if (L <= 0) {
            --s;
            continue;
        }
        double scale = std::pow(unif(rng), 1.0 / std::max(1, m - 1)) / L;
        for (int i = 0; i < m; ++i) u[i] *= scale;
        double d = 1e300;
        for (const auto& c : net.centers) d = std::min(d, sup_dist(u, c));
        worst = std::max(worst, d);
    }
    net.certified_cover_radius = worst;
    net.certification_samples = cert;
    return net;
}

}  // namespace ncg
