#pragma once

#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ncg/numbers.hpp"

namespace ncg {

// Dense two-phase primal simplex, templated so the same code runs in exact
// rational arithmetic (Bland's rule, no tolerances) and in double. Problems
// here are small: a few hundred rows from seminorm unit balls and transport
// reformulations.

enum class LPStatus { Optimal, Infeasible, Unbounded, IterLimit };

enum class RowSense { LE, GE, EQ };

template <class T>
struct LPRow {
    std::vector<std::pair<int, T>> terms;
    RowSense sense = RowSense::LE;
    T rhs{};
};

template <class T>
struct LPProblem {
    int num_vars = 0;          // all variables are >= 0
    bool maximize = false;
    std::vector<T> objective;  // size num_vars
    std::vector<LPRow<T>> rows;

    int add_var(const T& cost) {
        objective.push_back(cost);
        return num_vars++;
    }
    void add_row(LPRow<T> r) { rows.push_back(std::move(r)); }
};

template <class T>
struct LPSolution {
    LPStatus status = LPStatus::Infeasible;
    T value{};
    std::vector<T> x;
    std::vector<T> row_dual;  // y with value = y^T b at optimality
};

namespace lp_detail {

template <class T>
constexpr T eps() {
    if constexpr (std::is_floating_point_v<T>)
        return T(1e-9);
    else
        return T(0);
}

template <class T>
bool is_neg(const T& v) {
    return v < -eps<T>();
}

template <class T>
bool is_pos(const T& v) {
    return v > eps<T>();
}

}  // namespace lp_detail

template <class T>
LPSolution<T> solve_lp(const LPProblem<T>& prob, long long max_iters = 200000) {
    using lp_detail::is_neg;
    using lp_detail::is_pos;
    const int m = static_cast<int>(prob.rows.size());
    const int n = prob.num_vars;

    // Column layout: [structural n][slack/surplus per row][artificial per row]
    // (slack columns exist only for LE/GE rows; artificials for GE/EQ rows and
    // LE rows with negative rhs after normalization).
    std::vector<int> slack_col(m, -1), art_col(m, -1);
    int ncols = n;

    // Normalize to rhs >= 0.
    std::vector<std::vector<T>> A(m, std::vector<T>(n, T(0)));
    std::vector<T> b(m);
    std::vector<RowSense> sense(m);
    for (int i = 0; i < m; ++i) {
        const LPRow<T>& r = prob.rows[i];
        for (const auto& [j, v] : r.terms) {
            if (j < 0 || j >= n) throw std::invalid_argument("lp: bad variable index");
            A[i][j] += v;
        }
        b[i] = r.rhs;
        sense[i] = r.sense;
        if (b[i] < T(0)) {
            for (T& v : A[i]) v = -v;
            b[i] = -b[i];
            if (sense[i] == RowSense::LE)
                sense[i] = RowSense::GE;
            else if (sense[i] == RowSense::GE)
                sense[i] = RowSense::LE;
        }
    }
    for (int i = 0; i < m; ++i)
        if (sense[i] != RowSense::EQ) slack_col[i] = ncols++;
    int first_art = ncols;
    for (int i = 0; i < m; ++i)
        if (sense[i] != RowSense::LE) art_col[i] = ncols++;

    // Tableau rows: m constraint rows + cost row; columns ncols + rhs.
    std::vector<std::vector<T>> tab(m, std::vector<T>(ncols + 1, T(0)));
    std::vector<int> basis(m, -1);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) tab[i][j] = A[i][j];
        if (slack_col[i] >= 0) tab[i][slack_col[i]] = sense[i] == RowSense::LE ? T(1) : T(-1);
        if (art_col[i] >= 0) tab[i][art_col[i]] = T(1);
        tab[i][ncols] = b[i];
        basis[i] = art_col[i] >= 0 ? art_col[i] : slack_col[i];
    }

    std::vector<T> cost(ncols, T(0));
    LPSolution<T> sol;
    long long iters = 0;
    long long stall = 0;
    T last_obj{};

    auto run_simplex = [&](const std::vector<T>& c, bool allow_art) -> LPStatus {
        // reduced cost row: z_j - c_j maintained from scratch each iteration
        // on these problem sizes (simpler and numerically safer than updates).
        while (true) {
            if (++iters > max_iters) return LPStatus::IterLimit;
            // compute y = c_B applied to rows, and reduced costs
            std::vector<T> red(ncols, T(0));
            T obj{};
            for (int i = 0; i < m; ++i) obj += c[basis[i]] * tab[i][ncols];
            for (int j = 0; j < ncols; ++j) {
                if (!allow_art && j >= first_art) continue;
                T zj{};
                for (int i = 0; i < m; ++i)
                    if (tab[i][j] != T(0)) zj += c[basis[i]] * tab[i][j];
                red[j] = c[j] - zj;
            }
            // entering column: negative reduced cost (minimization); Dantzig
            // with a stall-triggered switch to Bland's rule (anti-cycling)
            int enter = -1;
            bool use_bland = stall > 50LL * (m + 1);
            if (use_bland) {
                for (int j = 0; j < ncols; ++j) {
                    if (!allow_art && j >= first_art) continue;
                    if (is_neg(red[j])) {
                        enter = j;
                        break;
                    }
                }
            } else {
                T best{};
                for (int j = 0; j < ncols; ++j) {
                    if (!allow_art && j >= first_art) continue;
                    if (red[j] < best) {
                        best = red[j];
                        enter = j;
                    }
                }
                if (enter >= 0 && !is_neg(red[enter])) enter = -1;
            }
            if (enter < 0) return LPStatus::Optimal;
            // ratio test
            int leave = -1;
            T best_ratio{};
            for (int i = 0; i < m; ++i) {
                if (is_pos(tab[i][enter])) {
                    T ratio = tab[i][ncols] / tab[i][enter];
                    if (leave < 0 || ratio < best_ratio ||
                        (ratio == best_ratio && basis[i] < basis[leave])) {
                        best_ratio = ratio;
                        leave = i;
                    }
                }
            }
            if (leave < 0) return LPStatus::Unbounded;
            // pivot
            T piv = tab[leave][enter];
            for (int j = 0; j <= ncols; ++j) tab[leave][j] /= piv;
            for (int i = 0; i < m; ++i) {
                if (i == leave) continue;
                T f = tab[i][enter];
                if (f == T(0)) continue;
                for (int j = 0; j <= ncols; ++j) tab[i][j] -= f * tab[leave][j];
            }
            basis[leave] = enter;
            T new_obj{};
            for (int i = 0; i < m; ++i) new_obj += c[basis[i]] * tab[i][ncols];
            stall = (new_obj < last_obj - lp_detail::eps<T>()) ? 0 : stall + 1;
            last_obj = new_obj;
        }
    };

    // Phase 1 if any artificial is in the basis.
    if (first_art < ncols) {
        std::vector<T> c1(ncols, T(0));
        for (int j = first_art; j < ncols; ++j) c1[j] = T(1);
        LPStatus st = run_simplex(c1, true);
        if (st != LPStatus::Optimal) {
            sol.status = st == LPStatus::Unbounded ? LPStatus::Infeasible : st;
            return sol;
        }
        T p1{};
        for (int i = 0; i < m; ++i) p1 += c1[basis[i]] * tab[i][ncols];
        if (is_pos(p1)) {
            sol.status = LPStatus::Infeasible;
            return sol;
        }
        // Drive any remaining artificial out of the basis.
        for (int i = 0; i < m; ++i) {
            if (basis[i] < first_art) continue;
            int piv_col = -1;
            for (int j = 0; j < first_art; ++j)
                if (tab[i][j] != T(0) && (is_pos(tab[i][j]) || is_neg(tab[i][j]))) {
                    piv_col = j;
                    break;
                }
            if (piv_col < 0) continue;  // redundant row; harmless to leave
            T piv = tab[i][piv_col];
            for (int j = 0; j <= ncols; ++j) tab[i][j] /= piv;
            for (int k = 0; k < m; ++k) {
                if (k == i) continue;
                T f = tab[k][piv_col];
                if (f == T(0)) continue;
                for (int j = 0; j <= ncols; ++j) tab[k][j] -= f * tab[i][j];
            }
            basis[i] = piv_col;
        }
    }

    // Phase 2.
    for (int j = 0; j < n; ++j) cost[j] = prob.maximize ? -prob.objective[j] : prob.objective[j];
    stall = 0;
    last_obj = T{};
    LPStatus st = run_simplex(cost, false);
    if (st != LPStatus::Optimal) {
        sol.status = st;
        return sol;
    }

    sol.status = LPStatus::Optimal;
    sol.x.assign(n, T(0));
    for (int i = 0; i < m; ++i)
        if (basis[i] < n) sol.x[basis[i]] = tab[i][ncols];
    T val{};
    for (int j = 0; j < n; ++j) val += prob.objective[j] * sol.x[j];
    sol.value = val;

    // Row duals from the reduced costs of the slack/artificial unit columns:
    // for a column equal to +-e_i with cost 0, reduced cost = -+ y_i.
    sol.row_dual.assign(m, T(0));
    for (int i = 0; i < m; ++i) {
        int col = art_col[i] >= 0 ? art_col[i] : slack_col[i];
        T sgn = (col == slack_col[i] && sense[i] == RowSense::GE) ? T(-1) : T(1);
        T zj{};
        for (int k = 0; k < m; ++k)
            if (tab[k][col] != T(0)) zj += cost[basis[k]] * tab[k][col];
        T y = zj * sgn;  // c_col = 0, so z_j = y_i * (col sign)
        // normalize back to the original row orientation (we flipped rows
        // with negative rhs)
        bool flipped = prob.rows[i].rhs < T(0);
        if (prob.maximize) y = -y;
        sol.row_dual[i] = flipped ? -y : y;
    }
    return sol;
}

}  // namespace ncg
