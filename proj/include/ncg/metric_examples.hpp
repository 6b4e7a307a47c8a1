#pragma once

#include "ncg/tunnel.hpp"

namespace ncg {

// Approximating [0,1] by itself: the level-n seminorm is the usual Lipschitz
// constant on [0, 1-1/n^2] plus 1/n times the Lipschitz constant on
// [1-1/n^2, 1], discretized on a uniform grid with m+1 points (n^2 | m so the
// breakpoint is a grid point).
struct IntervalExampleReport {
    int n = 0;
    int grid_m = 0;
    Rational l_base_of_witness;  // Lipschitz seminorm of f_n: 1
    Rational l_n_of_witness;     // dilated seminorm of f_n: 1/n
    double ratio = 0;            // their quotient: n (no uniform comparability)
    double eps_used = 0;
    ExtentBounds extent;
    BridgeBuilderReport bridge;  // identity bridge map, expected to hold
    double bridge_eps = 0;
};

IntervalExampleReport interval_example(int n, int m, int samples, std::mt19937_64& rng);

// The dilated interval seminorm L_n as a FiniteQcms on the grid 0..m.
FiniteQcms interval_dilated_qcms(int n, int m);
FiniteQcms interval_base_qcms(int m);
// The witness x -> max(0, x - (1 - 1/n^2)) on the grid.
std::vector<Rational> interval_witness(int n, int m);

// Approximating the one-point compactification of N by itself, merging the
// first two points at infinity. The level-n model lives on n+1 points with
// weights (1 + 1/n, 1, 1/2, ..., 1/n); the limit model on m+1 points with
// weights 1/(k+1).
struct NbarExampleReport {
    int n = 0;
    int truncation_m = 0;
    Rational l_inf_delta0;   // 2
    Rational l_n_delta0;     // n
    Rational obstruction;    // max f(1) - f(0) over the L_n ball: 1/n
    double eps_used = 0;
    ExtentBounds extent;
    BridgeBuilderReport bridge;  // identity bridge map, expected to fail at delta_0
    double bridge_eps = 0;
};

NbarExampleReport nbar_example(int n, int m, int samples, std::mt19937_64& rng);

FiniteQcms nbar_level_qcms(int n);
FiniteQcms nbar_limit_qcms(int m);

}  // namespace ncg
