#pragma once

#include <algorithm>
#include <memory>

#include "ncg/length.hpp"

namespace ncg {

// Finite closed ball {g : L(g) <= r}, canonically ordered. Contains the
// identity and is closed under inverses. Lookups binary-search the sorted
// element list.
struct Ball {
    Group group;
    std::shared_ptr<const LengthFunction> length;
    Rational radius;
    std::vector<GroupElement> elems;  // canonical order

    int size() const { return static_cast<int>(elems.size()); }
    int index_of(const GroupElement& x) const {
        auto it = std::lower_bound(elems.begin(), elems.end(), x,
                                   [this](const GroupElement& a, const GroupElement& b) {
                                       return canonical_less(group, a, b);
                                   });
        if (it != elems.end() && *it == x) return static_cast<int>(it - elems.begin());
        return -1;
    }
    bool contains(const GroupElement& x) const { return index_of(x) >= 0; }
};

inline constexpr long long kDefaultBallBudget = 1'000'000;

// Exhaustive enumeration; throws if the length is not proper on the family or
// the enumeration box exceeds the budget. Budget overruns are hard errors.
Ball enumerate_ball(const Group& g, const LengthFunction& length, const Rational& radius,
                    long long budget = kDefaultBallBudget);

struct DoublingRow {
    Rational radius;
    long long ball_small = 0;
    long long ball_large = 0;
    double ratio = 0;
};

struct DoublingReport {
    double theta = 2.0;
    std::vector<DoublingRow> rows;
    double max_ratio = 0;
    bool bounded_by_c = false;  // max_ratio <= c for the user-supplied c
    double c = 0;
};

DoublingReport doubling_report(const Group& g, const LengthFunction& length, double theta,
                               const std::vector<Rational>& radii, double c,
                               long long budget = kDefaultBallBudget);

struct HausdorffEstimate {
    std::optional<double> exact;  // closed form when available
    double enumerated = 0;        // sup over the window of dist(g, G_n)
    Rational window_radius;
    long long window_size = 0;
};

// One-sided Hausdorff distance sup_{g in B_L(R)} dist_{L_H}(g, G_n), with the
// closed form 1/(2 p^n) for solenoid max-norm and pi/alpha_n for Z(alpha)
// arc-length.
HausdorffEstimate hausdorff_subgroup_distance(const Group& g, const LengthFunction& length_h,
                                              const LengthFunction& window_length, unsigned n,
                                              const Rational& window_radius,
                                              long long budget = kDefaultBallBudget);

// Exact distance from x to the subgroup G_n measured in length_h.
double distance_to_level(const Group& g, const LengthFunction& length_h, const GroupElement& x,
                         unsigned n);

}  // namespace ncg
