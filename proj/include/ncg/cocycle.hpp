#pragma once

#include <functional>
#include <random>

#include "ncg/group.hpp"

namespace ncg {

// T-valued 2-cocycle, held as a pure evaluator. Presets cover the trivial
// cocycle, solenoid bicharacters built from a skew form, Bunce-Deddens, and a
// finite-test bicharacter. User evaluators are accepted after randomized
// validation of the cocycle identity.
class Cocycle {
  public:
    using Evaluator = std::function<cplx(const Group&, const GroupElement&, const GroupElement&)>;

    Cocycle() = default;
    Cocycle(std::string name, Evaluator eval) : name_(std::move(name)), eval_(std::move(eval)) {}

    cplx operator()(const Group& g, const GroupElement& a, const GroupElement& b) const {
        return eval_ ? eval_(g, a, b) : cplx(1.0, 0.0);
    }
    const std::string& name() const { return name_; }
    bool is_trivial() const { return !eval_; }

    static Cocycle trivial();
    // sigma(x, y) = exp(2 pi i x^T Theta y) with Theta skew-symmetric; the
    // skew form guarantees sigma(g, -g) = 1.
    static Cocycle solenoid_bicharacter(std::vector<std::vector<Rational>> theta);
    // sigma((zeta, z), (eta, y)) = eta^z.
    static Cocycle bunce_deddens();
    // exp(2 pi i q x_1 y_2 / m) on (Z/m)^2-style finite tests.
    static Cocycle finite_bicharacter(int q);

    struct ValidationReport {
        bool ok = true;
        double max_identity_residual = 0;
        double max_normalization_residual = 0;
        double max_modulus_residual = 0;
        double max_inverse_residual = 0;  // |sigma(g,-g) - 1| (solenoid preset only)
    };

    // Randomized checks on the sample set: cocycle identity
    // sigma(a,b) sigma(ab,c) = sigma(a,bc) sigma(b,c), the normalization at
    // the identity, |sigma| = 1. Throws if any residual exceeds tol.
    ValidationReport validate(const Group& g, const std::vector<GroupElement>& sample,
                              std::mt19937& rng, int trials = 1000, double tol = 1e-9,
                              bool check_inverse_condition = false) const;

  private:
    std::string name_ = "trivial";
    Evaluator eval_;  // empty means trivial
};

}  // namespace ncg
