#pragma once

#include "ncg/config.hpp"
#include "ncg/seminorm.hpp"

namespace ncg {

enum class Verdict { Pass, Fail, Undecided };

const char* verdict_name(Verdict v);

struct BallIdentityRow {
    Rational radius;
    long long count = 0;
    long long expected = 0;
};

struct HausdorffRow {
    unsigned level = 0;
    HausdorffEstimate estimate;
};

struct SeminormRow {
    unsigned level = 0;
    Rational radius;
    int f_id = 0;
    double ln_lower = 0, ln_upper = 0;
    double lw_lower = 0, lw_upper = 0;
    bool ratio_defined = false;
    double ratio = 0;  // lw_lower / ln_lower when defined
};

struct SeminormComparisonReport {
    std::vector<SeminormRow> rows;
    int violations = 0;  // samples with ln_lower > lw_lower + tol
    double max_ratio = 0;
    double predicted_ratio_bound = 0;  // 1 / (1 - eps_hat / C) from measured Hausdorff data
    double diameter_proxy = 0;
    Verdict verdict = Verdict::Undecided;
};

struct FuncCalcRow {
    unsigned level = 0;
    double deviation = 0;  // || P_n f(D_n) P_n - f(D_inf) || on the window, exact blockwise
};

struct FuncCalcReport {
    std::string function = "1/(1+x^2)";
    Rational window_radius;
    std::vector<FuncCalcRow> rows;
    bool non_increasing = false;
    Verdict verdict = Verdict::Undecided;
};

struct DynamicsRow {
    unsigned level = 0;
    double max_deviation = 0;        // sup_t ||(U_n^t - U_inf^t) xi|| over samples
    double lipschitz_violation = 0;  // max over samples of (||U^t xi - U^s xi|| - |t-s|)
    int samples = 0;
};

struct DynamicsReport {
    std::vector<DynamicsRow> rows;
    Verdict verdict = Verdict::Undecided;
};

struct BridgeSample {
    int id = 0;
    std::string direction;  // "approx-from-limit" or "lift-from-level"
    Verdict verdict = Verdict::Undecided;
    double lhs = 0, rhs = 0;  // the certified comparison
    std::string note;
};

struct BridgeCertificateReport {
    double epsilon = 0;
    double diameter_proxy = 0;
    unsigned level = 0;
    std::vector<BridgeSample> samples;
    Verdict verdict = Verdict::Undecided;
};

struct ConvergenceReport {
    std::string family;
    std::string config_snapshot;

    std::vector<BallIdentityRow> ball_rows;
    Verdict ball_verdict = Verdict::Undecided;

    DoublingReport doubling;
    Verdict doubling_verdict = Verdict::Undecided;

    std::vector<HausdorffRow> hausdorff_rows;
    Verdict hausdorff_verdict = Verdict::Undecided;

    SeminormComparisonReport seminorms;
    FuncCalcReport funccalc;
    DynamicsReport dynamics;
    std::vector<BridgeCertificateReport> bridge;

    Verdict overall = Verdict::Undecided;
    double wall_seconds = 0;
};

// Sampled self-adjoint elements of C_c(G_n) with support inside the level-n
// ball; deterministic under the seed.
std::vector<AlgebraElement> sample_level_elements(const ExperimentConfig& cfg, unsigned n,
                                                  const Rational& radius, int count,
                                                  std::mt19937_64& rng, bool trace_zero = false);

// L_n versus the L_infinity window at matched truncations, per sample.
SeminormComparisonReport seminorm_comparison(const ExperimentConfig& cfg);

// || P_n f(D_n) P_n - f(D_inf-window) ||, exact from the block structure:
// the deviation is sup over window elements outside G_n of max |f(+-m_g)|.
FuncCalcReport functional_calculus_convergence(const ExperimentConfig& cfg,
                                               const std::function<cplx(double)>& f,
                                               const std::string& fname);

DynamicsReport dynamics_deviation(const ExperimentConfig& cfg);

// Bridge-builder certificate at level n with pi = identity: limit elements
// are truncated to the level (after Fejer smoothing) and level elements are
// rescaled by (1 - eps/C); every claim is settled through certified brackets,
// with UNDECIDED as the honest inconclusive outcome.
BridgeCertificateReport bridge_builder_certificate(const ExperimentConfig& cfg, unsigned n,
                                                   double epsilon);

ConvergenceReport run_solenoid_suite(const ExperimentConfig& cfg);
ConvergenceReport run_bd_suite(const ExperimentConfig& cfg);

}  // namespace ncg
