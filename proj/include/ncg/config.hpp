#pragma once

#include <filesystem>
#include <string>

#include "ncg/ball.hpp"
#include "ncg/cocycle.hpp"

namespace ncg {

// Experiment configuration: family, lengths, cocycle, truncation schedule,
// sampling and tolerances. Parsed from the sectioned key=value format (or
// JSON); unknown keys are rejected and validation errors name the field.
struct ExperimentConfig {
    // [family]
    std::string family_kind = "solenoid";  // solenoid | bunce-deddens | zalpha | finite
    unsigned p = 2;
    unsigned d = 1;
    std::vector<BigInt> alpha = {2, 4, 8};
    unsigned finite_modulus = 8;

    // [length]
    HNorm h_norm = HNorm::Max;
    CircleLength circle = CircleLength::Arc;
    Combinator combinator = Combinator::Max;
    double pnorm_p = 2.0;

    // [cocycle]
    std::string cocycle_kind = "trivial";  // trivial | bicharacter | bunce-deddens | finite
    Rational theta = Rational(0);          // bicharacter skew parameter
    int finite_q = 1;

    // [experiment]
    std::vector<unsigned> levels = {1, 2};
    std::vector<Rational> radii = {2, 4};
    unsigned window_factor = 4;
    int samples = 100;
    int support = 3;
    int fiber_blocks = 1;
    std::uint64_t seed = 20240901;
    long long budget = kDefaultBallBudget;
    double tol = 1e-9;
    std::vector<double> times = {0.25, 0.5, 1.0};
    double diameter_proxy = 0.0;  // 0 = heuristic from the window
    double epsilon = 0.0;         // 0 = derived from diameter proxy

    // [output]
    std::string out_dir = "out";
    std::string format = "json";  // json | csv
    int verbosity = 1;

    Group group() const;
    LengthFunction length_h() const;
    LengthFunction length_f() const;
    LengthFunction length() const;
    Cocycle cocycle() const;
    void validate() const;
};

// Parse from the sectioned key=value file format; `.json` files take the
// JSON route. Parse errors carry line/column, validation errors the field.
ExperimentConfig load_config(const std::filesystem::path& path);
ExperimentConfig parse_config_text(const std::string& text, const std::string& origin = "<memory>");
ExperimentConfig parse_config_json(const std::string& text);

// Serialization that round-trips through parse_config_text bit-exactly.
std::string config_to_text(const ExperimentConfig& cfg);
std::string config_to_json(const ExperimentConfig& cfg);

}  // namespace ncg
