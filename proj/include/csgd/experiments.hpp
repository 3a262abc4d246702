#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "csgd/types.hpp"

namespace csgd::experiments {

enum class ScenarioKind { Fock, Rbf, Hardy };

struct ScenarioRunConfig {
    // superoscillation / supershift (fock, rbf)
    std::size_t n = 40;
    double a = 2.0;
    // hardy
    std::size_t root_count = 50;
    double r_min = 0.85; // near-boundary roots keep the expansion coefficients
    double r_max = 0.9;  // representable; see README
    double min_sep = 0.02;
    // shared
    double lambda = 1.0;
    double eta = 1.0; // halved once if the first 100 steps diverge
    std::size_t iterations = 200000;
    std::uint64_t seed = 1;
    std::size_t record_every = 0; // 0 = max(1, iterations/1000)
    // output grids
    double grid_lo = -10.0;
    double grid_hi = 10.0;
    std::size_t grid_points = 1001;
    std::size_t circle_points = 512;
};

struct ConvergenceRecord {
    std::size_t iteration = 0;
    double relative_residual = 0.0;
    double relative_coefficient_error = 0.0;
};

struct ScenarioSummary {
    double self_consistency = 0.0; // ||(K+lambda I) a* - w|| / ||w||, pre-run
    double final_relative_residual = 0.0;
    double final_relative_coeff_error = 0.0;
    /// fock/rbf: max_x |expansion - closed| / max_x |closed| over the grid;
    /// hardy: max_theta | |expansion| - 1 | on the circle.
    double function_agreement = 0.0;
    double eta_used = 0.0;
    std::size_t iterations_run = 0;
    std::vector<ConvergenceRecord> history; // the convergence.csv rows
    std::vector<std::string> files;
};

/// Builds the scenario, verifies its defining identity, runs row-normalized
/// complex SGD from alpha = 0 and writes convergence.csv, coefficients.csv
/// and function_grid.csv into outdir. The whole pipeline runs in extended
/// precision internally; outputs are doubles.
ScenarioSummary run_scenario(ScenarioKind kind, const ScenarioRunConfig& cfg,
                             const std::string& outdir);

struct BiasRunConfig {
    std::size_t rows = 10;
    std::size_t cols = 3;
    double eta = 0.0;   // 0 = 0.5 * m / (s * sigma_max^2)
    double scale = 0.0; // 0 = cols (the rate formula's convention)
    std::size_t iterations = 200;
    std::size_t trials = 2000;
    std::uint64_t seed = 1;
    bool inconsistent = false;
    double eps_scale = 0.5; // ||noise|| relative to ||b||, inconsistent runs
};

struct BiasSummary {
    double eps_norm = 0.0;
    double max_dev_over_se = 0.0;  // consistent: max |est - pred| / SE
    double max_dev_minus_eps = 0.0; // inconsistent: max(|est - pred| - eps)/SE
    double eta_used = 0.0;
    std::vector<std::string> files;
};

/// Draws a random complex system from the seed, runs the direction-decay
/// Monte Carlo and writes bias_profile.csv.
BiasSummary run_bias_experiment(const BiasRunConfig& cfg, const std::string& outdir);

struct VerifySuiteResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Runs every module's invariant suite (reduced desk-scale sample counts).
std::vector<VerifySuiteResult> run_verify(std::uint64_t seed);

/// JSON report ({"all_pass": ..., "suites": [...]}).
void write_verify_report(const std::vector<VerifySuiteResult>& results,
                         const std::string& path);

} // namespace csgd::experiments
