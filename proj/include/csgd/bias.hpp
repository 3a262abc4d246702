#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "csgd/parallel.hpp"
#include "csgd/types.hpp"

namespace csgd::bias {

/// Monte Carlo probe of the per-direction decay law for complex SGD on
/// least squares: E <z^(t) - z*, v_k> follows (1 - eta s sigma_k^2 / m)^t
/// times the initial component, exactly for consistent systems and up to
/// ||A z* - b|| otherwise.
struct BiasExperiment {
    Matrix A;  // m x n, m >= n, full column rank
    Vector b;
    Vector z0;
    double eta = 0.0;
    double scale = 0.0; // component scale s; the rate formula uses s = n
    std::size_t iterations = 100;
    std::size_t trials = 2000;
    std::uint64_t seed = 0;
    std::vector<std::size_t> checkpoints; // empty = {0,1,2,5,10,...} up to T
};

struct DirectionProfile {
    double sigma = 0.0;              // singular value of this direction
    double rate = 0.0;               // 1 - eta s sigma^2 / m
    Complex initial_component{0.0};  // <z0 - z*, v_k>
    std::vector<Complex> estimate;   // MC mean per checkpoint
    std::vector<double> se;          // standard error of that mean
    std::vector<Complex> prediction; // rate^t * initial_component
};

struct BiasProfile {
    std::vector<std::size_t> checkpoints;
    std::vector<DirectionProfile> directions; // by descending singular value
    double eps_norm = 0.0;                    // ||A z* - b||
    Vector z_star;
};

BiasProfile run_bias(const BiasExperiment& exp, ExecMode mode = default_exec_mode());

/// For consistent experiments with distinct singular values: the measured and
/// predicted decay of every direction relative to the slowest (smallest
/// sigma) one. Inconclusive when z0 - z* has no component along v_min.
struct DominanceReport {
    bool conclusive = false;
    std::string note;
    std::vector<double> rates;           // per direction
    std::vector<double> measured_ratio;  // |est_k(T)| / |est_min(T)|
    std::vector<double> predicted_ratio; // (rate_k / rate_min)^T
};

DominanceReport smallest_direction_dominance(const BiasProfile& profile);

/// Default checkpoint grid {0, 1, 2, 5, 10, 20, 50, ...} capped at T
/// (T itself always included).
std::vector<std::size_t> default_checkpoints(std::size_t T);

} // namespace csgd::bias
