#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "csgd/objectives.hpp"
#include "csgd/parallel.hpp"
#include "csgd/types.hpp"

namespace csgd::sgd {

/// Step-size sequence. adaptive_sqrt yields the constant 1/(L*sqrt(T)).
class StepSchedule {
public:
    enum class Kind { Constant, Sequence, AdaptiveSqrt };

    static StepSchedule constant(double eta);
    static StepSchedule sequence(std::vector<double> etas);
    static StepSchedule adaptive_sqrt(double L, std::size_t T);

    double at(std::size_t t) const;
    Kind kind() const { return kind_; }
    bool is_constant() const { return kind_ != Kind::Sequence; }

    /// Number of defined steps (unbounded for constant kinds).
    std::size_t length() const {
        return kind_ == Kind::Sequence ? etas_.size()
                                       : std::numeric_limits<std::size_t>::max();
    }

private:
    StepSchedule() = default;
    Kind kind_ = Kind::Constant;
    double eta_ = 1.0;
    std::vector<double> etas_;
};

enum class UpdateRule {
    Plain,         // z <- z - eta_t * grad f_j(z)
    RowNormalized, // residual divided by the squared row norm
    Kaczmarz       // row-normalized with eta = 1 (projection onto the row)
};

struct RunConfig {
    std::size_t iterations = 1;
    std::uint64_t seed = 0;
    StepSchedule schedule = StepSchedule::constant(1.0);
    UpdateRule update_rule = UpdateRule::Plain;
    std::size_t record_every = 0; // 0 = max(1, iterations / 1000)
};

struct TracePoint {
    std::size_t iteration = 0;
    Vector iterate;
    double objective = 0.0;
    double eta = 0.0;
    std::optional<double> residual;           // ||A z - b|| when the objective has one
    std::optional<double> error_to_reference; // ||z - z*|| when a reference is given
};

/// Checkpoints in strictly increasing iteration order, starting at t = 0 and
/// always including the final iterate.
struct Trace {
    std::vector<TracePoint> points;
    const Vector& final_iterate() const { return points.back().iterate; }
    const TracePoint& back() const { return points.back(); }
};

/// Runs complex SGD. Deterministic given the config (all randomness comes
/// from cfg.seed through splitmix64). Aborts with NumericalError if the
/// residual exceeds 1e6 times its initial value.
Trace run(const SampledObjective& obj, const Vector& z0, const RunConfig& cfg,
          const Vector* reference = nullptr);

/// eta-weighted mean of the iterates z^(0..T-1). The trace must have been
/// recorded every iteration.
Vector weighted_average(const Trace& trace, const StepSchedule& schedule);

struct CheckpointStats {
    std::size_t iteration = 0;
    Vector mean_iterate;
    std::optional<double> mean_sq_dist; // E ||z - z*||^2 (needs reference)
    std::optional<double> se_sq_dist;
    double mean_grad_norm_sq = 0.0; // E ||grad F(z)||^2
    double se_grad_norm_sq = 0.0;
    double mean_objective = 0.0;
    double se_objective = 0.0;
};

struct MonteCarloStats {
    std::vector<CheckpointStats> checkpoints;
    /// Mean / SE of F(weighted_average) across trials; set when the trace was
    /// recorded every iteration.
    std::optional<double> mean_avg_objective;
    std::optional<double> se_avg_objective;
    /// Max of the objective's gradient variance over every recorded iterate.
    double max_gradient_variance = 0.0;
};

/// Independent trials with seeds mix_seed(cfg.seed, k); trials may execute
/// concurrently, aggregation is serial in trial order. Standard errors use
/// the sample standard deviation over trials. Per-checkpoint gradient stats
/// cost O(trials * checkpoints * m * n); disable them when not needed.
MonteCarloStats monte_carlo(const SampledObjective& obj, const Vector& z0,
                            const RunConfig& cfg, std::size_t trials,
                            const Vector* reference = nullptr,
                            ExecMode mode = default_exec_mode(),
                            bool gradient_stats = true);

enum class TheoremCheck {
    AvgIterate,     // gap of F at the weighted-average point
    StronglyConvex, // squared distance of the iterate
    Stationary      // min over t of E ||grad F||^2
};

struct BoundParams {
    double L = 0.0;
    double mu = 0.0;
    double sigma_star = 0.0; // E ||grad f(z*)||^2
    double sigma_sq = 0.0;   // gradient variance bound
    double F_star = 0.0;
    double F_z0 = 0.0;
    double dist0_sq = 0.0; // ||z0 - z*||^2
};

/// Right-hand sides of the convergence bounds, one value per entry of ts
/// (iterate index for StronglyConvex, horizon T otherwise). Throws
/// ContractViolation when the schedule violates the bound's step condition
/// (eta < 1/(4L), c <= eta < 1/(2L), eta <= 1/L respectively).
std::vector<double> theorem_bound(TheoremCheck check, const BoundParams& params,
                                  const StepSchedule& schedule,
                                  const std::vector<std::size_t>& ts);

} // namespace csgd::sgd
