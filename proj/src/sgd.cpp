#include "csgd/sgd.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "csgd/detail/kaczmarz.hpp"
#include "csgd/rng.hpp"

namespace csgd::sgd {

StepSchedule StepSchedule::constant(double eta) {
    if (!(eta > 0.0)) throw ContractViolation("StepSchedule: eta must be > 0");
    StepSchedule s;
    s.kind_ = Kind::Constant;
    s.eta_ = eta;
    return s;
}

StepSchedule StepSchedule::sequence(std::vector<double> etas) {
    if (etas.empty()) throw ContractViolation("StepSchedule: empty sequence");
    for (double e : etas)
        if (!(e > 0.0)) throw ContractViolation("StepSchedule: eta must be > 0");
    StepSchedule s;
    s.kind_ = Kind::Sequence;
    s.etas_ = std::move(etas);
    return s;
}

StepSchedule StepSchedule::adaptive_sqrt(double L, std::size_t T) {
    if (!(L > 0.0) || T < 1)
        throw ContractViolation("StepSchedule: adaptive_sqrt needs L > 0, T >= 1");
    StepSchedule s;
    s.kind_ = Kind::AdaptiveSqrt;
    s.eta_ = 1.0 / (L * std::sqrt(static_cast<double>(T)));
    return s;
}

double StepSchedule::at(std::size_t t) const {
    if (kind_ == Kind::Sequence) {
        if (t >= etas_.size())
            throw ContractViolation("StepSchedule: step index past end of sequence");
        return etas_[t];
    }
    return eta_;
}

namespace {

std::size_t resolve_cadence(const RunConfig& cfg) {
    if (cfg.record_every > 0) return cfg.record_every;
    return std::max<std::size_t>(1, cfg.iterations / 1000);
}

std::size_t sample_component(const SampledObjective& obj, SplitMix64& g) {
    const std::size_t m = obj.component_count();
    if (obj.uniform_weights()) return g.uniform_index(m);
    const double u = g.uniform01();
    double acc = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        acc += obj.sampling_weights()[j];
        if (u < acc) return j;
    }
    return m - 1;
}

} // namespace

Trace run(const SampledObjective& obj, const Vector& z0, const RunConfig& cfg,
          const Vector* reference) {
    if (cfg.iterations < 1) throw ContractViolation("run: iterations must be >= 1");
    const std::size_t T = cfg.iterations;
    if (cfg.schedule.length() < T && cfg.update_rule != UpdateRule::Kaczmarz)
        throw ContractViolation("run: schedule shorter than the iteration count");
    if (reference && reference->size() != z0.size())
        throw DimensionError("run: reference length mismatch");

    const auto* ls = dynamic_cast<const LeastSquaresObjective*>(&obj);
    const bool row_rule = cfg.update_rule != UpdateRule::Plain;
    if (row_rule) {
        if (!ls)
            throw ContractViolation(
                "run: row-normalized rules need a least-squares objective");
        if (ls->matrix().cols() != z0.size())
            throw DimensionError("run: z0 length mismatch");
    }

    std::vector<double> row_norm_sq;
    if (row_rule) {
        const Matrix& A = ls->matrix();
        row_norm_sq.resize(A.rows());
        for (std::size_t i = 0; i < A.rows(); ++i) {
            double s = 0.0;
            for (const Complex& a : A.row(i)) s += std::norm(a);
            if (s == 0.0)
                throw ContractViolation("run: degenerate (zero) row " +
                                        std::to_string(i));
            row_norm_sq[i] = s;
        }
    }

    const std::size_t cadence = resolve_cadence(cfg);
    SplitMix64 g(cfg.seed);
    Vector z = z0;
    Trace trace;

    auto eta_at = [&](std::size_t t) {
        if (cfg.update_rule == UpdateRule::Kaczmarz) return 1.0;
        return cfg.schedule.at(std::min(t, T - 1));
    };

    double guard = std::numeric_limits<double>::infinity();
    auto record = [&](std::size_t t) {
        TracePoint p{t, z, obj.eval_full(z), eta_at(t), obj.residual_norm(z), {}};
        if (reference) p.error_to_reference = sub(z, *reference).norm();
        if (p.residual) {
            if (trace.points.empty() && *p.residual > 0.0)
                guard = 1e6 * *p.residual;
            if (*p.residual > guard)
                throw NumericalError(
                    "run: residual exceeded 1e6x its initial value at iteration " +
                    std::to_string(t) + " (step size too large?)");
        }
        trace.points.push_back(std::move(p));
    };

    record(0);
    for (std::size_t t = 0; t < T; ++t) {
        const std::size_t j = sample_component(obj, g);
        if (row_rule) {
            const auto row = ls->matrix().row(j);
            detail::row_normalized_step<double>(row.data(), row.size(),
                                                ls->rhs()[j], row_norm_sq[j],
                                                eta_at(t), &z[0]);
        } else {
            const Vector grad = obj.grad_component(j, z);
            const double eta = cfg.schedule.at(t);
            for (std::size_t i = 0; i < z.size(); ++i) z[i] -= eta * grad[i];
        }
        const std::size_t done = t + 1;
        if (done % cadence == 0 || done == T) record(done);
    }
    return trace;
}

Vector weighted_average(const Trace& trace, const StepSchedule& schedule) {
    if (trace.points.empty()) throw ContractViolation("weighted_average: empty trace");
    const std::size_t T = trace.points.back().iteration;
    if (T < 1 || trace.points.size() != T + 1)
        throw ContractViolation("weighted_average: trace must be recorded every iteration");
    for (std::size_t t = 0; t < trace.points.size(); ++t)
        if (trace.points[t].iteration != t)
            throw ContractViolation("weighted_average: trace must be recorded every iteration");

    const std::size_t n = trace.points.front().iterate.size();
    Vector avg(n);
    double total = 0.0;
    for (std::size_t t = 0; t < T; ++t) {
        const double eta = schedule.at(t);
        total += eta;
        const Vector& zt = trace.points[t].iterate;
        for (std::size_t i = 0; i < n; ++i) avg[i] += eta * zt[i];
    }
    for (std::size_t i = 0; i < n; ++i) avg[i] /= total;
    return avg;
}

namespace {

struct MeanSE {
    double mean = 0.0, se = 0.0;
};

MeanSE mean_se(const std::vector<double>& xs) {
    const double n = static_cast<double>(xs.size());
    double m = 0.0;
    for (double x : xs) m += x;
    m /= n;
    double v = 0.0;
    for (double x : xs) v += (x - m) * (x - m);
    v /= (n - 1.0);
    return {m, std::sqrt(v / n)};
}

} // namespace

MonteCarloStats monte_carlo(const SampledObjective& obj, const Vector& z0,
                            const RunConfig& cfg, std::size_t trials,
                            const Vector* reference, ExecMode mode,
                            bool gradient_stats) {
    if (trials < 2) throw ContractViolation("monte_carlo: need at least 2 trials");

    std::vector<Trace> traces(trials);
    auto one_trial = [&](std::size_t k) {
        RunConfig c = cfg;
        c.seed = mix_seed(cfg.seed, k);
        traces[k] = run(obj, z0, c, reference);
    };
    if (mode == ExecMode::OpenMP) {
#pragma omp parallel for schedule(static)
        for (long long k = 0; k < static_cast<long long>(trials); ++k)
            one_trial(static_cast<std::size_t>(k));
    } else {
        for (std::size_t k = 0; k < trials; ++k) one_trial(k);
    }

    const std::size_t points = traces[0].points.size();
    const std::size_t n = z0.size();
    MonteCarloStats stats;
    stats.checkpoints.resize(points);

    std::vector<double> buf_dist(trials), buf_grad(trials), buf_obj(trials);
    for (std::size_t p = 0; p < points; ++p) {
        CheckpointStats cs;
        cs.iteration = traces[0].points[p].iteration;
        cs.mean_iterate = Vector(n);
        for (std::size_t k = 0; k < trials; ++k) {
            const TracePoint& tp = traces[k].points[p];
            for (std::size_t i = 0; i < n; ++i) cs.mean_iterate[i] += tp.iterate[i];
            if (tp.error_to_reference)
                buf_dist[k] = *tp.error_to_reference * *tp.error_to_reference;
            buf_obj[k] = tp.objective;
            if (gradient_stats) {
                const Vector gr = obj.grad_full(tp.iterate);
                double g2 = 0.0;
                for (std::size_t i = 0; i < n; ++i) g2 += std::norm(gr[i]);
                buf_grad[k] = g2;
                stats.max_gradient_variance = std::max(
                    stats.max_gradient_variance, obj.gradient_variance_at(tp.iterate));
            }
        }
        for (std::size_t i = 0; i < n; ++i)
            cs.mean_iterate[i] /= static_cast<double>(trials);
        if (reference) {
            const MeanSE d = mean_se(buf_dist);
            cs.mean_sq_dist = d.mean;
            cs.se_sq_dist = d.se;
        }
        if (gradient_stats) {
            const MeanSE gm = mean_se(buf_grad);
            cs.mean_grad_norm_sq = gm.mean;
            cs.se_grad_norm_sq = gm.se;
        }
        const MeanSE om = mean_se(buf_obj);
        cs.mean_objective = om.mean;
        cs.se_objective = om.se;
        stats.checkpoints[p] = std::move(cs);
    }

    // Weighted-average objective per trial (only meaningful for dense traces).
    const std::size_t T = traces[0].points.back().iteration;
    if (traces[0].points.size() == T + 1 && T >= 1) {
        std::vector<double> favg(trials);
        bool dense = true;
        for (std::size_t t = 0; t <= T && dense; ++t)
            dense = traces[0].points[t].iteration == t;
        if (dense) {
            for (std::size_t k = 0; k < trials; ++k)
                favg[k] = obj.eval_full(weighted_average(traces[k], cfg.schedule));
            const MeanSE fm = mean_se(favg);
            stats.mean_avg_objective = fm.mean;
            stats.se_avg_objective = fm.se;
        }
    }
    return stats;
}

std::vector<double> theorem_bound(TheoremCheck check, const BoundParams& params,
                                  const StepSchedule& schedule,
                                  const std::vector<std::size_t>& ts) {
    if (ts.empty()) return {};
    const std::size_t t_max = *std::max_element(ts.begin(), ts.end());

    auto require_caps = [&](double cap, bool strict, const char* which) {
        const std::size_t steps =
            check == TheoremCheck::StronglyConvex ? t_max : std::max<std::size_t>(t_max, 1);
        for (std::size_t t = 0; t < steps; ++t) {
            const double eta = schedule.at(t);
            if (strict ? !(eta < cap) : !(eta <= cap))
                throw ContractViolation(std::string("theorem_bound: step size ") +
                                        std::to_string(eta) + " violates " + which);
        }
    };

    std::vector<double> out;
    out.reserve(ts.size());
    switch (check) {
    case TheoremCheck::AvgIterate: {
        require_caps(1.0 / (4.0 * params.L), true, "eta < 1/(4L)");
        for (std::size_t T : ts) {
            if (T < 1) throw ContractViolation("theorem_bound: T must be >= 1");
            double sum = 0.0, sum_sq = 0.0;
            for (std::size_t t = 0; t < T; ++t) {
                const double eta = schedule.at(t);
                sum += eta;
                sum_sq += eta * eta;
            }
            out.push_back(params.dist0_sq / sum +
                          2.0 * params.sigma_star * sum_sq / sum);
        }
        break;
    }
    case TheoremCheck::StronglyConvex: {
        require_caps(1.0 / (2.0 * params.L), true, "eta < 1/(2L)");
        double c = std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t < std::max<std::size_t>(t_max, 1); ++t)
            c = std::min(c, schedule.at(t));
        for (std::size_t t : ts) {
            const double rate = std::pow(1.0 - c * params.mu, static_cast<double>(t));
            const double horizon =
                schedule.is_constant()
                    ? 2.0 * params.sigma_star * c / params.mu
                    : params.sigma_star / (2.0 * params.L * params.L * c * params.mu);
            out.push_back(rate * params.dist0_sq + horizon);
        }
        break;
    }
    case TheoremCheck::Stationary: {
        require_caps(1.0 / params.L, false, "eta <= 1/L");
        for (std::size_t T : ts) {
            if (T < 1) throw ContractViolation("theorem_bound: T must be >= 1");
            double sum = 0.0, sum_sq = 0.0;
            for (std::size_t t = 0; t < T; ++t) {
                const double eta = schedule.at(t);
                sum += eta;
                sum_sq += eta * eta;
            }
            out.push_back((2.0 * (params.F_z0 - params.F_star) +
                           params.L * params.sigma_sq * sum_sq) /
                          sum);
        }
        break;
    }
    }
    return out;
}

} // namespace csgd::sgd
