#include "csgd/bias.hpp"

#include <algorithm>
#include <cmath>

#include "csgd/detail/kaczmarz.hpp"
#include "csgd/linalg.hpp"
#include "csgd/rng.hpp"

namespace csgd::bias {

std::vector<std::size_t> default_checkpoints(std::size_t T) {
    std::vector<std::size_t> ts{0};
    const std::size_t mults[] = {1, 2, 5};
    for (std::size_t decade = 1; decade <= T; decade *= 10)
        for (std::size_t m : mults) {
            const std::size_t t = m * decade;
            if (t <= T) ts.push_back(t);
        }
    if (ts.back() != T) ts.push_back(T);
    return ts;
}

BiasProfile run_bias(const BiasExperiment& exp, ExecMode mode) {
    const Matrix& A = exp.A;
    const std::size_t m = A.rows(), n = A.cols();
    if (n == 0) throw DimensionError("run_bias: empty system matrix");
    if (m < n) throw ContractViolation("run_bias: need m >= n");
    if (exp.b.size() != m || exp.z0.size() != n)
        throw DimensionError("run_bias: shape mismatch");
    if (exp.trials < 2) throw ContractViolation("run_bias: need >= 2 trials");
    if (exp.iterations < 1) throw ContractViolation("run_bias: need >= 1 iteration");
    const double s = exp.scale > 0.0 ? exp.scale : static_cast<double>(n);
    if (!(exp.eta > 0.0)) throw ContractViolation("run_bias: eta must be > 0");

    const SVDResult sv = svd(A);
    const double smax = sv.singular_values.front();
    const double smin = sv.singular_values.back();
    if (smin <= 1e-10 * smax)
        throw ContractViolation("run_bias: matrix is rank deficient");
    if (!(exp.eta * s * smax * smax / static_cast<double>(m) < 1.0))
        throw ContractViolation(
            "run_bias: eta s sigma_max^2 / m must be < 1 (not a contraction)");

    const Vector z_star = solve_hpd(gram_of(A), adjoint_matvec(A, exp.b));
    const double eps_norm = sub(matvec(A, z_star), exp.b).norm();

    std::vector<std::size_t> ts =
        exp.checkpoints.empty() ? default_checkpoints(exp.iterations) : exp.checkpoints;
    for (std::size_t i = 1; i < ts.size(); ++i)
        if (ts[i] <= ts[i - 1] || ts[i] > exp.iterations)
            throw ContractViolation("run_bias: checkpoints must increase and stay <= T");

    // Per-trial component storage: trials x checkpoints x directions.
    const std::size_t C = ts.size();
    std::vector<Complex> comp(exp.trials * C * n);

    auto one_trial = [&](std::size_t trial) {
        SplitMix64 g(mix_seed(exp.seed, trial));
        std::vector<Complex> z(exp.z0.entries());
        std::size_t next_cp = 0;
        auto take = [&](std::size_t t) {
            while (next_cp < C && ts[next_cp] == t) {
                for (std::size_t k = 0; k < n; ++k) {
                    Complex ip = 0.0;
                    for (std::size_t i = 0; i < n; ++i)
                        ip += (z[i] - z_star[i]) * std::conj(sv.right_vectors(i, k));
                    comp[(trial * C + next_cp) * n + k] = ip;
                }
                ++next_cp;
            }
        };
        take(0);
        for (std::size_t t = 0; t < exp.iterations; ++t) {
            const std::size_t i = g.uniform_index(m);
            detail::plain_ls_step<double>(A.row(i).data(), n, exp.b[i], s, exp.eta,
                                          z.data());
            take(t + 1);
        }
    };
    if (mode == ExecMode::OpenMP) {
#pragma omp parallel for schedule(static)
        for (long long k = 0; k < static_cast<long long>(exp.trials); ++k)
            one_trial(static_cast<std::size_t>(k));
    } else {
        for (std::size_t k = 0; k < exp.trials; ++k) one_trial(k);
    }

    BiasProfile prof;
    prof.checkpoints = ts;
    prof.eps_norm = eps_norm;
    prof.z_star = z_star;
    prof.directions.resize(n);

    Vector d0 = sub(exp.z0, z_star);
    for (std::size_t k = 0; k < n; ++k) {
        DirectionProfile& dp = prof.directions[k];
        dp.sigma = sv.singular_values[k];
        dp.rate = 1.0 - exp.eta * s * dp.sigma * dp.sigma / static_cast<double>(m);
        Complex init = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            init += d0[i] * std::conj(sv.right_vectors(i, k));
        dp.initial_component = init;
        dp.estimate.resize(C);
        dp.se.resize(C);
        dp.prediction.resize(C);
        for (std::size_t p = 0; p < C; ++p) {
            Complex mean = 0.0;
            for (std::size_t trial = 0; trial < exp.trials; ++trial)
                mean += comp[(trial * C + p) * n + k];
            mean /= static_cast<double>(exp.trials);
            double var = 0.0;
            for (std::size_t trial = 0; trial < exp.trials; ++trial)
                var += std::norm(comp[(trial * C + p) * n + k] - mean);
            var /= static_cast<double>(exp.trials - 1);
            dp.estimate[p] = mean;
            dp.se[p] = std::sqrt(var / static_cast<double>(exp.trials));
            dp.prediction[p] =
                std::pow(dp.rate, static_cast<double>(ts[p])) * init;
        }
    }
    return prof;
}

DominanceReport smallest_direction_dominance(const BiasProfile& profile) {
    const std::size_t n = profile.directions.size();
    if (n < 2)
        throw ContractViolation("smallest_direction_dominance: need >= 2 directions");
    if (profile.eps_norm > 1e-10)
        throw ContractViolation("smallest_direction_dominance: experiment must be consistent");
    const double smax = profile.directions.front().sigma;
    const double smin = profile.directions.back().sigma;
    if (!(smax > smin * (1.0 + 1e-12)))
        throw ContractViolation(
            "smallest_direction_dominance: need >= 2 distinct singular values");

    DominanceReport rep;
    const DirectionProfile& slow = profile.directions.back();
    const std::size_t last = profile.checkpoints.size() - 1;
    const double T = static_cast<double>(profile.checkpoints[last]);

    if (std::abs(slow.initial_component) < 1e-12 * profile.z_star.norm() + 1e-300) {
        rep.conclusive = false;
        rep.note = "initial component along the slowest direction is numerically zero";
        return rep;
    }
    rep.conclusive = true;
    for (const DirectionProfile& dp : profile.directions) {
        rep.rates.push_back(dp.rate);
        rep.predicted_ratio.push_back(std::pow(dp.rate / slow.rate, T));
        const double denom = std::abs(slow.estimate[last]);
        rep.measured_ratio.push_back(denom > 0.0
                                         ? std::abs(dp.estimate[last]) / denom
                                         : std::numeric_limits<double>::infinity());
    }
    return rep;
}

} // namespace csgd::bias
