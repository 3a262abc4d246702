#include "csgd/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <filesystem>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "csgd/bias.hpp"
#include "csgd/csv.hpp"
#include "csgd/detail/kaczmarz.hpp"
#include "csgd/detail/scenario_math.hpp"
#include "csgd/linalg.hpp"
#include "csgd/rng.hpp"
#include "csgd/scenarios.hpp"

namespace csgd::experiments {

namespace {

// The recovery experiments run in extended precision end to end: the exact
// coefficients reach ~1e11 (Fock, n=40) while the recovered function is O(1),
// so double precision caps the achievable function-level agreement near 1e-5.
using Real = long double;
using Cx = std::complex<Real>;

struct ScenarioSystem {
    std::size_t size = 0;
    std::vector<Cx> nodes;
    std::vector<Cx> targets;
    std::vector<Cx> exact;
    Cx c0{0, 0};
    std::vector<Cx> H; // row-major (K + lambda I)
    std::vector<Real> row_norm_sq;
};

struct ConvergencePoint {
    std::size_t iteration;
    double relative_residual;
    double relative_coefficient_error;
};

Real vec_norm(const std::vector<Cx>& v) {
    Real s = 0;
    for (const Cx& z : v) s += std::norm(z);
    return std::sqrt(s);
}

void finish_system(ScenarioSystem& sys, double lambda,
                   const std::function<Cx(Cx, Cx)>& kernel) {
    const std::size_t n = sys.size;
    sys.H.assign(n * n, Cx(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            sys.H[i * n + j] = kernel(sys.nodes[i], sys.nodes[j]) +
                               (i == j ? Cx(static_cast<Real>(lambda)) : Cx(0));
    sys.row_norm_sq.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        Real s = 0;
        for (std::size_t j = 0; j < n; ++j) s += std::norm(sys.H[i * n + j]);
        sys.row_norm_sq[i] = s;
    }
}

double self_consistency(const ScenarioSystem& sys) {
    const std::size_t n = sys.size;
    std::vector<Cx> r(n);
    for (std::size_t i = 0; i < n; ++i) {
        Cx s = -sys.targets[i];
        for (std::size_t j = 0; j < n; ++j) s += sys.H[i * n + j] * sys.exact[j];
        r[i] = s;
    }
    return static_cast<double>(vec_norm(r) / vec_norm(sys.targets));
}

ScenarioSystem build_fock(const ScenarioRunConfig& cfg) {
    const Real a = static_cast<Real>(cfg.a);
    const auto C = detail::superosc_coeffs<Real>(cfg.n, a);
    const auto w = detail::fock_targets<Real>(cfg.n, a, static_cast<Real>(cfg.lambda), C);
    ScenarioSystem sys;
    sys.size = cfg.n + 1;
    sys.nodes = detail::superosc_nodes<Real>(cfg.n);
    sys.targets.assign(w.begin(), w.end());
    sys.exact.assign(C.begin(), C.end());
    finish_system(sys, cfg.lambda,
                  [](Cx z, Cx v) { return detail::fock_kernel<Real>(z, v); });
    return sys;
}

ScenarioSystem build_rbf(const ScenarioRunConfig& cfg) {
    const Real a = static_cast<Real>(cfg.a);
    const auto C = detail::superosc_coeffs<Real>(cfg.n, a);
    const auto beta = detail::rbf_exact_coeffs<Real>(cfg.n, C);
    const auto w = detail::rbf_targets<Real>(cfg.n, static_cast<Real>(cfg.lambda), C);
    ScenarioSystem sys;
    sys.size = cfg.n + 1;
    sys.nodes = detail::superosc_nodes<Real>(cfg.n);
    sys.targets.assign(w.begin(), w.end());
    sys.exact.assign(beta.begin(), beta.end());
    const Real gamma = std::sqrt(Real(2));
    finish_system(sys, cfg.lambda, [gamma](Cx z, Cx v) {
        return detail::rbf_kernel<Real>(z, v, gamma);
    });
    return sys;
}

ScenarioSystem build_hardy(const ScenarioRunConfig& cfg,
                           std::vector<Complex>& roots_out) {
    scenario::DiskRootParams rp;
    rp.count = cfg.root_count;
    rp.seed = cfg.seed;
    rp.r_min = cfg.r_min;
    rp.r_max = cfg.r_max;
    rp.min_sep = cfg.min_sep;
    roots_out = scenario::sample_disk_roots(rp);

    ScenarioSystem sys;
    sys.size = roots_out.size();
    sys.nodes.reserve(sys.size);
    for (Complex a : roots_out) sys.nodes.emplace_back(a.real(), a.imag());

    std::vector<Cx> c;
    detail::blaschke_expansion_coeffs<Real>(sys.nodes, /*conjugated=*/true, sys.c0, c);
    sys.exact = c;
    sys.targets.resize(sys.size);
    for (std::size_t j = 0; j < sys.size; ++j)
        sys.targets[j] = static_cast<Real>(cfg.lambda) * c[j] - sys.c0;
    finish_system(sys, cfg.lambda,
                  [](Cx z, Cx v) { return detail::hardy_kernel_unguarded<Real>(z, v); });
    return sys;
}

// Row-normalized complex SGD from alpha = 0, identical sampling stream to the
// double-precision engine.
std::vector<ConvergencePoint> kaczmarz_run(const ScenarioSystem& sys, Real eta,
                                           std::size_t iterations,
                                           std::uint64_t seed, std::size_t cadence,
                                           std::vector<Cx>& alpha) {
    const std::size_t n = sys.size;
    alpha.assign(n, Cx(0));
    SplitMix64 g(seed);
    const Real target_norm = vec_norm(sys.targets);
    const Real exact_norm = vec_norm(sys.exact);

    std::vector<ConvergencePoint> out;
    double initial_residual = 0.0;
    auto record = [&](std::size_t t) {
        std::vector<Cx> r(n);
        for (std::size_t i = 0; i < n; ++i) {
            Cx s = -sys.targets[i];
            for (std::size_t j = 0; j < n; ++j) s += sys.H[i * n + j] * alpha[j];
            r[i] = s;
        }
        std::vector<Cx> d(n);
        for (std::size_t i = 0; i < n; ++i) d[i] = alpha[i] - sys.exact[i];
        const double rr = static_cast<double>(vec_norm(r) / target_norm);
        const double ce = static_cast<double>(vec_norm(d) / exact_norm);
        if (out.empty()) initial_residual = rr;
        else if (initial_residual > 0.0 && rr > 1e6 * initial_residual)
            throw NumericalError("scenario run diverged (residual grew 1e6x)");
        out.push_back({t, rr, ce});
    };

    record(0);
    for (std::size_t t = 0; t < iterations; ++t) {
        const std::size_t i = g.uniform_index(n);
        detail::row_normalized_step<Real>(&sys.H[i * n], n, sys.targets[i],
                                          sys.row_norm_sq[i], eta, alpha.data());
        const std::size_t done = t + 1;
        if (done % cadence == 0 || done == iterations) record(done);
    }
    return out;
}

// Probe the configured step size on a throwaway copy; halve it once if the
// residual grew over the first 100 iterations.
Real pick_eta(const ScenarioSystem& sys, const ScenarioRunConfig& cfg) {
    const Real eta = static_cast<Real>(cfg.eta);
    const std::size_t probe_T = std::min<std::size_t>(100, cfg.iterations);
    try {
        std::vector<Cx> alpha;
        const auto rows = kaczmarz_run(sys, eta, probe_T, cfg.seed, probe_T, alpha);
        if (rows.back().relative_residual <= rows.front().relative_residual)
            return eta;
    } catch (const NumericalError&) {
        // fall through to the reduced step
    }
    return eta / 2;
}

std::string fmt(double v) { return CsvWriter::format(v); }

void write_convergence(const std::string& path,
                       const std::vector<ConvergencePoint>& rows) {
    CsvWriter csv(path, {"iteration", "relative_residual", "relative_coefficient_error"});
    for (const auto& r : rows)
        csv.row({std::to_string(r.iteration), fmt(r.relative_residual),
                 fmt(r.relative_coefficient_error)});
}

void write_coefficients(const std::string& path, const std::vector<Cx>& exact,
                        const std::vector<Cx>& recovered) {
    CsvWriter csv(path, {"j", "exact_real", "exact_imag", "recovered_real",
                         "recovered_imag"});
    for (std::size_t j = 0; j < exact.size(); ++j)
        csv.row({std::to_string(j), fmt(static_cast<double>(exact[j].real())),
                 fmt(static_cast<double>(exact[j].imag())),
                 fmt(static_cast<double>(recovered[j].real())),
                 fmt(static_cast<double>(recovered[j].imag()))});
}

} // namespace

ScenarioSummary run_scenario(ScenarioKind kind, const ScenarioRunConfig& cfg,
                             const std::string& outdir) {
    if (cfg.iterations < 1) throw ConfigError("iterations must be >= 1");
    if (!(cfg.lambda > 0.0)) throw ConfigError("lambda must be > 0");
    if (!(cfg.eta > 0.0)) throw ConfigError("eta must be > 0");
    if (kind != ScenarioKind::Hardy) {
        if (cfg.n < 1 || cfg.n > detail::kMaxSuperoscN)
            throw ConfigError("n must be in [1, 400]");
        if (!(cfg.a > 1.0)) throw ConfigError("a must be > 1");
        if (cfg.grid_points < 2 || !(cfg.grid_hi > cfg.grid_lo))
            throw ConfigError("bad function grid");
    } else {
        if (cfg.root_count < 1) throw ConfigError("roots must be >= 1");
        if (!(0.0 < cfg.r_min && cfg.r_min < cfg.r_max && cfg.r_max < 1.0))
            throw ConfigError("need 0 < r-min < r-max < 1");
        if (cfg.circle_points < 1) throw ConfigError("circle-points must be >= 1");
    }
    std::filesystem::create_directories(outdir);

    std::vector<Complex> roots;
    ScenarioSystem sys;
    switch (kind) {
    case ScenarioKind::Fock: sys = build_fock(cfg); break;
    case ScenarioKind::Rbf: sys = build_rbf(cfg); break;
    case ScenarioKind::Hardy: sys = build_hardy(cfg, roots); break;
    }

    ScenarioSummary summary;
    summary.self_consistency = self_consistency(sys);
    if (summary.self_consistency > 1e-8)
        throw NumericalError("scenario identity (K+lambda I) alpha* = w violated: " +
                             std::to_string(summary.self_consistency));

    const Real eta = pick_eta(sys, cfg);
    summary.eta_used = static_cast<double>(eta);
    const std::size_t cadence =
        cfg.record_every > 0 ? cfg.record_every
                             : std::max<std::size_t>(1, cfg.iterations / 1000);

    std::vector<Cx> alpha;
    const auto rows = kaczmarz_run(sys, eta, cfg.iterations, cfg.seed, cadence, alpha);
    summary.iterations_run = cfg.iterations;
    summary.final_relative_residual = rows.back().relative_residual;
    summary.final_relative_coeff_error = rows.back().relative_coefficient_error;
    summary.history.reserve(rows.size());
    for (const auto& r : rows)
        summary.history.push_back(
            {r.iteration, r.relative_residual, r.relative_coefficient_error});

    const std::string conv = outdir + "/convergence.csv";
    const std::string coef = outdir + "/coefficients.csv";
    const std::string grid = outdir + "/function_grid.csv";
    write_convergence(conv, rows);
    write_coefficients(coef, sys.exact, alpha);

    if (kind == ScenarioKind::Hardy) {
        CsvWriter csv(grid, {"theta", "exact_real", "exact_imag", "recovered_real",
                             "recovered_imag", "modulus_difference"});
        double worst = 0.0;
        for (std::size_t i = 0; i < cfg.circle_points; ++i) {
            const Real theta = Real(2) * std::numbers::pi_v<Real> *
                               static_cast<Real>(i) / static_cast<Real>(cfg.circle_points);
            const Cx z = std::exp(Cx(0, theta));
            const Cx exact = detail::blaschke_eval<Real>(sys.nodes, z);
            Cx rec = sys.c0;
            for (std::size_t j = 0; j < sys.size; ++j)
                rec += alpha[j] / (Real(1) - z * std::conj(sys.nodes[j]));
            const double md = static_cast<double>(std::abs(std::abs(rec) - Real(1)));
            worst = std::max(worst, md);
            csv.row({fmt(static_cast<double>(theta)),
                     fmt(static_cast<double>(exact.real())),
                     fmt(static_cast<double>(exact.imag())),
                     fmt(static_cast<double>(rec.real())),
                     fmt(static_cast<double>(rec.imag())), fmt(md)});
        }
        summary.function_agreement = worst;
    } else {
        CsvWriter csv(grid, {"x", "closed_real", "closed_imag", "sgd_real",
                             "sgd_imag", "limit_real", "limit_imag"});
        const Real a = static_cast<Real>(cfg.a);
        const Real gamma = std::sqrt(Real(2));
        double worst_abs = 0.0, peak = 0.0;
        for (std::size_t i = 0; i < cfg.grid_points; ++i) {
            const Real x = static_cast<Real>(cfg.grid_lo) +
                           (static_cast<Real>(cfg.grid_hi) - static_cast<Real>(cfg.grid_lo)) *
                               static_cast<Real>(i) / static_cast<Real>(cfg.grid_points - 1);
            const Cx zx(x, 0);
            Cx closed = detail::superosc_closed_form<Real>(cfg.n, a, zx);
            if (kind == ScenarioKind::Rbf) closed *= std::exp(-zx * zx / Real(2));
            Cx sgd(0);
            if (kind == ScenarioKind::Rbf) {
                for (std::size_t j = 0; j < sys.size; ++j)
                    sgd += alpha[j] * detail::rbf_kernel<Real>(zx, sys.nodes[j], gamma);
            } else {
                for (std::size_t j = 0; j < sys.size; ++j)
                    sgd += alpha[j] * detail::fock_kernel<Real>(zx, sys.nodes[j]);
            }
            const Cx limit = detail::superosc_limit<Real>(a, zx);
            worst_abs = std::max(worst_abs, static_cast<double>(std::abs(sgd - closed)));
            peak = std::max(peak, static_cast<double>(std::abs(closed)));
            csv.row({fmt(static_cast<double>(x)), fmt(static_cast<double>(closed.real())),
                     fmt(static_cast<double>(closed.imag())),
                     fmt(static_cast<double>(sgd.real())),
                     fmt(static_cast<double>(sgd.imag())),
                     fmt(static_cast<double>(limit.real())),
                     fmt(static_cast<double>(limit.imag()))});
        }
        summary.function_agreement = worst_abs / peak;
    }
    summary.files = {conv, coef, grid};
    return summary;
}

BiasSummary run_bias_experiment(const BiasRunConfig& cfg, const std::string& outdir) {
    if (cfg.rows < cfg.cols || cfg.cols < 1)
        throw ConfigError("bias: need rows >= cols >= 1");
    if (cfg.trials < 2) throw ConfigError("bias: need >= 2 trials");
    if (cfg.iterations < 1) throw ConfigError("bias: need >= 1 iteration");
    std::filesystem::create_directories(outdir);

    const std::size_t m = cfg.rows, n = cfg.cols;
    SplitMix64 ga(mix_seed(cfg.seed, 101));
    Matrix A(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) A(i, j) = ga.complex_gaussian();
    SplitMix64 gz(mix_seed(cfg.seed, 102));
    Vector z_true(n);
    for (std::size_t j = 0; j < n; ++j) z_true[j] = gz.complex_gaussian();
    Vector b = matvec(A, z_true);

    if (cfg.inconsistent) {
        // Noise orthogonal to range(A) keeps the least-squares solution put.
        SplitMix64 ge(mix_seed(cfg.seed, 103));
        Vector raw(m);
        for (std::size_t i = 0; i < m; ++i) raw[i] = ge.complex_gaussian();
        const SVDResult sv = svd(A);
        Vector eps = raw;
        for (std::size_t k = 0; k < n; ++k) {
            Complex proj = 0.0;
            for (std::size_t i = 0; i < m; ++i)
                proj += raw[i] * std::conj(sv.left_vectors(i, k));
            for (std::size_t i = 0; i < m; ++i)
                eps[i] -= proj * sv.left_vectors(i, k);
        }
        const double target = cfg.eps_scale * b.norm();
        const double got = eps.norm();
        if (got == 0.0) throw NumericalError("bias: degenerate orthogonal noise");
        for (std::size_t i = 0; i < m; ++i) b[i] += eps[i] * (target / got);
    }

    bias::BiasExperiment exp;
    exp.A = A;
    exp.b = b;
    exp.z0 = Vector(n); // zeros
    exp.scale = cfg.scale > 0.0 ? cfg.scale : static_cast<double>(n);
    if (cfg.eta > 0.0) {
        exp.eta = cfg.eta;
    } else {
        // eta s max_i ||a_i||^2 <= 1/2 keeps the trial second moment contracting
        // too, so the standard errors stay calibrated at deep checkpoints.
        double max_row = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            double s = 0.0;
            for (const Complex& a : A.row(i)) s += std::norm(a);
            max_row = std::max(max_row, s);
        }
        exp.eta = 0.5 / (exp.scale * max_row);
    }
    exp.iterations = cfg.iterations;
    exp.trials = cfg.trials;
    exp.seed = cfg.seed;

    const bias::BiasProfile prof = bias::run_bias(exp);

    const std::string path = outdir + "/bias_profile.csv";
    CsvWriter csv(path, {"k", "t", "est_real", "est_imag", "pred_real", "pred_imag",
                         "stderr", "eps_norm"});
    BiasSummary summary;
    summary.eps_norm = prof.eps_norm;
    summary.eta_used = exp.eta;
    for (std::size_t k = 0; k < prof.directions.size(); ++k) {
        const auto& dp = prof.directions[k];
        for (std::size_t p = 0; p < prof.checkpoints.size(); ++p) {
            csv.row({std::to_string(k), std::to_string(prof.checkpoints[p]),
                     fmt(dp.estimate[p].real()), fmt(dp.estimate[p].imag()),
                     fmt(dp.prediction[p].real()), fmt(dp.prediction[p].imag()),
                     fmt(dp.se[p]), fmt(prof.eps_norm)});
            const double dev = std::abs(dp.estimate[p] - dp.prediction[p]);
            const double se = dp.se[p];
            // rounding floor: deterministic checkpoints carry eps-level noise
            if (dev > 1e-12 * std::abs(dp.initial_component)) {
                const double r = se > 0.0 ? dev / se : std::numeric_limits<double>::infinity();
                summary.max_dev_over_se = std::max(summary.max_dev_over_se, r);
                const double excess = dev - prof.eps_norm;
                const double re = excess <= 0.0
                                      ? 0.0
                                      : (se > 0.0 ? excess / se
                                                  : std::numeric_limits<double>::infinity());
                summary.max_dev_minus_eps = std::max(summary.max_dev_minus_eps, re);
            }
        }
    }
    summary.files = {path};
    return summary;
}

} // namespace csgd::experiments
