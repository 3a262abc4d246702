#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "csgd/experiments.hpp"
#include "csgd/parallel.hpp"

namespace {

using namespace csgd;
using namespace csgd::experiments;

std::string resolve_outdir(const std::string& flag_value, const std::string& sub) {
    if (!flag_value.empty()) return flag_value;
    return "out/" + sub;
}

void add_scenario_options(CLI::App* sub, ScenarioRunConfig& cfg, std::string& outdir,
                          bool hardy) {
    if (!hardy) {
        sub->add_option("--n", cfg.n, "number of interpolation intervals (n+1 nodes)")
            ->capture_default_str();
        sub->add_option("--a", cfg.a, "superoscillation parameter (a > 1)")
            ->capture_default_str();
        sub->add_option("--grid-lo", cfg.grid_lo, "function grid lower end")
            ->capture_default_str();
        sub->add_option("--grid-hi", cfg.grid_hi, "function grid upper end")
            ->capture_default_str();
        sub->add_option("--grid-points", cfg.grid_points, "function grid size")
            ->capture_default_str();
    } else {
        sub->add_option("--roots", cfg.root_count, "number of Blaschke roots")
            ->capture_default_str();
        sub->add_option("--r-min", cfg.r_min, "minimum root radius")
            ->capture_default_str();
        sub->add_option("--r-max", cfg.r_max, "maximum root radius")
            ->capture_default_str();
        sub->add_option("--min-sep", cfg.min_sep, "minimum root separation")
            ->capture_default_str();
        sub->add_option("--circle-points", cfg.circle_points,
                        "unit-circle sample count")
            ->capture_default_str();
    }
    sub->add_option("--lambda", cfg.lambda, "regularization weight")
        ->capture_default_str();
    sub->add_option("--eta", cfg.eta, "row-normalized step size")
        ->capture_default_str();
    sub->add_option("--iters", cfg.iterations, "SGD iteration count")
        ->capture_default_str();
    sub->add_option("--seed", cfg.seed, "PRNG seed")->capture_default_str();
    sub->add_option("--record-every", cfg.record_every,
                    "trace cadence (0 = iters/1000)")
        ->capture_default_str();
    sub->add_option("--outdir", outdir, "output directory")
        ->envname("CSGD_OUTDIR");
}

void print_scenario_summary(const std::string& name, const ScenarioSummary& s) {
    std::printf("%s: self-consistency %.3e, eta %.3g\n", name.c_str(),
                s.self_consistency, s.eta_used);
    std::printf("%s: final relative residual %.3e, final relative coefficient error %.3e\n",
                name.c_str(), s.final_relative_residual, s.final_relative_coeff_error);
    std::printf("%s: function-level agreement %.3e\n", name.c_str(),
                s.function_agreement);
    for (const std::string& f : s.files) std::printf("wrote %s\n", f.c_str());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Complex (Wirtinger) SGD kernel-recovery experiments"};
    app.set_config("--config", "", "INI config file; [section] per subcommand");
    bool serial = false;
    app.add_flag("--serial", serial, "run the serial reference paths");
    app.require_subcommand(1);

    ScenarioRunConfig fock_cfg;
    std::string fock_out;
    CLI::App* fock = app.add_subcommand("fock", "Fock-space superoscillation recovery");
    add_scenario_options(fock, fock_cfg, fock_out, false);

    ScenarioRunConfig rbf_cfg;
    rbf_cfg.iterations = 1000000; // worse conditioned than the Fock system
    std::string rbf_out;
    CLI::App* rbf = app.add_subcommand("rbf", "Gaussian-RBF supershift recovery");
    add_scenario_options(rbf, rbf_cfg, rbf_out, false);

    ScenarioRunConfig hardy_cfg;
    hardy_cfg.iterations = 1000000;
    std::string hardy_out;
    CLI::App* hardy = app.add_subcommand("hardy", "Hardy-space Blaschke recovery");
    add_scenario_options(hardy, hardy_cfg, hardy_out, true);

    BiasRunConfig bias_cfg;
    std::string bias_out;
    CLI::App* bias = app.add_subcommand("bias", "directional-bias Monte Carlo");
    bias->add_option("--rows", bias_cfg.rows, "system rows m")->capture_default_str();
    bias->add_option("--cols", bias_cfg.cols, "system columns n")->capture_default_str();
    bias->add_option("--eta", bias_cfg.eta, "step size (0 = 0.5 m / (s sigma_max^2))")
        ->capture_default_str();
    bias->add_option("--scale", bias_cfg.scale, "component scale s (0 = cols)")
        ->capture_default_str();
    bias->add_option("--iters", bias_cfg.iterations, "iterations per trial")
        ->capture_default_str();
    bias->add_option("--trials", bias_cfg.trials, "Monte Carlo trials")
        ->capture_default_str();
    bias->add_option("--seed", bias_cfg.seed, "PRNG seed")->capture_default_str();
    bias->add_flag("--inconsistent", bias_cfg.inconsistent,
                   "add noise orthogonal to range(A)");
    bias->add_option("--eps-scale", bias_cfg.eps_scale,
                     "orthogonal noise size relative to ||b||")
        ->capture_default_str();
    bias->add_option("--outdir", bias_out, "output directory")->envname("CSGD_OUTDIR");

    std::uint64_t verify_seed = 1;
    std::string verify_out;
    CLI::App* verify = app.add_subcommand("verify", "run all module invariant suites");
    verify->add_option("--seed", verify_seed, "PRNG seed")->capture_default_str();
    verify->add_option("--outdir", verify_out, "output directory")
        ->envname("CSGD_OUTDIR");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (serial) csgd::set_default_exec_mode(ExecMode::Serial);

    try {
        if (fock->parsed()) {
            const auto s = run_scenario(ScenarioKind::Fock, fock_cfg,
                                        resolve_outdir(fock_out, "fock"));
            print_scenario_summary("fock", s);
        } else if (rbf->parsed()) {
            const auto s = run_scenario(ScenarioKind::Rbf, rbf_cfg,
                                        resolve_outdir(rbf_out, "rbf"));
            print_scenario_summary("rbf", s);
        } else if (hardy->parsed()) {
            const auto s = run_scenario(ScenarioKind::Hardy, hardy_cfg,
                                        resolve_outdir(hardy_out, "hardy"));
            print_scenario_summary("hardy", s);
        } else if (bias->parsed()) {
            const auto s =
                run_bias_experiment(bias_cfg, resolve_outdir(bias_out, "bias"));
            std::printf("bias: eta %.4g, ||eps|| %.3e\n", s.eta_used, s.eps_norm);
            std::printf("bias: max |est-pred|/SE %.3f, max (|est-pred|-eps)/SE %.3f\n",
                        s.max_dev_over_se, s.max_dev_minus_eps);
            for (const std::string& f : s.files) std::printf("wrote %s\n", f.c_str());
        } else if (verify->parsed()) {
            const auto results = run_verify(verify_seed);
            const std::string dir = resolve_outdir(verify_out, "verify");
            std::filesystem::create_directories(dir);
            const std::string report = dir + "/verify_report.json";
            write_verify_report(results, report);
            bool all = true;
            for (const auto& r : results) {
                std::printf("%-40s %s  %s\n", r.name.c_str(),
                            r.pass ? "PASS" : "FAIL", r.detail.c_str());
                all = all && r.pass;
            }
            std::printf("wrote %s\n", report.c_str());
            if (!all) return 4;
        }
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const ContractViolation& e) {
        std::fprintf(stderr, "config error (violated precondition): %s\n", e.what());
        return 2;
    } catch (const DimensionError& e) {
        std::fprintf(stderr, "config error (shape): %s\n", e.what());
        return 2;
    } catch (const Error& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    }
    return 0;
}
