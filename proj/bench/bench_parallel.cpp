// Times the OpenMP kernels against their serial reference paths and checks
// that both produce identical bits. Run with --smoke for a quick CI pass.

#include <chrono>
#include <cstdio>
#include <cstring>

#include "csgd/bias.hpp"
#include "csgd/kernels.hpp"
#include "csgd/objectives.hpp"
#include "csgd/parallel.hpp"
#include "csgd/rng.hpp"
#include "csgd/sgd.hpp"

using namespace csgd;

namespace {

double seconds(void (*fn)(ExecMode), ExecMode mode, int reps) {
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    for (int r = 0; r < reps; ++r) fn(mode);
    const auto t1 = clock::now();
    return std::chrono::duration<double>(t1 - t0).count() / reps;
}

bool g_smoke = false;
bool g_all_equal = true;

std::vector<Complex> make_nodes(std::size_t n) {
    SplitMix64 g(42);
    std::vector<Complex> nodes(n);
    for (auto& z : nodes) z = g.complex_gaussian();
    return nodes;
}

Matrix g_gram_out(1, 1);
void gram_kernel(ExecMode mode) {
    const std::size_t n = g_smoke ? 64 : 512;
    static const std::vector<Complex> nodes = make_nodes(n);
    g_gram_out = rkhs::assemble_gram(rkhs::KernelSpec::fock(), nodes, mode);
}

sgd::MonteCarloStats g_mc_out;
void monte_carlo_kernel(ExecMode mode) {
    SplitMix64 g(7);
    const std::size_t m = 24, n = 8;
    Matrix A(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) A(i, j) = g.complex_gaussian();
    Vector b(m);
    for (std::size_t i = 0; i < m; ++i) b[i] = g.complex_gaussian();
    const LeastSquaresObjective obj(A, b);
    sgd::RunConfig cfg;
    cfg.iterations = g_smoke ? 200 : 2000;
    cfg.seed = 11;
    cfg.schedule = sgd::StepSchedule::constant(0.2 / (m * 4.0));
    cfg.record_every = cfg.iterations / 10;
    g_mc_out = sgd::monte_carlo(obj, Vector(n), cfg, g_smoke ? 8 : 64, nullptr, mode,
                                false);
}

AssumptionReport g_audit_out;
void audit_kernel(ExecMode mode) {
    SplitMix64 g(13);
    Matrix A(12, 5);
    for (std::size_t i = 0; i < 12; ++i)
        for (std::size_t j = 0; j < 5; ++j) A(i, j) = g.complex_gaussian();
    Vector b(12);
    for (std::size_t i = 0; i < 12; ++i) b[i] = g.complex_gaussian();
    const LeastSquaresObjective obj(A, b);
    g_audit_out = assumption_audit(obj, g_smoke ? 100 : 4000, 99, mode);
}

bias::BiasProfile g_bias_out;
void bias_kernel(ExecMode mode) {
    SplitMix64 g(17);
    Matrix A(10, 3);
    for (std::size_t i = 0; i < 10; ++i)
        for (std::size_t j = 0; j < 3; ++j) A(i, j) = g.complex_gaussian();
    Vector zt(3);
    for (std::size_t j = 0; j < 3; ++j) zt[j] = g.complex_gaussian();
    bias::BiasExperiment exp;
    exp.A = A;
    exp.b = matvec(A, zt);
    exp.z0 = Vector(3);
    exp.eta = 0.02;
    exp.iterations = g_smoke ? 50 : 200;
    exp.trials = g_smoke ? 64 : 2000;
    exp.seed = 5;
    g_bias_out = bias::run_bias(exp, mode);
}

template <class T>
bool bits_equal(const T& a, const T& b) {
    return std::memcmp(&a, &b, sizeof(T)) == 0;
}

void report(const char* name, void (*fn)(ExecMode), int reps,
            bool (*check)(void (*)(ExecMode))) {
    const double ts = seconds(fn, ExecMode::Serial, reps);
    const double tp = seconds(fn, ExecMode::OpenMP, reps);
    const bool same = check(fn);
    g_all_equal = g_all_equal && same;
    std::printf("%-14s serial %9.3f ms   openmp %9.3f ms   speedup %5.2fx   identical %s\n",
                name, ts * 1e3, tp * 1e3, ts / tp, same ? "yes" : "NO");
}

bool check_gram(void (*fn)(ExecMode)) {
    fn(ExecMode::Serial);
    const Matrix a = g_gram_out;
    fn(ExecMode::OpenMP);
    for (std::size_t i = 0; i < a.entries().size(); ++i)
        if (a.entries()[i] != g_gram_out.entries()[i]) return false;
    return true;
}

bool check_mc(void (*fn)(ExecMode)) {
    fn(ExecMode::Serial);
    const auto a = g_mc_out;
    fn(ExecMode::OpenMP);
    for (std::size_t p = 0; p < a.checkpoints.size(); ++p) {
        if (!bits_equal(a.checkpoints[p].mean_objective,
                        g_mc_out.checkpoints[p].mean_objective))
            return false;
        for (std::size_t i = 0; i < a.checkpoints[p].mean_iterate.size(); ++i)
            if (a.checkpoints[p].mean_iterate[i] !=
                g_mc_out.checkpoints[p].mean_iterate[i])
                return false;
    }
    return true;
}

bool check_audit(void (*fn)(ExecMode)) {
    fn(ExecMode::Serial);
    const auto a = g_audit_out;
    fn(ExecMode::OpenMP);
    return bits_equal(a.smoothness.worst_slack, g_audit_out.smoothness.worst_slack) &&
           bits_equal(a.component_convexity.worst_slack,
                      g_audit_out.component_convexity.worst_slack) &&
           bits_equal(a.strong_convexity.worst_slack,
                      g_audit_out.strong_convexity.worst_slack) &&
           bits_equal(a.sigma_sq_estimate, g_audit_out.sigma_sq_estimate);
}

bool check_bias(void (*fn)(ExecMode)) {
    fn(ExecMode::Serial);
    const auto a = g_bias_out;
    fn(ExecMode::OpenMP);
    for (std::size_t k = 0; k < a.directions.size(); ++k)
        for (std::size_t p = 0; p < a.checkpoints.size(); ++p)
            if (a.directions[k].estimate[p] != g_bias_out.directions[k].estimate[p])
                return false;
    return true;
}

} // namespace

int main(int argc, char** argv) {
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--smoke") == 0) g_smoke = true;

    std::printf("openmp compiled: %s, max threads: %d%s\n",
                openmp_compiled() ? "yes" : "no", max_threads(),
                g_smoke ? " (smoke sizes)" : "");
    const int reps = g_smoke ? 1 : 3;
    report("gram", gram_kernel, reps, check_gram);
    report("monte_carlo", monte_carlo_kernel, reps, check_mc);
    report("audit", audit_kernel, reps, check_audit);
    report("bias_trials", bias_kernel, reps, check_bias);
    if (!g_all_equal) {
        std::printf("FAIL: serial and OpenMP paths disagree\n");
        return 1;
    }
    return 0;
}
