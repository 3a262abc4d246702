#include <doctest.h>

#include <cmath>

#include "csgd/kernels.hpp"
#include "csgd/linalg.hpp"
#include "csgd/rng.hpp"
#include "csgd/scenarios.hpp"
#include "csgd/sgd.hpp"

using namespace csgd;
using namespace csgd::sgd;

namespace {

Matrix random_matrix(std::size_t m, std::size_t n, std::uint64_t seed) {
    SplitMix64 g(seed);
    Matrix A(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) A(i, j) = g.complex_gaussian();
    return A;
}

Vector random_vector(std::size_t n, std::uint64_t seed) {
    SplitMix64 g(seed);
    Vector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = g.complex_gaussian();
    return v;
}

} // namespace

TEST_CASE("step schedules") {
    const StepSchedule c = StepSchedule::constant(0.25);
    CHECK(c.at(0) == 0.25);
    CHECK(c.at(1000000) == 0.25);

    const StepSchedule s = StepSchedule::sequence({1.0, 3.0});
    CHECK(s.at(1) == 3.0);
    CHECK_THROWS_AS(s.at(2), ContractViolation);

    const StepSchedule a = StepSchedule::adaptive_sqrt(2.0, 16);
    CHECK(a.at(5) == doctest::Approx(1.0 / 8.0));

    CHECK_THROWS_AS(StepSchedule::constant(0.0), ContractViolation);
    CHECK_THROWS_AS(StepSchedule::sequence({1.0, -1.0}), ContractViolation);
}

TEST_CASE("consistent starting point is a fixed point of every rule") {
    // Integer data keeps the row arithmetic exact, so the iterate never moves.
    Matrix A(3, 2);
    A(0, 0) = 2.0;
    A(0, 1) = Complex(0, 1);
    A(1, 0) = 1.0;
    A(1, 1) = -3.0;
    A(2, 0) = Complex(0, -2);
    A(2, 1) = 1.0;
    const Vector z0{Complex(1.0, 2.0), Complex(-1.0, 0.0)};
    const Vector b = matvec(A, z0);
    const LeastSquaresObjective obj(A, b);

    for (UpdateRule rule :
         {UpdateRule::Plain, UpdateRule::RowNormalized, UpdateRule::Kaczmarz}) {
        RunConfig cfg;
        cfg.iterations = 50;
        cfg.seed = 3;
        cfg.schedule = StepSchedule::constant(0.1);
        cfg.update_rule = rule;
        cfg.record_every = 10;
        const Trace t = run(obj, z0, cfg);
        for (const auto& p : t.points) {
            CHECK(p.iterate[0] == z0[0]);
            CHECK(p.iterate[1] == z0[1]);
        }
    }
}

TEST_CASE("1x1 system contracts like (1 - eta)^t") {
    const LeastSquaresObjective obj(Matrix(1, 1, {Complex(1.0)}), Vector{0.0}, 1.0);
    RunConfig cfg;
    cfg.iterations = 40;
    cfg.seed = 4;
    cfg.schedule = StepSchedule::constant(0.125); // power of two: recursion exact
    cfg.record_every = 1;
    const Vector z0{Complex(1.0, -2.0)};
    const Trace t = run(obj, z0, cfg);
    for (const auto& p : t.points) {
        const Complex expect =
            std::pow(0.875, static_cast<double>(p.iteration)) * z0[0];
        CHECK(std::abs(p.iterate[0] - expect) <= 1e-13 * std::abs(expect) + 1e-300);
    }
}

TEST_CASE("row-normalized recovery at the published Fock parameters (double path)") {
    const scenario::ScenarioDataset ds = scenario::build_superosc({40, 2.0, 1.0});
    const rkhs::GramSystem gs = rkhs::gram(ds.kernel, ds.nodes, ds.lambda);
    const LeastSquaresObjective obj(gs.H, ds.targets);
    RunConfig cfg;
    cfg.iterations = 200000;
    cfg.seed = 11;
    cfg.update_rule = UpdateRule::RowNormalized;
    const Trace t = run(obj, Vector(41), cfg, &ds.exact_coeffs);
    CHECK(*t.back().error_to_reference / ds.exact_coeffs.norm() <= 1e-8);
}

TEST_CASE("row-normalized recovery of a small Fock system against two oracles") {
    const scenario::ScenarioDataset ds =
        scenario::build_superosc({10, 2.0, 1.0});
    const rkhs::GramSystem gs = rkhs::gram(ds.kernel, ds.nodes, ds.lambda);
    const LeastSquaresObjective obj(gs.H, ds.targets);

    RunConfig cfg;
    cfg.iterations = 20000;
    cfg.seed = 7;
    cfg.update_rule = UpdateRule::RowNormalized;
    cfg.schedule = StepSchedule::constant(1.0);
    const Trace t = run(obj, Vector(11), cfg, &ds.exact_coeffs);

    const double rel = *t.back().error_to_reference / ds.exact_coeffs.norm();
    CHECK(rel <= 1e-8);

    // independent oracle route: direct solve of the same system
    const Vector direct = rkhs::representer_solve(gs, ds.targets);
    CHECK(sub(t.final_iterate(), direct).norm() <= 1e-7 * direct.norm());
}

TEST_CASE("weighted average of iterates") {
    const LeastSquaresObjective obj(Matrix::identity(2), Vector(2));
    RunConfig cfg;
    cfg.iterations = 4;
    cfg.seed = 5;
    cfg.schedule = StepSchedule::constant(0.5);
    cfg.record_every = 1;
    const Vector z0{1.0, Complex(0, 1)};
    const Trace t = run(obj, z0, cfg);

    SUBCASE("constant schedule gives the arithmetic mean") {
        const Vector avg = weighted_average(t, cfg.schedule);
        Vector mean(2);
        for (std::size_t k = 0; k < 4; ++k)
            for (std::size_t i = 0; i < 2; ++i) mean[i] += 0.25 * t.points[k].iterate[i];
        CHECK(sub(avg, mean).norm() <= 1e-15);
    }

    SUBCASE("T = 1 returns the initial point") {
        RunConfig one = cfg;
        one.iterations = 1;
        const Trace t1 = run(obj, z0, one);
        const Vector avg = weighted_average(t1, one.schedule);
        CHECK(avg[0] == z0[0]);
        CHECK(avg[1] == z0[1]);
    }

    SUBCASE("schedule (1,3) weights the second iterate three times") {
        RunConfig two = cfg;
        two.iterations = 2;
        two.schedule = StepSchedule::sequence({1.0, 3.0});
        const Trace t2 = run(obj, z0, two);
        const Vector avg = weighted_average(t2, two.schedule);
        for (std::size_t i = 0; i < 2; ++i) {
            const Complex expect =
                (t2.points[0].iterate[i] + 3.0 * t2.points[1].iterate[i]) / 4.0;
            CHECK(std::abs(avg[i] - expect) <= 1e-15);
        }
    }

    SUBCASE("sparse traces are rejected") {
        RunConfig sparse = cfg;
        sparse.iterations = 100;
        sparse.record_every = 10;
        const Trace ts = run(obj, z0, sparse);
        CHECK_THROWS_AS(weighted_average(ts, sparse.schedule), ContractViolation);
    }
}

TEST_CASE("determinism: identical configs give bit-identical traces") {
    const Matrix A = random_matrix(6, 3, 81);
    const LeastSquaresObjective obj(A, random_vector(6, 82));
    RunConfig cfg;
    cfg.iterations = 300;
    cfg.seed = 83;
    cfg.schedule = StepSchedule::constant(0.005);
    cfg.record_every = 30;
    const Trace a = run(obj, Vector(3), cfg);
    const Trace b = run(obj, Vector(3), cfg);
    REQUIRE(a.points.size() == b.points.size());
    for (std::size_t p = 0; p < a.points.size(); ++p)
        for (std::size_t i = 0; i < 3; ++i)
            CHECK(a.points[p].iterate[i] == b.points[p].iterate[i]);
}

TEST_CASE("kaczmarz is the row-normalized rule with unit step") {
    const Matrix A = random_matrix(6, 3, 90);
    const LeastSquaresObjective obj(A, random_vector(6, 89));
    RunConfig a;
    a.iterations = 200;
    a.seed = 88;
    a.update_rule = UpdateRule::Kaczmarz;
    a.record_every = 20;
    RunConfig b = a;
    b.update_rule = UpdateRule::RowNormalized;
    b.schedule = StepSchedule::constant(1.0);
    const Trace ta = run(obj, Vector(3), a);
    const Trace tb = run(obj, Vector(3), b);
    REQUIRE(ta.points.size() == tb.points.size());
    for (std::size_t p = 0; p < ta.points.size(); ++p)
        for (std::size_t i = 0; i < 3; ++i)
            CHECK(ta.points[p].iterate[i] == tb.points[p].iterate[i]);
}

TEST_CASE("row-normalized update with eta = 1 zeroes the sampled row residual") {
    const Matrix A = random_matrix(5, 3, 91);
    const Vector b = random_vector(5, 92);
    const LeastSquaresObjective obj(A, b);
    Vector z = random_vector(3, 93);
    for (std::uint64_t step = 0; step < 25; ++step) {
        RunConfig cfg;
        cfg.iterations = 1;
        cfg.seed = mix_seed(94, step);
        cfg.update_rule = UpdateRule::Kaczmarz;
        const Trace t = run(obj, z, cfg);
        SplitMix64 g(cfg.seed);
        const std::size_t i = g.uniform_index(5); // the documented sampling stream
        Complex r = -b[i];
        for (std::size_t k = 0; k < 3; ++k) r += A(i, k) * t.final_iterate()[k];
        CHECK(std::abs(r) <= 1e-12 * (1.0 + std::abs(b[i])));
        z = t.final_iterate();
    }
}

TEST_CASE("guards: divergence, zero rows, wrong objective kind") {
    const Matrix A = random_matrix(4, 2, 95);
    const LeastSquaresObjective obj(A, random_vector(4, 96));
    RunConfig cfg;
    cfg.iterations = 5000;
    cfg.seed = 97;
    cfg.schedule = StepSchedule::constant(50.0); // way past 2/L
    cfg.record_every = 10;
    CHECK_THROWS_AS(run(obj, random_vector(2, 98), cfg), NumericalError);

    Matrix Z(2, 2);
    Z(0, 0) = 1.0;
    Z(0, 1) = 1.0; // second row zero
    const LeastSquaresObjective zobj(Z, Vector(2));
    RunConfig rcfg;
    rcfg.iterations = 10;
    rcfg.update_rule = UpdateRule::RowNormalized;
    CHECK_THROWS_AS(run(zobj, Vector(2), rcfg), ContractViolation);

    const RegularizedLSObjective reg(gram_of(A), random_vector(2, 99), 1.0);
    CHECK_THROWS_AS(run(reg, Vector(2), rcfg), ContractViolation);
}

TEST_CASE("monte carlo statistics") {
    SUBCASE("single-component objective has zero variance across trials") {
        const LeastSquaresObjective obj(random_matrix(1, 2, 101), random_vector(1, 102));
        RunConfig cfg;
        cfg.iterations = 50;
        cfg.seed = 103;
        cfg.schedule = StepSchedule::constant(0.05);
        cfg.record_every = 10;
        const MonteCarloStats st = monte_carlo(obj, Vector(2), cfg, 8);
        // trajectories are identical; only mean-accumulation rounding remains
        for (const auto& cp : st.checkpoints)
            CHECK(cp.se_objective <= 1e-14 * (1.0 + std::abs(cp.mean_objective)));
    }

    SUBCASE("1x1 closed form within three standard errors") {
        const LeastSquaresObjective obj(Matrix(1, 1, {Complex(1.0)}), Vector{0.0}, 1.0);
        RunConfig cfg;
        cfg.iterations = 30;
        cfg.seed = 104;
        cfg.schedule = StepSchedule::constant(0.2);
        cfg.record_every = 1;
        const Vector z0{Complex(1.5, -0.5)};
        const MonteCarloStats st = monte_carlo(obj, z0, cfg, 16, &z0);
        // deterministic recursion: mean iterate IS (1-eta)^t z0
        for (const auto& cp : st.checkpoints) {
            const Complex expect =
                std::pow(0.8, static_cast<double>(cp.iteration)) * z0[0];
            CHECK(std::abs(cp.mean_iterate[0] - expect) <= 1e-12);
        }
    }

    SUBCASE("consistent system: expected squared distance decays monotonically") {
        const Matrix A = random_matrix(10, 3, 105);
        const Vector ztrue = random_vector(3, 106);
        const Vector b = matvec(A, ztrue);
        const LeastSquaresObjective obj(A, b);
        const SVDResult sv = svd(A);
        const double L = sv.singular_values[0] * sv.singular_values[0];
        RunConfig cfg;
        cfg.iterations = 200;
        cfg.seed = 107;
        cfg.schedule = StepSchedule::constant(0.4 / L);
        cfg.record_every = 20;
        const MonteCarloStats st = monte_carlo(obj, Vector(3), cfg, 100, &ztrue);
        for (std::size_t p = 1; p < st.checkpoints.size(); ++p) {
            const auto& prev = st.checkpoints[p - 1];
            const auto& cur = st.checkpoints[p];
            CHECK(*cur.mean_sq_dist <=
                  *prev.mean_sq_dist + 3.0 * (*cur.se_sq_dist + *prev.se_sq_dist));
        }
    }
}

TEST_CASE("theorem bound arithmetic") {
    SUBCASE("strongly convex, sigma* = 0 reduces to the geometric factor") {
        BoundParams p;
        p.L = 1.0;
        p.mu = 1.0;
        p.sigma_star = 0.0;
        p.dist0_sq = 4.0;
        const double eta = 0.99 / 2.0;
        const auto bounds = theorem_bound(TheoremCheck::StronglyConvex, p,
                                          StepSchedule::constant(eta), {0, 1, 2});
        CHECK(bounds[0] == doctest::Approx(4.0));
        CHECK(bounds[1] == doctest::Approx(4.0 * (1.0 - eta)));
        CHECK(bounds[1] / bounds[0] == doctest::Approx(0.505));
        CHECK(bounds[2] == doctest::Approx(4.0 * (1.0 - eta) * (1.0 - eta)));
    }

    SUBCASE("average-iterate bound with constant steps") {
        BoundParams p;
        p.L = 2.0;
        p.sigma_star = 0.3;
        p.dist0_sq = 9.0;
        const double eta = 0.1; // < 1/(4L)
        const std::size_t T = 50;
        const auto bounds = theorem_bound(TheoremCheck::AvgIterate, p,
                                          StepSchedule::constant(eta), {T});
        CHECK(bounds[0] ==
              doctest::Approx(9.0 / (T * eta) + 2.0 * 0.3 * eta));
    }

    SUBCASE("stationary bound matches the 1/(L sqrt(T)) form") {
        BoundParams p;
        p.L = 2.0;
        p.sigma_sq = 1.7;
        p.F_z0 = 5.0;
        p.F_star = 1.0;
        const std::size_t T = 64;
        const auto bounds =
            theorem_bound(TheoremCheck::Stationary, p,
                          StepSchedule::adaptive_sqrt(p.L, T), {T});
        CHECK(bounds[0] ==
              doctest::Approx((2.0 * p.L * (p.F_z0 - p.F_star) + p.sigma_sq) /
                              std::sqrt(static_cast<double>(T))));
    }

    SUBCASE("step caps are enforced") {
        BoundParams p;
        p.L = 1.0;
        p.mu = 0.5;
        CHECK_THROWS_AS(theorem_bound(TheoremCheck::AvgIterate, p,
                                      StepSchedule::constant(0.3), {10}),
                        ContractViolation); // 0.3 >= 1/(4L)
        CHECK_THROWS_AS(theorem_bound(TheoremCheck::StronglyConvex, p,
                                      StepSchedule::constant(0.6), {10}),
                        ContractViolation); // 0.6 >= 1/(2L)
        CHECK_THROWS_AS(theorem_bound(TheoremCheck::Stationary, p,
                                      StepSchedule::constant(1.5), {10}),
                        ContractViolation); // 1.5 > 1/L
    }
}

TEST_CASE("bound domination on a random consistent system (reduced-size)") {
    const Matrix A = random_matrix(20, 5, 111);
    const Vector ztrue = random_vector(5, 112);
    const Vector b = matvec(A, ztrue);
    const LeastSquaresObjective obj(A, b);
    const SVDResult sv = svd(A);
    // the step caps refer to the components' almost-sure constant
    const double L = obj.component_smoothness();
    const double mu = sv.singular_values.back() * sv.singular_values.back();
    const Vector z0(5);

    BoundParams p;
    p.L = L;
    p.mu = mu;
    p.sigma_star = 0.0; // consistent
    p.F_star = 0.0;
    p.dist0_sq = ztrue.norm() * ztrue.norm();

    SUBCASE("average iterate (Thm on weighted means)") {
        RunConfig cfg;
        cfg.seed = 113;
        cfg.schedule = StepSchedule::constant(1.0 / (5.0 * L));
        cfg.record_every = 1;
        for (std::size_t T : {10UL, 100UL}) {
            cfg.iterations = T;
            const MonteCarloStats st =
                monte_carlo(obj, z0, cfg, 64, &ztrue, default_exec_mode(), false);
            const auto bound =
                theorem_bound(TheoremCheck::AvgIterate, p, cfg.schedule, {T});
            REQUIRE(st.mean_avg_objective.has_value());
            CHECK(*st.mean_avg_objective <=
                  bound[0] * 1.1 + 3.0 * *st.se_avg_objective);
        }
    }

    SUBCASE("strongly convex geometric decay") {
        RunConfig cfg;
        cfg.seed = 114;
        cfg.iterations = 300;
        cfg.schedule = StepSchedule::constant(0.9 / (2.0 * L));
        cfg.record_every = 25;
        const MonteCarloStats st =
            monte_carlo(obj, z0, cfg, 64, &ztrue, default_exec_mode(), false);
        std::vector<std::size_t> ts;
        for (const auto& cp : st.checkpoints) ts.push_back(cp.iteration);
        const auto bounds =
            theorem_bound(TheoremCheck::StronglyConvex, p, cfg.schedule, ts);
        for (std::size_t i = 0; i < ts.size(); ++i)
            CHECK(*st.checkpoints[i].mean_sq_dist <=
                  bounds[i] * 1.1 + 3.0 * *st.checkpoints[i].se_sq_dist);
    }

    SUBCASE("stationary convergence with adaptive steps") {
        // inconsistent variant so the gradient noise is nonzero
        const Vector b2 = random_vector(20, 115);
        const LeastSquaresObjective obj2(A, b2);
        const Vector zstar = obj2.minimizer();
        BoundParams p2;
        p2.L = L;
        p2.mu = mu;
        p2.F_star = obj2.eval_full(zstar);
        p2.F_z0 = obj2.eval_full(z0);
        for (std::size_t T : {16UL, 64UL}) {
            RunConfig cfg;
            cfg.seed = 116;
            cfg.iterations = T;
            cfg.schedule = StepSchedule::adaptive_sqrt(L, T);
            cfg.record_every = 1;
            const MonteCarloStats st = monte_carlo(obj2, z0, cfg, 64, &zstar);
            p2.sigma_sq = st.max_gradient_variance;
            const auto bound =
                theorem_bound(TheoremCheck::Stationary, p2, cfg.schedule, {T});
            double best = std::numeric_limits<double>::infinity();
            double best_se = 0.0;
            for (const auto& cp : st.checkpoints)
                if (cp.mean_grad_norm_sq < best) {
                    best = cp.mean_grad_norm_sq;
                    best_se = cp.se_grad_norm_sq;
                }
            CHECK(best <= bound[0] * 1.1 + 3.0 * best_se);
        }
    }
}
