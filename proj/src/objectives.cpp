#include "csgd/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "csgd/rng.hpp"

namespace csgd {

double SampledObjective::eval_full(const Vector& z) const {
    double s = 0.0;
    for (std::size_t j = 0; j < component_count(); ++j)
        s += weights_[j] * eval_component(j, z);
    return s;
}

Vector SampledObjective::grad_full(const Vector& z) const {
    Vector g = scale(weights_[0], grad_component(0, z));
    for (std::size_t j = 1; j < component_count(); ++j) {
        const Vector gj = grad_component(j, z);
        for (std::size_t i = 0; i < g.size(); ++i) g[i] += weights_[j] * gj[i];
    }
    return g;
}

double SampledObjective::gradient_variance_at(const Vector& z) const {
    const Vector g = grad_full(z);
    double v = 0.0;
    for (std::size_t j = 0; j < component_count(); ++j) {
        const Vector gj = grad_component(j, z);
        double d = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) d += std::norm(gj[i] - g[i]);
        v += weights_[j] * d;
    }
    return v;
}

void SampledObjective::set_uniform_weights(std::size_t m) {
    weights_.assign(m, 1.0 / static_cast<double>(m));
    uniform_ = true;
}

void SampledObjective::set_weights(std::vector<double> w) {
    double s = 0.0;
    for (double p : w) {
        if (!(p >= 0.0) || !std::isfinite(p))
            throw ContractViolation("sampling weights must be nonnegative");
        s += p;
    }
    if (!(s > 0.0)) throw ContractViolation("sampling weights must not all vanish");
    for (double& p : w) p /= s;
    weights_ = std::move(w);
    uniform_ = false;
}

// ---------------------------------------------------------------------------

LeastSquaresObjective::LeastSquaresObjective(Matrix A, Vector b)
    : LeastSquaresObjective(std::move(A), std::move(b), 0.0) {
    scale_ = static_cast<double>(A_.rows());
}

LeastSquaresObjective::LeastSquaresObjective(Matrix A, Vector b,
                                             double component_scale)
    : A_(std::move(A)), b_(std::move(b)), scale_(component_scale) {
    if (A_.rows() != b_.size())
        throw DimensionError("LeastSquaresObjective: rows(A) != len(b)");
    if (scale_ == 0.0) scale_ = static_cast<double>(A_.rows());
    if (!(scale_ > 0.0)) throw ContractViolation("component scale must be positive");
    set_uniform_weights(A_.rows());
}

double LeastSquaresObjective::eval_component(std::size_t j, const Vector& z) const {
    if (j >= A_.rows()) throw ContractViolation("component index out of range");
    if (z.size() != A_.cols()) throw DimensionError("eval_component: bad z length");
    Complex r = -b_[j];
    const auto row = A_.row(j);
    for (std::size_t i = 0; i < row.size(); ++i) r += row[i] * z[i];
    return 0.5 * scale_ * std::norm(r);
}

Vector LeastSquaresObjective::grad_component(std::size_t j, const Vector& z) const {
    if (j >= A_.rows()) throw ContractViolation("component index out of range");
    if (z.size() != A_.cols()) throw DimensionError("grad_component: bad z length");
    Complex r = -b_[j];
    const auto row = A_.row(j);
    for (std::size_t i = 0; i < row.size(); ++i) r += row[i] * z[i];
    Vector g(A_.cols());
    const Complex sr = scale_ * r;
    for (std::size_t i = 0; i < row.size(); ++i) g[i] = sr * std::conj(row[i]);
    return g;
}

double LeastSquaresObjective::eval_full(const Vector& z) const {
    if (!uniform_weights()) return SampledObjective::eval_full(z);
    const Vector r = sub(matvec(A_, z), b_);
    const double n2 = r.norm();
    return 0.5 * scale_ / static_cast<double>(A_.rows()) * n2 * n2;
}

Vector LeastSquaresObjective::grad_full(const Vector& z) const {
    if (!uniform_weights()) return SampledObjective::grad_full(z);
    Vector r = sub(matvec(A_, z), b_);
    return scale(scale_ / static_cast<double>(A_.rows()),
                 adjoint_matvec(A_, r));
}

std::optional<double> LeastSquaresObjective::residual_norm(const Vector& z) const {
    return sub(matvec(A_, z), b_).norm();
}

double LeastSquaresObjective::component_smoothness() const {
    double worst = 0.0;
    for (std::size_t j = 0; j < A_.rows(); ++j) {
        double s = 0.0;
        for (const Complex& a : A_.row(j)) s += std::norm(a);
        worst = std::max(worst, s);
    }
    return scale_ * worst;
}

Vector LeastSquaresObjective::minimizer() const {
    return solve_hpd(gram_of(A_), adjoint_matvec(A_, b_));
}

// ---------------------------------------------------------------------------

RegularizedLSObjective::RegularizedLSObjective(Matrix A, Vector b, double lambda,
                                               RegularizedForm form)
    : A_(std::move(A)), b_(std::move(b)), lambda_(lambda), form_(form) {
    if (A_.rows() != A_.cols())
        throw ContractViolation("RegularizedLSObjective: A must be square");
    if (A_.rows() != b_.size())
        throw DimensionError("RegularizedLSObjective: rows(A) != len(b)");
    if (!(lambda_ > 0.0)) throw ContractViolation("lambda must be positive");
    double dev = 0.0;
    for (std::size_t i = 0; i < A_.rows(); ++i)
        for (std::size_t j = 0; j < A_.cols(); ++j)
            dev += std::norm(A_(i, j) - std::conj(A_(j, i)));
    if (std::sqrt(dev) > 1e-12 * std::max(A_.frobenius_norm(), 1e-300))
        throw ContractViolation("RegularizedLSObjective: A must be Hermitian");
    set_uniform_weights(A_.rows());
}

double RegularizedLSObjective::data_scale() const {
    const double n = static_cast<double>(A_.rows());
    return form_ == RegularizedForm::Canonical ? 2.0 * n : n;
}

double RegularizedLSObjective::eval_component(std::size_t j, const Vector& z) const {
    if (j >= A_.rows()) throw ContractViolation("component index out of range");
    if (z.size() != A_.cols()) throw DimensionError("eval_component: bad z length");
    Complex r = -b_[j];
    const auto row = A_.row(j);
    for (std::size_t i = 0; i < row.size(); ++i) r += row[i] * z[i];
    const double reg = lambda_ * inner(matvec(A_, z), z).real();
    return 0.5 * data_scale() * std::norm(r) + reg;
}

Vector RegularizedLSObjective::grad_component(std::size_t j, const Vector& z) const {
    if (j >= A_.rows()) throw ContractViolation("component index out of range");
    if (z.size() != A_.cols()) throw DimensionError("grad_component: bad z length");
    Complex r = -b_[j];
    const auto row = A_.row(j);
    for (std::size_t i = 0; i < row.size(); ++i) r += row[i] * z[i];
    Vector g = scale(2.0 * lambda_, matvec(A_, z));
    const Complex sr = data_scale() * r;
    for (std::size_t i = 0; i < row.size(); ++i) g[i] += sr * std::conj(row[i]);
    return g;
}

double RegularizedLSObjective::eval_full(const Vector& z) const {
    const Vector r = sub(matvec(A_, z), b_);
    const double n2 = r.norm();
    const double reg = lambda_ * inner(matvec(A_, z), z).real();
    return 0.5 * data_scale() / static_cast<double>(A_.rows()) * n2 * n2 + reg;
}

Vector RegularizedLSObjective::grad_full(const Vector& z) const {
    Vector r = sub(matvec(A_, z), b_);
    Vector g = scale(data_scale() / static_cast<double>(A_.rows()),
                     adjoint_matvec(A_, r));
    const Vector az = matvec(A_, z);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] += 2.0 * lambda_ * az[i];
    return g;
}

std::optional<double> RegularizedLSObjective::residual_norm(const Vector& z) const {
    return sub(matvec(A_, z), b_).norm();
}

// ---------------------------------------------------------------------------

double fd_default_step(const Vector& z) { return 1e-6 * std::max(1.0, z.norm()); }

Vector fd_wirtinger_gradient(const std::function<double(const Vector&)>& f,
                             const Vector& z, double h) {
    if (!(h > 0.0)) throw ContractViolation("fd_wirtinger_gradient: h must be > 0");
    Vector g(z.size());
    Vector zp = z;
    auto probe = [&](std::size_t i, Complex delta) {
        zp[i] = z[i] + delta;
        const double v = f(zp);
        zp[i] = z[i];
        if (!std::isfinite(v))
            throw NumericalError("fd_wirtinger_gradient: non-finite value");
        return v;
    };
    for (std::size_t i = 0; i < z.size(); ++i) {
        const double dx = (probe(i, Complex(h, 0)) - probe(i, Complex(-h, 0))) / (2 * h);
        const double dy = (probe(i, Complex(0, h)) - probe(i, Complex(0, -h))) / (2 * h);
        g[i] = Complex(dx, dy);
    }
    return g;
}

// ---------------------------------------------------------------------------

AssumptionReport assumption_audit(const LeastSquaresObjective& obj,
                                  std::size_t sample_count, std::uint64_t seed,
                                  ExecMode mode) {
    if (sample_count < 1) throw ContractViolation("assumption_audit: need samples");

    const Matrix& A = obj.matrix();
    const std::size_t n = A.cols();
    const SVDResult sv = svd(A);
    AssumptionReport rep;
    rep.sample_count = sample_count;
    rep.L = sv.singular_values.front() * sv.singular_values.front();
    rep.mu = sv.singular_values.back() * sv.singular_values.back();

    const double radius = std::max(1.0, obj.rhs().norm());
    std::vector<double> slack_smooth(sample_count), slack_convex(sample_count),
        slack_strong(sample_count), dist_sq(sample_count), var_at(sample_count);

    auto sample = [&](std::size_t i) {
        SplitMix64 g(mix_seed(seed, i));
        Vector z(n), w(n);
        for (std::size_t k = 0; k < n; ++k) z[k] = radius * g.complex_gaussian();
        for (std::size_t k = 0; k < n; ++k) w[k] = radius * g.complex_gaussian();

        const Vector d = sub(w, z);
        double dd = 0.0;
        for (std::size_t k = 0; k < n; ++k) dd += std::norm(d[k]);
        dist_sq[i] = dd;

        const double Fz = obj.eval_full(z);
        const double Fw = obj.eval_full(w);
        const double lin = inner_real(obj.grad_full(z), d);
        slack_smooth[i] = Fz + lin + 0.5 * rep.L * dd - Fw;
        slack_strong[i] = Fw - (Fz + lin + 0.5 * rep.mu * dd);

        double worst = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < obj.component_count(); ++j) {
            const double s = obj.eval_component(j, w) - obj.eval_component(j, z) -
                             inner_real(obj.grad_component(j, z), d);
            worst = std::min(worst, s);
        }
        slack_convex[i] = worst;
        var_at[i] = obj.gradient_variance_at(z);
    };

    if (mode == ExecMode::OpenMP) {
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < static_cast<long long>(sample_count); ++i)
            sample(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < sample_count; ++i) sample(i);
    }

    double max_dd = 0.0, max_var = 0.0;
    double w_smooth = std::numeric_limits<double>::infinity();
    double w_convex = w_smooth, w_strong = w_smooth;
    for (std::size_t i = 0; i < sample_count; ++i) {
        max_dd = std::max(max_dd, dist_sq[i]);
        max_var = std::max(max_var, var_at[i]);
        w_smooth = std::min(w_smooth, slack_smooth[i]);
        w_convex = std::min(w_convex, slack_convex[i]);
        w_strong = std::min(w_strong, slack_strong[i]);
    }
    rep.sigma_sq_estimate = max_var;

    const double ineq_scale = std::max(rep.L * max_dd, 1e-300);
    auto fill = [&](AssumptionCheck& c, double slack, double scale_v) {
        c.worst_slack = slack;
        c.scale = scale_v;
        c.pass = slack >= -1e-10 * scale_v;
    };
    fill(rep.smoothness, w_smooth, ineq_scale);
    fill(rep.component_convexity, w_convex, ineq_scale);
    fill(rep.strong_convexity, w_strong, ineq_scale);

    try {
        const Vector zstar = obj.minimizer();
        const double gnorm = obj.grad_full(zstar).norm();
        const double sc = std::max(
            sv.singular_values.front() *
                (sv.singular_values.front() * zstar.norm() + obj.rhs().norm()),
            1e-300);
        fill(rep.stationary_minimum, -gnorm, sc);
        double second_moment = 0.0;
        for (std::size_t j = 0; j < obj.component_count(); ++j) {
            const Vector gj = obj.grad_component(j, zstar);
            double s = 0.0;
            for (std::size_t k = 0; k < gj.size(); ++k) s += std::norm(gj[k]);
            second_moment += obj.sampling_weights()[j] * s;
        }
        rep.sigma_star = second_moment;
    } catch (const Error&) {
        // Rank-deficient normal equations: report the failure, do not throw.
        fill(rep.stationary_minimum, -std::numeric_limits<double>::infinity(), 1.0);
    }
    return rep;
}

} // namespace csgd
