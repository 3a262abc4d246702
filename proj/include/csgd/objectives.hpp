#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "csgd/linalg.hpp"
#include "csgd/parallel.hpp"
#include "csgd/types.hpp"

namespace csgd {

/// A finite family of real-valued components f_j of complex arguments with
/// their Wirtinger gradients (the complex gradient 2 d/dconj(z)), plus the
/// sampled mean F. Immutable after construction; gradient evaluation is pure.
class SampledObjective {
public:
    virtual ~SampledObjective() = default;

    virtual std::size_t component_count() const = 0;
    virtual double eval_component(std::size_t j, const Vector& z) const = 0;
    virtual Vector grad_component(std::size_t j, const Vector& z) const = 0;

    /// F(z) = sum_j p_j f_j(z). Default sums components.
    virtual double eval_full(const Vector& z) const;
    /// Complex gradient of F. Default sums weighted component gradients.
    virtual Vector grad_full(const Vector& z) const;

    /// Sampling distribution over components; uniform by default.
    const std::vector<double>& sampling_weights() const { return weights_; }
    bool uniform_weights() const { return uniform_; }

    /// sum_j p_j ||grad f_j(z) - grad F(z)||^2 (gradient noise at z).
    double gradient_variance_at(const Vector& z) const;

    /// ||A z - b|| when the objective wraps a linear system.
    virtual std::optional<double> residual_norm(const Vector& /*z*/) const {
        return std::nullopt;
    }

protected:
    void set_uniform_weights(std::size_t m);
    void set_weights(std::vector<double> w);

private:
    std::vector<double> weights_;
    bool uniform_ = true;
};

/// f_j(z) = (s/2) |a_j z - b_j|^2 for the rows a_j of A. With the default
/// scale s = m and uniform sampling, F(z) = (1/2) ||A z - b||^2.
class LeastSquaresObjective : public SampledObjective {
public:
    LeastSquaresObjective(Matrix A, Vector b);
    LeastSquaresObjective(Matrix A, Vector b, double component_scale);

    std::size_t component_count() const override { return A_.rows(); }
    double eval_component(std::size_t j, const Vector& z) const override;
    Vector grad_component(std::size_t j, const Vector& z) const override;
    double eval_full(const Vector& z) const override;
    Vector grad_full(const Vector& z) const override;
    std::optional<double> residual_norm(const Vector& z) const override;

    const Matrix& matrix() const { return A_; }
    const Vector& rhs() const { return b_; }
    double component_scale() const { return scale_; }

    /// Almost-sure smoothness constant of the components: every f_j satisfies
    /// the quadratic upper bound with L = s * max_j ||a_j||^2. This is the L
    /// the step-size caps of the convergence bounds refer to (it dominates
    /// sigma_max^2, which is only the full objective's constant).
    double component_smoothness() const;

    /// Least-squares solution of the normal equations (full column rank).
    Vector minimizer() const;

private:
    Matrix A_;
    Vector b_;
    double scale_;
};

/// Which stationarity convention the regularized objective uses. Canonical
/// drops the 1/2 on the data-fit term so the gradient vanishes exactly at
/// (A + lambda I) z = b; HalfDataTerm keeps it (stationary at
/// (A + 2 lambda I) z = b).
enum class RegularizedForm { Canonical, HalfDataTerm };

/// F(z) = ||b - A z||^2 + lambda z* A z for Hermitian PSD A (canonical form);
/// gradient 2 A ((A + lambda I) z - b).
class RegularizedLSObjective : public SampledObjective {
public:
    RegularizedLSObjective(Matrix A, Vector b, double lambda,
                           RegularizedForm form = RegularizedForm::Canonical);

    std::size_t component_count() const override { return A_.rows(); }
    double eval_component(std::size_t j, const Vector& z) const override;
    Vector grad_component(std::size_t j, const Vector& z) const override;
    double eval_full(const Vector& z) const override;
    Vector grad_full(const Vector& z) const override;
    std::optional<double> residual_norm(const Vector& z) const override;

    const Matrix& matrix() const { return A_; }
    const Vector& rhs() const { return b_; }
    double lambda() const { return lambda_; }
    RegularizedForm form() const { return form_; }

private:
    double data_scale() const; // multiplier on |a_j z - b_j|^2 per component
    Matrix A_;
    Vector b_;
    double lambda_;
    RegularizedForm form_;
};

/// Central-difference Wirtinger gradient oracle: entry i approximates
/// df/dx_i + i df/dy_i = 2 df/dconj(z_i). Test oracle only.
Vector fd_wirtinger_gradient(const std::function<double(const Vector&)>& f,
                             const Vector& z, double h);

/// Step used when no h is supplied: 1e-6 * max(1, ||z||).
double fd_default_step(const Vector& z);

struct AssumptionCheck {
    bool pass = false;
    double worst_slack = 0.0; // signed; >= -1e-10 * scale passes
    double scale = 1.0;
};

struct AssumptionReport {
    AssumptionCheck stationary_minimum; // gradient vanishes at z*
    AssumptionCheck smoothness;         // quadratic upper bound on F with L
    AssumptionCheck component_convexity; // per-component lower linear bound
    AssumptionCheck strong_convexity;   // quadratic lower bound on F with mu
    std::size_t sample_count = 0;
    double L = 0.0;  // sigma_max^2
    double mu = 0.0; // sigma_min^2
    double sigma_sq_estimate = 0.0; // max over samples of gradient variance
    double sigma_star = 0.0;        // second moment of component gradients at z*
    bool all_pass() const {
        return stationary_minimum.pass && smoothness.pass &&
               component_convexity.pass && strong_convexity.pass;
    }
};

/// Samples pairs (z, w) with complex Gaussian entries at the data's scale and
/// checks the stationarity/smoothness/convexity inequalities with
/// L = sigma_max(A)^2 and mu = sigma_min(A)^2. Sample slacks are computed in
/// parallel and reduced in index order.
AssumptionReport assumption_audit(const LeastSquaresObjective& obj,
                                  std::size_t sample_count, std::uint64_t seed,
                                  ExecMode mode = default_exec_mode());

} // namespace csgd
