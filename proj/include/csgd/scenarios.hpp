#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "csgd/kernels.hpp"
#include "csgd/types.hpp"

namespace csgd::scenario {

/// A recovery experiment with an analytically known answer: kernel, data
/// (z_k, w_k), regularization, the exact expansion coefficients, and closed
/// forms for the recovered function and (when one exists) its limit.
struct ScenarioDataset {
    rkhs::KernelSpec kernel;
    std::vector<Complex> nodes;
    Vector targets;
    double lambda = 0.0;
    Vector exact_coeffs;
    Complex offset_c0{0.0, 0.0}; // nonzero only for the Hardy/Blaschke case
    std::function<Complex(Complex)> reference_eval;
    std::function<Complex(Complex)> limit_eval; // empty when no limit applies
};

struct SuperoscParams {
    std::size_t n = 40;
    double a = 2.0;
    double lambda = 1.0;
};

struct SuperoscCoefficients {
    Vector coefficients;        // C_0..C_n, real-valued (stored as Complex)
    std::vector<Complex> nodes; // z_j = -i(1 - 2j/n)
};

/// C_j(n,a) = binom(n,j)((1+a)/2)^(n-j)((1-a)/2)^j and the node grid.
/// The coefficients sum to 1. Errors out if any |C_j| would exceed 1e300.
SuperoscCoefficients superosc_coefficients(std::size_t n, double a);

/// F_n(a,z) = (cos(z/n) + i a sin(z/n))^n.
Complex eval_superosc_closed_form(std::size_t n, double a, Complex z);

/// The supershift limit e^{i a z}.
Complex eval_superosc_limit(double a, Complex z);

/// Fock-space dataset: the superoscillation sequence is the regularized
/// least-squares minimizer for these targets, with exact coefficients C_j.
ScenarioDataset build_superosc(const SuperoscParams& params);

/// Gaussian-RBF (gamma = sqrt(2)) analogue: coefficients
/// beta_j = C_j e^{-(1-2j/n)^2/2}, reference function e^{-z^2/2} F_n(a,z).
ScenarioDataset build_rbf_supershift(const SuperoscParams& params);

struct DiskRootParams {
    std::size_t count = 50;
    std::uint64_t seed = 1;
    double r_min = 0.05;
    double r_max = 0.9;
    double min_sep = 0.02;
};

/// Rejection-samples roots in the annulus r_min <= |a| <= r_max with pairwise
/// separation >= min_sep. Deterministic per seed; SamplingError when the
/// attempt budget runs out.
std::vector<Complex> sample_disk_roots(const DiskRootParams& params);

/// B_n(z) = prod_j (z - a_j)/(1 - conj(a_j) z).
Complex blaschke_eval(std::span<const Complex> roots, Complex z);

/// B_n'(a_j) for simple roots.
Complex blaschke_derivative_at_root(std::span<const Complex> roots, std::size_t j);

/// Conjugated is the convention that satisfies the expansion identity
/// B_n(z) = c0 + sum_j c_j K(z, a_j); Plain keeps the unconjugated variant
/// for comparison (it only agrees for real roots).
enum class HardyConvention { Conjugated, Plain };

/// Hardy-space dataset with nodes = roots, targets w_k = lambda c_k - c0,
/// exact coefficients c_1..c_n and offset c0. Construction verifies the
/// expansion-vs-product identity and errors out if the chosen convention
/// fails it.
ScenarioDataset build_blaschke(std::vector<Complex> roots, double lambda,
                               HardyConvention convention = HardyConvention::Conjugated);

} // namespace csgd::scenario
