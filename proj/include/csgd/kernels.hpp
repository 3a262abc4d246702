#pragma once

#include <span>
#include <vector>

#include "csgd/linalg.hpp"
#include "csgd/parallel.hpp"
#include "csgd/types.hpp"

namespace csgd::rkhs {

/// One of the three reproducing kernels: Fock B(z,w) = e^{z conj(w)},
/// Gaussian RBF K_gamma(z,w) = e^{-(z - conj(w))^2 / gamma^2}, or the Szego
/// kernel of the Hardy space K(z,w) = 1/(1 - z conj(w)) on the unit disk.
struct KernelSpec {
    enum class Kind { Fock, GaussianRBF, Hardy };

    Kind kind = Kind::Fock;
    double gamma = 0.0; // GaussianRBF only

    static KernelSpec fock() { return {Kind::Fock, 0.0}; }
    static KernelSpec gaussian_rbf(double gamma);
    static KernelSpec hardy() { return {Kind::Hardy, 0.0}; }
};

/// Pointwise kernel evaluation. Hardy arguments must satisfy
/// |z| < 1 - 1e-12 (DomainError otherwise).
Complex kernel_eval(const KernelSpec& spec, Complex z, Complex w);

/// Gram matrix K_ij = kernel(z_i, z_j), row-parallel. No validation beyond
/// the kernel's own domain; gram() is the validating entry point.
Matrix assemble_gram(const KernelSpec& spec, std::span<const Complex> nodes,
                     ExecMode mode = default_exec_mode());

struct GramSystem {
    KernelSpec spec;
    std::vector<Complex> nodes;
    Matrix K;
    double lambda = 0.0;
    Matrix H; // K + lambda I
};

/// Builds and validates a Gram system: nodes pairwise distinct (separation
/// > 1e-10), K Hermitian to 1e-12 relative, eigenvalues of K down to
/// -1e-8 trace(K)/n.
GramSystem gram(const KernelSpec& spec, std::span<const Complex> nodes,
                double lambda, ExecMode mode = default_exec_mode());

/// Solves (K + lambda I) alpha = y (lambda > 0). The result is the
/// stationary point of the canonical regularized objective
/// ||y - K alpha||^2 + lambda alpha* K alpha.
Vector representer_solve(const GramSystem& gs, const Vector& y);

/// c0 + sum_j coeffs_j kernel(z, z_j). For the Hardy kernel the finite
/// expansion is rational in z and stays defined on and beyond the unit
/// circle; only poles at z = 1/conj(z_j) are rejected.
Complex expansion_eval(const KernelSpec& spec, std::span<const Complex> nodes,
                       const Vector& coeffs, Complex c0, Complex z);

} // namespace csgd::rkhs
