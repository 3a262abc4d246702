#pragma once

#include <vector>

#include "csgd/types.hpp"

namespace csgd {

/// Standard complex inner product: sum_i z_i * conj(w_i).
Complex inner(const Vector& z, const Vector& w);

/// Real part of inner(z, w); makes C^n a real inner-product space.
double inner_real(const Vector& z, const Vector& w);

Vector matvec(const Matrix& A, const Vector& x);

/// A* x (conjugate transpose applied to x).
Vector adjoint_matvec(const Matrix& A, const Vector& x);

Matrix adjoint(const Matrix& A);
Matrix matmul(const Matrix& A, const Matrix& B);

/// A* A, assembled directly (Hermitian by construction).
Matrix gram_of(const Matrix& A);

Vector add(const Vector& a, const Vector& b);
Vector sub(const Vector& a, const Vector& b);
Vector scale(Complex s, const Vector& a);

struct EigResult {
    std::vector<double> eigenvalues; // ascending
    Matrix eigenvectors;             // columns; unitary
};

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
/// Converges when the off-diagonal Frobenius mass drops below 1e-14 * ||H||_F;
/// at most 100 sweeps. Input must be Hermitian to 1e-12 relative.
EigResult hermitian_eig(const Matrix& H);

struct SVDResult {
    std::vector<double> singular_values; // descending, >= 0
    Matrix left_vectors;                 // m x r
    Matrix right_vectors;                // n x r, r = min(m, n)
};

/// SVD via the eigendecomposition of A*A. Singular values below
/// 1e-12 * sigma_max are treated as rank-deficient and the corresponding left
/// vectors are completed by orthogonalization.
SVDResult svd(const Matrix& A);

/// Solves H x = y for Hermitian positive definite H (Cholesky, one step of
/// iterative refinement). Throws SolverError carrying the minimum eigenvalue
/// if a pivot is not positive.
Vector solve_hpd(const Matrix& H, const Vector& y);

} // namespace csgd
