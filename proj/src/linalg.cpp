#include "csgd/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace csgd {

namespace {

void require_same_length(const Vector& a, const Vector& b, const char* op) {
    if (a.size() != b.size())
        throw DimensionError(std::string(op) + ": length mismatch (" +
                             std::to_string(a.size()) + " vs " +
                             std::to_string(b.size()) + ")");
}

void require_hermitian(const Matrix& H, const char* op) {
    if (H.rows() != H.cols())
        throw ContractViolation(std::string(op) + ": matrix not square");
    const std::size_t n = H.rows();
    double dev = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            dev += std::norm(H(i, j) - std::conj(H(j, i)));
    const double scale = H.frobenius_norm();
    if (std::sqrt(dev) > 1e-12 * std::max(scale, 1e-300))
        throw ContractViolation(std::string(op) + ": matrix not Hermitian");
}

double offdiag_mass(const Matrix& H) {
    const std::size_t n = H.rows();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * std::norm(H(i, j));
    return std::sqrt(s);
}

} // namespace

Complex inner(const Vector& z, const Vector& w) {
    require_same_length(z, w, "inner");
    Complex s = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) s += z[i] * std::conj(w[i]);
    return s;
}

double inner_real(const Vector& z, const Vector& w) { return inner(z, w).real(); }

Vector matvec(const Matrix& A, const Vector& x) {
    if (A.cols() != x.size()) throw DimensionError("matvec: shape mismatch");
    Vector y(A.rows());
    for (std::size_t i = 0; i < A.rows(); ++i) {
        Complex s = 0.0;
        for (std::size_t j = 0; j < A.cols(); ++j) s += A(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

Vector adjoint_matvec(const Matrix& A, const Vector& x) {
    if (A.rows() != x.size()) throw DimensionError("adjoint_matvec: shape mismatch");
    Vector y(A.cols());
    for (std::size_t j = 0; j < A.cols(); ++j) {
        Complex s = 0.0;
        for (std::size_t i = 0; i < A.rows(); ++i) s += std::conj(A(i, j)) * x[i];
        y[j] = s;
    }
    return y;
}

Matrix adjoint(const Matrix& A) {
    Matrix B(A.cols(), A.rows());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) B(j, i) = std::conj(A(i, j));
    return B;
}

Matrix matmul(const Matrix& A, const Matrix& B) {
    if (A.cols() != B.rows()) throw DimensionError("matmul: shape mismatch");
    Matrix C(A.rows(), B.cols());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t k = 0; k < A.cols(); ++k) {
            const Complex aik = A(i, k);
            for (std::size_t j = 0; j < B.cols(); ++j) C(i, j) += aik * B(k, j);
        }
    return C;
}

Matrix gram_of(const Matrix& A) {
    const std::size_t n = A.cols();
    Matrix G(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Complex s = 0.0;
            for (std::size_t k = 0; k < A.rows(); ++k)
                s += std::conj(A(k, i)) * A(k, j);
            G(i, j) = s;
            G(j, i) = std::conj(s);
        }
    for (std::size_t i = 0; i < n; ++i) G(i, i) = G(i, i).real();
    return G;
}

Vector add(const Vector& a, const Vector& b) {
    require_same_length(a, b, "add");
    Vector c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return c;
}

Vector sub(const Vector& a, const Vector& b) {
    require_same_length(a, b, "sub");
    Vector c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
    return c;
}

Vector scale(Complex s, const Vector& a) {
    Vector c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = s * a[i];
    return c;
}

EigResult hermitian_eig(const Matrix& H_in) {
    require_hermitian(H_in, "hermitian_eig");
    const std::size_t n = H_in.rows();
    Matrix H = H_in;
    Matrix V = Matrix::identity(n);

    const double norm0 = H.frobenius_norm();
    if (norm0 == 0.0) {
        EigResult r{std::vector<double>(n, 0.0), std::move(V)};
        return r;
    }
    const double tol = 1e-14 * norm0;
    constexpr int kMaxSweeps = 100;

    bool converged = offdiag_mass(H) <= tol;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex h = H(p, q);
                const double g = std::abs(h);
                if (g == 0.0) continue;

                // Reduce the (p,q) block to real symmetric with the phase of
                // h, then pick the small-angle real rotation zeroing it.
                const Complex u = h / g;
                const double a = H(p, p).real();
                const double b = H(q, q).real();
                const double tau = (b - a) / (2.0 * g);
                const double t =
                    (tau >= 0.0 ? -1.0 : 1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // J: identity except J(p,p)=c, J(p,q)=-s, J(q,p)=conj(u)s, J(q,q)=conj(u)c
                const Complex jpp = c, jpq = -s;
                const Complex jqp = std::conj(u) * s, jqq = std::conj(u) * c;

                for (std::size_t k = 0; k < n; ++k) { // H <- H J
                    const Complex hp = H(k, p), hq = H(k, q);
                    H(k, p) = hp * jpp + hq * jqp;
                    H(k, q) = hp * jpq + hq * jqq;
                }
                for (std::size_t k = 0; k < n; ++k) { // H <- J* H
                    const Complex hp = H(p, k), hq = H(q, k);
                    H(p, k) = std::conj(jpp) * hp + std::conj(jqp) * hq;
                    H(q, k) = std::conj(jpq) * hp + std::conj(jqq) * hq;
                }
                H(p, q) = 0.0;
                H(q, p) = 0.0;
                H(p, p) = H(p, p).real();
                H(q, q) = H(q, q).real();

                for (std::size_t k = 0; k < n; ++k) { // V <- V J
                    const Complex vp = V(k, p), vq = V(k, q);
                    V(k, p) = vp * jpp + vq * jqp;
                    V(k, q) = vp * jpq + vq * jqq;
                }
            }
        }
        converged = offdiag_mass(H) <= tol;
    }
    if (!converged)
        throw NumericalError("hermitian_eig: no convergence after 100 sweeps");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return H(i, i).real() < H(j, j).real();
    });

    EigResult r{std::vector<double>(n), Matrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        r.eigenvalues[k] = H(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) r.eigenvectors(i, k) = V(i, order[k]);
    }
    return r;
}

SVDResult svd(const Matrix& A) {
    A.validate();
    if (A.rows() < A.cols()) {
        // Work on A* and swap the factors back.
        SVDResult t = svd(adjoint(A));
        return SVDResult{std::move(t.singular_values), std::move(t.right_vectors),
                         std::move(t.left_vectors)};
    }

    const std::size_t m = A.rows(), n = A.cols();
    EigResult eig = hermitian_eig(gram_of(A));

    // Eigenvalues ascend; singular values descend.
    SVDResult r{std::vector<double>(n), Matrix(m, n), Matrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t src = n - 1 - k;
        r.singular_values[k] = std::sqrt(std::max(eig.eigenvalues[src], 0.0));
        for (std::size_t i = 0; i < n; ++i)
            r.right_vectors(i, k) = eig.eigenvectors(i, src);
    }

    const double sigma_max = r.singular_values.empty() ? 0.0 : r.singular_values[0];
    const double rank_tol = 1e-12 * sigma_max;
    for (std::size_t k = 0; k < n; ++k) {
        if (r.singular_values[k] > rank_tol && r.singular_values[k] > 0.0) {
            for (std::size_t i = 0; i < m; ++i) {
                Complex s = 0.0;
                for (std::size_t j = 0; j < n; ++j)
                    s += A(i, j) * r.right_vectors(j, k);
                r.left_vectors(i, k) = s / r.singular_values[k];
            }
        } else {
            // Rank-deficient direction: complete U with any unit vector
            // orthogonal to the columns already in place.
            for (std::size_t cand = 0; cand < m; ++cand) {
                std::vector<Complex> v(m, Complex(0.0));
                v[cand] = 1.0;
                for (std::size_t prev = 0; prev < k; ++prev) {
                    Complex proj = 0.0;
                    for (std::size_t i = 0; i < m; ++i)
                        proj += v[i] * std::conj(r.left_vectors(i, prev));
                    for (std::size_t i = 0; i < m; ++i)
                        v[i] -= proj * r.left_vectors(i, prev);
                }
                double nrm = 0.0;
                for (const Complex& z : v) nrm += std::norm(z);
                nrm = std::sqrt(nrm);
                if (nrm > 0.5) {
                    for (std::size_t i = 0; i < m; ++i)
                        r.left_vectors(i, k) = v[i] / nrm;
                    break;
                }
            }
        }
    }
    return r;
}

namespace {

// Cholesky factor (lower) of H, or the failing pivot via the thrown error.
Matrix cholesky(const Matrix& H) {
    const std::size_t n = H.rows();
    Matrix L(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            Complex s = H(i, j);
            for (std::size_t k = 0; k < j; ++k)
                s -= L(i, k) * std::conj(L(j, k));
            if (i == j) {
                const double d = s.real();
                if (!(d > 0.0) || !std::isfinite(d)) {
                    double min_eig = d;
                    try {
                        min_eig = hermitian_eig(H).eigenvalues.front();
                    } catch (const Error&) {
                        // keep the pivot as the reported value
                    }
                    throw SolverError(
                        "solve_hpd: matrix not positive definite (min eigenvalue " +
                            std::to_string(min_eig) + ")",
                        min_eig);
                }
                L(i, i) = std::sqrt(d);
            } else {
                L(i, j) = s / L(j, j);
            }
        }
    }
    return L;
}

Vector chol_solve(const Matrix& L, const Vector& y) {
    const std::size_t n = L.rows();
    Vector x(n);
    for (std::size_t i = 0; i < n; ++i) { // L z = y
        Complex s = y[i];
        for (std::size_t k = 0; k < i; ++k) s -= L(i, k) * x[k];
        x[i] = s / L(i, i);
    }
    for (std::size_t ii = n; ii-- > 0;) { // L* x = z
        Complex s = x[ii];
        for (std::size_t k = ii + 1; k < n; ++k) s -= std::conj(L(k, ii)) * x[k];
        x[ii] = s / L(ii, ii);
    }
    return x;
}

} // namespace

Vector solve_hpd(const Matrix& H, const Vector& y) {
    require_hermitian(H, "solve_hpd");
    if (H.rows() != y.size()) throw DimensionError("solve_hpd: shape mismatch");

    const Matrix L = cholesky(H);
    Vector x = chol_solve(L, y);
    // One refinement step keeps the residual near eps even at condition 1e6.
    Vector r = sub(y, matvec(H, x));
    Vector dx = chol_solve(L, r);
    x = add(x, dx);
    return x;
}

} // namespace csgd
