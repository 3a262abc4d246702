#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "csgd/errors.hpp"

// Formula layer shared by the public (double) scenario API and the
// extended-precision experiment pipeline. Everything here is pure.
namespace csgd::detail {

template <class Real>
using Cplx = std::complex<Real>;

template <class Real>
Real ipow(Real base, std::size_t e) {
    Real r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

template <class Real>
Cplx<Real> ipow(Cplx<Real> base, std::size_t e) {
    Cplx<Real> r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

// --- kernels -----------------------------------------------------------

template <class Real>
Cplx<Real> fock_kernel(Cplx<Real> z, Cplx<Real> w) {
    return std::exp(z * std::conj(w));
}

template <class Real>
Cplx<Real> rbf_kernel(Cplx<Real> z, Cplx<Real> w, Real gamma) {
    const Cplx<Real> d = z - std::conj(w);
    return std::exp(-d * d / (gamma * gamma));
}

template <class Real>
Cplx<Real> hardy_kernel_unguarded(Cplx<Real> z, Cplx<Real> w) {
    return Real(1) / (Real(1) - z * std::conj(w));
}

// --- superoscillation sequence ------------------------------------------

inline constexpr std::size_t kMaxSuperoscN = 400;
inline constexpr double kCoeffOverflowGuard = 1e300;

// C_j(n,a) = binom(n,j) ((1+a)/2)^(n-j) ((1-a)/2)^j by multiplicative
// recurrence; signs alternate since a > 1.
template <class Real>
std::vector<Real> superosc_coeffs(std::size_t n, Real a) {
    if (n < 1) throw ContractViolation("superosc: n must be >= 1");
    if (n > kMaxSuperoscN) throw ContractViolation("superosc: n capped at 400");
    if (!(a > Real(1))) throw ContractViolation("superosc: a must be > 1");
    std::vector<Real> C(n + 1);
    C[0] = ipow((Real(1) + a) / Real(2), n);
    const Real rho = (Real(1) - a) / (Real(1) + a);
    for (std::size_t j = 0; j < n; ++j) {
        C[j + 1] = C[j] * Real(n - j) / Real(j + 1) * rho;
        if (!(std::abs(C[j + 1]) < Real(kCoeffOverflowGuard)))
            throw NumericalError("superosc: coefficient overflow");
    }
    if (!(std::abs(C[0]) < Real(kCoeffOverflowGuard)))
        throw NumericalError("superosc: coefficient overflow");
    return C;
}

// z_j = -i (1 - 2j/n)
template <class Real>
std::vector<Cplx<Real>> superosc_nodes(std::size_t n) {
    std::vector<Cplx<Real>> z(n + 1);
    for (std::size_t j = 0; j <= n; ++j)
        z[j] = Cplx<Real>(0, -(Real(1) - Real(2) * Real(j) / Real(n)));
    return z;
}

template <class Real>
Cplx<Real> superosc_closed_form(std::size_t n, Real a, Cplx<Real> z) {
    const Cplx<Real> base =
        std::cos(z / Real(n)) + Cplx<Real>(0, 1) * a * std::sin(z / Real(n));
    return ipow(base, n);
}

template <class Real>
Cplx<Real> superosc_limit(Real a, Cplx<Real> z) {
    return std::exp(Cplx<Real>(0, 1) * a * z);
}

// Targets making the superoscillation sequence the regularized minimizer:
// w_k = ((1+a)/2)^n [ e^{u_k} (1 + rho e^{-2 u_k / n})^n ] + lambda C_k,
// u_k = 1 - 2k/n. The bracket is the closed form of sum_j C_j e^{u_k u_j}.
template <class Real>
std::vector<Real> fock_targets(std::size_t n, Real a, Real lambda,
                               const std::vector<Real>& C) {
    const Real P = ipow((Real(1) + a) / Real(2), n);
    const Real rho = (Real(1) - a) / (Real(1) + a);
    std::vector<Real> w(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        const Real u = Real(1) - Real(2) * Real(k) / Real(n);
        const Real interp =
            P * std::exp(u) * ipow(Real(1) + rho * std::exp(Real(-2) * u / Real(n)), n);
        w[k] = interp + lambda * C[k];
    }
    return w;
}

// beta_j = C_j e^{conj(z_j)^2 / 2} = C_j e^{-u_j^2/2}
template <class Real>
std::vector<Real> rbf_exact_coeffs(std::size_t n, const std::vector<Real>& C) {
    std::vector<Real> beta(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        const Real u = Real(1) - Real(2) * Real(j) / Real(n);
        beta[j] = C[j] * std::exp(-u * u / Real(2));
    }
    return beta;
}

// w_k = e^{u_k^2/2} sum_j C_j e^{u_k u_j} + lambda C_k e^{-u_k^2/2}.
// The cross term carries a plus sign: that is what (K + lambda I) beta
// evaluates to for the gamma = sqrt(2) kernel on these nodes.
template <class Real>
std::vector<Real> rbf_targets(std::size_t n, Real lambda,
                              const std::vector<Real>& C) {
    std::vector<Real> u(n + 1);
    for (std::size_t j = 0; j <= n; ++j)
        u[j] = Real(1) - Real(2) * Real(j) / Real(n);
    std::vector<Real> w(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        Real s = 0;
        for (std::size_t j = 0; j <= n; ++j) s += C[j] * std::exp(u[k] * u[j]);
        w[k] = std::exp(u[k] * u[k] / Real(2)) * s +
               lambda * C[k] * std::exp(-u[k] * u[k] / Real(2));
    }
    return w;
}

// --- Blaschke products ---------------------------------------------------

template <class Real>
Cplx<Real> blaschke_eval(const std::vector<Cplx<Real>>& roots, Cplx<Real> z) {
    Cplx<Real> b = 1;
    for (const Cplx<Real>& a : roots) {
        const Cplx<Real> den = Real(1) - std::conj(a) * z;
        if (std::abs(den) < Real(1e-14))
            throw DomainError("blaschke_eval: evaluation at a pole");
        b *= (z - a) / den;
    }
    return b;
}

// B'(a_j) = 1/(1-|a_j|^2) prod_{k != j} (a_j - a_k)/(1 - conj(a_k) a_j)
template <class Real>
Cplx<Real> blaschke_derivative_at_root(const std::vector<Cplx<Real>>& roots,
                                       std::size_t j) {
    const Cplx<Real>& aj = roots[j];
    Cplx<Real> p = Real(1) / (Real(1) - std::norm(aj));
    for (std::size_t k = 0; k < roots.size(); ++k) {
        if (k == j) continue;
        p *= (aj - roots[k]) / (Real(1) - std::conj(roots[k]) * aj);
    }
    return p;
}

struct HardyConventionTag {
    bool conjugated;
};

// c_0 = 1/conj(B(0)), c_j = 1/conj(a_j B'(a_j)) (conjugated convention);
// the plain convention drops the conjugations.
template <class Real>
void blaschke_expansion_coeffs(const std::vector<Cplx<Real>>& roots,
                               bool conjugated, Cplx<Real>& c0,
                               std::vector<Cplx<Real>>& c) {
    const Cplx<Real> b0 = blaschke_eval(roots, Cplx<Real>(0));
    c0 = Real(1) / (conjugated ? std::conj(b0) : b0);
    c.resize(roots.size());
    for (std::size_t j = 0; j < roots.size(); ++j) {
        const Cplx<Real> d = roots[j] * blaschke_derivative_at_root(roots, j);
        c[j] = Real(1) / (conjugated ? std::conj(d) : d);
    }
}

} // namespace csgd::detail
