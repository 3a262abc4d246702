#pragma once

#include <complex>
#include <cstddef>

namespace csgd::detail {

// One row-normalized complex SGD update:
//   z <- z - eta * (row . z - rhs) / ||row||^2 * conj(row)
// Shared by the double-precision engine and the extended-precision
// experiment pipeline so both run the identical arithmetic.
template <class Real>
inline void row_normalized_step(const std::complex<Real>* row, std::size_t n,
                                std::complex<Real> rhs, Real row_norm_sq,
                                Real eta, std::complex<Real>* z) {
    std::complex<Real> r = -rhs;
    for (std::size_t i = 0; i < n; ++i) r += row[i] * z[i];
    const std::complex<Real> step = (eta / row_norm_sq) * r;
    for (std::size_t i = 0; i < n; ++i) z[i] -= step * std::conj(row[i]);
}

// Plain complex SGD update on a least-squares component:
//   z <- z - eta * s * (row . z - rhs) * conj(row)
template <class Real>
inline void plain_ls_step(const std::complex<Real>* row, std::size_t n,
                          std::complex<Real> rhs, Real component_scale,
                          Real eta, std::complex<Real>* z) {
    std::complex<Real> r = -rhs;
    for (std::size_t i = 0; i < n; ++i) r += row[i] * z[i];
    const std::complex<Real> step = (eta * component_scale) * r;
    for (std::size_t i = 0; i < n; ++i) z[i] -= step * std::conj(row[i]);
}

} // namespace csgd::detail
