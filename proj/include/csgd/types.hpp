#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "csgd/errors.hpp"

namespace csgd {

using Complex = std::complex<double>;

inline bool is_finite(double x) { return std::isfinite(x); }
inline bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Dense complex vector. Length is at least 1 and entries are finite on
/// construction; treat instances as immutable when shared across threads.
/// Default construction yields an empty placeholder (for result structs);
/// every operation rejects it through its dimension checks.
class Vector {
public:
    Vector() = default;

    explicit Vector(std::size_t n) : e_(check_size(n)) {}

    explicit Vector(std::vector<Complex> entries) : e_(std::move(entries)) {
        check_size(e_.size());
        validate();
    }

    Vector(std::initializer_list<Complex> entries)
        : Vector(std::vector<Complex>(entries)) {}

    static Vector zeros(std::size_t n) { return Vector(n); }

    std::size_t size() const { return e_.size(); }
    Complex& operator[](std::size_t i) { return e_[i]; }
    const Complex& operator[](std::size_t i) const { return e_[i]; }

    std::span<const Complex> span() const { return {e_.data(), e_.size()}; }
    const std::vector<Complex>& entries() const { return e_; }

    double norm() const {
        double s = 0.0;
        for (const Complex& z : e_) s += std::norm(z);
        return std::sqrt(s);
    }

    void validate() const {
        for (const Complex& z : e_)
            if (!is_finite(z)) throw ContractViolation("Vector: non-finite entry");
    }

private:
    static std::size_t check_size(std::size_t n) {
        if (n == 0) throw DimensionError("Vector: length must be >= 1");
        return n;
    }

    std::vector<Complex> e_;
};

/// Dense complex matrix, row-major. Default construction yields an empty
/// placeholder, as with Vector.
class Matrix {
public:
    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(check_dims(rows, cols)) {}

    Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
        : rows_(rows), cols_(cols), e_(std::move(entries)) {
        check_dims(rows, cols);
        if (e_.size() != rows * cols)
            throw DimensionError("Matrix: entry count does not match shape");
        validate();
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const {
        return e_[i * cols_ + j];
    }

    std::span<const Complex> row(std::size_t i) const {
        return {e_.data() + i * cols_, cols_};
    }

    const std::vector<Complex>& entries() const { return e_; }

    double frobenius_norm() const {
        double s = 0.0;
        for (const Complex& z : e_) s += std::norm(z);
        return std::sqrt(s);
    }

    void validate() const {
        for (const Complex& z : e_)
            if (!is_finite(z)) throw ContractViolation("Matrix: non-finite entry");
    }

private:
    static std::size_t check_dims(std::size_t m, std::size_t n) {
        if (m == 0 || n == 0) throw DimensionError("Matrix: dimensions must be >= 1");
        return m * n;
    }

    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Complex> e_;
};

} // namespace csgd
