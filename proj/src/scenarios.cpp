#include "csgd/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "csgd/detail/scenario_math.hpp"
#include "csgd/rng.hpp"

namespace csgd::scenario {

SuperoscCoefficients superosc_coefficients(std::size_t n, double a) {
    const std::vector<double> C = detail::superosc_coeffs<double>(n, a);
    SuperoscCoefficients out{Vector(n + 1), detail::superosc_nodes<double>(n)};
    for (std::size_t j = 0; j <= n; ++j) out.coefficients[j] = C[j];
    return out;
}

Complex eval_superosc_closed_form(std::size_t n, double a, Complex z) {
    if (n < 1) throw ContractViolation("superosc: n must be >= 1");
    return detail::superosc_closed_form<double>(n, a, z);
}

Complex eval_superosc_limit(double a, Complex z) {
    return detail::superosc_limit<double>(a, z);
}

ScenarioDataset build_superosc(const SuperoscParams& params) {
    if (!(params.lambda > 0.0)) throw ContractViolation("build_superosc: lambda > 0");
    const std::size_t n = params.n;
    const double a = params.a;
    const std::vector<double> C = detail::superosc_coeffs<double>(n, a);
    const std::vector<double> w = detail::fock_targets<double>(n, a, params.lambda, C);

    ScenarioDataset ds;
    ds.kernel = rkhs::KernelSpec::fock();
    ds.nodes = detail::superosc_nodes<double>(n);
    ds.lambda = params.lambda;
    ds.targets = Vector(n + 1);
    ds.exact_coeffs = Vector(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        ds.targets[k] = w[k];
        ds.exact_coeffs[k] = C[k];
    }
    ds.reference_eval = [n, a](Complex z) {
        return detail::superosc_closed_form<double>(n, a, z);
    };
    ds.limit_eval = [a](Complex z) { return detail::superosc_limit<double>(a, z); };
    return ds;
}

ScenarioDataset build_rbf_supershift(const SuperoscParams& params) {
    if (!(params.lambda > 0.0))
        throw ContractViolation("build_rbf_supershift: lambda > 0");
    const std::size_t n = params.n;
    const double a = params.a;
    const std::vector<double> C = detail::superosc_coeffs<double>(n, a);
    const std::vector<double> beta = detail::rbf_exact_coeffs<double>(n, C);
    const std::vector<double> w = detail::rbf_targets<double>(n, params.lambda, C);

    ScenarioDataset ds;
    ds.kernel = rkhs::KernelSpec::gaussian_rbf(std::sqrt(2.0));
    ds.nodes = detail::superosc_nodes<double>(n);
    ds.lambda = params.lambda;
    ds.targets = Vector(n + 1);
    ds.exact_coeffs = Vector(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        ds.targets[k] = w[k];
        ds.exact_coeffs[k] = beta[k];
    }
    // R_n(z) = e^{-z^2/2} F_n(a, z)
    ds.reference_eval = [n, a](Complex z) {
        return std::exp(-z * z / 2.0) * detail::superosc_closed_form<double>(n, a, z);
    };
    ds.limit_eval = [a](Complex z) { return detail::superosc_limit<double>(a, z); };
    return ds;
}

std::vector<Complex> sample_disk_roots(const DiskRootParams& p) {
    if (p.count < 1) throw ContractViolation("sample_disk_roots: count >= 1");
    if (!(0.0 < p.r_min && p.r_min < p.r_max && p.r_max < 1.0))
        throw ContractViolation("sample_disk_roots: need 0 < r_min < r_max < 1");
    if (!(p.min_sep >= 0.0))
        throw ContractViolation("sample_disk_roots: min_sep must be >= 0");

    SplitMix64 g(p.seed);
    std::vector<Complex> roots;
    roots.reserve(p.count);
    const std::size_t budget = 20000 * p.count;
    for (std::size_t attempt = 0; attempt < budget && roots.size() < p.count;
         ++attempt) {
        const double x = (2.0 * g.uniform01() - 1.0) * p.r_max;
        const double y = (2.0 * g.uniform01() - 1.0) * p.r_max;
        const Complex z(x, y);
        const double r = std::abs(z);
        if (r < p.r_min || r > p.r_max) continue;
        bool ok = true;
        for (const Complex& other : roots)
            if (std::abs(z - other) < p.min_sep) {
                ok = false;
                break;
            }
        if (ok) roots.push_back(z);
    }
    if (roots.size() < p.count)
        throw SamplingError("sample_disk_roots: rejection budget exhausted (" +
                            std::to_string(roots.size()) + "/" +
                            std::to_string(p.count) + " placed)");
    return roots;
}

Complex blaschke_eval(std::span<const Complex> roots, Complex z) {
    return detail::blaschke_eval<double>({roots.begin(), roots.end()}, z);
}

Complex blaschke_derivative_at_root(std::span<const Complex> roots, std::size_t j) {
    if (j >= roots.size())
        throw ContractViolation("blaschke_derivative_at_root: index out of range");
    return detail::blaschke_derivative_at_root<double>({roots.begin(), roots.end()},
                                                       j);
}

ScenarioDataset build_blaschke(std::vector<Complex> roots, double lambda,
                               HardyConvention convention) {
    if (roots.empty()) throw ContractViolation("build_blaschke: need roots");
    if (!(lambda > 0.0)) throw ContractViolation("build_blaschke: lambda > 0");
    for (const Complex& a : roots) {
        if (std::abs(a) < 1e-10)
            throw ContractViolation("build_blaschke: root at the origin");
        if (std::abs(a) >= 1.0 - 1e-12)
            throw DomainError("build_blaschke: root outside the open unit disk");
    }
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j)
            if (std::abs(roots[i] - roots[j]) <= 1e-10)
                throw IllPosedError("build_blaschke: near-duplicate roots");

    Complex c0;
    std::vector<Complex> c;
    detail::blaschke_expansion_coeffs<double>(
        roots, convention == HardyConvention::Conjugated, c0, c);

    // The two sections of the source disagree on the conjugation; accept the
    // requested convention only if the expansion reproduces the product.
    const std::vector<Complex> probes = {Complex(0.0), Complex(0.31, 0.17),
                                         Complex(-0.42, -0.23), Complex(0.0, 0.55),
                                         Complex(0.61, -0.08)};
    for (const Complex& z : probes) {
        const Complex product = detail::blaschke_eval<double>(roots, z);
        Complex expansion = c0;
        for (std::size_t j = 0; j < roots.size(); ++j)
            expansion += c[j] / (1.0 - z * std::conj(roots[j]));
        const double scale = std::max({std::abs(product), std::abs(c0), 1.0});
        if (std::abs(expansion - product) > 1e-6 * scale)
            throw NumericalError(
                "build_blaschke: expansion identity fails for the requested "
                "conjugation convention");
    }

    ScenarioDataset ds;
    ds.kernel = rkhs::KernelSpec::hardy();
    ds.nodes = roots;
    ds.lambda = lambda;
    ds.offset_c0 = c0;
    ds.exact_coeffs = Vector(roots.size());
    ds.targets = Vector(roots.size());
    for (std::size_t j = 0; j < roots.size(); ++j) {
        ds.exact_coeffs[j] = c[j];
        ds.targets[j] = lambda * c[j] - c0;
    }
    ds.reference_eval = [roots = std::move(roots)](Complex z) {
        return detail::blaschke_eval<double>(roots, z);
    };
    return ds;
}

} // namespace csgd::scenario
