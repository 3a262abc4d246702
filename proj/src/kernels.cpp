#include "csgd/kernels.hpp"

#include <cmath>
#include <string>

#include "csgd/detail/scenario_math.hpp"

namespace csgd::rkhs {

namespace {

constexpr double kHardyEdge = 1.0 - 1e-12;
constexpr double kNodeSeparation = 1e-10;

void require_in_disk(Complex z, const char* what) {
    if (std::abs(z) >= kHardyEdge)
        throw DomainError(std::string(what) + ": Hardy kernel needs |z| < 1");
}

} // namespace

KernelSpec KernelSpec::gaussian_rbf(double gamma) {
    if (!(gamma > 0.0)) throw ContractViolation("KernelSpec: gamma must be > 0");
    return {Kind::GaussianRBF, gamma};
}

Complex kernel_eval(const KernelSpec& spec, Complex z, Complex w) {
    switch (spec.kind) {
    case KernelSpec::Kind::Fock:
        return detail::fock_kernel<double>(z, w);
    case KernelSpec::Kind::GaussianRBF:
        return detail::rbf_kernel<double>(z, w, spec.gamma);
    case KernelSpec::Kind::Hardy:
        require_in_disk(z, "kernel_eval");
        require_in_disk(w, "kernel_eval");
        return detail::hardy_kernel_unguarded<double>(z, w);
    }
    throw ContractViolation("kernel_eval: unknown kernel kind");
}

Matrix assemble_gram(const KernelSpec& spec, std::span<const Complex> nodes,
                     ExecMode mode) {
    const std::size_t n = nodes.size();
    if (n == 0) throw DimensionError("assemble_gram: need at least one node");
    Matrix K(n, n);
    auto fill_row = [&](std::size_t i) {
        for (std::size_t j = 0; j < n; ++j)
            K(i, j) = kernel_eval(spec, nodes[i], nodes[j]);
    };
    if (mode == ExecMode::OpenMP) {
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < static_cast<long long>(n); ++i)
            fill_row(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < n; ++i) fill_row(i);
    }
    return K;
}

GramSystem gram(const KernelSpec& spec, std::span<const Complex> nodes,
                double lambda, ExecMode mode) {
    const std::size_t n = nodes.size();
    if (n == 0) throw DimensionError("gram: need at least one node");
    if (!(lambda >= 0.0)) throw ContractViolation("gram: lambda must be >= 0");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(nodes[i] - nodes[j]) <= kNodeSeparation)
                throw IllPosedError("gram: duplicate nodes " + std::to_string(i) +
                                    " and " + std::to_string(j));

    Matrix K = assemble_gram(spec, nodes, mode);

    double dev = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            dev += std::norm(K(i, j) - std::conj(K(j, i)));
    if (std::sqrt(dev) > 1e-12 * std::max(K.frobenius_norm(), 1e-300))
        throw NumericalError("gram: kernel matrix not Hermitian");

    double trace = 0.0;
    for (std::size_t i = 0; i < n; ++i) trace += K(i, i).real();
    const EigResult eig = hermitian_eig(K);
    if (eig.eigenvalues.front() < -1e-8 * trace / static_cast<double>(n))
        throw NumericalError("gram: kernel matrix not PSD (min eigenvalue " +
                             std::to_string(eig.eigenvalues.front()) + ")");

    Matrix H = K;
    for (std::size_t i = 0; i < n; ++i) H(i, i) += lambda;
    return GramSystem{spec, {nodes.begin(), nodes.end()}, std::move(K), lambda,
                      std::move(H)};
}

Vector representer_solve(const GramSystem& gs, const Vector& y) {
    if (!(gs.lambda > 0.0))
        throw ContractViolation("representer_solve: lambda must be > 0");
    if (y.size() != gs.H.rows())
        throw DimensionError("representer_solve: target length mismatch");
    return solve_hpd(gs.H, y);
}

Complex expansion_eval(const KernelSpec& spec, std::span<const Complex> nodes,
                       const Vector& coeffs, Complex c0, Complex z) {
    if (coeffs.size() != nodes.size())
        throw DimensionError("expansion_eval: coefficient/node count mismatch");
    Complex s = c0;
    if (spec.kind == KernelSpec::Kind::Hardy) {
        // Analytic continuation of the finite expansion: rational in z.
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            const Complex den = 1.0 - z * std::conj(nodes[j]);
            if (std::abs(den) < 1e-12)
                throw DomainError("expansion_eval: z at a pole of the expansion");
            s += coeffs[j] / den;
        }
        return s;
    }
    for (std::size_t j = 0; j < nodes.size(); ++j)
        s += coeffs[j] * kernel_eval(spec, z, nodes[j]);
    return s;
}

} // namespace csgd::rkhs
