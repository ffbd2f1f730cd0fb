#include "fraclab/riesz.hpp"

#include "fraclab/error.hpp"
#include "fraclab/seminorms.hpp"

#include <algorithm>
#include <cmath>

namespace fraclab {

namespace {

constexpr double kFixedPointTolerance = 1e-6;
constexpr double kBoundSlack = 1e-6;

const Grid& check_dimension(const RieszParams& params, const Grid& grid) {
    if (params.homogeneous_dimension() != grid.geometry().homogeneous_dimension()) {
        throw Error(ErrorCode::dimension_mismatch, "Riesz parameters were built for a different homogeneous dimension");
    }
    return grid;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += a[i] * b[i];
    }
    return acc;
}

}  // namespace

RieszParams::RieszParams(double s, double p, double homogeneous_dimension) : s_(s), p_(p), q_(homogeneous_dimension) {
    if (!(s > 0.0 && 2.0 * s < homogeneous_dimension)) {
        throw Error(ErrorCode::inadmissible_params, "Riesz order needs 0 < 2s < Q");
    }
    if (!(p > 1.0 && p < 2.0)) {
        throw Error(ErrorCode::inadmissible_params, "Riesz integrability needs 1 < p < 2");
    }
}

RieszOperator::RieszOperator(GridPtr grid, const RieszParams& params, kernels::Backend backend)
    : grid_(std::move(grid)), params_(params), weight_(check_dimension(params, *grid_), params.kernel_exponent(), backend) {}

void RieszOperator::apply(std::span<const double> u, std::span<double> out) const {
    kernels::row_sums(weight_, [&](std::size_t, std::size_t j) { return u[j]; }, out);
}

GridFunction RieszOperator::apply(const GridFunction& u) const {
    if (u.grid_ptr() != grid_ && u.size() != grid_->size()) {
        throw Error(ErrorCode::dimension_mismatch, "function lives on a different grid");
    }
    std::vector<double> out(grid_->size());
    apply(u.values(), out);
    return {grid_, std::move(out)};
}

GridFunction riesz_apply(const GridFunction& u, const RieszParams& params, kernels::Backend backend) {
    return RieszOperator(u.grid_ptr(), params, backend).apply(u);
}

GridFunction riesz_apply_weighted(const GridFunction& u, const GridFunction& omega, const RieszParams& params,
                                  kernels::Backend backend) {
    if (omega.size() != u.size()) {
        throw Error(ErrorCode::dimension_mismatch, "weight and function live on different grids");
    }
    std::vector<double> product(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (omega[i] < 0.0) {
            throw Error(ErrorCode::negative_weight, "Riesz weight must be nonnegative");
        }
        product[i] = omega[i] * u[i];
    }
    return riesz_apply(GridFunction(u.grid_ptr(), std::move(product)), params, backend);
}

double c0_constant(const RieszParams& params, const Grid& grid, kernels::Backend backend) {
    check_dimension(params, grid);
    if (!params.kernel_integrable()) {
        throw Error(ErrorCode::non_integrable_kernel, "kernel is not in L^{p'}(Omega x Omega): need 2sp > Q");
    }
    const double pc = params.conjugate();
    const kernels::PairWeight weight(grid, params.kernel_exponent() * pc, backend);
    const double sum = kernels::pair_sum(weight, [](std::size_t, std::size_t) { return 1.0; });
    return std::pow(sum, 1.0 / pc);
}

double rayleigh_quotient(const GridFunction& u, const RieszParams& params, kernels::Backend backend) {
    const double uu = dot(u.values(), u.values());
    if (uu == 0.0) {
        throw Error(ErrorCode::zero_function, "Rayleigh quotient of the zero function");
    }
    const GridFunction ru = riesz_apply(u, params, backend);
    // Both numerator and denominator carry one factor vol, which cancels.
    return dot(u.values(), ru.values()) / uu;
}

SpectralResult first_eigenvalue(const RieszOperator& op, const PowerIterationOptions& options) {
    const std::size_t n = op.grid()->size();
    if (n == 0) {
        throw Error(ErrorCode::empty_domain, "eigenvalue of an empty grid");
    }
    std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> w(n);
    double lambda = 0.0;
    double residual = 0.0;
    for (long it = 1; it <= options.max_iterations; ++it) {
        op.apply(v, w);
        const double next = dot(v, w);
        double r2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = w[i] - next * v[i];
            r2 += d * d;
        }
        residual = std::sqrt(r2);
        const bool settled = it > 1 && std::abs(next - lambda) < options.tolerance * std::abs(next);
        lambda = next;
        if (settled && residual <= options.residual_tolerance) {
            return {lambda, GridFunction(op.grid(), v), it, residual};
        }
        const double norm = std::sqrt(dot(w, w));
        if (norm == 0.0) {
            // One-cell grid: the zero matrix.
            return {0.0, GridFunction(op.grid(), v), it, 0.0};
        }
        for (std::size_t i = 0; i < n; ++i) {
            v[i] = w[i] / norm;
        }
    }
    throw Error(ErrorCode::not_converged, "power iteration did not converge (last residual " +
                                              std::to_string(residual) + ")");
}

SpectralResult first_eigenvalue(const RieszParams& params, GridPtr grid, const PowerIterationOptions& options,
                                kernels::Backend backend) {
    return first_eigenvalue(RieszOperator(std::move(grid), params, backend), options);
}

LyapunovRieszReport lyapunov_riesz_check(const GridFunction& omega, const GridFunction& u, const RieszParams& params,
                                         kernels::Backend backend) {
    double sup_u = 0.0;
    for (double x : u.values()) {
        sup_u = std::max(sup_u, std::abs(x));
    }
    if (sup_u == 0.0) {
        throw Error(ErrorCode::zero_function, "the trivial solution carries no information");
    }
    const GridFunction image = riesz_apply_weighted(u, omega, params, backend);
    double sup_diff = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        sup_diff = std::max(sup_diff, std::abs(image[i] - u[i]));
    }
    const double fp_residual = sup_diff / sup_u;
    if (!(fp_residual <= kFixedPointTolerance)) {
        throw Error(ErrorCode::not_a_fixed_point,
                    "u is not a fixed point of the weighted Riesz operator (residual " + std::to_string(fp_residual) + ")");
    }
    const double p = params.p();
    LyapunovRieszReport report{};
    report.c0 = c0_constant(params, u.grid(), backend);
    report.rhs = 1.0 / report.c0;
    report.lhs = lp_norm(omega, p / (2.0 - p));
    report.fixed_point_residual = fp_residual;
    report.lhs_finite = std::isfinite(report.lhs);
    if (!report.lhs_finite) {
        report.pass = true;
        report.warning = "weight norm is not finite; condition holds trivially";
    } else {
        report.pass = report.lhs >= report.rhs * (1.0 - kFixedPointTolerance);
    }
    return report;
}

EigenBoundReport eigen_upper_bound(const RieszParams& params, GridPtr grid, const PowerIterationOptions& options,
                                   kernels::Backend backend) {
    const double c0 = c0_constant(params, *grid, backend);
    const SpectralResult spec = first_eigenvalue(params, grid, options, backend);
    EigenBoundReport report{};
    report.lambda1 = spec.lambda1;
    report.c0 = c0;
    report.measure = grid->measure();
    report.bound = c0 * std::pow(report.measure, (2.0 - params.p()) / params.p());
    report.iterations = spec.iterations;
    report.residual = spec.residual;
    report.pass = report.lambda1 <= report.bound * (1.0 + kBoundSlack);
    return report;
}

}  // namespace fraclab
