#pragma once

#include "fraclab/domain.hpp"
#include "fraclab/kernels.hpp"

#include <string>

namespace fraclab {

/// Riesz potential of order 2s with integrability p (1 < p < 2).
class RieszParams {
public:
    RieszParams(double s, double p, double homogeneous_dimension);

    [[nodiscard]] double s() const noexcept { return s_; }
    [[nodiscard]] double p() const noexcept { return p_; }
    [[nodiscard]] double homogeneous_dimension() const noexcept { return q_; }
    [[nodiscard]] double conjugate() const noexcept { return p_ / (p_ - 1.0); }
    /// kappa = Q - 2s
    [[nodiscard]] double kernel_exponent() const noexcept { return q_ - 2.0 * s_; }
    /// 2sp > Q, i.e. q^{-kappa} in L^{p'}(Omega x Omega) for bounded Omega.
    [[nodiscard]] bool kernel_integrable() const noexcept { return 2.0 * s_ * p_ > q_; }

private:
    double s_;
    double p_;
    double q_;
};

/// The discrete operator (Ru)_i = sum_{j != i} u_j q^{-kappa}(x_j^{-1} x_i) vol.
class RieszOperator {
public:
    RieszOperator(GridPtr grid, const RieszParams& params, kernels::Backend backend = kernels::Backend::parallel);

    [[nodiscard]] const GridPtr& grid() const noexcept { return grid_; }
    [[nodiscard]] const RieszParams& params() const noexcept { return params_; }

    void apply(std::span<const double> u, std::span<double> out) const;
    [[nodiscard]] GridFunction apply(const GridFunction& u) const;

private:
    GridPtr grid_;
    RieszParams params_;
    kernels::PairWeight weight_;
};

GridFunction riesz_apply(const GridFunction& u, const RieszParams& params,
                         kernels::Backend backend = kernels::Backend::parallel);

/// R(omega * u); omega must be nonnegative.
GridFunction riesz_apply_weighted(const GridFunction& u, const GridFunction& omega, const RieszParams& params,
                                  kernels::Backend backend = kernels::Backend::parallel);

/// C0 = ( sum_{i != j} q^{-kappa p'}(x_j^{-1} x_i) vol^2 )^{1/p'}.
/// Throws NonIntegrableKernel when 2sp <= Q.
double c0_constant(const RieszParams& params, const Grid& grid, kernels::Backend backend = kernels::Backend::parallel);

/// <u, Ru> / ||u||_2^2; throws ZeroFunction for u = 0.
double rayleigh_quotient(const GridFunction& u, const RieszParams& params,
                         kernels::Backend backend = kernels::Backend::parallel);

struct PowerIterationOptions {
    double tolerance = 1e-10;        // relative eigenvalue change
    double residual_tolerance = 1e-8;
    long max_iterations = 100000;
};

struct SpectralResult {
    double lambda1;
    GridFunction eigenvector;  // unit L^2 (counting) norm, positive
    long iterations;
    double residual;  // ||Kv - lambda v||_2 / ||v||_2
};

/// Top eigenpair by power iteration from v = 1. Throws NotConverged.
SpectralResult first_eigenvalue(const RieszOperator& op, const PowerIterationOptions& options = {});
SpectralResult first_eigenvalue(const RieszParams& params, GridPtr grid, const PowerIterationOptions& options = {},
                                kernels::Backend backend = kernels::Backend::parallel);

struct LyapunovRieszReport {
    double lhs;  // ||omega||_{L^{p/(2-p)}}
    double rhs;  // 1 / C0
    double c0;
    double fixed_point_residual;
    bool lhs_finite;
    bool pass;
    std::string warning;
};

/// Necessary condition for u = R(omega u) to have a nontrivial solution.
/// Throws ZeroFunction, NotAFixedPoint (sup-norm residual > 1e-6).
LyapunovRieszReport lyapunov_riesz_check(const GridFunction& omega, const GridFunction& u, const RieszParams& params,
                                         kernels::Backend backend = kernels::Backend::parallel);

struct EigenBoundReport {
    double lambda1;
    double c0;
    double measure;
    double bound;  // C0 |Omega|^{(2-p)/p}
    long iterations;
    double residual;
    bool pass;
};

EigenBoundReport eigen_upper_bound(const RieszParams& params, GridPtr grid, const PowerIterationOptions& options = {},
                                   kernels::Backend backend = kernels::Backend::parallel);

}  // namespace fraclab
