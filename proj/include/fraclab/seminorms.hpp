#pragma once

#include "fraclab/domain.hpp"
#include "fraclab/kernels.hpp"

namespace fraclab {

/// Smoothness s in (0,1), integrability p > 1 and the two power weights of
/// the weighted seminorm (beta = beta1 + beta2).
struct SeminormParams {
    double s;
    double p;
    double beta1 = 0.0;
    double beta2 = 0.0;

    SeminormParams(double s, double p, double beta1 = 0.0, double beta2 = 0.0);

    [[nodiscard]] double beta() const noexcept { return beta1 + beta2; }
};

/// (sum |u|^p vol)^{1/p}, p > 0 (a quasi-norm below 1).
double lp_norm(const GridFunction& u, double p);

/// (sum q^{gamma p}(x) |u(x)|^p vol)^{1/p}; gamma = 0 is exactly lp_norm.
/// Throws NonIntegrableWeight when the weight is infinite on the support of
/// u, or when gamma p <= -Q and the support reaches the cells around e.
double weighted_lp_norm(const GridFunction& u, double p, double gamma);

/// Gagliardo quasi-seminorm over the grid's domain,
///   ( sum_{x != y} |u(x) - u(y)|^p / q^{Q+sp}(y^{-1} x) vol^2 )^{1/p}.
/// Powers are accumulated in log space for p > 8.
double gagliardo_seminorm(const GridFunction& u, const SeminormParams& params,
                          kernels::Backend backend = kernels::Backend::parallel);

/// Two-weight variant with q^{beta1 p}(x) q^{beta2 p}(y) in the numerator;
/// beta1 = beta2 = 0 is exactly gagliardo_seminorm.
double weighted_gagliardo_seminorm(const GridFunction& u, const SeminormParams& params,
                                   kernels::Backend backend = kernels::Backend::parallel);

/// u_Omega = sum u vol / |Omega|_grid.
double domain_mean(const GridFunction& u);

/// || q^gamma / ln(2R/q) u ||_{L^tau}; supp u must lie in {q < R}.
double log_weighted_norm(const GridFunction& u, double tau, double gamma, double radius);

}  // namespace fraclab
