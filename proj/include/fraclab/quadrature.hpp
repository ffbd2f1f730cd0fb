#pragma once

#include "fraclab/domain.hpp"
#include "fraclab/kernels.hpp"

#include <functional>

namespace fraclab {

/// Lebesgue volume of the unit quasi-ball {q < 1}.
double unit_ball_volume(const Geometry& geometry);

/// |sigma| in the polar formula  int f(q(x)) dx = |sigma| int f(r) r^{Q-1} dr;
/// equals Q * |B_1|.
double sphere_measure(const Geometry& geometry);

/// Midpoint-grid volume of the unit quasi-ball; cross-check for
/// unit_ball_volume.
double grid_unit_ball_volume(const Geometry& geometry, int resolution);

/// |sigma| * int_{r_lo}^{r_hi} f(r) r^{Q-1} dr, relative tolerance 1e-8.
/// Throws NonIntegrableProfile when the integral diverges at r_lo = 0.
double polar_integral(const Geometry& geometry, const std::function<double(double)>& profile, double r_lo,
                      double r_hi);

/// vol^2 * sum_{x != y} F(x, y) / q^{exponent}(y^{-1} x) over the grid cells,
/// with F called as F(i, j) on cell indices.
template <class PairIntegrand>
double singular_double_integral(const Grid& grid, PairIntegrand&& integrand, double exponent,
                                kernels::Backend backend = kernels::Backend::parallel) {
    const kernels::PairWeight weight(grid, exponent, backend);
    return kernels::pair_sum(weight, std::forward<PairIntegrand>(integrand));
}

}  // namespace fraclab
