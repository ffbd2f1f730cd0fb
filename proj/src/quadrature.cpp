#include "fraclab/quadrature.hpp"

#include "fraclab/error.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <limits>
#include <string>

namespace fraclab {

namespace {

using boost::math::constants::pi;

constexpr double kRelTolerance = 1e-8;

double tanh_sinh(const std::function<double(double)>& f, double a, double b, double* error) {
    boost::math::quadrature::tanh_sinh<double> integrator;
    double l1 = 0.0;
    return integrator.integrate(f, a, b, kRelTolerance, error, &l1);
}

}  // namespace

double unit_ball_volume(const Geometry& geometry) {
    const auto n = static_cast<double>(geometry.dimension());
    switch (geometry.norm().kind()) {
        case NormKind::euclidean: return std::pow(pi<double>(), n / 2.0) / std::tgamma(n / 2.0 + 1.0);
        case NormKind::aniso_max: return std::pow(2.0, n);
        case NormKind::koranyi: {
            // |{|z|^4 + t^2 < 1}| = |S^{2m-1}| int_0^1 2 sqrt(1 - r^4) r^{2m-1} dr
            const auto m = static_cast<double>(geometry.group().heisenberg_rank());
            const double sphere = 2.0 * std::pow(pi<double>(), m) / std::tgamma(m);
            double error = 0.0;
            const double radial = tanh_sinh(
                [m](double r) { return 2.0 * std::sqrt(std::max(0.0, 1.0 - r * r * r * r)) * std::pow(r, 2.0 * m - 1.0); },
                0.0, 1.0, &error);
            return sphere * radial;
        }
    }
    return 0.0;
}

double sphere_measure(const Geometry& geometry) {
    return geometry.homogeneous_dimension() * unit_ball_volume(geometry);
}

double grid_unit_ball_volume(const Geometry& geometry, int resolution) {
    return build_grid(geometry, DomainSpec::quasi_ball(1.0, resolution))->measure();
}

double polar_integral(const Geometry& geometry, const std::function<double(double)>& profile, double r_lo,
                      double r_hi) {
    if (!(r_lo >= 0.0) || !(r_lo < r_hi)) {
        throw Error(ErrorCode::inadmissible_params, "polar integral needs 0 <= r_lo < r_hi");
    }
    const double q = geometry.homogeneous_dimension();
    const std::function<double(double)> integrand = [&](double r) { return profile(r) * std::pow(r, q - 1.0); };

    double error = 0.0;
    double value = std::numeric_limits<double>::quiet_NaN();
    try {
        value = tanh_sinh(integrand, r_lo, r_hi, &error);
    } catch (const std::exception& e) {
        throw Error(ErrorCode::non_integrable_profile, std::string("quadrature failed: ") + e.what());
    }
    if (!std::isfinite(value) || error > 1e-6 * std::max(1.0, std::abs(value))) {
        throw Error(ErrorCode::non_integrable_profile, "integral does not converge near r_lo");
    }
    if (r_lo == 0.0) {
        // tanh-sinh samples extremely close to 0 and can return a finite value
        // for a log-divergent integrand; an integrable one stops changing as
        // the cut-off shrinks.
        const double cut_a = 1e-6 * r_hi;
        const double cut_b = 1e-12 * r_hi;
        double ea = 0.0;
        double eb = 0.0;
        const double part_a = tanh_sinh(integrand, cut_b, cut_a, &eb);
        const double part_b = tanh_sinh(integrand, cut_b * 1e-6, cut_b, &ea);
        if (std::abs(part_b) > 0.1 * std::abs(part_a) + 1e-8 * std::abs(value)) {
            throw Error(ErrorCode::non_integrable_profile, "integral diverges at r = 0");
        }
    }
    return sphere_measure(geometry) * value;
}

}  // namespace fraclab
