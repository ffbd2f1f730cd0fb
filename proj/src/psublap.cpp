#include "fraclab/psublap.hpp"

#include "fraclab/error.hpp"
#include "fraclab/seminorms.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace fraclab {

namespace {

constexpr double kSumTolerance = 1e-12;

void require_same_grid(const GridFunction& a, const GridFunction& b) {
    if (a.size() != b.size() || a.grid().dimension() != b.grid().dimension()) {
        throw Error(ErrorCode::dimension_mismatch, "system components live on different grids");
    }
}

double signed_power(double d, double p) {
    if (d == 0.0) {
        return 0.0;
    }
    if (p == 2.0) {
        return d;
    }
    return std::copysign(std::pow(std::abs(d), p - 1.0), d);
}

}  // namespace

SystemParams::SystemParams(std::vector<double> s, std::vector<double> p, std::vector<double> alpha, double theta,
                           double Q)
    : s_(std::move(s)), p_(std::move(p)), alpha_(std::move(alpha)), theta_(theta), q_(Q) {
    const std::size_t n = s_.size();
    if (n == 0 || p_.size() != n || alpha_.size() != n) {
        throw Error(ErrorCode::dimension_mismatch, "s, p and alpha must have the same positive length");
    }
    double sum = 0.0;
    double max_ratio = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(s_[i] > 0.0 && s_[i] < 1.0) || !(p_[i] > 1.0) || !std::isfinite(p_[i]) || !(alpha_[i] > 0.0)) {
            throw Error(ErrorCode::inadmissible_params, "need s_i in (0,1), p_i > 1, alpha_i > 0");
        }
        if (!(Q > s_[i] * p_[i])) {
            throw Error(ErrorCode::inadmissible_params, "need Q > s_i p_i");
        }
        sum += alpha_[i] / p_[i];
        max_ratio = std::max(max_ratio, Q / (s_[i] * p_[i]));
    }
    if (std::abs(sum - 1.0) > kSumTolerance) {
        throw Error(ErrorCode::inadmissible_params, "need sum alpha_i / p_i = 1");
    }
    if (!(theta_ > max_ratio) || !std::isfinite(theta_)) {
        throw Error(ErrorCode::inadmissible_params, "need max Q/(s_i p_i) < theta < inf");
    }
}

GridFunction p_sublaplacian(const GridFunction& u, double s, double p, kernels::Backend backend) {
    if (!(s > 0.0 && s < 1.0) || !(p > 1.0)) {
        throw Error(ErrorCode::inadmissible_params, "need s in (0,1), p > 1");
    }
    const Grid& grid = u.grid();
    const kernels::PairWeight weight(grid, grid.geometry().homogeneous_dimension() + s * p, backend);
    const auto v = u.values();
    std::vector<double> out(u.size());
    kernels::row_sums(weight, [&](std::size_t i, std::size_t j) { return signed_power(v[i] - v[j], p); }, out);
    for (double& x : out) {
        x *= 2.0;
    }
    return {u.grid_ptr(), std::move(out)};
}

DirichletBox dirichlet_box(const GridPtr& omega, double factor) {
    if (!(factor > 0.0)) {
        throw Error(ErrorCode::inadmissible_params, "extension factor must be positive");
    }
    const Lattice& lat = omega->lattice();
    const std::size_t n = omega->dimension();
    Point lo(n), hi(n);
    std::vector<int> counts(n);
    std::vector<int> ext(n);
    for (std::size_t k = 0; k < n; ++k) {
        ext[k] = static_cast<int>(std::ceil(factor * lat.counts[k] - 1e-9));
        counts[k] = lat.counts[k] + 2 * ext[k];
        lo[k] = lat.lo[k] - ext[k] * lat.step[k];
        hi[k] = lo[k] + counts[k] * lat.step[k];
    }
    DirichletBox out{omega, build_grid(omega->geometry(), DomainSpec::box(lo, hi, counts)), {}, factor};
    out.interior.resize(omega->size());
    for (std::size_t i = 0; i < omega->size(); ++i) {
        const auto idx = omega->lattice_index(i);
        std::size_t flat = 0;
        for (std::size_t k = 0; k < n; ++k) {
            flat = flat * static_cast<std::size_t>(counts[k]) + static_cast<std::size_t>(idx[k] + ext[k]);
        }
        out.interior[i] = flat;
    }
    return out;
}

GridFunction p_sublaplacian_dirichlet(const GridFunction& u, const DirichletBox& box, double s, double p,
                                      kernels::Backend backend) {
    if (!(s > 0.0 && s < 1.0) || !(p > 1.0)) {
        throw Error(ErrorCode::inadmissible_params, "need s in (0,1), p > 1");
    }
    const GridFunction ext = extend_by_zero(u, box);
    const Grid& big = *box.box;
    const kernels::PairWeight weight(big, big.geometry().homogeneous_dimension() + s * p, backend);
    const auto v = ext.values();
    const double vol = big.cell_volume();
    std::vector<double> out(u.size());
    kernels::detail::for_rows(backend, u.size(), [&](std::size_t a) {
        const std::size_t x = box.interior[a];
        double acc = 0.0;
        weight.for_each_in_row(x, [&](std::size_t j, double w) { acc += signed_power(v[x] - v[j], p) * w; });
        out[a] = 2.0 * acc * vol;
    });
    return {box.omega, std::move(out)};
}

GridFunction extend_by_zero(const GridFunction& u, const DirichletBox& box) {
    if (u.size() != box.omega->size()) {
        throw Error(ErrorCode::dimension_mismatch, "function does not live on the box's Omega");
    }
    std::vector<double> v(box.box->size(), 0.0);
    for (std::size_t i = 0; i < u.size(); ++i) {
        v[box.interior[i]] = u[i];
    }
    return {box.box, std::move(v)};
}

GridFunction restrict_to_omega(const GridFunction& on_box, const DirichletBox& box) {
    if (on_box.size() != box.box->size()) {
        throw Error(ErrorCode::dimension_mismatch, "function does not live on the integration box");
    }
    std::vector<double> v(box.omega->size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = on_box[box.interior[i]];
    }
    return {box.omega, std::move(v)};
}

double gagliardo_energy(const GridFunction& u, double s, double p, kernels::Backend backend) {
    const Grid& grid = u.grid();
    const kernels::PairWeight weight(grid, grid.geometry().homogeneous_dimension() + s * p, backend);
    const auto v = u.values();
    if (p == 2.0) {
        return kernels::pair_sum(weight, [&](std::size_t i, std::size_t j) {
            const double d = v[i] - v[j];
            return d * d;
        });
    }
    return kernels::pair_sum(weight, [&](std::size_t i, std::size_t j) { return std::pow(std::abs(v[i] - v[j]), p); });
}

std::vector<double> weak_form_residual(const std::vector<GridFunction>& u, const std::vector<GridFunction>& omega,
                                       const SystemParams& params, kernels::Backend backend) {
    const std::size_t n = params.size();
    if (u.size() != n || omega.size() != n) {
        throw Error(ErrorCode::dimension_mismatch, "need one function and one weight per component");
    }
    for (std::size_t i = 0; i < n; ++i) {
        require_same_grid(u[0], u[i]);
        require_same_grid(u[0], omega[i]);
    }
    const Grid& grid = u[0].grid();
    const double vol = grid.cell_volume();
    std::vector<double> product(grid.size(), 1.0);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t c = 0; c < grid.size(); ++c) {
            product[c] *= std::pow(std::abs(u[j][c]), params.alpha()[j]);
        }
    }
    std::vector<double> residual(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const bool zero = std::all_of(u[i].values().begin(), u[i].values().end(), [](double x) { return x == 0.0; });
        if (zero) {
            continue;
        }
        const double lhs = gagliardo_energy(u[i], params.s()[i], params.p()[i], backend);
        double rhs = 0.0;
        for (std::size_t c = 0; c < grid.size(); ++c) {
            rhs += omega[i][c] * product[c];
        }
        rhs *= vol;
        residual[i] = std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs) + std::numeric_limits<double>::epsilon());
    }
    return residual;
}

DirichletEigenpair first_dirichlet_eigenpair(const GridPtr& omega, double s, double factor, kernels::Backend backend) {
    if (!(s > 0.0 && s < 1.0)) {
        throw Error(ErrorCode::inadmissible_params, "need s in (0,1)");
    }
    DirichletBox box = dirichlet_box(omega, factor);
    const Grid& big = *box.box;
    const kernels::PairWeight weight(big, big.geometry().homogeneous_dimension() + 2.0 * s, backend);
    const double vol = big.cell_volume();
    const std::size_t m = omega->size();
    // B_xx = 2 sum_{y in box} K vol, B_xy = -2 K vol on Omega x Omega.
    Eigen::MatrixXd form(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    for (std::size_t a = 0; a < m; ++a) {
        const std::size_t x = box.interior[a];
        double diag = 0.0;
        weight.for_each_in_row(x, [&](std::size_t, double w) { diag += w; });
        form(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(a)) = 2.0 * diag * vol;
        for (std::size_t b = 0; b < m; ++b) {
            if (b != a) {
                form(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
                    -2.0 * weight(x, box.interior[b]) * vol;
            }
        }
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(form);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::not_converged, "dense symmetric eigensolver failed");
    }
    Eigen::VectorXd v = solver.eigenvectors().col(0);
    if (v.sum() < 0.0) {
        v = -v;
    }
    std::vector<double> values(m);
    for (std::size_t a = 0; a < m; ++a) {
        values[a] = v(static_cast<Eigen::Index>(a));
    }
    GridFunction u = extend_by_zero(GridFunction(omega, std::move(values)), box);
    return {solver.eigenvalues()(0), std::move(u), std::move(box)};
}

SystemLyapunov lyapunov_system_quantity(const std::vector<GridFunction>& omega, const SystemParams& params,
                                        double inner_radius) {
    if (omega.size() != params.size()) {
        throw Error(ErrorCode::dimension_mismatch, "need one weight per component");
    }
    if (!(inner_radius > 0.0)) {
        throw Error(ErrorCode::non_positive_scale, "inner quasi-radius must be positive");
    }
    const double theta = params.theta();
    SystemLyapunov out{};
    out.lhs = 1.0;
    double sum_sa = 0.0;
    for (std::size_t i = 0; i < params.size(); ++i) {
        for (double w : omega[i].values()) {
            if (w < 0.0) {
                throw Error(ErrorCode::negative_weight, "Lyapunov weights must be nonnegative");
            }
        }
        const double norm = lp_norm(omega[i], theta);
        out.degenerate = out.degenerate || norm == 0.0;
        out.lhs *= std::pow(norm, theta * params.alpha()[i] / params.p()[i]);
        sum_sa += params.s()[i] * params.alpha()[i];
    }
    out.exponent = params.homogeneous_dimension() - theta * sum_sa;
    out.scale_invariant_value = out.lhs / std::pow(inner_radius, out.exponent);
    return out;
}

double eigen_lower_bound_formula(const SystemParams& params, double phi_theta_integral,
                                 const std::vector<double>& lambda_others, std::size_t k, double C, double r) {
    const std::size_t n = params.size();
    if (k >= n || lambda_others.size() + 1 != n) {
        throw Error(ErrorCode::dimension_mismatch, "need k < n and n - 1 other eigenvalues");
    }
    if (!(C > 0.0) || !(r > 0.0)) {
        throw Error(ErrorCode::inadmissible_params, "need C > 0 and r > 0");
    }
    if (!(phi_theta_integral >= 0.0)) {
        throw Error(ErrorCode::inadmissible_params, "integral of phi^theta must be nonnegative");
    }
    if (phi_theta_integral == 0.0) {
        throw Error(ErrorCode::zero_weight, "phi vanishes in L^theta");
    }
    const auto& s = params.s();
    const auto& p = params.p();
    const auto& alpha = params.alpha();
    const double theta = params.theta();
    double lambda_prod = 1.0;
    double alpha_prod = 1.0;
    double sum_as = 0.0;
    for (std::size_t i = 0, o = 0; i < n; ++i) {
        sum_as += alpha[i] * s[i];
        if (i == k) {
            continue;
        }
        const double lam = lambda_others[o++];
        if (!(lam > 0.0)) {
            throw Error(ErrorCode::inadmissible_params, "other eigenvalues must be positive");
        }
        lambda_prod *= std::pow(lam, alpha[i] / p[i]);
        alpha_prod *= std::pow(alpha[i], theta * alpha[i] / p[i]);
    }
    const double first = std::pow(1.0 / lambda_prod, p[k] / alpha[k]);
    const double inner = std::pow(r, theta * sum_as - params.homogeneous_dimension()) * alpha_prod * phi_theta_integral;
    const double second = std::pow(1.0 / inner, p[k] / (theta * alpha[k]));
    return C / alpha[k] * first * second;
}

double eigen_lower_bound_formula(const SystemParams& params, const GridFunction& phi,
                                 const std::vector<double>& lambda_others, std::size_t k, double C, double r) {
    double integral = 0.0;
    for (double x : phi.values()) {
        if (x < 0.0) {
            throw Error(ErrorCode::inadmissible_params, "phi must be nonnegative");
        }
        integral += std::pow(x, params.theta());
    }
    return eigen_lower_bound_formula(params, integral * phi.grid().cell_volume(), lambda_others, k, C, r);
}

}  // namespace fraclab
