#pragma once

#include "fraclab/domain.hpp"
#include "fraclab/kernels.hpp"

#include <vector>

namespace fraclab {

/// Exponents of an n-component system; validated against Q at construction:
/// sum alpha_i / p_i = 1, Q > s_i p_i, max Q/(s_i p_i) < theta < inf.
class SystemParams {
public:
    SystemParams(std::vector<double> s, std::vector<double> p, std::vector<double> alpha, double theta, double Q);

    [[nodiscard]] std::size_t size() const noexcept { return s_.size(); }
    [[nodiscard]] const std::vector<double>& s() const noexcept { return s_; }
    [[nodiscard]] const std::vector<double>& p() const noexcept { return p_; }
    [[nodiscard]] const std::vector<double>& alpha() const noexcept { return alpha_; }
    [[nodiscard]] double theta() const noexcept { return theta_; }
    [[nodiscard]] double homogeneous_dimension() const noexcept { return q_; }

private:
    std::vector<double> s_;
    std::vector<double> p_;
    std::vector<double> alpha_;
    double theta_;
    double q_;
};

/// 2 sum_{j != i} |u_i - u_j|^{p-2}(u_i - u_j) q^{-(Q+sp)}(x_j^{-1} x_i) vol
/// at every cell of u's grid (the grid must hold the exterior as zeros).
GridFunction p_sublaplacian(const GridFunction& u, double s, double p,
                            kernels::Backend backend = kernels::Backend::parallel);

/// Integration box for the Dirichlet exterior: the bounding lattice of
/// Omega extended on each side by `factor` times its width, on Omega's
/// lattice, with the position of every Omega cell inside it.
struct DirichletBox {
    GridPtr omega;
    GridPtr box;
    std::vector<std::size_t> interior;  // omega cell i -> box cell interior[i]
    double factor;
};

DirichletBox dirichlet_box(const GridPtr& omega, double factor = 3.0);
/// The operator applied to the zero extension of u (given on Omega),
/// evaluated on Omega's cells only: rows over Omega, columns over the box.
GridFunction p_sublaplacian_dirichlet(const GridFunction& u, const DirichletBox& box, double s, double p,
                                      kernels::Backend backend = kernels::Backend::parallel);

GridFunction extend_by_zero(const GridFunction& u, const DirichletBox& box);
GridFunction restrict_to_omega(const GridFunction& on_box, const DirichletBox& box);

/// sum_{x != y} |u(x) - u(y)|^p q^{-(Q+sp)}(y^{-1} x) vol^2.
double gagliardo_energy(const GridFunction& u, double s, double p,
                        kernels::Backend backend = kernels::Backend::parallel);

/// Relative residual of each weak-form identity tested with v = u_i;
/// u and omega are given on the same (integration) grid.
std::vector<double> weak_form_residual(const std::vector<GridFunction>& u, const std::vector<GridFunction>& omega,
                                       const SystemParams& params,
                                       kernels::Backend backend = kernels::Backend::parallel);

struct DirichletEigenpair {
    double lambda1;
    GridFunction u;  // on box.box, zero outside Omega, unit L^2 norm, positive
    DirichletBox box;
};

/// Smallest eigenpair of the assembled p = 2 Dirichlet form on Omega.
DirichletEigenpair first_dirichlet_eigenpair(const GridPtr& omega, double s, double factor = 3.0,
                                             kernels::Backend backend = kernels::Backend::parallel);

struct SystemLyapunov {
    double lhs;       // prod ||omega_i||_theta^{theta alpha_i / p_i}
    double exponent;  // Q - theta sum s_j alpha_j
    double scale_invariant_value;  // lhs / r^exponent
    bool degenerate;  // some omega_i vanishes: no weak solution can exist
};

SystemLyapunov lyapunov_system_quantity(const std::vector<GridFunction>& omega, const SystemParams& params,
                                        double inner_radius);

/// Right side of the eigenvalue lower bound for component k; lambda_others
/// lists lambda_i for i != k in increasing i.
double eigen_lower_bound_formula(const SystemParams& params, double phi_theta_integral,
                                 const std::vector<double>& lambda_others, std::size_t k, double C, double r);
double eigen_lower_bound_formula(const SystemParams& params, const GridFunction& phi,
                                 const std::vector<double>& lambda_others, std::size_t k, double C, double r);

}  // namespace fraclab
