#pragma once

#include "fraclab/domain.hpp"
#include "fraclab/family.hpp"
#include "fraclab/kernels.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace fraclab {

/// Every exponent of the Sobolev / Gagliardo-Nirenberg / CKN / Hardy family.
struct InequalityParams {
    double s = 0.5;
    double p = 2.0;
    double alpha = 2.0;
    double tau = 2.0;
    double a = 1.0;
    double beta1 = 0.0;
    double beta2 = 0.0;
    double mu = 0.0;
    double gamma = 0.0;
    std::optional<double> sigma;  // solved from gamma = a sigma + (1-a) mu if absent

    [[nodiscard]] double beta() const noexcept { return beta1 + beta2; }
};

/// p* = Qp / (Q - sp); throws InadmissibleParams unless Q > sp.
double sobolev_exponent(double Q, double s, double p);

/// tau with 1/tau = a(1/p - s/Q) + (1-a)/alpha; throws when the right side is <= 0.
double gn_balance_tau(double Q, double s, double p, double alpha, double a);

enum class CknBranch {
    origin_allowed,   // 1/tau + gamma/Q > 0: u in C^1_c(G)
    origin_excluded,  // 1/tau + gamma/Q < 0: u in C^1_c(G \ {e})
    critical,         // 1/tau + gamma/Q = 0: logarithmic weight
};

std::string_view to_string(CknBranch branch) noexcept;

struct Admissibility {
    bool admissible = false;
    CknBranch branch = CknBranch::origin_allowed;
    std::string reason;        // empty when admissible
    double balance_residual;   // lhs - rhs of the scaling balance
    double branch_value;       // 1/tau + gamma/Q
    double sigma;              // supplied or solved
};

/// Pure predicate: balance at 1e-12 absolute, beta - sigma >= 0, the
/// implication "beta - sigma <= s only if 1/tau + gamma/Q = 1/p + (beta-s)/Q"
/// (non-critical branches), or 0 <= beta - sigma <= s and tau > 1 (critical).
Admissibility ckn_admissible(const InequalityParams& params, double Q);

struct RatioReport {
    double ratio;
    double numerator;
    double denominator;
    std::optional<CknBranch> branch;
};

/// ||u||_tau / ([u]^a ||u||_alpha^{1-a}); tau must satisfy the GN balance.
RatioReport verify_gn(const GridFunction& u, const InequalityParams& params,
                      kernels::Backend backend = kernels::Backend::parallel);

/// GN with a = 1, tau = p*.
RatioReport verify_sobolev(const GridFunction& u, double s, double p,
                           kernels::Backend backend = kernels::Backend::parallel);

/// ||q^gamma u||_tau / ([u]_{beta}^a ||q^mu u||_alpha^{1-a}). In the
/// origin-excluded branch supp u must satisfy q >= R_box / 100.
RatioReport verify_ckn(const GridFunction& u, const InequalityParams& params,
                       kernels::Backend backend = kernels::Backend::parallel);

/// Critical case with numerator || q^gamma / ln(2R/q) u ||_tau; supp u in B_R.
RatioReport verify_ckn_critical(const GridFunction& u, const InequalityParams& params, double radius,
                                kernels::Backend backend = kernels::Backend::parallel);

/// [u]^p / ||q^{-s} u||_p^p.
RatioReport verify_hardy(const GridFunction& u, double s, double p,
                         kernels::Backend backend = kernels::Backend::parallel);

struct NamedFunction {
    std::string id;
    GridFunction u;
};

struct BestConstant {
    double c_emp;  // max ratio
    std::string argmax_id;
    double c_min;  // min ratio (the empirical Hardy-type constant)
    std::string argmin_id;
    std::vector<double> ratios;  // in member order
};

using Verifier = std::function<RatioReport(const GridFunction&)>;

/// Max (and min) of the verifier's ratio over the members, in member order.
/// Member errors are rethrown with the member id prefixed to the message.
BestConstant estimate_best_constant(const std::vector<NamedFunction>& members, const Verifier& verifier);
BestConstant estimate_best_constant(const std::vector<FamilyMember>& members, const Verifier& verifier);

/// A value at two resolutions with its relative gap.
struct Refinement {
    int coarse_resolution;
    int fine_resolution;
    double coarse;
    double fine;
    double gap;       // |fine - coarse| / |fine|
    bool unresolved;  // gap > 10%
};

constexpr double kUnresolvedGap = 0.10;

/// 2x per axis when the fine grid stays <= 32768 lattice cells, else 1.5x.
int fine_resolution(int coarse, std::size_t dimension);

Refinement refine(int coarse_resolution, std::size_t dimension, const std::function<double(int)>& value_at);

}  // namespace fraclab
