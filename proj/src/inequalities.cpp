#include "fraclab/inequalities.hpp"

#include "fraclab/error.hpp"
#include "fraclab/seminorms.hpp"

#include <algorithm>
#include <cmath>

namespace fraclab {

namespace {

constexpr double kBalanceTolerance = 1e-12;
constexpr double kOriginClearanceFraction = 0.01;

void require_nonzero(const GridFunction& u) {
    for (double v : u.values()) {
        if (v != 0.0) {
            return;
        }
    }
    throw Error(ErrorCode::zero_function, "inequality ratio of the zero function");
}

void require_basic(double s, double p) {
    if (!(s > 0.0 && s < 1.0)) {
        throw Error(ErrorCode::inadmissible_params, "s must lie in (0,1)");
    }
    if (!(p > 1.0)) {
        throw Error(ErrorCode::inadmissible_params, "p must be > 1");
    }
}

// b^a without the 0^0 ambiguity for the a = 1 / a = 0 endpoints.
double power_or_one(double base, double exponent) {
    return exponent == 0.0 ? 1.0 : std::pow(base, exponent);
}

}  // namespace

double sobolev_exponent(double Q, double s, double p) {
    if (!(Q > s * p) || !(s > 0.0) || !(p > 1.0)) {
        throw Error(ErrorCode::inadmissible_params, "Sobolev exponent needs Q > sp, s > 0, p > 1");
    }
    return Q * p / (Q - s * p);
}

double gn_balance_tau(double Q, double s, double p, double alpha, double a) {
    if (!(a > 0.0 && a <= 1.0) || !(alpha >= 1.0) || !(p > 1.0) || !(s > 0.0 && s < 1.0)) {
        throw Error(ErrorCode::inadmissible_params, "GN parameters out of range");
    }
    const double rhs = a * (1.0 / p - s / Q) + (1.0 - a) / alpha;
    if (!(rhs > 0.0)) {
        throw Error(ErrorCode::inadmissible_params, "GN balance has no positive tau");
    }
    if (a == 1.0) {
        return sobolev_exponent(Q, s, p);
    }
    return 1.0 / rhs;
}

std::string_view to_string(CknBranch branch) noexcept {
    switch (branch) {
        case CknBranch::origin_allowed: return "origin_allowed";
        case CknBranch::origin_excluded: return "origin_excluded";
        case CknBranch::critical: return "critical";
    }
    return "?";
}

Admissibility ckn_admissible(const InequalityParams& ip, double Q) {
    Admissibility r{};
    const double a = ip.a;
    const double beta = ip.beta();
    r.branch_value = 1.0 / ip.tau + ip.gamma / Q;
    const double rhs = a * (1.0 / ip.p + (beta - ip.s) / Q) + (1.0 - a) * (1.0 / ip.alpha + ip.mu / Q);
    r.balance_residual = r.branch_value - rhs;
    r.sigma = ip.sigma.value_or(a > 0.0 ? (ip.gamma - (1.0 - a) * ip.mu) / a : 0.0);
    r.branch = std::abs(r.branch_value) <= kBalanceTolerance ? CknBranch::critical
               : r.branch_value > 0.0                        ? CknBranch::origin_allowed
                                                             : CknBranch::origin_excluded;
    auto reject = [&](std::string why) {
        r.admissible = false;
        r.reason = std::move(why);
        return r;
    };
    if (!(Q >= 2.0)) return reject("Q<2");
    if (!(ip.s > 0.0 && ip.s < 1.0)) return reject("s not in (0,1)");
    if (!(ip.p > 1.0)) return reject("p<=1");
    if (!(ip.alpha >= 1.0)) return reject("alpha<1");
    if (!(ip.tau > 0.0)) return reject("tau<=0");
    if (!(a > 0.0 && a <= 1.0)) return reject("a not in (0,1]");
    if (std::abs(r.balance_residual) > kBalanceTolerance) return reject("balance");
    if (ip.sigma && std::abs(ip.gamma - (a * *ip.sigma + (1.0 - a) * ip.mu)) > kBalanceTolerance) {
        return reject("gamma!=a*sigma+(1-a)*mu");
    }
    const double gap = beta - r.sigma;
    if (gap < 0.0) return reject("β−σ<0");
    if (r.branch == CknBranch::critical) {
        if (!(ip.tau > 1.0)) return reject("tau<=1");
        if (gap > ip.s) return reject("β−σ>s");
    } else if (gap <= ip.s) {
        const double needed = 1.0 / ip.p + (beta - ip.s) / Q;
        if (std::abs(r.branch_value - needed) > kBalanceTolerance) return reject("implication");
    }
    r.admissible = true;
    return r;
}

RatioReport verify_gn(const GridFunction& u, const InequalityParams& ip, kernels::Backend backend) {
    require_basic(ip.s, ip.p);
    const double Q = u.grid().geometry().homogeneous_dimension();
    const double tau = gn_balance_tau(Q, ip.s, ip.p, ip.alpha, ip.a);
    if (std::abs(1.0 / ip.tau - 1.0 / tau) > kBalanceTolerance) {
        throw Error(ErrorCode::inadmissible_params, "tau does not satisfy the GN balance");
    }
    require_nonzero(u);
    RatioReport r{};
    r.numerator = lp_norm(u, ip.tau);
    const double semi = gagliardo_seminorm(u, SeminormParams(ip.s, ip.p), backend);
    r.denominator = power_or_one(semi, ip.a) * power_or_one(lp_norm(u, ip.alpha), 1.0 - ip.a);
    r.ratio = r.numerator / r.denominator;
    return r;
}

RatioReport verify_sobolev(const GridFunction& u, double s, double p, kernels::Backend backend) {
    InequalityParams ip;
    ip.s = s;
    ip.p = p;
    ip.a = 1.0;
    ip.alpha = p;
    ip.tau = sobolev_exponent(u.grid().geometry().homogeneous_dimension(), s, p);
    return verify_gn(u, ip, backend);
}

RatioReport verify_ckn(const GridFunction& u, const InequalityParams& ip, kernels::Backend backend) {
    const Grid& grid = u.grid();
    const Admissibility adm = ckn_admissible(ip, grid.geometry().homogeneous_dimension());
    if (!adm.admissible) {
        throw Error(ErrorCode::inadmissible_params, "CKN parameters inadmissible: " + adm.reason);
    }
    if (adm.branch == CknBranch::critical) {
        throw Error(ErrorCode::inadmissible_params, "critical parameters need verify_ckn_critical");
    }
    require_nonzero(u);
    if (adm.branch == CknBranch::origin_excluded) {
        const double clearance = kOriginClearanceFraction * inner_quasi_radius(grid.geometry(), grid.domain());
        for (std::size_t i = 0; i < u.size(); ++i) {
            if (u[i] != 0.0 && grid.norm_at(i) < clearance) {
                throw Error(ErrorCode::support_violation, "support of u must stay away from the identity");
            }
        }
    }
    RatioReport r{};
    r.branch = adm.branch;
    r.numerator = weighted_lp_norm(u, ip.tau, ip.gamma);
    const double semi = weighted_gagliardo_seminorm(u, SeminormParams(ip.s, ip.p, ip.beta1, ip.beta2), backend);
    r.denominator = power_or_one(semi, ip.a) * power_or_one(weighted_lp_norm(u, ip.alpha, ip.mu), 1.0 - ip.a);
    r.ratio = r.numerator / r.denominator;
    return r;
}

RatioReport verify_ckn_critical(const GridFunction& u, const InequalityParams& ip, double radius,
                                kernels::Backend backend) {
    const Admissibility adm = ckn_admissible(ip, u.grid().geometry().homogeneous_dimension());
    if (adm.branch != CknBranch::critical) {
        throw Error(ErrorCode::inadmissible_params, "1/tau + gamma/Q must vanish in the critical case");
    }
    if (!adm.admissible) {
        throw Error(ErrorCode::inadmissible_params, "CKN parameters inadmissible: " + adm.reason);
    }
    require_nonzero(u);
    RatioReport r{};
    r.branch = CknBranch::critical;
    r.numerator = log_weighted_norm(u, ip.tau, ip.gamma, radius);
    const double semi = weighted_gagliardo_seminorm(u, SeminormParams(ip.s, ip.p, ip.beta1, ip.beta2), backend);
    r.denominator = power_or_one(semi, ip.a) * power_or_one(weighted_lp_norm(u, ip.alpha, ip.mu), 1.0 - ip.a);
    r.ratio = r.numerator / r.denominator;
    return r;
}

RatioReport verify_hardy(const GridFunction& u, double s, double p, kernels::Backend backend) {
    require_basic(s, p);
    require_nonzero(u);
    RatioReport r{};
    const double semi = gagliardo_seminorm(u, SeminormParams(s, p), backend);
    const double weighted = weighted_lp_norm(u, p, -s);
    r.numerator = std::pow(semi, p);
    r.denominator = std::pow(weighted, p);
    r.ratio = std::pow(semi / weighted, p);
    return r;
}

BestConstant estimate_best_constant(const std::vector<NamedFunction>& members, const Verifier& verifier) {
    if (members.empty()) {
        throw Error(ErrorCode::inadmissible_params, "best constant over an empty family");
    }
    BestConstant best{};
    best.ratios.reserve(members.size());
    for (std::size_t m = 0; m < members.size(); ++m) {
        double ratio = 0.0;
        try {
            ratio = verifier(members[m].u).ratio;
        } catch (const Error& e) {
            throw Error(e.code(), members[m].id + ": " + e.message());
        }
        best.ratios.push_back(ratio);
        if (m == 0 || ratio > best.c_emp) {
            best.c_emp = ratio;
            best.argmax_id = members[m].id;
        }
        if (m == 0 || ratio < best.c_min) {
            best.c_min = ratio;
            best.argmin_id = members[m].id;
        }
    }
    return best;
}

BestConstant estimate_best_constant(const std::vector<FamilyMember>& members, const Verifier& verifier) {
    std::vector<NamedFunction> named;
    named.reserve(members.size());
    for (const auto& m : members) {
        named.push_back({m.id, m.u});
    }
    return estimate_best_constant(named, verifier);
}

int fine_resolution(int coarse, std::size_t dimension) {
    const double doubled = std::pow(2.0 * coarse, static_cast<double>(dimension));
    if (doubled <= 32768.0) {
        return 2 * coarse;
    }
    return static_cast<int>(std::ceil(1.5 * coarse));
}

Refinement refine(int coarse_resolution, std::size_t dimension, const std::function<double(int)>& value_at) {
    Refinement r{};
    r.coarse_resolution = coarse_resolution;
    r.fine_resolution = fine_resolution(coarse_resolution, dimension);
    r.coarse = value_at(r.coarse_resolution);
    r.fine = value_at(r.fine_resolution);
    r.gap = std::abs(r.fine - r.coarse) / std::abs(r.fine);
    r.unresolved = !(r.gap <= kUnresolvedGap);
    return r;
}

}  // namespace fraclab
