#include "fraclab/seminorms.hpp"

#include "fraclab/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fraclab {

namespace {

constexpr double kLogSpaceAbove = 8.0;

// Any |x_k| < step_k: the cell's closure touches the identity.
bool touches_origin(const Grid& grid, std::size_t i) {
    const auto x = grid.point(i);
    const auto& step = grid.lattice().step;
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (!(std::abs(x[k]) < step[k])) {
            return false;
        }
    }
    return true;
}

double power_abs(double x, double p) noexcept {
    const double a = std::abs(x);
    return p == 2.0 ? a * a : std::pow(a, p);
}

// (sum weight_i |u_i|^p vol)^{1/p}; weights given as log values.
template <class LogWeight>
double weighted_sum_root(const GridFunction& u, double p, LogWeight&& log_weight) {
    const Grid& grid = u.grid();
    const double vol = grid.cell_volume();
    if (p > kLogSpaceAbove) {
        double m = -std::numeric_limits<double>::infinity();
        std::vector<double> logs(u.size(), m);
        for (std::size_t i = 0; i < u.size(); ++i) {
            if (u[i] != 0.0) {
                logs[i] = log_weight(i) + p * std::log(std::abs(u[i]));
                m = std::max(m, logs[i]);
            }
        }
        if (m == -std::numeric_limits<double>::infinity()) {
            return 0.0;
        }
        double acc = 0.0;
        for (double l : logs) {
            acc += std::exp(l - m);
        }
        return std::exp((m + std::log(acc * vol)) / p);
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] != 0.0) {
            acc += std::exp(log_weight(i)) * power_abs(u[i], p);
        }
    }
    return std::pow(acc * vol, 1.0 / p);
}

void check_weight_exponent_at_origin(const GridFunction& u, double exponent, double q_dim) {
    const Grid& grid = u.grid();
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] == 0.0) {
            continue;
        }
        if (exponent < 0.0 && grid.norm_at(i) == 0.0) {
            throw Error(ErrorCode::non_integrable_weight, "negative power weight evaluated at the identity");
        }
        if (exponent <= -q_dim && touches_origin(grid, i)) {
            throw Error(ErrorCode::non_integrable_weight,
                        "weight exponent <= -Q and the support of u reaches the identity");
        }
    }
}

}  // namespace

SeminormParams::SeminormParams(double s_, double p_, double beta1_, double beta2_)
    : s(s_), p(p_), beta1(beta1_), beta2(beta2_) {
    if (!(s > 0.0 && s < 1.0)) {
        throw Error(ErrorCode::inadmissible_params, "s must lie in (0,1)");
    }
    if (!(p > 1.0) || !std::isfinite(p)) {
        throw Error(ErrorCode::inadmissible_params, "p must be > 1");
    }
    if (!std::isfinite(beta1) || !std::isfinite(beta2)) {
        throw Error(ErrorCode::inadmissible_params, "weights must be finite");
    }
}

double lp_norm(const GridFunction& u, double p) {
    if (!(p > 0.0) || !std::isfinite(p)) {
        throw Error(ErrorCode::inadmissible_params, "L^p exponent must be positive");
    }
    const double vol = u.grid().cell_volume();
    if (p > kLogSpaceAbove) {
        double m = 0.0;
        for (double v : u.values()) {
            m = std::max(m, std::abs(v));
        }
        if (m == 0.0) {
            return 0.0;
        }
        double acc = 0.0;
        for (double v : u.values()) {
            acc += std::pow(std::abs(v) / m, p);
        }
        return m * std::pow(acc * vol, 1.0 / p);
    }
    double acc = 0.0;
    for (double v : u.values()) {
        acc += power_abs(v, p);
    }
    return std::pow(acc * vol, 1.0 / p);
}

double weighted_lp_norm(const GridFunction& u, double p, double gamma) {
    if (gamma == 0.0) {
        return lp_norm(u, p);
    }
    if (!(p > 0.0) || !std::isfinite(p)) {
        throw Error(ErrorCode::inadmissible_params, "L^p exponent must be positive");
    }
    const Grid& grid = u.grid();
    check_weight_exponent_at_origin(u, gamma * p, grid.geometry().homogeneous_dimension());
    const double e = gamma * p;
    return weighted_sum_root(u, p, [&](std::size_t i) { return e * std::log(grid.norm_at(i)); });
}

double gagliardo_seminorm(const GridFunction& u, const SeminormParams& params, kernels::Backend backend) {
    const Grid& grid = u.grid();
    const double exponent = grid.geometry().homogeneous_dimension() + params.s * params.p;
    const kernels::PairWeight weight(grid, exponent, backend);
    const auto v = u.values();
    const double p = params.p;
    if (p > kLogSpaceAbove) {
        const double log_sum = kernels::pair_log_sum(weight, [&](std::size_t i, std::size_t j) {
            const double d = std::abs(v[i] - v[j]);
            return d == 0.0 ? -std::numeric_limits<double>::infinity() : p * std::log(d);
        });
        return std::exp(log_sum / p);
    }
    double sum = 0.0;
    if (p == 2.0) {
        sum = kernels::pair_sum(weight, [&](std::size_t i, std::size_t j) {
            const double d = v[i] - v[j];
            return d * d;
        });
    } else {
        sum = kernels::pair_sum(weight, [&](std::size_t i, std::size_t j) { return std::pow(std::abs(v[i] - v[j]), p); });
    }
    return std::pow(sum, 1.0 / p);
}

double weighted_gagliardo_seminorm(const GridFunction& u, const SeminormParams& params, kernels::Backend backend) {
    if (params.beta1 == 0.0 && params.beta2 == 0.0) {
        return gagliardo_seminorm(u, params, backend);
    }
    const Grid& grid = u.grid();
    const double p = params.p;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid.norm_at(i) == 0.0 && (params.beta1 < 0.0 || params.beta2 < 0.0)) {
            throw Error(ErrorCode::non_integrable_weight, "negative power weight evaluated at the identity");
        }
    }
    const double exponent = grid.geometry().homogeneous_dimension() + params.s * p;
    const kernels::PairWeight weight(grid, exponent, backend);
    const auto v = u.values();
    std::vector<double> log_w1(grid.size());
    std::vector<double> log_w2(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double lq = std::log(grid.norm_at(i));
        log_w1[i] = params.beta1 == 0.0 ? 0.0 : params.beta1 * p * lq;
        log_w2[i] = params.beta2 == 0.0 ? 0.0 : params.beta2 * p * lq;
    }
    if (p > kLogSpaceAbove) {
        const double log_sum = kernels::pair_log_sum(weight, [&](std::size_t i, std::size_t j) {
            const double d = std::abs(v[i] - v[j]);
            return d == 0.0 ? -std::numeric_limits<double>::infinity() : log_w1[i] + log_w2[j] + p * std::log(d);
        });
        return std::exp(log_sum / p);
    }
    std::vector<double> w1(grid.size());
    std::vector<double> w2(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        w1[i] = std::exp(log_w1[i]);
        w2[i] = std::exp(log_w2[i]);
    }
    const double sum = kernels::pair_sum(weight, [&](std::size_t i, std::size_t j) {
        return w1[i] * w2[j] * power_abs(v[i] - v[j], p);
    });
    return std::pow(sum, 1.0 / p);
}

double domain_mean(const GridFunction& u) {
    const Grid& grid = u.grid();
    if (grid.size() == 0) {
        throw Error(ErrorCode::empty_domain, "mean over an empty grid");
    }
    double acc = 0.0;
    for (double v : u.values()) {
        acc += v;
    }
    return acc * grid.cell_volume() / grid.measure();
}

double log_weighted_norm(const GridFunction& u, double tau, double gamma, double radius) {
    if (!(tau > 1.0)) {
        throw Error(ErrorCode::inadmissible_params, "tau must be > 1");
    }
    if (!(radius > 0.0)) {
        throw Error(ErrorCode::inadmissible_params, "radius must be positive");
    }
    const Grid& grid = u.grid();
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] == 0.0) {
            continue;
        }
        if (!(grid.norm_at(i) < radius)) {
            throw Error(ErrorCode::support_violation, "u is nonzero outside the quasi-ball of radius R");
        }
        if (grid.norm_at(i) == 0.0 && gamma < 0.0) {
            throw Error(ErrorCode::non_integrable_weight, "negative power weight evaluated at the identity");
        }
    }
    return weighted_sum_root(u, tau, [&](std::size_t i) {
        const double q = grid.norm_at(i);
        if (q == 0.0) {
            return -std::numeric_limits<double>::infinity();
        }
        return tau * (gamma * std::log(q) - std::log(std::log(2.0 * radius / q)));
    });
}

}  // namespace fraclab
