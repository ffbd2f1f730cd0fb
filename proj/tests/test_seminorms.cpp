#include "fraclab/error.hpp"
#include "fraclab/seminorms.hpp"

#include "helpers.hpp"
#include "oracle_values.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace fraclab;
using testing::rel;

namespace {

GridPtr gauss_line(int res) { return build_grid(testing::euclid(1), DomainSpec::box({-6}, {6}, res)); }

GridFunction gauss_on(const GridPtr& g) {
    return GridFunction::sample(g, [](std::span<const double> x) { return testing::gauss(x); });
}

}  // namespace

TEST_CASE("lp norm examples") {
    const auto sq = build_grid(testing::euclid(2), DomainSpec::box({0, 0}, {1, 1}, 16));
    CHECK(lp_norm(GridFunction::constant(sq, 1.0), 2.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(lp_norm(GridFunction::zeros(sq), 2.0) == 0.0);
    const auto disk = build_grid(testing::euclid(2), DomainSpec::quasi_ball(1.0, 200));
    CHECK(rel(lp_norm(GridFunction::constant(disk, 2.0), 1.0), 2.0 * std::numbers::pi) < 0.01);
    // large p goes through the scaled path
    const auto u = GridFunction::sample(sq, [](std::span<const double> x) { return 1e30 * (1 + x[0]); });
    CHECK(std::isfinite(lp_norm(u, 40.0)));
}

TEST_CASE("weighted lp norm examples") {
    const auto disk = build_grid(testing::euclid(2), DomainSpec::quasi_ball(1.0, 200));
    const auto u = GridFunction::sample(disk, [](std::span<const double> x) { return testing::gauss(x); });
    CHECK(weighted_lp_norm(u, 2.5, 0.0) == lp_norm(u, 2.5));
    const auto one = GridFunction::constant(disk, 1.0);
    CHECK(rel(weighted_lp_norm(one, 1.0, 1.0), 2.0 * std::numbers::pi / 3.0) < 0.02);
    const auto ann = build_grid(testing::euclid(2), DomainSpec::quasi_annulus(1.0, 2.0, 200));
    // polar form: 2 pi int_1^2 r^{gamma} r dr
    const auto ann_one = GridFunction::constant(ann, 1.0);
    CHECK(rel(weighted_lp_norm(ann_one, 1.0, -1.0), 2.0 * std::numbers::pi) < 0.02);
    CHECK(rel(weighted_lp_norm(ann_one, 1.0, -2.0), 2.0 * std::numbers::pi * std::log(2.0)) < 0.02);
    const double c = -3.25;
    CHECK(rel(weighted_lp_norm(u.scaled(c), 1.7, -0.4), std::abs(c) * weighted_lp_norm(u, 1.7, -0.4)) < 1e-14);
    try {
        (void)weighted_lp_norm(one, 1.0, -2.5);
        FAIL("expected NonIntegrableWeight");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::non_integrable_weight);
    }
}

TEST_CASE("gagliardo seminorm: constants, oracle, reductions") {
    const SeminormParams sp(0.3, 2.0);
    const auto g = gauss_line(400);
    CHECK(gagliardo_seminorm(GridFunction::constant(g, 3.0), sp) == 0.0);
    const auto u = gauss_on(g);
    CHECK(rel(gagliardo_seminorm(u, sp), oracle::gagliardo_gauss) < 0.02);
    CHECK(weighted_gagliardo_seminorm(u, sp) == gagliardo_seminorm(u, sp));
    const SeminormParams wp(0.3, 2.0, 0.2, 0.1);
    CHECK(rel(weighted_gagliardo_seminorm(u, wp), oracle::weighted_gagliardo_gauss) < 0.02);
    CHECK(weighted_gagliardo_seminorm(GridFunction::constant(g, -1.0), wp) == 0.0);
    CHECK(gagliardo_seminorm(u, sp, kernels::Backend::reference) ==
          doctest::Approx(gagliardo_seminorm(u, sp)).epsilon(1e-13));

    CHECK_THROWS_AS(SeminormParams(1.0, 2.0), Error);
    CHECK_THROWS_AS(SeminormParams(0.5, 1.0), Error);
}

TEST_CASE("seminorm large p uses log space") {
    const auto g = build_grid(testing::euclid(2), DomainSpec::box({-1, -1}, {1, 1}, 12));
    const auto u = GridFunction::sample(g, [](std::span<const double> x) { return 3.0 * testing::gauss(x, 0.5); });
    const double big = gagliardo_seminorm(u, SeminormParams(0.4, 12.0));
    CHECK(std::isfinite(big));
    // p-homogeneity in u
    CHECK(rel(gagliardo_seminorm(u.scaled(1e6), SeminormParams(0.4, 12.0)), 1e6 * big) < 1e-12);
}

TEST_CASE("seminorm dilation law on matched grids") {
    testing::Rng rng(7);
    for (const auto& geo : {testing::euclid(2), testing::heis()}) {
        const auto spec = geo.dimension() == 2 ? DomainSpec::box({-1, -1}, {1, 1}, 12)
                                               : DomainSpec::box({-1, -1, -1}, {1, 1, 1}, 7);
        const auto grid = build_grid(geo, spec);
        const double Q = geo.homogeneous_dimension();
        for (int t = 0; t < 3; ++t) {
            const double lambda = rng(0.3, 3.0);
            const SeminormParams sp(rng(0.1, 0.9), rng(1.2, 3.0));
            const double w = rng(0.3, 0.8);
            const auto u = GridFunction::sample(grid, [&](std::span<const double> x) { return testing::gauss(x, w); });
            const auto ul = u.on(dilate_grid(*grid, 1.0 / lambda));
            const double lhs = std::pow(gagliardo_seminorm(ul, sp), sp.p);
            const double rhs = std::pow(lambda, sp.s * sp.p - Q) * std::pow(gagliardo_seminorm(u, sp), sp.p);
            CHECK(rel(lhs, rhs) < 1e-12);
        }
    }
}

TEST_CASE("seminorm subdomain monotonicity and zero iff constant") {
    const auto g = build_grid(testing::euclid(2), DomainSpec::box({-1, -1}, {1, 1}, 14));
    const auto u = GridFunction::sample(g, [](std::span<const double> x) { return x[0] * x[0] + x[1]; });
    std::vector<bool> keep(g->size());
    for (std::size_t i = 0; i < g->size(); ++i) keep[i] = g->norm_at(i) < 0.8;
    const auto sub = g->subset(keep);
    std::vector<double> vals;
    for (std::size_t i = 0; i < g->size(); ++i)
        if (keep[i]) vals.push_back(u[i]);
    const SeminormParams sp(0.5, 2.0);
    const double whole = gagliardo_seminorm(u, sp);
    CHECK(gagliardo_seminorm(GridFunction(sub, vals), sp) <= whole);
    CHECK(whole > 0.0);
}

TEST_CASE("domain mean") {
    const auto unit = build_grid(testing::euclid(1), DomainSpec::box({0}, {1}, 37));
    const auto sym = build_grid(testing::euclid(1), DomainSpec::box({-1}, {1}, 37));
    const auto x1 = [](std::span<const double> x) { return x[0]; };
    CHECK(std::abs(domain_mean(GridFunction::sample(unit, x1)) - 0.5) < 1e-12);
    CHECK(std::abs(domain_mean(GridFunction::sample(sym, x1))) < 1e-12);
    CHECK(domain_mean(GridFunction::constant(unit, 4.5)) == doctest::Approx(4.5).epsilon(1e-14));
    const auto u = GridFunction::sample(unit, [](std::span<const double> x) { return std::sin(5 * x[0]); });
    const double m = domain_mean(u);
    std::vector<double> c(u.values().begin(), u.values().end());
    for (auto& v : c) v -= m;
    CHECK(std::abs(domain_mean(GridFunction(unit, c))) < 1e-12);
}

TEST_CASE("log weighted norm") {
    const auto disk = [](int res) { return build_grid(testing::euclid(2), DomainSpec::quasi_ball(1.0, res)); };
    const auto bump = [](const GridPtr& g) {
        return GridFunction::sample(g, [](std::span<const double> x) {
            const double r2 = (x[0] * x[0] + x[1] * x[1]) / 0.25;
            return r2 < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - r2)) : 0.0;
        });
    };
    CHECK(log_weighted_norm(GridFunction::zeros(disk(20)), 2.0, -1.0, 1.0) == 0.0);
    const double a = log_weighted_norm(bump(disk(100)), 2.0, -1.0, 1.0);
    const double b = log_weighted_norm(bump(disk(200)), 2.0, -1.0, 1.0);
    CHECK(std::isfinite(a));
    CHECK(rel(a, b) < 0.05);
    try {
        (void)log_weighted_norm(GridFunction::constant(disk(20), 1.0), 2.0, -1.0, 0.5);
        FAIL("expected SupportViolation");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::support_violation);
    }
}
