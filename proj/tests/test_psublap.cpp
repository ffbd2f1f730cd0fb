#include "fraclab/error.hpp"
#include "fraclab/psublap.hpp"

#include "helpers.hpp"
#include "oracle_values.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace fraclab;
using testing::rel;
using testing::Rng;

namespace {

GridFunction random_function(const GridPtr& g, Rng& rng) {
    std::vector<double> v(g->size());
    for (auto& x : v) x = rng(-1.0, 1.0);
    return GridFunction(g, std::move(v));
}

GridFunction hat(const GridPtr& g) {
    return GridFunction::sample(g, [](std::span<const double> x) { return std::max(0.0, 1.0 - std::abs(x[0])); });
}

}  // namespace

TEST_CASE("system params validation") {
    CHECK_NOTHROW(SystemParams({0.5}, {2.0}, {2.0}, 3.0, 2.0));
    CHECK_THROWS_AS(SystemParams({0.5}, {2.0}, {1.0}, 3.0, 2.0), Error);       // sum alpha/p != 1
    CHECK_THROWS_AS(SystemParams({0.5}, {2.0}, {2.0}, 2.0, 2.0), Error);       // theta <= Q/(sp)
    CHECK_THROWS_AS(SystemParams({0.9}, {3.0}, {3.0}, 9.0, 2.0), Error);       // Q <= sp
    CHECK_THROWS_AS(SystemParams({0.5, 0.5}, {2.0}, {2.0}, 9.0, 2.0), Error);  // lengths
}

TEST_CASE("p-sublaplacian basic properties") {
    const auto g = build_grid(testing::euclid(2), DomainSpec::box({-1, -1}, {1, 1}, 12));
    for (double v : p_sublaplacian(GridFunction::zeros(g), 0.5, 3.0).values()) CHECK(v == 0.0);
    Rng rng(3);
    for (int t = 0; t < 10; ++t) {
        const double p = rng(1.1, 4.0);
        const double s = rng(0.1, 0.9);
        const auto u = random_function(g, rng);
        const auto lu = p_sublaplacian(u, s, p);
        const auto vals = u.values();
        const auto imax = static_cast<std::size_t>(std::max_element(vals.begin(), vals.end()) - vals.begin());
        const auto imin = static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
        CHECK(lu[imax] >= 0.0);
        CHECK(lu[imin] <= 0.0);
        const auto neg = p_sublaplacian(u.scaled(-1.0), s, p);
        for (std::size_t i = 0; i < g->size(); ++i) CHECK(neg[i] == -lu[i]);
    }
    const auto u = random_function(g, rng);
    const auto v = random_function(g, rng);
    std::vector<double> sum(g->size());
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = u[i] + v[i];
    const auto lsum = p_sublaplacian(GridFunction(g, sum), 0.4, 2.0);
    const auto lu = p_sublaplacian(u, 0.4, 2.0);
    const auto lv = p_sublaplacian(v, 0.4, 2.0);
    double scale = 0.0, err = 0.0;
    for (std::size_t i = 0; i < sum.size(); ++i) {
        scale = std::max(scale, std::abs(lsum[i]));
        err = std::max(err, std::abs(lsum[i] - lu[i] - lv[i]));
    }
    CHECK(err <= 1e-12 * scale);
}

TEST_CASE("p = 2 operator is the gradient of the quadratic form") {
    // hat on [-1,1] inside the box [-4,4], s = 0.5
    const auto g = build_grid(testing::euclid(1), DomainSpec::box({-4}, {4}, 96));
    const auto u = hat(g);
    const auto lu = p_sublaplacian(u, 0.5, 2.0);
    const double vol = g->cell_volume();
    const double h = 1e-3;
    for (std::size_t i : {30u, 44u, 48u, 51u, 70u}) {
        std::vector<double> up(u.values().begin(), u.values().end()), dn = up;
        up[i] += h;
        dn[i] -= h;
        const double grad = (gagliardo_energy(GridFunction(g, up), 0.5, 2.0) -
                             gagliardo_energy(GridFunction(g, dn), 0.5, 2.0)) /
                            (2.0 * h);
        CHECK(rel(2.0 * vol * lu[i], grad) < 1e-6);
    }
}

TEST_CASE("dirichlet box evaluation matches the zero extension") {
    const auto omega = build_grid(testing::euclid(2), DomainSpec::quasi_ball(1.0, 10));
    const auto box = dirichlet_box(omega, 1.0);
    CHECK(box.box->size() > omega->size());
    const auto u = GridFunction::sample(omega, [](std::span<const double> x) { return 1.0 - x[0] * x[0] - x[1] * x[1]; });
    const auto direct = p_sublaplacian_dirichlet(u, box, 0.6, 2.5);
    const auto full = restrict_to_omega(p_sublaplacian(extend_by_zero(u, box), 0.6, 2.5), box);
    for (std::size_t i = 0; i < omega->size(); ++i) CHECK(rel(direct[i], full[i]) < 1e-12);
    const auto other = build_grid(testing::euclid(2), DomainSpec::quasi_ball(1.0, 12));
    CHECK_THROWS_AS(extend_by_zero(GridFunction::zeros(other), box), Error);
}

TEST_CASE("weak form residual") {
    const auto omega = build_grid(testing::euclid(1), DomainSpec::box({-1}, {1}, 24));
    const SystemParams one({0.4}, {2.0}, {2.0}, 3.0, 1.0);
    const auto pair = first_dirichlet_eigenpair(omega, 0.4);
    CHECK(pair.lambda1 > 0.0);
    for (double v : pair.u.values()) CHECK(v >= -1e-14);
    const auto omega_fn = GridFunction::constant(pair.box.box, pair.lambda1);
    CHECK(weak_form_residual({pair.u}, {omega_fn}, one)[0] <= 1e-6);
    CHECK(weak_form_residual({GridFunction::zeros(pair.box.box)}, {omega_fn}, one)[0] == 0.0);

    const SystemParams two({0.3, 0.3}, {2.0, 3.0}, {1.0, 1.5}, 20.0, 1.0);
    Rng rng(17);
    for (int t = 0; t < 5; ++t) {
        const auto g = pair.box.box;
        auto w = random_function(g, rng);
        const auto res = weak_form_residual({random_function(g, rng), random_function(g, rng)}, {w, w}, two);
        for (double r : res) {
            CHECK(r >= 0.0);
            CHECK(r <= 1.0);
        }
    }
}

TEST_CASE("system lyapunov quantity") {
    const auto g = build_grid(testing::euclid(2), DomainSpec::quasi_ball(1.0, 16));
    const SystemParams one({0.5}, {2.0}, {2.0}, 3.0, 2.0);
    const auto w = GridFunction::sample(g, [](std::span<const double> x) { return 1.0 + x[0] * x[0]; });
    const auto rep = lyapunov_system_quantity({w}, one, 1.0);
    double norm = 0.0;
    for (double v : w.values()) norm += v * v * v * g->cell_volume();
    CHECK(rel(rep.lhs, norm) < 1e-13);  // ||w||_3^3
    CHECK(rep.exponent == doctest::Approx(2.0 - 3.0 * 1.0));
    CHECK(rel(lyapunov_system_quantity({w}, one, 2.0).scale_invariant_value,
              rep.lhs / std::pow(2.0, rep.exponent)) < 1e-14);
    const auto zero = lyapunov_system_quantity({GridFunction::zeros(g)}, one, 1.0);
    CHECK(zero.lhs == 0.0);
    CHECK(zero.degenerate);
    CHECK_THROWS_AS(lyapunov_system_quantity({w.scaled(-1.0)}, one, 1.0), Error);
}

TEST_CASE("eigenvalue lower bound formula") {
    const SystemParams sym({0.5, 0.5}, {2.0, 2.0}, {1.0, 1.0}, 5.0, 2.0);
    CHECK(rel(eigen_lower_bound_formula(sym, 0.7, {3.0}, 0, 1.0, 1.5), oracle::eigen_bound_symmetric) < 1e-12);
    const SystemParams asym({0.4, 0.6}, {3.0, 1.5}, {1.5, 0.75}, 6.0, 4.0);
    CHECK(rel(eigen_lower_bound_formula(asym, 2.3, {1.7}, 0, 2.0, 0.8), oracle::eigen_bound_asymmetric) < 1e-12);

    const SystemParams one({0.5}, {2.0}, {2.0}, 3.0, 2.0);
    const double collapsed = (1.0 / 2.0) * std::pow(std::pow(1.2, 3.0 * 1.0 - 2.0) * 0.9, -1.0 / 3.0);
    CHECK(rel(eigen_lower_bound_formula(one, 0.9, {}, 0, 1.0, 1.2), collapsed) < 1e-14);

    const auto g = build_grid(testing::euclid(2), DomainSpec::quasi_ball(1.0, 10));
    try {
        (void)eigen_lower_bound_formula(one, GridFunction::zeros(g), {}, 0, 1.0, 1.0);
        FAIL("expected ZeroWeight");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::zero_weight);
    }
    double prev = eigen_lower_bound_formula(sym, 0.1, {0.5}, 0, 1.0, 1.5);
    for (double t = 0.2; t < 3.0; t += 0.3) {
        const double a = eigen_lower_bound_formula(sym, t, {0.5}, 0, 1.0, 1.5);
        const double b = eigen_lower_bound_formula(sym, 0.1, {0.5 + t}, 0, 1.0, 1.5);
        CHECK(a < prev);
        CHECK(b < eigen_lower_bound_formula(sym, 0.1, {0.5}, 0, 1.0, 1.5));
        prev = a;
    }
}
