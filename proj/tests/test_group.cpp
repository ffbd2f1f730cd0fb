#include "fraclab/error.hpp"
#include "fraclab/group.hpp"
#include "fraclab/domain.hpp"

#include "helpers.hpp"
#include "oracle_values.hpp"

#include <doctest.h>

using namespace fraclab;
using testing::Rng;

namespace {

struct Pair {
    GroupSpec g;
    NormKind kind;
};

std::vector<Pair> supported_pairs() {
    return {{GroupSpec::euclidean(2), NormKind::euclidean},
            {GroupSpec::euclidean(3), NormKind::aniso_max},
            {GroupSpec::abelian({1.0, 2.0}), NormKind::aniso_max},
            {GroupSpec::abelian({0.5, 1.5, 3.0}), NormKind::aniso_max},
            {GroupSpec::heisenberg(1), NormKind::koranyi},
            {GroupSpec::heisenberg(1), NormKind::aniso_max},
            {GroupSpec::heisenberg(2), NormKind::koranyi}};
}

Point random_point(Rng& rng, std::size_t n) {
    Point x(n);
    for (auto& c : x) c = rng(-3.0, 3.0);
    return x;
}

}  // namespace

TEST_CASE("group law examples") {
    const auto r2 = GroupSpec::euclidean(2);
    CHECK(group_law(r2, Point{1, 2}, Point{3, 4}) == Point{4, 6});
    const auto h1 = GroupSpec::heisenberg(1);
    CHECK(group_law(h1, Point{1, 0, 0}, Point{0, 1, 0}) == Point{1, 1, 0.5});
    const Point x{0.3, -1.2, 2.5};
    CHECK(group_law(h1, x, Point{0, 0, 0}) == x);
    CHECK(group_law(h1, Point{0, 0, 0}, x) == x);
    CHECK_THROWS_AS(group_law(r2, Point{1, 2, 3}, Point{1, 2}), Error);
}

TEST_CASE("inverse") {
    CHECK(inverse(GroupSpec::euclidean(2), Point{3, -4}) == Point{-3, 4});
    const auto h1 = GroupSpec::heisenberg(1);
    const Point x{1, 1, 0.5};
    CHECK(group_law(h1, x, inverse(h1, x)) == Point{0, 0, 0});
    CHECK(inverse(h1, Point{0, 0, 0}) == Point{-0.0, -0.0, -0.0});
}

TEST_CASE("dilate and homogeneous dimension") {
    CHECK(dilate(GroupSpec::euclidean(2), 2.0, Point{3, 4}) == Point{6, 8});
    CHECK(dilate(GroupSpec::heisenberg(1), 3.0, Point{1, 1, 1}) == Point{3, 3, 9});
    CHECK(dilate(GroupSpec::heisenberg(1), 1.0, Point{0.7, 2, -1}) == Point{0.7, 2, -1});
    CHECK_THROWS_AS(dilate(GroupSpec::euclidean(2), 0.0, Point{1, 1}), Error);
    CHECK_THROWS_AS(dilate(GroupSpec::euclidean(2), -1.0, Point{1, 1}), Error);
    CHECK(homogeneous_dimension(GroupSpec::euclidean(2)) == 2.0);
    CHECK(homogeneous_dimension(GroupSpec::heisenberg(1)) == 4.0);
    CHECK(homogeneous_dimension(GroupSpec::abelian({1, 2})) == 3.0);
    CHECK(GroupSpec::heisenberg(2).homogeneous_dimension() == 6.0);
}

TEST_CASE("quasi-norm examples and compatibility") {
    const auto r2 = GroupSpec::euclidean(2);
    CHECK(quasi_norm(r2, QuasiNormSpec(NormKind::euclidean, r2), Point{3, 4}) == 5.0);
    const auto h1 = GroupSpec::heisenberg(1);
    const QuasiNormSpec kor(NormKind::koranyi, h1);
    CHECK(quasi_norm(h1, kor, Point{3, 4, 0}) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(quasi_norm(h1, kor, dilate(h1, 2.0, Point{3, 4, 0})) == doctest::Approx(10.0).epsilon(1e-15));
    try {
        (void)QuasiNormSpec(NormKind::koranyi, r2);
        FAIL("expected IncompatibleNorm");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::incompatible_norm);
        CHECK(e.message() == "koranyi requires heisenberg");
    }
    CHECK_THROWS_AS(QuasiNormSpec(NormKind::euclidean, GroupSpec::abelian({1, 2})), Error);
    CHECK_THROWS_AS(QuasiNormSpec(NormKind::euclidean, h1), Error);
}

TEST_CASE("annulus index") {
    const Geometry geo = testing::euclid(2);
    const auto& g = geo.group();
    const auto& qn = geo.norm();
    CHECK(annulus_index(g, qn, Point{3, 0}) == 1);
    CHECK(annulus_index(g, qn, Point{0.3, 0.4}) == -1);
    CHECK(annulus_index(g, qn, Point{1, 0}) == 0);
    CHECK(annulus_index(g, qn, Point{0.25, 0}) == -2);
    CHECK_THROWS_AS(annulus_index(g, qn, Point{0, 0}), Error);
}

TEST_CASE("inner quasi-radius") {
    CHECK(inner_quasi_radius(testing::euclid(2), DomainSpec::quasi_ball(2.0, 10)) == 2.0);
    CHECK(inner_quasi_radius(testing::euclid(2), DomainSpec::box({1, 1}, {2, 2}, 10)) ==
          doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-15));
    // Exact corner value; the dense-grid maximum approaches it from below.
    const double r = inner_quasi_radius(testing::heis(), DomainSpec::box({-1, -1, -1}, {1, 1, 1}, 200));
    CHECK(r == doctest::Approx(oracle::koranyi_box_radius_sup).epsilon(1e-15));
    CHECK(oracle::koranyi_box_radius_grid200 < r);
    CHECK(r - oracle::koranyi_box_radius_grid200 < 0.02);
}
