#pragma once

#include "fraclab/domain.hpp"
#include "fraclab/group.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <span>

namespace testing {

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

/// Deterministic uniform draws for property tests.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    double operator()(double a, double b) { return a + (b - a) * static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
    std::uint64_t bits() { return gen_(); }

private:
    std::mt19937_64 gen_;
};

inline fraclab::Geometry euclid(std::size_t n) {
    return {fraclab::GroupSpec::euclidean(n), fraclab::NormKind::euclidean};
}

inline fraclab::Geometry heis() { return {fraclab::GroupSpec::heisenberg(1), fraclab::NormKind::koranyi}; }

inline double gauss(std::span<const double> x, double width = 1.0) {
    double r2 = 0.0;
    for (double c : x) r2 += c * c;
    return std::exp(-r2 / (width * width));
}

}  // namespace testing
