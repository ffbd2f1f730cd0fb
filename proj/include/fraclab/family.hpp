#pragma once

#include "fraclab/domain.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace fraclab {

enum class FamilyKind { gaussian_bumps, radial_powers_cutoff, random_smooth };

std::string_view to_string(FamilyKind kind) noexcept;
FamilyKind family_kind_from_string(std::string_view name);

/// Smooth, compactly supported test functions. Every member vanishes within
/// 10% of the box width from the boundary of the grid's bounding box.
struct TestFamily {
    FamilyKind kind = FamilyKind::gaussian_bumps;
    int count = 1;
    std::uint64_t seed = 0;
    /// Members vanish where q(x) <= origin_clearance (0 = no constraint).
    double origin_clearance = 0.0;
};

struct FamilyMember {
    std::string id;
    GridFunction u;
};

/// Samples every member on `grid`. Deterministic in (family, grid).
std::vector<FamilyMember> family_members(const TestFamily& family, const GridPtr& grid);

/// exp(1 - 1/(1 - t^2)) on |t| < 1, zero elsewhere.
double bump(double t) noexcept;

/// C^inf step: 0 for t <= 0, 1 for t >= 1.
double smooth_step(double t) noexcept;

/// Uniform double in [0,1) from the top 53 bits.
double uniform01(std::uint64_t bits) noexcept;

}  // namespace fraclab
