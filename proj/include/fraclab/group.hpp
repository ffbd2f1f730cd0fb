#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fraclab {

/// Upper bound on the topological dimension; lets hot loops use stack buffers.
inline constexpr std::size_t kMaxDimension = 15;

using Point = std::vector<double>;

enum class GroupLaw { abelian, heisenberg };

std::string_view to_string(GroupLaw law) noexcept;

/// A homogeneous Lie group on R^n: group law plus dilation weights.
///
/// Heisenberg(m) lives on R^{2m+1} with coordinates (x_1..x_m, y_1..y_m, t),
/// weights (1,...,1,2) and law
///   (z,t)(z',t') = (z+z', t+t'+ omega(z,z')/2),  omega(z,z') = sum_j x_j y'_j - y_j x'_j.
class GroupSpec {
public:
    static GroupSpec abelian(std::vector<double> weights);
    static GroupSpec euclidean(std::size_t n);
    static GroupSpec heisenberg(std::size_t m);

    [[nodiscard]] GroupLaw law() const noexcept { return law_; }
    [[nodiscard]] std::size_t dimension() const noexcept { return weights_.size(); }
    [[nodiscard]] std::span<const double> weights() const noexcept { return weights_; }
    /// m for Heisenberg(m); 0 for abelian groups.
    [[nodiscard]] std::size_t heisenberg_rank() const noexcept { return rank_; }
    /// Q = sum of the dilation weights.
    [[nodiscard]] double homogeneous_dimension() const noexcept { return q_; }
    [[nodiscard]] bool unit_weights() const noexcept;

    friend bool operator==(const GroupSpec&, const GroupSpec&) = default;

private:
    GroupSpec(GroupLaw law, std::vector<double> weights, std::size_t rank);

    GroupLaw law_;
    std::vector<double> weights_;
    std::size_t rank_;
    double q_;
};

enum class NormKind { euclidean, aniso_max, koranyi };

std::string_view to_string(NormKind kind) noexcept;

/// A homogeneous quasi-norm; the constructor rejects norms that are not
/// homogeneous for the given group (euclidean needs unit weights, koranyi
/// needs the Heisenberg law).
class QuasiNormSpec {
public:
    QuasiNormSpec(NormKind kind, const GroupSpec& group);

    [[nodiscard]] NormKind kind() const noexcept { return kind_; }

    friend bool operator==(const QuasiNormSpec&, const QuasiNormSpec&) = default;

private:
    NormKind kind_;
};

Point group_law(const GroupSpec& g, std::span<const double> x, std::span<const double> y);
Point inverse(const GroupSpec& g, std::span<const double> x);
Point dilate(const GroupSpec& g, double lambda, std::span<const double> x);
double homogeneous_dimension(const GroupSpec& g) noexcept;
double quasi_norm(const GroupSpec& g, const QuasiNormSpec& qn, std::span<const double> x);

/// The k with 2^k <= q(x) < 2^{k+1}.
int annulus_index(const GroupSpec& g, const QuasiNormSpec& qn, std::span<const double> x);

/// A validated (group, quasi-norm) pair with allocation-free evaluation
/// helpers for the pairwise kernels.
class Geometry {
public:
    Geometry(GroupSpec group, NormKind norm);
    Geometry(GroupSpec group, QuasiNormSpec norm);

    [[nodiscard]] const GroupSpec& group() const noexcept { return group_; }
    [[nodiscard]] const QuasiNormSpec& norm() const noexcept { return norm_; }
    [[nodiscard]] double homogeneous_dimension() const noexcept { return group_.homogeneous_dimension(); }
    [[nodiscard]] std::size_t dimension() const noexcept { return group_.dimension(); }

    /// q(x); no dimension check.
    [[nodiscard]] double norm_of(const double* x) const noexcept;
    /// q(y^{-1} x); no dimension check.
    [[nodiscard]] double relative_norm(const double* x, const double* y) const noexcept;

    friend bool operator==(const Geometry&, const Geometry&) = default;

private:
    GroupSpec group_;
    QuasiNormSpec norm_;
};

}  // namespace fraclab
