#pragma once

#include "fraclab/group.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace fraclab {

enum class DomainKind { box, quasi_ball, quasi_annulus };

std::string_view to_string(DomainKind kind) noexcept;

/// A bounded region of the group together with its sampling resolution
/// (cells per axis of the bounding box). Balls and annuli are centred at the
/// identity and measured with the active quasi-norm.
class DomainSpec {
public:
    static DomainSpec box(Point lo, Point hi, std::vector<int> resolution);
    static DomainSpec box(Point lo, Point hi, int resolution);
    static DomainSpec quasi_ball(double radius, int resolution);
    static DomainSpec quasi_annulus(double inner, double outer, int resolution);

    [[nodiscard]] DomainKind kind() const noexcept { return kind_; }
    [[nodiscard]] const Point& lo() const noexcept { return lo_; }
    [[nodiscard]] const Point& hi() const noexcept { return hi_; }
    [[nodiscard]] double inner_radius() const noexcept { return inner_; }
    [[nodiscard]] double outer_radius() const noexcept { return outer_; }
    /// Per-axis resolution; a single entry means "same on every axis".
    [[nodiscard]] const std::vector<int>& resolution() const noexcept { return resolution_; }
    [[nodiscard]] int resolution_along(std::size_t axis) const noexcept;

    [[nodiscard]] DomainSpec with_resolution(int resolution) const;
    /// D_lambda applied to the region; the resolution is kept, so the
    /// resulting grid is the image of this one under the dilation.
    [[nodiscard]] DomainSpec dilated(const GroupSpec& g, double lambda) const;

    /// Axis-aligned bounding box of the region for the given group.
    [[nodiscard]] std::pair<Point, Point> bounding_box(const GroupSpec& g) const;

private:
    DomainSpec() = default;

    DomainKind kind_ = DomainKind::box;
    Point lo_;
    Point hi_;
    double inner_ = 0.0;
    double outer_ = 0.0;
    std::vector<int> resolution_;
};

/// Uniform tensor lattice of the bounding box: cell centre along axis k is
/// lo[k] + (i + 1/2) * step[k], i in [0, counts[k]).
struct Lattice {
    Point lo;
    std::vector<double> step;
    std::vector<int> counts;
};

/// Midpoint grid of a domain: the lattice cells whose centres lie in the
/// domain, stored in lexicographic lattice order. Immutable.
class Grid {
public:
    [[nodiscard]] const Geometry& geometry() const noexcept { return geometry_; }
    [[nodiscard]] const DomainSpec& domain() const noexcept { return domain_; }
    [[nodiscard]] const Lattice& lattice() const noexcept { return lattice_; }
    [[nodiscard]] std::size_t size() const noexcept { return norms_.size(); }
    [[nodiscard]] std::size_t dimension() const noexcept { return geometry_.dimension(); }
    [[nodiscard]] double cell_volume() const noexcept { return cell_volume_; }
    /// |Omega|_grid = cell count * cell volume.
    [[nodiscard]] double measure() const noexcept { return cell_volume_ * static_cast<double>(size()); }

    [[nodiscard]] std::span<const double> point(std::size_t i) const noexcept {
        return {coords_.data() + i * dimension(), dimension()};
    }
    [[nodiscard]] const double* point_data(std::size_t i) const noexcept { return coords_.data() + i * dimension(); }
    [[nodiscard]] std::span<const std::int32_t> lattice_index(std::size_t i) const noexcept {
        return {index_.data() + i * dimension(), dimension()};
    }
    /// q(x_i), cached at construction.
    [[nodiscard]] double norm_at(std::size_t i) const noexcept { return norms_[i]; }
    [[nodiscard]] std::span<const double> norms() const noexcept { return norms_; }

    /// Cells i with keep[i] set, same lattice and order.
    [[nodiscard]] std::shared_ptr<const Grid> subset(const std::vector<bool>& keep) const;

    friend std::shared_ptr<const Grid> build_grid(const Geometry& geometry, const DomainSpec& domain);
    friend std::shared_ptr<const Grid> dilate_grid(const Grid& grid, double lambda);

private:
    Grid(Geometry geometry, DomainSpec domain) : geometry_(std::move(geometry)), domain_(std::move(domain)) {}

    Geometry geometry_;
    DomainSpec domain_;
    Lattice lattice_;
    std::vector<double> coords_;
    std::vector<std::int32_t> index_;
    std::vector<double> norms_;
    double cell_volume_ = 0.0;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr build_grid(const Geometry& geometry, const DomainSpec& domain);

/// The image of `grid` under D_lambda, cell for cell (no re-masking), so a
/// grid function moves to it with GridFunction::on.
GridPtr dilate_grid(const Grid& grid, double lambda);

/// Real values on the cells of a grid.
class GridFunction {
public:
    GridFunction(GridPtr grid, std::vector<double> values);

    static GridFunction zeros(GridPtr grid);
    static GridFunction constant(GridPtr grid, double value);
    static GridFunction sample(GridPtr grid, const std::function<double(std::span<const double>)>& fn);

    [[nodiscard]] const Grid& grid() const noexcept { return *grid_; }
    [[nodiscard]] const GridPtr& grid_ptr() const noexcept { return grid_; }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const noexcept { return values_[i]; }

    /// Same values, different grid with the same cell count (matched grids).
    [[nodiscard]] GridFunction on(GridPtr grid) const;
    [[nodiscard]] GridFunction scaled(double c) const;

private:
    GridPtr grid_;
    std::vector<double> values_;
};

/// r_{Omega,q} = sup{q(x) : x in Omega}. All shipped quasi-norms increase
/// with each |x_i|, so the supremum over a box sits at the corner of largest
/// |x_i| per axis; balls and annuli give their outer radius.
double inner_quasi_radius(const Geometry& geometry, const DomainSpec& domain);

/// CSV with header `x1,...,xn,value`, one row per cell in grid order.
void write_csv(std::ostream& out, const GridFunction& u);
/// Reads a CSV written by write_csv; cell coordinates must match `grid`.
GridFunction read_csv(std::istream& in, GridPtr grid);

}  // namespace fraclab
