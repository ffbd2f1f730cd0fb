#include "fraclab/domain.hpp"

#include "fraclab/error.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

namespace fraclab {

namespace {

constexpr std::size_t kMaxLatticeCells = std::size_t{1} << 26;

bool inside(const DomainSpec& domain, double q) noexcept {
    switch (domain.kind()) {
        case DomainKind::box: return true;
        case DomainKind::quasi_ball: return q < domain.outer_radius();
        case DomainKind::quasi_annulus: return q > domain.inner_radius() && q < domain.outer_radius();
    }
    return false;
}

}  // namespace

std::string_view to_string(DomainKind kind) noexcept {
    switch (kind) {
        case DomainKind::box: return "box";
        case DomainKind::quasi_ball: return "ball";
        case DomainKind::quasi_annulus: return "annulus";
    }
    return "unknown";
}

DomainSpec DomainSpec::box(Point lo, Point hi, std::vector<int> resolution) {
    if (lo.size() != hi.size() || lo.empty()) {
        throw Error(ErrorCode::dimension_mismatch, "box corners must have the same positive dimension");
    }
    for (std::size_t k = 0; k < lo.size(); ++k) {
        if (!(lo[k] < hi[k])) {
            throw Error(ErrorCode::empty_domain, "box requires lo < hi on every axis");
        }
    }
    if (resolution.size() != 1 && resolution.size() != lo.size()) {
        throw Error(ErrorCode::dimension_mismatch, "resolution must have one entry or one per axis");
    }
    DomainSpec d;
    d.kind_ = DomainKind::box;
    d.lo_ = std::move(lo);
    d.hi_ = std::move(hi);
    d.resolution_ = std::move(resolution);
    return d;
}

DomainSpec DomainSpec::box(Point lo, Point hi, int resolution) {
    return box(std::move(lo), std::move(hi), std::vector<int>{resolution});
}

DomainSpec DomainSpec::quasi_ball(double radius, int resolution) {
    if (!(radius > 0.0)) {
        throw Error(ErrorCode::empty_domain, "ball radius must be positive");
    }
    DomainSpec d;
    d.kind_ = DomainKind::quasi_ball;
    d.outer_ = radius;
    d.resolution_ = {resolution};
    return d;
}

DomainSpec DomainSpec::quasi_annulus(double inner, double outer, int resolution) {
    if (!(inner > 0.0) || !(inner < outer)) {
        throw Error(ErrorCode::empty_domain, "annulus requires 0 < r < R");
    }
    DomainSpec d;
    d.kind_ = DomainKind::quasi_annulus;
    d.inner_ = inner;
    d.outer_ = outer;
    d.resolution_ = {resolution};
    return d;
}

int DomainSpec::resolution_along(std::size_t axis) const noexcept {
    return resolution_.size() == 1 ? resolution_.front() : resolution_[axis];
}

DomainSpec DomainSpec::with_resolution(int resolution) const {
    DomainSpec d = *this;
    d.resolution_ = {resolution};
    return d;
}

DomainSpec DomainSpec::dilated(const GroupSpec& g, double lambda) const {
    if (!(lambda > 0.0)) {
        throw Error(ErrorCode::non_positive_scale, "dilation factor must be positive");
    }
    DomainSpec d = *this;
    if (kind_ == DomainKind::box) {
        d.lo_ = dilate(g, lambda, lo_);
        d.hi_ = dilate(g, lambda, hi_);
    } else {
        d.inner_ = inner_ * lambda;
        d.outer_ = outer_ * lambda;
    }
    return d;
}

std::pair<Point, Point> DomainSpec::bounding_box(const GroupSpec& g) const {
    if (kind_ == DomainKind::box) {
        if (lo_.size() != g.dimension()) {
            throw Error(ErrorCode::dimension_mismatch, "box dimension does not match the group");
        }
        return {lo_, hi_};
    }
    // {q < R} lies in |x_i| <= R^{nu_i} for euclidean, aniso-max and Koranyi.
    Point hi(g.dimension());
    for (std::size_t k = 0; k < hi.size(); ++k) {
        hi[k] = std::pow(outer_, g.weights()[k]);
    }
    Point lo(hi.size());
    std::transform(hi.begin(), hi.end(), lo.begin(), [](double v) { return -v; });
    return {lo, hi};
}

GridPtr build_grid(const Geometry& geometry, const DomainSpec& domain) {
    const std::size_t n = geometry.dimension();
    if (domain.resolution().size() != 1 && domain.resolution().size() != n) {
        throw Error(ErrorCode::dimension_mismatch, "resolution entries do not match the group dimension");
    }
    auto [lo, hi] = domain.bounding_box(geometry.group());

    std::shared_ptr<Grid> grid(new Grid(geometry, domain));
    Lattice& lat = grid->lattice_;
    lat.lo = lo;
    lat.step.resize(n);
    lat.counts.resize(n);
    std::size_t total = 1;
    double volume = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        const int res = domain.resolution_along(k);
        if (res < 2) {
            throw Error(ErrorCode::inadmissible_params, "resolution must be at least 2 per axis");
        }
        lat.counts[k] = res;
        lat.step[k] = (hi[k] - lo[k]) / res;
        volume *= lat.step[k];
        total *= static_cast<std::size_t>(res);
        if (total > kMaxLatticeCells) {
            throw Error(ErrorCode::inadmissible_params, "lattice too large");
        }
    }
    grid->cell_volume_ = volume;

    std::vector<std::int32_t> idx(n, 0);
    Point x(n);
    for (std::size_t cell = 0; cell < total; ++cell) {
        for (std::size_t k = 0; k < n; ++k) {
            x[k] = lat.lo[k] + (idx[k] + 0.5) * lat.step[k];
        }
        const double q = geometry.norm_of(x.data());
        if (inside(domain, q)) {
            grid->coords_.insert(grid->coords_.end(), x.begin(), x.end());
            grid->index_.insert(grid->index_.end(), idx.begin(), idx.end());
            grid->norms_.push_back(q);
        }
        // lexicographic: last axis fastest
        for (std::size_t k = n; k-- > 0;) {
            if (++idx[k] < lat.counts[k]) {
                break;
            }
            idx[k] = 0;
        }
    }
    if (grid->norms_.empty()) {
        throw Error(ErrorCode::empty_domain, "no cell centre falls inside the domain");
    }
    return grid;
}

GridPtr Grid::subset(const std::vector<bool>& keep) const {
    if (keep.size() != size()) {
        throw Error(ErrorCode::dimension_mismatch, "subset mask length differs from the grid size");
    }
    std::shared_ptr<Grid> out(new Grid(geometry_, domain_));
    out->lattice_ = lattice_;
    out->cell_volume_ = cell_volume_;
    const std::size_t n = dimension();
    for (std::size_t i = 0; i < size(); ++i) {
        if (!keep[i]) {
            continue;
        }
        out->coords_.insert(out->coords_.end(), coords_.begin() + i * n, coords_.begin() + (i + 1) * n);
        out->index_.insert(out->index_.end(), index_.begin() + i * n, index_.begin() + (i + 1) * n);
        out->norms_.push_back(norms_[i]);
    }
    if (out->norms_.empty()) {
        throw Error(ErrorCode::empty_domain, "subset selects no cells");
    }
    return out;
}

GridPtr dilate_grid(const Grid& grid, double lambda) {
    const GroupSpec& g = grid.geometry().group();
    std::shared_ptr<Grid> out(new Grid(grid.geometry(), grid.domain().dilated(g, lambda)));
    out->lattice_ = grid.lattice_;
    out->index_ = grid.index_;
    const std::size_t n = grid.dimension();
    std::vector<double> factor(n);
    double volume = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        factor[k] = std::pow(lambda, g.weights()[k]);
        out->lattice_.lo[k] *= factor[k];
        out->lattice_.step[k] *= factor[k];
        volume *= out->lattice_.step[k];
    }
    out->cell_volume_ = volume;
    out->coords_.resize(grid.coords_.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            out->coords_[i * n + k] = factor[k] * grid.coords_[i * n + k];
        }
    }
    out->norms_.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out->norms_[i] = grid.geometry().norm_of(out->point_data(i));
    }
    return out;
}

GridFunction::GridFunction(GridPtr grid, std::vector<double> values) : grid_(std::move(grid)), values_(std::move(values)) {
    if (!grid_) {
        throw Error(ErrorCode::empty_domain, "grid function needs a grid");
    }
    if (values_.size() != grid_->size()) {
        throw Error(ErrorCode::dimension_mismatch, "value count " + std::to_string(values_.size()) +
                                                       " differs from cell count " + std::to_string(grid_->size()));
    }
    for (double v : values_) {
        if (!std::isfinite(v)) {
            throw Error(ErrorCode::inadmissible_params, "grid function values must be finite");
        }
    }
}

GridFunction GridFunction::zeros(GridPtr grid) { return constant(std::move(grid), 0.0); }

GridFunction GridFunction::constant(GridPtr grid, double value) {
    const std::size_t n = grid ? grid->size() : 0;
    return GridFunction(std::move(grid), std::vector<double>(n, value));
}

GridFunction GridFunction::sample(GridPtr grid, const std::function<double(std::span<const double>)>& fn) {
    std::vector<double> values(grid->size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        values[i] = fn(grid->point(i));
    }
    return GridFunction(std::move(grid), std::move(values));
}

GridFunction GridFunction::on(GridPtr grid) const { return GridFunction(std::move(grid), values_); }

GridFunction GridFunction::scaled(double c) const {
    std::vector<double> v(values_);
    for (double& x : v) {
        x *= c;
    }
    return GridFunction(grid_, std::move(v));
}

double inner_quasi_radius(const Geometry& geometry, const DomainSpec& domain) {
    if (domain.kind() != DomainKind::box) {
        return domain.outer_radius();
    }
    const auto& lo = domain.lo();
    const auto& hi = domain.hi();
    if (lo.size() != geometry.dimension()) {
        throw Error(ErrorCode::dimension_mismatch, "box dimension does not match the group");
    }
    Point corner(lo.size());
    for (std::size_t k = 0; k < corner.size(); ++k) {
        corner[k] = std::max(std::abs(lo[k]), std::abs(hi[k]));
    }
    return geometry.norm_of(corner.data());
}

void write_csv(std::ostream& out, const GridFunction& u) {
    const Grid& grid = u.grid();
    const std::size_t n = grid.dimension();
    for (std::size_t k = 0; k < n; ++k) {
        out << 'x' << (k + 1) << ',';
    }
    out << "value\n";
    const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (double c : grid.point(i)) {
            out << c << ',';
        }
        out << u[i] << '\n';
    }
    out.precision(old_precision);
}

GridFunction read_csv(std::istream& in, GridPtr grid) {
    const std::size_t n = grid->dimension();
    std::string line;
    if (!std::getline(in, line)) {
        throw Error(ErrorCode::io_error, "missing CSV header");
    }
    std::string expected;
    for (std::size_t k = 0; k < n; ++k) {
        expected += "x" + std::to_string(k + 1) + ",";
    }
    expected += "value";
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != expected) {
        throw Error(ErrorCode::io_error, "CSV header '" + line + "' does not match '" + expected + "'");
    }
    std::vector<double> values;
    values.reserve(grid->size());
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") {
            continue;
        }
        if (row >= grid->size()) {
            throw Error(ErrorCode::io_error, "CSV has more rows than the grid has cells");
        }
        std::stringstream ss(line);
        std::string field;
        std::vector<double> fields;
        while (std::getline(ss, field, ',')) {
            try {
                std::size_t used = 0;
                fields.push_back(std::stod(field, &used));
            } catch (const std::exception&) {
                throw Error(ErrorCode::io_error, "row " + std::to_string(row + 1) + ": bad number '" + field + "'");
            }
        }
        if (fields.size() != n + 1) {
            throw Error(ErrorCode::io_error, "row " + std::to_string(row + 1) + ": expected " +
                                                 std::to_string(n + 1) + " fields");
        }
        const auto p = grid->point(row);
        for (std::size_t k = 0; k < n; ++k) {
            if (std::abs(fields[k] - p[k]) > 1e-9 * (1.0 + std::abs(p[k]))) {
                throw Error(ErrorCode::io_error, "row " + std::to_string(row + 1) + ": coordinates do not match the grid");
            }
        }
        values.push_back(fields[n]);
        ++row;
    }
    if (row != grid->size()) {
        throw Error(ErrorCode::io_error, "CSV has " + std::to_string(row) + " rows, grid has " +
                                             std::to_string(grid->size()) + " cells");
    }
    return GridFunction(std::move(grid), std::move(values));
}

}  // namespace fraclab
