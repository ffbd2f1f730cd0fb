#include "fraclab/kernels.hpp"

#include "fraclab/error.hpp"

#include <algorithm>
#include <array>

namespace fraclab::kernels {

namespace {

constexpr std::size_t kMaxOffsetTable = std::size_t{1} << 24;
constexpr std::size_t kMaxPackedCache = std::size_t{48} << 20;

double weight_of(double q, double exponent) noexcept { return exponent == 0.0 ? 1.0 : std::pow(q, -exponent); }

}  // namespace

std::string_view to_string(Backend backend) noexcept {
    return backend == Backend::reference ? "reference" : "parallel";
}

PairWeight::PairWeight(const Grid& grid, double exponent, Backend backend)
    : grid_(&grid), exponent_(exponent), backend_(backend) {
    if (backend == Backend::reference) {
        return;
    }
    const Geometry& geo = grid.geometry();
    const std::size_t n = grid.size();
    const std::size_t dim = grid.dimension();
    const Lattice& lat = grid.lattice();

    if (geo.group().law() == GroupLaw::abelian) {
        std::vector<std::ptrdiff_t> extent(dim);
        std::vector<std::ptrdiff_t> stride(dim);
        std::size_t total = 1;
        for (std::size_t k = dim; k-- > 0;) {
            extent[k] = 2 * static_cast<std::ptrdiff_t>(lat.counts[k]) - 1;
            stride[k] = static_cast<std::ptrdiff_t>(total);
            total *= static_cast<std::size_t>(extent[k]);
            if (total > kMaxOffsetTable) {
                break;
            }
        }
        if (total <= kMaxOffsetTable) {
            mode_ = Mode::offset_table;
            table_.resize(total);
            const auto count = static_cast<std::ptrdiff_t>(total);
#pragma omp parallel for schedule(static)
            for (std::ptrdiff_t t = 0; t < count; ++t) {
                std::array<double, kMaxDimension> d{};
                std::ptrdiff_t rest = t;
                for (std::size_t k = 0; k < dim; ++k) {
                    const std::ptrdiff_t o = rest / stride[k] - (lat.counts[k] - 1);
                    rest %= stride[k];
                    d[k] = static_cast<double>(o) * lat.step[k];
                }
                const double q = geo.norm_of(d.data());
                table_[static_cast<std::size_t>(t)] = q == 0.0 ? 0.0 : weight_of(q, exponent_);
            }
            key_.resize(n);
            base_.resize(n);
            for (std::size_t i = 0; i < n; ++i) {
                const auto idx = grid.lattice_index(i);
                std::ptrdiff_t key = 0;
                std::ptrdiff_t base = 0;
                for (std::size_t k = 0; k < dim; ++k) {
                    key += idx[k] * stride[k];
                    base += (idx[k] + lat.counts[k] - 1) * stride[k];
                }
                key_[i] = key;
                base_[i] = base;
            }
            return;
        }
    }

    const std::size_t packed = n * (n - 1) / 2;
    if (packed <= kMaxPackedCache) {
        mode_ = Mode::packed_cache;
        table_.resize(packed);
        const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 8)
        for (std::ptrdiff_t ii = 0; ii < count; ++ii) {
            const auto i = static_cast<std::size_t>(ii);
            double* row = table_.data() + packed_offset(i);
            for (std::size_t j = i + 1; j < n; ++j) {
                row[j - i - 1] = direct(i, j);
            }
        }
    }
}

double PairWeight::direct(std::size_t i, std::size_t j) const noexcept {
    const double q = grid_->geometry().relative_norm(grid_->point_data(i), grid_->point_data(j));
    return weight_of(q, exponent_);
}

double PairWeight::operator()(std::size_t i, std::size_t j) const noexcept {
    if (i == j) {
        return 0.0;
    }
    switch (mode_) {
        case Mode::offset_table: return table_[static_cast<std::size_t>(base_[i] - key_[j])];
        case Mode::packed_cache: {
            const auto [a, b] = std::minmax(i, j);
            return table_[packed_offset(a) + (b - a - 1)];
        }
        case Mode::direct: return direct(i, j);
    }
    return 0.0;
}

std::vector<double> dense_weights(const PairWeight& w) {
    const std::size_t n = w.grid().size();
    std::vector<double> out(n * n, 0.0);
    detail::for_rows(w.backend(), n, [&](std::size_t i) {
        w.for_each_in_row(i, [&](std::size_t j, double wij) { out[i * n + j] = wij; });
    });
    return out;
}

}  // namespace fraclab::kernels
