#pragma once

// Pairwise singular-kernel sums over the cells of a grid.
//
// Every seminorm, Riesz potential and p-sub-Laplacian in the library is a
// row loop of the form  sum_{j != i} term(i, j) * q(x_j^{-1} x_i)^{-e}.
// Two backends share one summation order:
//   reference - serial, evaluates q(x_j^{-1} x_i) from coordinates per pair;
//   parallel  - OpenMP over rows, weights from a lattice-offset table
//               (abelian groups) or a packed symmetric cache.
// Row partial sums are accumulated in increasing j and combined in
// increasing i, so results are independent of the thread count.

#include "fraclab/domain.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

namespace fraclab::kernels {

enum class Backend { reference, parallel };

std::string_view to_string(Backend backend) noexcept;

/// Pair weights w(i, j) = q(x_j^{-1} x_i)^{-exponent} for i != j.
class PairWeight {
public:
    enum class Mode { direct, offset_table, packed_cache };

    PairWeight(const Grid& grid, double exponent, Backend backend = Backend::parallel);

    [[nodiscard]] const Grid& grid() const noexcept { return *grid_; }
    [[nodiscard]] double exponent() const noexcept { return exponent_; }
    [[nodiscard]] Backend backend() const noexcept { return backend_; }
    [[nodiscard]] Mode mode() const noexcept { return mode_; }

    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const noexcept;

    /// Calls fn(j, w(i, j)) for every j != i in increasing order.
    template <class Fn>
    void for_each_in_row(std::size_t i, Fn&& fn) const;

private:
    [[nodiscard]] double direct(std::size_t i, std::size_t j) const noexcept;
    [[nodiscard]] std::size_t packed_offset(std::size_t row) const noexcept {
        const std::size_t n = grid_->size();
        return row * n - row * (row + 1) / 2;
    }

    const Grid* grid_;
    double exponent_;
    Backend backend_;
    Mode mode_ = Mode::direct;
    std::vector<double> table_;
    std::vector<std::ptrdiff_t> key_;
    std::vector<std::ptrdiff_t> base_;
};

template <class Fn>
void PairWeight::for_each_in_row(std::size_t i, Fn&& fn) const {
    const std::size_t n = grid_->size();
    switch (mode_) {
        case Mode::offset_table: {
            const double* row = table_.data() + base_[i];
            for (std::size_t j = 0; j < i; ++j) {
                fn(j, row[-key_[j]]);
            }
            for (std::size_t j = i + 1; j < n; ++j) {
                fn(j, row[-key_[j]]);
            }
            break;
        }
        case Mode::packed_cache: {
            for (std::size_t j = 0; j < i; ++j) {
                fn(j, table_[packed_offset(j) + (i - j - 1)]);
            }
            const double* row = table_.data() + packed_offset(i);
            for (std::size_t j = i + 1; j < n; ++j) {
                fn(j, row[j - i - 1]);
            }
            break;
        }
        case Mode::direct: {
            for (std::size_t j = 0; j < i; ++j) {
                fn(j, direct(i, j));
            }
            for (std::size_t j = i + 1; j < n; ++j) {
                fn(j, direct(i, j));
            }
            break;
        }
    }
}

namespace detail {

template <class RowFn>
void for_rows(Backend backend, std::size_t n, RowFn&& row_fn) {
    if (backend == Backend::parallel) {
        const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 8)
        for (std::ptrdiff_t i = 0; i < count; ++i) {
            row_fn(static_cast<std::size_t>(i));
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            row_fn(i);
        }
    }
}

}  // namespace detail

/// vol^2 * sum_i sum_{j != i} term(i, j) * w(i, j)
template <class Term>
double pair_sum(const PairWeight& w, Term&& term) {
    const std::size_t n = w.grid().size();
    std::vector<double> rows(n, 0.0);
    detail::for_rows(w.backend(), n, [&](std::size_t i) {
        double acc = 0.0;
        w.for_each_in_row(i, [&](std::size_t j, double wij) { acc += term(i, j) * wij; });
        rows[i] = acc;
    });
    double total = 0.0;
    for (double r : rows) {
        total += r;
    }
    const double vol = w.grid().cell_volume();
    return total * vol * vol;
}

/// out[i] = vol * sum_{j != i} term(i, j) * w(i, j)
template <class Term>
void row_sums(const PairWeight& w, Term&& term, std::span<double> out) {
    const double vol = w.grid().cell_volume();
    detail::for_rows(w.backend(), w.grid().size(), [&](std::size_t i) {
        double acc = 0.0;
        w.for_each_in_row(i, [&](std::size_t j, double wij) { acc += term(i, j) * wij; });
        out[i] = acc * vol;
    });
}

/// log(vol^2 * sum_i sum_{j != i} exp(log_term(i, j)) * w(i, j)), evaluated
/// with a running maximum so large exponents do not overflow. log_term may
/// return -infinity for vanishing terms. Returns -infinity for a zero sum.
template <class LogTerm>
double pair_log_sum(const PairWeight& w, LogTerm&& log_term) {
    constexpr double neg_inf = -std::numeric_limits<double>::infinity();
    const std::size_t n = w.grid().size();
    std::vector<double> row_max(n, neg_inf);
    std::vector<double> row_sum(n, 0.0);
    detail::for_rows(w.backend(), n, [&](std::size_t i) {
        double m = neg_inf;
        w.for_each_in_row(i, [&](std::size_t j, double wij) {
            const double lt = log_term(i, j);
            if (lt != neg_inf && wij > 0.0) {
                m = std::max(m, lt + std::log(wij));
            }
        });
        if (m == neg_inf) {
            return;
        }
        double acc = 0.0;
        w.for_each_in_row(i, [&](std::size_t j, double wij) {
            const double lt = log_term(i, j);
            if (lt != neg_inf && wij > 0.0) {
                acc += std::exp(lt + std::log(wij) - m);
            }
        });
        row_max[i] = m;
        row_sum[i] = acc;
    });
    double m = neg_inf;
    for (double r : row_max) {
        m = std::max(m, r);
    }
    if (m == neg_inf) {
        return neg_inf;
    }
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (row_max[i] != neg_inf) {
            total += row_sum[i] * std::exp(row_max[i] - m);
        }
    }
    return m + std::log(total) + 2.0 * std::log(w.grid().cell_volume());
}

/// Dense N x N matrix of pair weights (row-major, zero diagonal).
std::vector<double> dense_weights(const PairWeight& w);

}  // namespace fraclab::kernels
