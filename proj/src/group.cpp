#include "fraclab/group.hpp"

#include "fraclab/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <utility>

namespace fraclab {

namespace {

void check_dimension(const GroupSpec& g, std::span<const double> x) {
    if (x.size() != g.dimension()) {
        throw Error(ErrorCode::dimension_mismatch,
                    "point has " + std::to_string(x.size()) + " coordinates, group has dimension " +
                        std::to_string(g.dimension()));
    }
}

// omega(a, b) = sum_j a_xj b_yj - a_yj b_xj over the first 2m coordinates.
double symplectic(const double* a, const double* b, std::size_t m) noexcept {
    double acc = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        acc += a[j] * b[m + j] - a[m + j] * b[j];
    }
    return acc;
}

}  // namespace

std::string_view to_string(GroupLaw law) noexcept {
    return law == GroupLaw::abelian ? "abelian" : "heisenberg";
}

std::string_view to_string(NormKind kind) noexcept {
    switch (kind) {
        case NormKind::euclidean: return "euclidean";
        case NormKind::aniso_max: return "aniso_max";
        case NormKind::koranyi: return "koranyi";
    }
    return "unknown";
}

GroupSpec::GroupSpec(GroupLaw law, std::vector<double> weights, std::size_t rank)
    : law_(law), weights_(std::move(weights)), rank_(rank) {
    if (weights_.empty() || weights_.size() > kMaxDimension) {
        throw Error(ErrorCode::dimension_mismatch,
                    "group dimension must be in [1, " + std::to_string(kMaxDimension) + "]");
    }
    for (double w : weights_) {
        if (!(w > 0.0) || !std::isfinite(w)) {
            throw Error(ErrorCode::inadmissible_params, "dilation weights must be positive and finite");
        }
    }
    q_ = std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

GroupSpec GroupSpec::abelian(std::vector<double> weights) {
    return GroupSpec(GroupLaw::abelian, std::move(weights), 0);
}

GroupSpec GroupSpec::euclidean(std::size_t n) { return abelian(std::vector<double>(n, 1.0)); }

GroupSpec GroupSpec::heisenberg(std::size_t m) {
    if (m == 0) {
        throw Error(ErrorCode::inadmissible_params, "Heisenberg rank must be at least 1");
    }
    std::vector<double> weights(2 * m + 1, 1.0);
    weights.back() = 2.0;
    return GroupSpec(GroupLaw::heisenberg, std::move(weights), m);
}

bool GroupSpec::unit_weights() const noexcept {
    return std::all_of(weights_.begin(), weights_.end(), [](double w) { return w == 1.0; });
}

QuasiNormSpec::QuasiNormSpec(NormKind kind, const GroupSpec& group) : kind_(kind) {
    if (kind == NormKind::euclidean && (group.law() != GroupLaw::abelian || !group.unit_weights())) {
        throw Error(ErrorCode::incompatible_norm, "euclidean requires an abelian group with unit weights");
    }
    if (kind == NormKind::koranyi && group.law() != GroupLaw::heisenberg) {
        throw Error(ErrorCode::incompatible_norm, "koranyi requires heisenberg");
    }
}

Point group_law(const GroupSpec& g, std::span<const double> x, std::span<const double> y) {
    check_dimension(g, x);
    check_dimension(g, y);
    Point out(x.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = x[i] + y[i];
    }
    if (g.law() == GroupLaw::heisenberg) {
        out.back() += 0.5 * symplectic(x.data(), y.data(), g.heisenberg_rank());
    }
    return out;
}

Point inverse(const GroupSpec& g, std::span<const double> x) {
    check_dimension(g, x);
    Point out(x.size());
    std::transform(x.begin(), x.end(), out.begin(), [](double v) { return -v; });
    return out;
}

Point dilate(const GroupSpec& g, double lambda, std::span<const double> x) {
    check_dimension(g, x);
    if (!(lambda > 0.0)) {
        throw Error(ErrorCode::non_positive_scale, "dilation factor must be positive");
    }
    Point out(x.size());
    const auto w = g.weights();
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = (w[i] == 1.0 ? lambda : std::pow(lambda, w[i])) * x[i];
    }
    return out;
}

double homogeneous_dimension(const GroupSpec& g) noexcept { return g.homogeneous_dimension(); }

double quasi_norm(const GroupSpec& g, const QuasiNormSpec& qn, std::span<const double> x) {
    check_dimension(g, x);
    return Geometry(g, qn).norm_of(x.data());
}

int annulus_index(const GroupSpec& g, const QuasiNormSpec& qn, std::span<const double> x) {
    const double q = quasi_norm(g, qn, x);
    if (q == 0.0) {
        throw Error(ErrorCode::origin_point, "the identity has no annulus index");
    }
    // q = m * 2^e with m in [0.5, 1), so floor(log2 q) = e - 1 exactly.
    int e = 0;
    std::frexp(q, &e);
    return e - 1;
}

Geometry::Geometry(GroupSpec group, NormKind norm) : group_(std::move(group)), norm_(norm, group_) {}

Geometry::Geometry(GroupSpec group, QuasiNormSpec norm) : group_(std::move(group)), norm_(norm) {
    // Re-run the compatibility check against this group.
    norm_ = QuasiNormSpec(norm.kind(), group_);
}

namespace {
// Sums of squares outside this range may have lost precision.
constexpr double kSafeLow = 1e-280;
constexpr double kSafeHigh = 1e280;
}  // namespace

double Geometry::norm_of(const double* x) const noexcept {
    const std::size_t n = group_.dimension();
    switch (norm_.kind()) {
        case NormKind::euclidean: {
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                acc += x[i] * x[i];
            }
            if (acc > kSafeLow && acc < kSafeHigh) return std::sqrt(acc);
            // squares under- or overflowed: rescale by the largest entry
            double m = 0.0;
            for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(x[i]));
            if (m == 0.0) return 0.0;
            acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) acc += (x[i] / m) * (x[i] / m);
            return m * std::sqrt(acc);
        }
        case NormKind::aniso_max: {
            const auto w = group_.weights();
            double best = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double a = std::abs(x[i]);
                best = std::max(best, w[i] == 1.0 ? a : std::pow(a, 1.0 / w[i]));
            }
            return best;
        }
        case NormKind::koranyi: {
            double z2 = 0.0;
            for (std::size_t i = 0; i + 1 < n; ++i) {
                z2 += x[i] * x[i];
            }
            const double t = x[n - 1];
            const double v = z2 * z2 + t * t;
            if (v > kSafeLow && v < kSafeHigh) return std::sqrt(std::sqrt(v));
            // rescale by D_{1/m}, m the homogeneous size of x
            double m = std::sqrt(std::abs(t));
            for (std::size_t i = 0; i + 1 < n; ++i) m = std::max(m, std::abs(x[i]));
            if (m == 0.0) return 0.0;
            z2 = 0.0;
            for (std::size_t i = 0; i + 1 < n; ++i) z2 += (x[i] / m) * (x[i] / m);
            const double ts = t / m / m;
            return m * std::sqrt(std::sqrt(z2 * z2 + ts * ts));
        }
    }
    return 0.0;
}

double Geometry::relative_norm(const double* x, const double* y) const noexcept {
    const std::size_t n = group_.dimension();
    std::array<double, kMaxDimension> d{};
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = x[i] - y[i];
    }
    if (group_.law() == GroupLaw::heisenberg) {
        // y^{-1} x = (-y) x
        d[n - 1] -= 0.5 * symplectic(y, x, group_.heisenberg_rank());
    }
    return norm_of(d.data());
}

}  // namespace fraclab
