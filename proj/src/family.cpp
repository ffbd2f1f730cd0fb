#include "fraclab/family.hpp"

#include "fraclab/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace fraclab {

namespace {

constexpr double kMargin = 0.1;

struct Window {
    Point lo;  // box shrunk by the margin on each side
    Point hi;
};

Window support_window(const Grid& grid) {
    const auto& lat = grid.lattice();
    Window w{Point(grid.dimension()), Point(grid.dimension())};
    for (std::size_t k = 0; k < grid.dimension(); ++k) {
        const double width = lat.step[k] * lat.counts[k];
        w.lo[k] = lat.lo[k] + kMargin * width;
        w.hi[k] = lat.lo[k] + (1.0 - kMargin) * width;
    }
    return w;
}

class Draw {
public:
    explicit Draw(std::uint64_t seed) : rng_(seed) {}
    double operator()(double a, double b) { return a + (b - a) * uniform01(rng_()); }

private:
    std::mt19937_64 rng_;
};

// Largest quasi-radius whose ball's bounding box fits in the window.
double radial_reach(const Grid& grid, const Window& w) {
    const auto& weights = grid.geometry().group().weights();
    double reach = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < grid.dimension(); ++k) {
        const double d = std::min(-w.lo[k], w.hi[k]);
        if (!(d > 0.0)) {
            throw Error(ErrorCode::inadmissible_params, "radial test functions need the identity well inside the box");
        }
        reach = std::min(reach, std::pow(d, 1.0 / weights[k]));
    }
    return reach;
}

double clearance_factor(double q, double clearance) {
    if (clearance <= 0.0) {
        return 1.0;
    }
    return smooth_step((q - clearance) / clearance);
}

}  // namespace

std::string_view to_string(FamilyKind kind) noexcept {
    switch (kind) {
        case FamilyKind::gaussian_bumps: return "gaussian_bumps";
        case FamilyKind::radial_powers_cutoff: return "radial_powers_cutoff";
        case FamilyKind::random_smooth: return "random_smooth";
    }
    return "?";
}

FamilyKind family_kind_from_string(std::string_view name) {
    if (name == "gaussian_bumps") return FamilyKind::gaussian_bumps;
    if (name == "radial_powers_cutoff") return FamilyKind::radial_powers_cutoff;
    if (name == "random_smooth") return FamilyKind::random_smooth;
    throw Error(ErrorCode::inadmissible_params, "unknown test family '" + std::string(name) + "'");
}

double bump(double t) noexcept {
    const double t2 = t * t;
    return t2 < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - t2)) : 0.0;
}

double smooth_step(double t) noexcept {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / t);
    const double b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
}

double uniform01(std::uint64_t bits) noexcept {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

std::vector<FamilyMember> family_members(const TestFamily& family, const GridPtr& grid) {
    if (family.count < 1) {
        throw Error(ErrorCode::inadmissible_params, "test family must be nonempty");
    }
    const Window win = support_window(*grid);
    const std::size_t n = grid->dimension();
    const double clearance = family.origin_clearance;
    Draw draw(family.seed);
    std::vector<FamilyMember> out;
    out.reserve(static_cast<std::size_t>(family.count));

    for (int m = 0; m < family.count; ++m) {
        std::string id = std::string(to_string(family.kind)) + "#" + std::to_string(m);
        switch (family.kind) {
            case FamilyKind::gaussian_bumps: {
                // Support box [c - h, c + h] inside the window; Gaussian of width h*w.
                Point c(n), h(n);
                for (std::size_t k = 0; k < n; ++k) {
                    const double half = 0.5 * (win.hi[k] - win.lo[k]);
                    h[k] = draw(0.35, 0.9) * half;
                    c[k] = draw(win.lo[k] + h[k], win.hi[k] - h[k]);
                }
                const double width = draw(0.3, 0.8);
                auto fn = [&, c, h, width](std::span<const double> x) {
                    double g = 0.0;
                    double cut = 1.0;
                    for (std::size_t k = 0; k < n; ++k) {
                        const double t = (x[k] - c[k]) / h[k];
                        g += (t / width) * (t / width);
                        cut *= bump(t);
                    }
                    return std::exp(-g) * cut;
                };
                out.push_back({std::move(id), GridFunction::sample(grid, fn)});
                break;
            }
            case FamilyKind::radial_powers_cutoff: {
                // q^{k/2} times a radial cutoff.
                const double reach = radial_reach(*grid, win);
                const double power = 0.5 * m;
                const double radius = reach * draw(0.6, 1.0);
                const auto& geom = grid->geometry();
                auto fn = [&, power, radius](std::span<const double> x) {
                    const double q = geom.norm_of(x.data());
                    const double base = power == 0.0 ? 1.0 : std::pow(q, power);
                    return base * bump(q / radius);
                };
                out.push_back({std::move(id), GridFunction::sample(grid, fn)});
                break;
            }
            case FamilyKind::random_smooth: {
                // Signed sum of Gaussians times the window's cutoff.
                const int terms = 3 + static_cast<int>(draw(0.0, 3.0));
                std::vector<Point> centers;
                std::vector<double> amps;
                std::vector<double> widths;
                for (int t = 0; t < terms; ++t) {
                    Point c(n);
                    for (std::size_t k = 0; k < n; ++k) {
                        c[k] = draw(win.lo[k], win.hi[k]);
                    }
                    centers.push_back(std::move(c));
                    amps.push_back(draw(-1.0, 1.0));
                    widths.push_back(draw(0.1, 0.4));
                }
                auto fn = [&, centers, amps, widths](std::span<const double> x) {
                    double cut = 1.0;
                    for (std::size_t k = 0; k < n; ++k) {
                        const double mid = 0.5 * (win.lo[k] + win.hi[k]);
                        const double half = 0.5 * (win.hi[k] - win.lo[k]);
                        cut *= bump((x[k] - mid) / half);
                    }
                    double acc = 0.0;
                    for (std::size_t t = 0; t < centers.size(); ++t) {
                        double g = 0.0;
                        for (std::size_t k = 0; k < n; ++k) {
                            const double d = (x[k] - centers[t][k]) / ((win.hi[k] - win.lo[k]) * widths[t]);
                            g += d * d;
                        }
                        acc += amps[t] * std::exp(-g);
                    }
                    return acc * cut;
                };
                out.push_back({std::move(id), GridFunction::sample(grid, fn)});
                break;
            }
        }
    }
    if (clearance > 0.0) {
        for (auto& member : out) {
            std::vector<double> v(member.u.values().begin(), member.u.values().end());
            for (std::size_t i = 0; i < v.size(); ++i) {
                v[i] *= clearance_factor(grid->norm_at(i), clearance);
            }
            member.u = GridFunction(grid, std::move(v));
        }
    }
    return out;
}

}  // namespace fraclab
