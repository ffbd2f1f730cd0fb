#pragma once

#include "fraclab/domain.hpp"
#include "fraclab/family.hpp"
#include "fraclab/inequalities.hpp"
#include "fraclab/kernels.hpp"
#include "fraclab/riesz.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace fraclab::cli {

enum class Task { riesz, verify, psublap, seminorm };
enum class Inequality { gn, ckn, ckn_critical, hardy, sobolev };
enum class PsublapMode { apply, residual, lyapunov, bound };
enum class ProfileKind { gaussian, bump, indicator, csv };

std::string_view to_string(Task task) noexcept;
std::string_view to_string(Inequality kind) noexcept;
std::string_view to_string(PsublapMode mode) noexcept;
std::string_view to_string(ProfileKind kind) noexcept;

/// A named grid function recipe, sampled at every resolution.
struct Profile {
    ProfileKind kind = ProfileKind::gaussian;
    double width = 1.0;    // gaussian: exp(-sum x_k^2 / width^{2 nu_k})
    double radius = 0.5;   // bump / indicator: support {q < radius}
    std::string csv_path;  // csv: values on the coarse grid only
};

struct RieszTask {
    double s;
    double p;
};

struct VerifyTask {
    Inequality inequality;
    InequalityParams params;
    double radius = 1.0;  // critical case
    TestFamily family;
    std::optional<double> constant;  // claimed constant; exceeding it is a violation
};

struct PsublapTask {
    PsublapMode mode;
    std::vector<double> s;
    std::vector<double> p;
    std::vector<double> alpha;
    double theta = 0.0;
    std::vector<double> omega;          // constant weights per component
    double phi = 1.0;                   // constant phi for the bound
    std::vector<double> lambda_others;  // for the bound
    std::size_t k = 0;
    double constant = 1.0;  // C for the bound
    double extension = 3.0;
    Profile profile;
};

struct SeminormTask {
    double s;
    double p;
    double beta1 = 0.0;
    double beta2 = 0.0;
    Profile profile;
};

using TaskBlock = std::variant<RieszTask, VerifyTask, PsublapTask, SeminormTask>;

struct RunConfig {
    Task task;
    Geometry geometry;
    DomainSpec domain;  // carries the coarse resolution
    TaskBlock block;
    std::string output_path;  // empty: stdout
    std::string csv_path;     // optional grid-function dump
    std::uint64_t seed = 0;
    PowerIterationOptions solver;
    kernels::Backend backend = kernels::Backend::parallel;
    /// Every key after defaults and overrides, as normalized text.
    std::map<std::string, std::string> echo;

    [[nodiscard]] int resolution() const { return domain.resolution_along(0); }
};

using Overrides = std::map<std::string, std::string>;

/// Parses a flat `key = value` document ('#' comments, comma lists).
/// Overrides replace or add keys before validation. Throws ParseError for
/// unknown/missing/malformed keys and Error(InadmissibleParams, ...) for
/// incompatible combinations.
/// Raw value of `key` in a config document, if present (no validation).
std::optional<std::string> config_value(const std::string& text, const std::string& key);

RunConfig parse_config(const std::string& text, const Overrides& overrides = {});

}  // namespace fraclab::cli
