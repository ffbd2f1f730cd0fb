#include "fraclab/cli/config.hpp"

#include "fraclab/error.hpp"
#include "fraclab/psublap.hpp"
#include "fraclab/seminorms.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

namespace fraclab::cli {

namespace {

const std::set<std::string>& common_keys() {
    static const std::set<std::string> keys = {
        "task", "seed", "output", "csv_output", "backend", "tolerance", "residual_tolerance", "max_iterations",
        "group.law", "group.dimension", "group.weights", "group.rank", "norm.kind",
        "domain.kind", "domain.radius", "domain.inner_radius", "domain.lo", "domain.hi", "domain.resolution",
    };
    return keys;
}

const std::map<Task, std::set<std::string>>& task_keys() {
    static const std::map<Task, std::set<std::string>> keys = {
        {Task::riesz, {"riesz.s", "riesz.p"}},
        {Task::verify,
         {"verify.inequality", "verify.s", "verify.p", "verify.alpha", "verify.tau", "verify.a", "verify.beta1",
          "verify.beta2", "verify.mu", "verify.gamma", "verify.sigma", "verify.radius", "verify.family", "verify.count",
          "verify.origin_clearance", "verify.constant"}},
        {Task::psublap,
         {"psublap.mode", "psublap.s", "psublap.p", "psublap.alpha", "psublap.theta", "psublap.omega", "psublap.phi",
          "psublap.lambda_others", "psublap.k", "psublap.constant", "psublap.extension", "profile.kind",
          "profile.width", "profile.radius", "profile.csv"}},
        {Task::seminorm,
         {"seminorm.s", "seminorm.p", "seminorm.beta1", "seminorm.beta2", "profile.kind", "profile.width",
          "profile.radius", "profile.csv"}},
    };
    return keys;
}

bool known_anywhere(const std::string& key) {
    if (common_keys().count(key) != 0) {
        return true;
    }
    return std::any_of(task_keys().begin(), task_keys().end(), [&](const auto& kv) { return kv.second.count(key) != 0; });
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

// Shortest text that reads back to the same double.
std::string format_double(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

template <class E>
E parse_enum(const std::string& key, const std::string& value, std::initializer_list<std::pair<const char*, E>> table) {
    for (const auto& [name, e] : table) {
        if (value == name) {
            return e;
        }
    }
    std::string allowed;
    for (const auto& entry : table) {
        allowed += (allowed.empty() ? "" : "|") + std::string(entry.first);
    }
    throw ParseError(key, "expected one of " + allowed + ", got '" + value + "'");
}

// Document lines in order plus lookups that record what was used.
class Document {
public:
    Document(const std::string& text, const Overrides& overrides) {
        std::istringstream in(text);
        std::string line;
        int number = 0;
        while (std::getline(in, line)) {
            ++number;
            const auto hash = line.find('#');
            const std::string body = trim(std::string_view(line).substr(0, hash));
            if (body.empty()) {
                continue;
            }
            const auto eq = body.find('=');
            if (eq == std::string::npos) {
                throw ParseError(body, "line " + std::to_string(number) + ": expected 'key = value'");
            }
            const std::string key = trim(std::string_view(body).substr(0, eq));
            const std::string value = trim(std::string_view(body).substr(eq + 1));
            if (key.empty()) {
                throw ParseError("", "line " + std::to_string(number) + ": empty key");
            }
            if (values_.count(key) != 0) {
                throw ParseError(key, "duplicate key");
            }
            order_.push_back(key);
            values_[key] = value;
        }
        for (const auto& [key, value] : overrides) {
            if (values_.count(key) == 0) {
                order_.push_back(key);
            }
            values_[key] = value;
        }
    }

    [[nodiscard]] const std::vector<std::string>& order() const { return order_; }
    [[nodiscard]] bool has(const std::string& key) const { return values_.count(key) != 0; }

    std::string text(const std::string& key, const std::string& fallback) {
        const auto it = values_.find(key);
        const std::string v = it == values_.end() ? fallback : it->second;
        echo_[key] = v;
        return v;
    }

    std::string required_text(const std::string& key) {
        if (!has(key)) {
            throw ParseError(key, "required");
        }
        return text(key, "");
    }

    double number(const std::string& key, std::optional<double> fallback = std::nullopt) {
        if (!has(key)) {
            if (!fallback) {
                throw ParseError(key, "required");
            }
            echo_[key] = format_double(*fallback);
            return *fallback;
        }
        const double v = to_double(key, values_.at(key));
        echo_[key] = format_double(v);
        return v;
    }

    std::optional<double> optional_number(const std::string& key) {
        if (!has(key)) {
            return std::nullopt;
        }
        return number(key);
    }

    long integer(const std::string& key, long fallback) {
        if (!has(key)) {
            echo_[key] = std::to_string(fallback);
            return fallback;
        }
        const std::string& s = values_.at(key);
        long v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size()) {
            throw ParseError(key, "not an integer: '" + s + "'");
        }
        echo_[key] = std::to_string(v);
        return v;
    }

    std::uint64_t unsigned_integer(const std::string& key, std::uint64_t fallback) {
        if (!has(key)) {
            echo_[key] = std::to_string(fallback);
            return fallback;
        }
        const std::string& s = values_.at(key);
        std::uint64_t v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size()) {
            throw ParseError(key, "not a nonnegative integer: '" + s + "'");
        }
        echo_[key] = std::to_string(v);
        return v;
    }

    std::vector<double> list(const std::string& key, std::optional<std::vector<double>> fallback = std::nullopt) {
        std::vector<double> out;
        if (!has(key)) {
            if (!fallback) {
                throw ParseError(key, "required");
            }
            out = *fallback;
        } else {
            std::string item;
            std::istringstream in(values_.at(key));
            while (std::getline(in, item, ',')) {
                out.push_back(to_double(key, trim(item)));
            }
            if (out.empty()) {
                throw ParseError(key, "empty list");
            }
        }
        std::string e;
        for (double x : out) {
            e += (e.empty() ? "" : ",") + format_double(x);
        }
        echo_[key] = e;
        return out;
    }

    [[nodiscard]] std::map<std::string, std::string> echo() const { return echo_; }

private:
    static double to_double(const std::string& key, const std::string& s) {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
            throw ParseError(key, "not a number: '" + s + "'");
        }
        if (!std::isfinite(v)) {
            throw ParseError(key, "not finite");
        }
        return v;
    }

    std::vector<std::string> order_;
    std::map<std::string, std::string> values_;
    std::map<std::string, std::string> echo_;
};

Profile parse_profile(Document& doc, ProfileKind fallback) {
    Profile prof;
    prof.kind = parse_enum<ProfileKind>("profile.kind", doc.text("profile.kind", std::string(to_string(fallback))),
                                        {{"gaussian", ProfileKind::gaussian},
                                         {"bump", ProfileKind::bump},
                                         {"indicator", ProfileKind::indicator},
                                         {"csv", ProfileKind::csv}});
    prof.width = doc.number("profile.width", 1.0);
    prof.radius = doc.number("profile.radius", 0.5);
    if (!(prof.width > 0.0)) throw ParseError("profile.width", "must be positive");
    if (!(prof.radius > 0.0)) throw ParseError("profile.radius", "must be positive");
    if (prof.kind == ProfileKind::csv) {
        prof.csv_path = doc.required_text("profile.csv");
    }
    return prof;
}

GroupSpec parse_group(Document& doc) {
    const GroupLaw law = parse_enum<GroupLaw>("group.law", doc.text("group.law", "abelian"),
                                              {{"abelian", GroupLaw::abelian}, {"heisenberg", GroupLaw::heisenberg}});
    if (law == GroupLaw::heisenberg) {
        const long m = doc.integer("group.rank", 1);
        if (m < 1 || 2 * m + 1 > static_cast<long>(kMaxDimension)) {
            throw ParseError("group.rank", "out of range");
        }
        GroupSpec g = GroupSpec::heisenberg(static_cast<std::size_t>(m));
        if (doc.has("group.weights")) {
            const auto w = doc.list("group.weights");
            if (!std::equal(w.begin(), w.end(), g.weights().begin(), g.weights().end())) {
                throw Error(ErrorCode::inadmissible_params, "heisenberg weights are fixed to (1,...,1,2)");
            }
        }
        return g;
    }
    if (doc.has("group.weights")) {
        return GroupSpec::abelian(doc.list("group.weights"));
    }
    const long n = doc.integer("group.dimension", 2);
    if (n < 1 || n > static_cast<long>(kMaxDimension)) {
        throw ParseError("group.dimension", "out of range");
    }
    return GroupSpec::euclidean(static_cast<std::size_t>(n));
}

DomainSpec parse_domain(Document& doc, const GroupSpec& g) {
    const long res = doc.integer("domain.resolution", 100);
    if (res < 2 || res > 100000) {
        throw ParseError("domain.resolution", "must lie in [2, 100000]");
    }
    const int r = static_cast<int>(res);
    const DomainKind kind = parse_enum<DomainKind>(
        "domain.kind", doc.text("domain.kind", "ball"),
        {{"box", DomainKind::box}, {"ball", DomainKind::quasi_ball}, {"annulus", DomainKind::quasi_annulus}});
    switch (kind) {
        case DomainKind::box: {
            auto lo = doc.list("domain.lo");
            auto hi = doc.list("domain.hi");
            const std::size_t n = g.dimension();
            if (lo.size() == 1) lo.assign(n, lo[0]);
            if (hi.size() == 1) hi.assign(n, hi[0]);
            if (lo.size() != n) throw ParseError("domain.lo", "needs one value or one per coordinate");
            if (hi.size() != n) throw ParseError("domain.hi", "needs one value or one per coordinate");
            return DomainSpec::box(lo, hi, r);
        }
        case DomainKind::quasi_ball:
            return DomainSpec::quasi_ball(doc.number("domain.radius", 1.0), r);
        case DomainKind::quasi_annulus:
            return DomainSpec::quasi_annulus(doc.number("domain.inner_radius"), doc.number("domain.radius", 1.0), r);
    }
    throw ParseError("domain.kind", "unsupported");
}

VerifyTask parse_verify(Document& doc, const Geometry& geometry, const DomainSpec& domain) {
    VerifyTask t;
    t.inequality = parse_enum<Inequality>("verify.inequality", doc.required_text("verify.inequality"),
                                          {{"gn", Inequality::gn},
                                           {"ckn", Inequality::ckn},
                                           {"ckn-critical", Inequality::ckn_critical},
                                           {"hardy", Inequality::hardy},
                                           {"sobolev", Inequality::sobolev}});
    const double Q = geometry.homogeneous_dimension();
    InequalityParams& ip = t.params;
    ip.s = doc.number("verify.s");
    ip.p = doc.number("verify.p");
    if (!(ip.s > 0.0 && ip.s < 1.0)) throw ParseError("verify.s", "must lie in (0,1)");
    if (!(ip.p > 1.0)) throw ParseError("verify.p", "must be > 1");
    switch (t.inequality) {
        case Inequality::sobolev:
            ip.a = 1.0;
            ip.alpha = ip.p;
            ip.tau = sobolev_exponent(Q, ip.s, ip.p);
            break;
        case Inequality::hardy:
            ip.a = 1.0;
            ip.alpha = ip.p;
            ip.tau = ip.p;
            ip.gamma = -ip.s;
            break;
        case Inequality::gn:
            ip.alpha = doc.number("verify.alpha", ip.p);
            ip.a = doc.number("verify.a", 1.0);
            ip.tau = doc.number("verify.tau", gn_balance_tau(Q, ip.s, ip.p, ip.alpha, ip.a));
            break;
        case Inequality::ckn:
        case Inequality::ckn_critical: {
            ip.alpha = doc.number("verify.alpha", ip.p);
            ip.a = doc.number("verify.a", 1.0);
            ip.beta1 = doc.number("verify.beta1", 0.0);
            ip.beta2 = doc.number("verify.beta2", 0.0);
            ip.mu = doc.number("verify.mu", 0.0);
            ip.gamma = doc.number("verify.gamma", 0.0);
            ip.sigma = doc.optional_number("verify.sigma");
            const double rhs = ip.a * (1.0 / ip.p + (ip.beta() - ip.s) / Q) +
                               (1.0 - ip.a) * (1.0 / ip.alpha + ip.mu / Q) - ip.gamma / Q;
            if (doc.has("verify.tau")) {
                ip.tau = doc.number("verify.tau");
            } else if (rhs > 0.0) {
                ip.tau = doc.number("verify.tau", 1.0 / rhs);
            } else {
                throw ParseError("verify.tau", "required (balance gives no positive tau)");
            }
            const Admissibility adm = ckn_admissible(ip, Q);
            if (!adm.admissible) {
                throw Error(ErrorCode::inadmissible_params, "CKN parameters inadmissible: " + adm.reason);
            }
            const bool critical = adm.branch == CknBranch::critical;
            if (critical != (t.inequality == Inequality::ckn_critical)) {
                throw Error(ErrorCode::inadmissible_params,
                            critical ? "1/tau + gamma/Q = 0: use --inequality ckn-critical"
                                     : "ckn-critical needs 1/tau + gamma/Q = 0");
            }
            if (critical) {
                t.radius = doc.number("verify.radius", inner_quasi_radius(geometry, domain));
                if (!(t.radius > 0.0)) throw ParseError("verify.radius", "must be positive");
            }
            if (adm.branch == CknBranch::origin_excluded) {
                t.family.origin_clearance = 0.01 * inner_quasi_radius(geometry, domain);
            }
            break;
        }
    }
    if (t.inequality == Inequality::gn) {
        (void)gn_balance_tau(Q, ip.s, ip.p, ip.alpha, ip.a);
        if (std::abs(1.0 / ip.tau - 1.0 / gn_balance_tau(Q, ip.s, ip.p, ip.alpha, ip.a)) > 1e-12) {
            throw Error(ErrorCode::inadmissible_params, "tau does not satisfy the GN balance");
        }
    }
    t.family.kind = family_kind_from_string(doc.text("verify.family", "gaussian_bumps"));
    const long count = doc.integer("verify.count", 10);
    if (count < 1 || count > 10000) throw ParseError("verify.count", "must lie in [1, 10000]");
    t.family.count = static_cast<int>(count);
    t.family.origin_clearance = doc.number("verify.origin_clearance", t.family.origin_clearance);
    t.constant = doc.optional_number("verify.constant");
    return t;
}

PsublapTask parse_psublap(Document& doc, double Q) {
    PsublapTask t;
    t.mode = parse_enum<PsublapMode>("psublap.mode", doc.required_text("psublap.mode"),
                                     {{"apply", PsublapMode::apply},
                                      {"residual", PsublapMode::residual},
                                      {"lyapunov", PsublapMode::lyapunov},
                                      {"bound", PsublapMode::bound}});
    t.s = doc.list("psublap.s");
    t.p = doc.list("psublap.p");
    if (t.p.size() != t.s.size()) throw ParseError("psublap.p", "needs one value per component");
    t.alpha = doc.list("psublap.alpha", t.p);
    if (t.alpha.size() != t.s.size()) throw ParseError("psublap.alpha", "needs one value per component");
    t.extension = doc.number("psublap.extension", 3.0);
    if (!(t.extension > 0.0)) throw ParseError("psublap.extension", "must be positive");
    for (std::size_t i = 0; i < t.s.size(); ++i) {
        if (!(t.s[i] > 0.0 && t.s[i] < 1.0)) throw ParseError("psublap.s", "entries must lie in (0,1)");
        if (!(t.p[i] > 1.0)) throw ParseError("psublap.p", "entries must be > 1");
    }
    switch (t.mode) {
        case PsublapMode::apply:
            if (t.s.size() != 1) throw ParseError("psublap.s", "apply takes one component");
            t.profile = parse_profile(doc, ProfileKind::bump);
            break;
        case PsublapMode::residual:
            if (t.s.size() != 1 || t.p[0] != 2.0) {
                throw Error(ErrorCode::inadmissible_params, "residual mode solves the linear case n = 1, p = 2");
            }
            break;
        case PsublapMode::lyapunov:
        case PsublapMode::bound: {
            t.theta = doc.number("psublap.theta");
            (void)SystemParams(t.s, t.p, t.alpha, t.theta, Q);
            if (t.mode == PsublapMode::lyapunov) {
                t.omega = doc.list("psublap.omega", std::vector<double>(t.s.size(), 1.0));
                if (t.omega.size() != t.s.size()) throw ParseError("psublap.omega", "needs one value per component");
                for (double w : t.omega) {
                    if (w < 0.0) throw Error(ErrorCode::negative_weight, "psublap.omega must be nonnegative");
                }
            } else {
                t.phi = doc.number("psublap.phi", 1.0);
                if (t.phi < 0.0) throw Error(ErrorCode::inadmissible_params, "psublap.phi must be nonnegative");
                t.lambda_others = doc.list("psublap.lambda_others", std::vector<double>(t.s.size() - 1, 1.0));
                if (t.s.size() == 1 && doc.has("psublap.lambda_others")) {
                    throw ParseError("psublap.lambda_others", "one component has no other eigenvalues");
                }
                if (t.lambda_others.size() + 1 != t.s.size()) {
                    throw ParseError("psublap.lambda_others", "needs n - 1 values");
                }
                const long k = doc.integer("psublap.k", 0);
                if (k < 0 || static_cast<std::size_t>(k) >= t.s.size()) throw ParseError("psublap.k", "out of range");
                t.k = static_cast<std::size_t>(k);
                t.constant = doc.number("psublap.constant", 1.0);
                if (!(t.constant > 0.0)) throw ParseError("psublap.constant", "must be positive");
            }
            break;
        }
    }
    return t;
}

}  // namespace

std::string_view to_string(Task task) noexcept {
    switch (task) {
        case Task::riesz: return "riesz";
        case Task::verify: return "verify";
        case Task::psublap: return "psublap";
        case Task::seminorm: return "seminorm";
    }
    return "?";
}

std::string_view to_string(Inequality kind) noexcept {
    switch (kind) {
        case Inequality::gn: return "gn";
        case Inequality::ckn: return "ckn";
        case Inequality::ckn_critical: return "ckn-critical";
        case Inequality::hardy: return "hardy";
        case Inequality::sobolev: return "sobolev";
    }
    return "?";
}

std::string_view to_string(PsublapMode mode) noexcept {
    switch (mode) {
        case PsublapMode::apply: return "apply";
        case PsublapMode::residual: return "residual";
        case PsublapMode::lyapunov: return "lyapunov";
        case PsublapMode::bound: return "bound";
    }
    return "?";
}

std::string_view to_string(ProfileKind kind) noexcept {
    switch (kind) {
        case ProfileKind::gaussian: return "gaussian";
        case ProfileKind::bump: return "bump";
        case ProfileKind::indicator: return "indicator";
        case ProfileKind::csv: return "csv";
    }
    return "?";
}

std::optional<std::string> config_value(const std::string& text, const std::string& key) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const std::string body = trim(std::string_view(line).substr(0, line.find('#')));
        const auto eq = body.find('=');
        if (eq != std::string::npos && trim(std::string_view(body).substr(0, eq)) == key) {
            return trim(std::string_view(body).substr(eq + 1));
        }
    }
    return std::nullopt;
}

RunConfig parse_config(const std::string& text, const Overrides& overrides) {
    Document doc(text, overrides);
    for (const auto& key : doc.order()) {
        if (!known_anywhere(key)) {
            throw ParseError(key, "unknown key");
        }
    }
    const Task task = parse_enum<Task>("task", doc.required_text("task"),
                                       {{"riesz", Task::riesz},
                                        {"verify", Task::verify},
                                        {"psublap", Task::psublap},
                                        {"seminorm", Task::seminorm}});
    const auto& allowed = task_keys().at(task);
    for (const auto& key : doc.order()) {
        if (common_keys().count(key) == 0 && allowed.count(key) == 0) {
            throw ParseError(key, "not used by task '" + std::string(to_string(task)) + "'");
        }
    }

    GroupSpec group = parse_group(doc);
    const auto default_norm = group.law() == GroupLaw::heisenberg ? "koranyi" : "euclidean";
    const NormKind norm = parse_enum<NormKind>(
        "norm.kind", doc.text("norm.kind", default_norm),
        {{"euclidean", NormKind::euclidean}, {"aniso_max", NormKind::aniso_max}, {"koranyi", NormKind::koranyi}});
    Geometry geometry(group, QuasiNormSpec(norm, group));
    DomainSpec domain = parse_domain(doc, group);
    const double Q = geometry.homogeneous_dimension();

    PowerIterationOptions solver;
    solver.tolerance = doc.number("tolerance", 1e-10);
    solver.residual_tolerance = doc.number("residual_tolerance", 1e-8);
    solver.max_iterations = doc.integer("max_iterations", 100000);
    if (!(solver.tolerance > 0.0)) throw ParseError("tolerance", "must be positive");
    if (!(solver.residual_tolerance > 0.0)) throw ParseError("residual_tolerance", "must be positive");
    if (solver.max_iterations < 1) throw ParseError("max_iterations", "must be positive");

    const auto backend = parse_enum<kernels::Backend>(
        "backend", doc.text("backend", "parallel"),
        {{"parallel", kernels::Backend::parallel}, {"reference", kernels::Backend::reference}});
    const std::uint64_t seed = doc.unsigned_integer("seed", 0);
    const std::string output = doc.text("output", "");
    const std::string csv = doc.text("csv_output", "");

    TaskBlock block = RieszTask{0.0, 0.0};
    switch (task) {
        case Task::riesz: {
            const RieszParams rp(doc.number("riesz.s"), doc.number("riesz.p"), Q);
            if (!rp.kernel_integrable()) {
                throw Error(ErrorCode::non_integrable_kernel, "kernel is not in L^{p'}(Omega x Omega): need 2sp > Q");
            }
            block = RieszTask{rp.s(), rp.p()};
            break;
        }
        case Task::verify: {
            VerifyTask t = parse_verify(doc, geometry, domain);
            t.family.seed = seed;
            block = std::move(t);
            break;
        }
        case Task::psublap:
            block = parse_psublap(doc, Q);
            break;
        case Task::seminorm: {
            SeminormTask t;
            const SeminormParams sp(doc.number("seminorm.s"), doc.number("seminorm.p"),
                                    doc.number("seminorm.beta1", 0.0), doc.number("seminorm.beta2", 0.0));
            t.s = sp.s;
            t.p = sp.p;
            t.beta1 = sp.beta1;
            t.beta2 = sp.beta2;
            t.profile = parse_profile(doc, ProfileKind::gaussian);
            block = std::move(t);
            break;
        }
    }
    return RunConfig{task, std::move(geometry), std::move(domain), std::move(block), output, csv, seed, solver,
                     backend, doc.echo()};
}

}  // namespace fraclab::cli
