#include "fraclab/cli/run.hpp"

#include "fraclab/error.hpp"
#include "fraclab/family.hpp"
#include "fraclab/inequalities.hpp"
#include "fraclab/psublap.hpp"
#include "fraclab/riesz.hpp"
#include "fraclab/seminorms.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

namespace fraclab::cli {

namespace {

constexpr std::size_t kMaxDenseCells = 4096;

// Accumulates one report while a task runs.
struct Builder {
    Json results = Json::object();
    Json refinement = Json::array();
    Json warnings = Json::array();
    std::optional<bool> pass;
    bool violation = false;
    bool unresolved = false;

    void refine(const Refinement& r, const std::string& quantity) {
        refinement.push_back(to_json(r, quantity));
        unresolved = unresolved || r.unresolved;
    }
};

GridPtr grid_at(const RunConfig& cfg, int resolution) {
    return build_grid(cfg.geometry, cfg.domain.with_resolution(resolution));
}

int fine_of(const RunConfig& cfg) {
    return fine_resolution(cfg.resolution(), cfg.geometry.dimension());
}

GridFunction sample_profile(const Profile& prof, const GridPtr& grid) {
    const Geometry& geo = grid->geometry();
    switch (prof.kind) {
        case ProfileKind::gaussian: {
            const auto w = geo.group().weights();
            return GridFunction::sample(grid, [&](std::span<const double> x) {
                double e = 0.0;
                for (std::size_t k = 0; k < x.size(); ++k) {
                    e += x[k] * x[k] / std::pow(prof.width, 2.0 * w[k]);
                }
                return std::exp(-e);
            });
        }
        case ProfileKind::bump:
            return GridFunction::sample(grid, [&](std::span<const double> x) { return bump(geo.norm_of(x.data()) / prof.radius); });
        case ProfileKind::indicator:
            return GridFunction::sample(grid, [&](std::span<const double> x) {
                return geo.norm_of(x.data()) < prof.radius ? 1.0 : 0.0;
            });
        case ProfileKind::csv: {
            std::ifstream in(prof.csv_path);
            if (!in) {
                throw Error(ErrorCode::io_error, "cannot open '" + prof.csv_path + "'");
            }
            return read_csv(in, grid);
        }
    }
    throw Error(ErrorCode::inadmissible_params, "unknown profile");
}

void write_csv_file(const std::string& path, const GridFunction& u) {
    if (path.empty()) {
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw Error(ErrorCode::io_error, "cannot write '" + path + "'");
    }
    write_csv(out, u);
}

Json grid_json(const Grid& grid) {
    return Json{{"resolution", grid.domain().resolution_along(0)},
                {"cells", grid.size()},
                {"cell_volume", grid.cell_volume()},
                {"measure", grid.measure()}};
}

void run_riesz(const RunConfig& cfg, const RieszTask& task, Builder& b) {
    const RieszParams rp(task.s, task.p, cfg.geometry.homogeneous_dimension());
    Json levels = Json::array();
    std::vector<EigenBoundReport> reps;
    bool pass = true;
    for (const int res : {cfg.resolution(), fine_of(cfg)}) {
        const GridPtr grid = grid_at(cfg, res);
        const EigenBoundReport rep = eigen_upper_bound(rp, grid, cfg.solver, cfg.backend);
        if (res == cfg.resolution() && !cfg.csv_path.empty()) {
            write_csv_file(cfg.csv_path, first_eigenvalue(rp, grid, cfg.solver, cfg.backend).eigenvector);
        }
        Json level = grid_json(*grid);
        level.update(Json{{"lambda1", rep.lambda1},
                          {"C0", rep.c0},
                          {"bound", rep.bound},
                          {"margin", rep.bound - rep.lambda1},
                          {"iterations", rep.iterations},
                          {"residual", rep.residual},
                          {"pass", rep.pass}});
        levels.push_back(std::move(level));
        pass = pass && rep.pass;
        reps.push_back(rep);
    }
    const auto& fine = reps.back();
    b.results = Json{{"s", rp.s()},
                     {"p", rp.p()},
                     {"Q", rp.homogeneous_dimension()},
                     {"lambda1", fine.lambda1},
                     {"C0", fine.c0},
                     {"measure", fine.measure},
                     {"bound", fine.bound},
                     {"iterations", fine.iterations},
                     {"residual", fine.residual},
                     {"pass", pass},
                     {"levels", std::move(levels)}};
    auto pair = [&](auto field) {
        return Refinement{cfg.resolution(), fine_of(cfg), field(reps[0]), field(reps[1]),
                          std::abs(field(reps[1]) - field(reps[0])) / std::abs(field(reps[1])), false};
    };
    for (auto [name, field] : {std::pair{"lambda1", +[](const EigenBoundReport& r) { return r.lambda1; }},
                               std::pair{"C0", +[](const EigenBoundReport& r) { return r.c0; }}}) {
        Refinement r = pair(field);
        r.unresolved = r.gap > kUnresolvedGap;
        b.refine(r, name);
    }
    b.pass = pass;
    b.violation = !pass;
}

Verifier make_verifier(const VerifyTask& task, kernels::Backend backend) {
    const InequalityParams ip = task.params;
    switch (task.inequality) {
        case Inequality::gn:
            return [ip, backend](const GridFunction& u) { return verify_gn(u, ip, backend); };
        case Inequality::sobolev:
            return [ip, backend](const GridFunction& u) { return verify_sobolev(u, ip.s, ip.p, backend); };
        case Inequality::hardy:
            return [ip, backend](const GridFunction& u) { return verify_hardy(u, ip.s, ip.p, backend); };
        case Inequality::ckn:
            return [ip, backend](const GridFunction& u) { return verify_ckn(u, ip, backend); };
        case Inequality::ckn_critical: {
            const double radius = task.radius;
            return [ip, radius, backend](const GridFunction& u) { return verify_ckn_critical(u, ip, radius, backend); };
        }
    }
    throw Error(ErrorCode::inadmissible_params, "unknown inequality");
}

Json params_json(const InequalityParams& ip, double Q) {
    const Admissibility adm = ckn_admissible(ip, Q);
    return Json{{"s", ip.s},         {"p", ip.p},         {"alpha", ip.alpha}, {"tau", ip.tau},
                {"a", ip.a},         {"beta1", ip.beta1}, {"beta2", ip.beta2}, {"mu", ip.mu},
                {"gamma", ip.gamma}, {"sigma", adm.sigma}, {"Q", Q}};
}

void run_verify(const RunConfig& cfg, const VerifyTask& task, Builder& b) {
    const double Q = cfg.geometry.homogeneous_dimension();
    const Verifier verifier = make_verifier(task, cfg.backend);
    Json levels = Json::array();
    std::vector<BestConstant> best;
    std::vector<std::string> ids;
    const int resolutions[] = {cfg.resolution(), fine_of(cfg)};
    for (const int res : resolutions) {
        const GridPtr grid = grid_at(cfg, res);
        const auto members = family_members(task.family, grid);
        if (ids.empty()) {
            for (const auto& m : members) ids.push_back(m.id);
            if (!cfg.csv_path.empty()) write_csv_file(cfg.csv_path, members.front().u);
        }
        best.push_back(estimate_best_constant(members, verifier));
        Json level = grid_json(*grid);
        level.update(Json{{"C_emp", best.back().c_emp},
                          {"argmax_id", best.back().argmax_id},
                          {"C_min", best.back().c_min},
                          {"argmin_id", best.back().argmin_id},
                          {"ratios", best.back().ratios}});
        levels.push_back(std::move(level));
    }
    const BestConstant& fine = best.back();
    b.results = Json{{"inequality", std::string(to_string(task.inequality))},
                     {"params", params_json(task.params, Q)},
                     {"family",
                      {{"kind", std::string(to_string(task.family.kind))},
                       {"count", task.family.count},
                       {"seed", task.family.seed},
                       {"origin_clearance", task.family.origin_clearance},
                       {"support_margin", 0.1}}},
                     {"member_ids", ids},
                     {"C_emp", fine.c_emp},
                     {"argmax_id", fine.argmax_id},
                     {"C_min", fine.c_min},
                     {"argmin_id", fine.argmin_id},
                     {"levels", std::move(levels)}};
    if (task.inequality == Inequality::ckn || task.inequality == Inequality::ckn_critical) {
        const Admissibility adm = ckn_admissible(task.params, Q);
        b.results["branch"] = std::string(to_string(adm.branch));
        b.results["balance_residual"] = adm.balance_residual;
    }
    if (task.inequality == Inequality::ckn_critical) {
        b.results["radius"] = task.radius;
    }
    auto add = [&](const std::string& name, double coarse, double fine_value) {
        Refinement r{resolutions[0], resolutions[1], coarse, fine_value, std::abs(fine_value - coarse) / std::abs(fine_value),
                     false};
        r.unresolved = r.gap > kUnresolvedGap;
        b.refine(r, name);
    };
    add("C_emp", best[0].c_emp, best[1].c_emp);
    add("C_min", best[0].c_min, best[1].c_min);
    for (std::size_t m = 0; m < ids.size(); ++m) {
        add("ratio:" + ids[m], best[0].ratios[m], best[1].ratios[m]);
    }
    if (task.constant) {
        // The Hardy form bounds the ratio from below; the others from above.
        const bool hardy = task.inequality == Inequality::hardy;
        const bool ok = hardy ? fine.c_min >= *task.constant && best[0].c_min >= *task.constant
                              : fine.c_emp <= *task.constant && best[0].c_emp <= *task.constant;
        b.results["claimed_constant"] = *task.constant;
        b.pass = ok;
        b.violation = !ok;
    }
}

GridFunction constant_on(const GridPtr& grid, double value) {
    return GridFunction::constant(grid, value);
}

void run_psublap(const RunConfig& cfg, const PsublapTask& task, Builder& b) {
    const double Q = cfg.geometry.homogeneous_dimension();
    const int resolutions[] = {cfg.resolution(), fine_of(cfg)};
    b.results = Json{{"mode", std::string(to_string(task.mode))}, {"s", task.s}, {"p", task.p}, {"alpha", task.alpha}};
    Json levels = Json::array();
    std::vector<double> headline;
    std::string quantity;
    for (const int res : resolutions) {
        const GridPtr omega = grid_at(cfg, res);
        Json level = grid_json(*omega);
        switch (task.mode) {
            case PsublapMode::apply: {
                const GridFunction u = task.profile.kind == ProfileKind::csv && res != resolutions[0]
                                           ? GridFunction::zeros(omega)
                                           : sample_profile(task.profile, omega);
                const DirichletBox box3 = dirichlet_box(omega, task.extension);
                const DirichletBox box4 = dirichlet_box(omega, task.extension + 1.0);
                const GridFunction lu = p_sublaplacian_dirichlet(u, box3, task.s[0], task.p[0], cfg.backend);
                const GridFunction lu4 = p_sublaplacian_dirichlet(u, box4, task.s[0], task.p[0], cfg.backend);
                double energy = 0.0, sup = 0.0, diff = 0.0;
                for (std::size_t i = 0; i < u.size(); ++i) {
                    energy += u[i] * lu[i];
                    sup = std::max(sup, std::abs(lu4[i]));
                    diff = std::max(diff, std::abs(lu[i] - lu4[i]));
                }
                energy *= omega->cell_volume();
                const auto vals = u.values();
                const auto imax = static_cast<std::size_t>(std::max_element(vals.begin(), vals.end()) - vals.begin());
                const auto imin = static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
                const bool sign_ok = lu[imax] >= 0.0 && lu[imin] <= 0.0;
                if (res == resolutions[0]) write_csv_file(cfg.csv_path, lu);
                level.update(Json{{"box_cells", box3.box->size()},
                                  {"energy", energy},
                                  {"max_abs", sup},
                                  {"value_at_argmax", lu[imax]},
                                  {"value_at_argmin", lu[imin]},
                                  {"maximum_principle", sign_ok},
                                  {"tail_truncation", sup > 0.0 ? diff / sup : 0.0}});
                headline.push_back(energy);
                quantity = "energy";
                break;
            }
            case PsublapMode::residual: {
                if (omega->size() > kMaxDenseCells) {
                    throw Error(ErrorCode::inadmissible_params,
                                "residual mode assembles a dense form; use at most " + std::to_string(kMaxDenseCells) +
                                    " cells");
                }
                const auto pair = first_dirichlet_eigenpair(omega, task.s[0], task.extension, cfg.backend);
                const SystemParams sp({task.s[0]}, {2.0}, {2.0}, std::max(Q / task.s[0], 1.0) * 2.0, Q);
                const auto res_vec = weak_form_residual({pair.u}, {constant_on(pair.box.box, pair.lambda1)}, sp,
                                                        cfg.backend);
                if (res == resolutions[0]) write_csv_file(cfg.csv_path, restrict_to_omega(pair.u, pair.box));
                level.update(Json{{"lambda1", pair.lambda1}, {"residual", res_vec[0]}, {"pass", res_vec[0] <= 1e-6}});
                b.pass = b.pass.value_or(true) && res_vec[0] <= 1e-6;
                headline.push_back(pair.lambda1);
                quantity = "lambda1";
                break;
            }
            case PsublapMode::lyapunov: {
                const SystemParams sp(task.s, task.p, task.alpha, task.theta, Q);
                std::vector<GridFunction> weights;
                for (double w : task.omega) weights.push_back(constant_on(omega, w));
                const double r = inner_quasi_radius(cfg.geometry, omega->domain());
                const SystemLyapunov ly = lyapunov_system_quantity(weights, sp, r);
                if (ly.degenerate) b.warnings.push_back("a weight vanishes: no nontrivial weak solution can exist");
                level.update(Json{{"inner_radius", r},
                                  {"lhs", ly.lhs},
                                  {"exponent", ly.exponent},
                                  {"scale_invariant_value", ly.scale_invariant_value}});
                headline.push_back(ly.scale_invariant_value);
                quantity = "scale_invariant_value";
                break;
            }
            case PsublapMode::bound: {
                const SystemParams sp(task.s, task.p, task.alpha, task.theta, Q);
                const double r = inner_quasi_radius(cfg.geometry, omega->domain());
                const double value = eigen_lower_bound_formula(sp, constant_on(omega, task.phi), task.lambda_others,
                                                               task.k, task.constant, r);
                level.update(Json{{"inner_radius", r}, {"lower_bound", value}});
                headline.push_back(value);
                quantity = "lower_bound";
                break;
            }
        }
        levels.push_back(std::move(level));
    }
    b.results[quantity] = headline.back();
    if (task.mode == PsublapMode::lyapunov || task.mode == PsublapMode::bound) {
        b.results["theta"] = task.theta;
    }
    b.results["levels"] = std::move(levels);
    if (task.mode == PsublapMode::apply && task.profile.kind == ProfileKind::csv) {
        b.warnings.push_back("csv profile exists on the configured grid only; no refinement pair");
        return;
    }
    Refinement r{resolutions[0], resolutions[1], headline[0], headline[1], 0.0, false};
    r.gap = headline[1] == 0.0 && headline[0] == 0.0 ? 0.0 : std::abs(headline[1] - headline[0]) / std::abs(headline[1]);
    r.unresolved = !(r.gap <= kUnresolvedGap);
    b.refine(r, quantity);
}

void run_seminorm(const RunConfig& cfg, const SeminormTask& task, Builder& b) {
    const SeminormParams sp(task.s, task.p, task.beta1, task.beta2);
    const bool weighted = task.beta1 != 0.0 || task.beta2 != 0.0;
    const bool csv = task.profile.kind == ProfileKind::csv;
    Json levels = Json::array();
    std::vector<double> semi;
    const int resolutions[] = {cfg.resolution(), fine_of(cfg)};
    for (const int res : resolutions) {
        if (csv && res != resolutions[0]) {
            break;
        }
        const GridPtr grid = grid_at(cfg, res);
        const GridFunction u = sample_profile(task.profile, grid);
        if (res == resolutions[0]) write_csv_file(cfg.csv_path, u);
        const double value = weighted ? weighted_gagliardo_seminorm(u, sp, cfg.backend)
                                      : gagliardo_seminorm(u, sp, cfg.backend);
        Json level = grid_json(*grid);
        level.update(Json{{"lp_norm", lp_norm(u, task.p)}, {"mean", domain_mean(u)}, {"seminorm", value}});
        levels.push_back(std::move(level));
        semi.push_back(value);
    }
    b.results = Json{{"s", task.s},
                     {"p", task.p},
                     {"beta1", task.beta1},
                     {"beta2", task.beta2},
                     {"profile", std::string(to_string(task.profile.kind))},
                     {"seminorm", semi.back()},
                     {"levels", std::move(levels)}};
    if (csv) {
        b.warnings.push_back("csv profile exists on the configured grid only; no refinement pair");
        return;
    }
    Refinement r{resolutions[0], resolutions[1], semi[0], semi[1], 0.0, false};
    r.gap = semi[1] == 0.0 && semi[0] == 0.0 ? 0.0 : std::abs(semi[1] - semi[0]) / std::abs(semi[1]);
    r.unresolved = !(r.gap <= kUnresolvedGap);
    b.refine(r, "seminorm");
}

Json meta_json(const std::string& task, std::uint64_t seed, const std::string& backend, double seconds) {
    return Json{{"schema_version", kSchemaVersion},
                {"version", kVersion},
                {"tool", "fraclab"},
                {"task", task},
                {"seed", seed},
                {"backend", backend},
                {"wall_clock_seconds", seconds}};
}

}  // namespace

Outcome run(const RunConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    Builder b;
    std::visit(
        [&](const auto& block) {
            using T = std::decay_t<decltype(block)>;
            if constexpr (std::is_same_v<T, RieszTask>) run_riesz(cfg, block, b);
            else if constexpr (std::is_same_v<T, VerifyTask>) run_verify(cfg, block, b);
            else if constexpr (std::is_same_v<T, PsublapTask>) run_psublap(cfg, block, b);
            else run_seminorm(cfg, block, b);
        },
        cfg.block);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    Json config = Json::object();
    for (const auto& [key, value] : cfg.echo) {
        config[key] = value;
    }
    Json report{{"config", std::move(config)},
                {"results", std::move(b.results)},
                {"refinement", std::move(b.refinement)},
                {"flags",
                 {{"pass", b.pass ? Json(*b.pass) : Json(nullptr)},
                  {"violation", b.violation},
                  {"unresolved", b.unresolved},
                  {"warnings", std::move(b.warnings)},
                  {"error", nullptr}}},
                {"meta", meta_json(std::string(to_string(cfg.task)), cfg.seed,
                                   std::string(kernels::to_string(cfg.backend)), seconds)}};
    const int code = b.violation ? exit_violation : b.unresolved ? exit_unresolved : exit_ok;
    return {code, std::move(report)};
}

Json error_report(const std::string& task, const std::string& code, const std::string& message) {
    return Json{{"config", Json::object()},
                {"results", Json::object()},
                {"refinement", Json::array()},
                {"flags",
                 {{"pass", nullptr},
                  {"violation", false},
                  {"unresolved", false},
                  {"warnings", Json::array()},
                  {"error", {{"code", code}, {"message", message}}}}},
                {"meta", meta_json(task, 0, "", 0.0)}};
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fractional inequalities on homogeneous Lie groups: numerical checks"};
    app.name("fraclab");
    std::string task;
    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> resolution;
    std::string inequality;
    std::string mode;
    app.add_option("task", task, "riesz | verify | psublap | seminorm")
        ->required()
        ->check(CLI::IsMember({"riesz", "verify", "psublap", "seminorm"}));
    app.add_option("--config", config_path, "key = value config file")->required();
    app.add_option("--out", out_path, "report path (default: config 'output', else stdout)");
    app.add_option("--seed", seed, "RNG seed for test families");
    app.add_option("--resolution", resolution, "coarse cells per axis");
    app.add_option("--inequality", inequality, "verify: gn | ckn | ckn-critical | hardy | sobolev")
        ->check(CLI::IsMember({"gn", "ckn", "ckn-critical", "hardy", "sobolev"}));
    app.add_option("--mode", mode, "psublap: apply | residual | lyapunov | bound")
        ->check(CLI::IsMember({"apply", "residual", "lyapunov", "bound"}));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_error;
    }

    auto emit_error = [&](const Json& report, const std::string& path) {
        if (path.empty()) {
            return;
        }
        std::ofstream file(path, std::ios::binary);
        file << dump_report(report);
    };
    auto emit = [&](const Json& report, const std::string& path) {
        const std::string text = dump_report(report);
        if (path.empty()) {
            out << text;
            return;
        }
        std::ofstream file(path, std::ios::binary);
        if (!file) {
            throw Error(ErrorCode::io_error, "cannot write '" + path + "'");
        }
        file << text;
    };

    std::string target = out_path;
    try {
        std::ifstream in(config_path, std::ios::binary);
        if (!in) {
            throw Error(ErrorCode::io_error, "cannot read config '" + config_path + "'");
        }
        std::ostringstream text;
        text << in.rdbuf();
        if (target.empty()) {
            target = config_value(text.str(), "output").value_or("");
        }
        Overrides overrides{{"task", task}};
        if (seed) overrides["seed"] = std::to_string(*seed);
        if (resolution) overrides["domain.resolution"] = std::to_string(*resolution);
        if (!out_path.empty()) overrides["output"] = out_path;
        if (!inequality.empty()) {
            if (task != "verify") throw ParseError("verify.inequality", "--inequality applies to verify only");
            overrides["verify.inequality"] = inequality;
        }
        if (!mode.empty()) {
            if (task != "psublap") throw ParseError("psublap.mode", "--mode applies to psublap only");
            overrides["psublap.mode"] = mode;
        }
        if (const auto file_task = config_value(text.str(), "task"); file_task && *file_task != task) {
            throw ParseError("task", "config says '" + *file_task + "' but the command line says '" + task + "'");
        }
        const RunConfig cfg = parse_config(text.str(), overrides);
        target = cfg.output_path;
        const Outcome outcome = run(cfg);
        emit(outcome.report, target);
        return outcome.exit_code;
    } catch (const ParseError& e) {
        err << "fraclab: config error at key '" << e.key() << "': " << e.reason() << "\n";
        emit_error(error_report(task, std::string(to_string(e.code())), e.message()), target);
        return exit_error;
    } catch (const Error& e) {
        err << "fraclab: " << to_string(e.code()) << ": " << e.message() << "\n";
        emit_error(error_report(task, std::string(to_string(e.code())), e.message()), target);
        return exit_error;
    } catch (const std::exception& e) {
        err << "fraclab: " << e.what() << "\n";
        return exit_error;
    }
}

}  // namespace fraclab::cli
