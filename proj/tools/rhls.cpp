#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rhls/acceptance.hpp"
#include "rhls/constants.hpp"
#include "rhls/energy.hpp"
#include "rhls/error.hpp"
#include "rhls/flow.hpp"
#include "rhls/functionals.hpp"
#include "rhls/io.hpp"
#include "rhls/minimize.hpp"
#include "rhls/regimes.hpp"
#include "rhls/sweep.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace rhls;

namespace {

constexpr int kUsage = 2;
constexpr int kNumerical = 1;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

// Artifacts written under --out; manifest.json lists them.
class Output {
public:
    Output(std::string dir, std::string command, json params)
        : dir_(std::move(dir)), command_(std::move(command)), params_(std::move(params))
    {
        if (!dir_.empty())
            fs::create_directories(dir_);
    }

    bool enabled() const { return !dir_.empty(); }
    std::string path(const std::string& name) const { return (fs::path(dir_) / name).string(); }

    void add(const std::string& name, const std::string& description)
    {
        artifacts_.push_back({{"path", name}, {"description", description}});
    }

    void write_json(const std::string& name, const json& j, const std::string& description)
    {
        std::ofstream os(path(name));
        os << j.dump(2) << '\n';
        add(name, description);
    }

    void finish()
    {
        if (!enabled())
            return;
        json m{{"command", command_}, {"parameters", params_}, {"artifacts", artifacts_}};
        std::ofstream os(path("manifest.json"));
        os << m.dump(2) << '\n';
    }

private:
    std::string dir_;
    std::string command_;
    json params_;
    json artifacts_ = json::array();
};

struct Common {
    int N = 1;
    double lambda = 2.0;
    double q = 0.5;
    std::string out;
    std::string config;
    std::uint64_t seed = 0;
};

void add_params(CLI::App* app, Common& c, bool with_q = true, bool with_lambda = true)
{
    app->add_option("--dim", c.N, "space dimension N >= 1")->check(CLI::PositiveNumber);
    if (with_lambda)
        app->add_option("--lambda", c.lambda, "kernel exponent lambda > 0")->check(CLI::PositiveNumber);
    if (with_q)
        app->add_option("--q", c.q, "integrability exponent q > 0")->check(CLI::PositiveNumber);
    app->add_option("--out", c.out, "output directory (artifacts plus manifest.json)");
    app->add_option("--config", c.config, "JSON file mirroring the flags; flags win");
    app->add_option("--seed", c.seed, "seed for randomized steps");
}

json params_json(const Common& c) { return {{"N", c.N}, {"lambda", c.lambda}, {"q", c.q}, {"seed", c.seed}}; }

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

// Appends "--key value" for config entries whose flag is absent from the command line.
std::vector<std::string> merge_config(std::vector<std::string> args)
{
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size())
            path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0)
            path = args[i].substr(9);
    }
    if (path.empty())
        return args;
    std::ifstream is(path);
    if (!is)
        throw UsageError("cannot open config file " + path);
    json cfg;
    try {
        is >> cfg;
    } catch (const json::exception& e) {
        throw UsageError("config file " + path + ": " + e.what());
    }
    if (!cfg.is_object())
        throw UsageError("config file must hold a JSON object");
    auto present = [&](const std::string& flag) {
        for (const auto& a : args)
            if (a == flag || a.rfind(flag + "=", 0) == 0)
                return true;
        return false;
    };
    for (const auto& [key, value] : cfg.items()) {
        const std::string flag = "--" + key;
        if (key == "config" || present(flag))
            continue;
        if (value.is_boolean()) {
            if (value.get<bool>())
                args.push_back(flag);
        } else if (value.is_number()) {
            args.push_back(flag);
            args.push_back(value.dump());
        } else if (value.is_string()) {
            args.push_back(flag);
            args.push_back(value.get<std::string>());
        } else {
            throw UsageError("config key " + key + " must be a number, string or boolean");
        }
    }
    return args;
}

json report_json(const MinimizerReport& r, const Params& p)
{
    return {{"N", p.N},
            {"lambda", p.lambda},
            {"q", p.q},
            {"alpha", p.alpha},
            {"estimate_C", r.estimate_C},
            {"C_closed_form", opt_json(closed_form_constant(p.N, p.lambda, p.q))},
            {"classification", to_string(r.classification)},
            {"dirac_mass", r.measure.dirac_mass()},
            {"test_quantity", r.test_quantity},
            {"predicted_rho0", opt_json(r.predicted_rho0)},
            {"predicted_dirac", opt_json(r.predicted_dirac)},
            {"virial_residual", r.virial_residual},
            {"origin_exponent", opt_json(r.origin_exponent)},
            {"iterations", r.iterations},
            {"converged", r.converged},
            {"final_residual", r.final_residual},
            {"capped_cells", r.capped_cells},
            {"start", r.start},
            {"cells", r.measure.grid().size()},
            {"r_max", r.measure.grid().r_max()}};
}

int cmd_constants(const Common& c)
{
    const Thresholds t = thresholds(c.N, c.lambda, c.lambda >= 2.0);
    json j = params_json(c);
    j.erase("seed");
    j["thresholds"] = {{"q_admissible", t.q_admissible},
                       {"q_conformal", t.q_conformal},
                       {"q_concentration", opt_json(t.q_concentration)},
                       {"q_mccann", t.q_mccann},
                       {"q_bar", opt_json(t.q_bar)},
                       {"q_explicit_bound", t.q_explicit_bound}};
    j["B_lower_bound"] = B_lower_bound(c.N, c.lambda);
    if (c.lambda >= 2.0)
        j["A_sup_ratio"] = sup_ratio_A(c.N, c.lambda).value;
    j["conformal_constant"] = conformal_constant(c.N, c.lambda);
    const bool fast = c.q < 1.0;
    const bool admissible = fast && c.q > t.q_admissible;
    j["alpha"] = c.q != 1.0 ? json(alpha_exponent(c.N, c.lambda, c.q)) : json(nullptr);
    j["admissible"] = admissible;
    j["C_closed_form"] = fast ? opt_json(closed_form_constant(c.N, c.lambda, c.q)) : json(nullptr);
    if (admissible) {
        j["carlson_levin_c"] = carlson_levin(c.N, c.lambda, c.q).constant;
        j["uniqueness_region"] = uniqueness_region(c.N, c.lambda, c.q);
        if (c.lambda > c.N * (1.0 - c.q))
            j["kappa_star"] = kappa_star(c.N, c.lambda, c.q);
    }
    print(j);
    Output out(c.out, "constants", params_json(c));
    if (out.enabled())
        out.write_json("constants.json", j, "constants and thresholds");
    out.finish();
    return 0;
}

struct MinimizeArgs {
    std::size_t cells = 2048;
    std::optional<double> r_max;
    double tol = 1e-10;
    int max_iter = 10000;
    double damping = 0.5;
    std::string init = "carlson";
    std::string init_file;
};

void add_minimize_options(CLI::App* app, MinimizeArgs& a)
{
    app->add_option("--cells", a.cells, "grid cells K")->check(CLI::Range(std::size_t{64}, std::size_t{1} << 16));
    app->add_option("--rmax", a.r_max, "outer grid radius (default from the tail decay)")->check(CLI::PositiveNumber);
    app->add_option("--tol", a.tol, "fixed-point tolerance")->check(CLI::PositiveNumber);
    app->add_option("--max-iter", a.max_iter, "iteration cap")->check(CLI::PositiveNumber);
    app->add_option("--damping", a.damping, "blend weight in (0, 1]")->check(CLI::Range(0.0, 1.0));
    app->add_option("--init", a.init, "initial measure")->check(CLI::IsMember({"carlson", "dirac", "file"}));
    app->add_option("--init-file", a.init_file, "profile CSV for --init file");
}

int cmd_minimize(const Common& c, const MinimizeArgs& a)
{
    const Params p(c.N, c.lambda, c.q);
    MinimizeOptions o;
    o.cells = a.cells;
    o.r_max = a.r_max;
    o.tol = a.tol;
    o.max_iter = a.max_iter;
    o.damping = a.damping;
    o.init = a.init == "dirac" ? InitKind::dirac : a.init == "file" ? InitKind::file : InitKind::carlson;
    if (o.init == InitKind::file) {
        if (a.init_file.empty())
            throw UsageError("--init file requires --init-file");
        o.init_measure = read_profile_csv(a.init_file).measure;
    }
    const MinimizerReport r = minimize_relaxed(p, o);
    const json j = report_json(r, p);
    print(j);
    json params = params_json(c);
    params["cells"] = a.cells;
    params["r_max"] = opt_json(a.r_max);
    params["tol"] = a.tol;
    params["max_iter"] = a.max_iter;
    params["damping"] = a.damping;
    params["init"] = a.init;
    Output out(c.out, "minimize", params);
    if (out.enabled()) {
        out.write_json("report.json", j, "minimizer report");
        write_profile_csv(out.path("profile.csv"), r.measure, p.lambda, p.q);
        out.add("profile.csv", "minimizing profile (cell centres, density) with Dirac mass in the header");
    }
    out.finish();
    return 0;
}

int cmd_energy(const Common& c, const std::string& profile_file, std::optional<double> C_value, std::size_t cells)
{
    const Params p(c.N, c.lambda, c.q);
    RelaxedMeasure m = [&] {
        if (!profile_file.empty())
            return read_profile_csv(profile_file).measure;
        const RadialGrid g = default_grid(p, cells);
        return RelaxedMeasure(carlson_levin(p.N, p.lambda, p.q).optimizer.sample(g), 0.0);
    }();
    if (m.grid().dim() != p.N)
        throw UsageError("profile dimension does not match --dim");
    if (!C_value)
        C_value = closed_form_constant(p.N, p.lambda, p.q);
    const EnergyReport e = energy_report(m, p, C_value);
    json j = params_json(c);
    j.erase("seed");
    j["source"] = profile_file.empty() ? "carlson-levin optimizer" : profile_file;
    j["free_energy"] = e.free_energy;
    j["quotient"] = quotient(m, p);
    j["rescale_ell"] = e.rescale_ell;
    j["min_energy"] = e.min_energy;
    j["lower_bound"] = opt_json(e.lower_bound);
    j["C_value"] = opt_json(C_value);
    j["virial_residual"] = e.virial_residual;
    print(j);
    Output out(c.out, "energy", params_json(c));
    if (out.enabled())
        out.write_json("energy.json", j, "free energy report");
    out.finish();
    return 0;
}

struct FlowArgs {
    std::size_t cells = 400;
    double r_max = 10.0;
    double t_end = 20.0;
    double dt = 1e-3;
    double dt_max = 0.5;
    std::string init_file;
    double mass_factor = 0.5;  ///< toy: target mass in units of the critical mass
};

void add_flow_options(CLI::App* app, FlowArgs& a)
{
    app->add_option("--cells", a.cells, "uniform grid cells")->check(CLI::Range(std::size_t{8}, std::size_t{1} << 16));
    app->add_option("--rmax", a.r_max, "domain radius (no-flux boundary)")->check(CLI::PositiveNumber);
    app->add_option("--t-end", a.t_end, "final time")->check(CLI::PositiveNumber);
    app->add_option("--dt", a.dt, "initial step")->check(CLI::PositiveNumber);
    app->add_option("--dt-max", a.dt_max, "largest step")->check(CLI::PositiveNumber);
    app->add_option("--init-file", a.init_file, "initial profile CSV (default: unit Gaussian)");
}

RadialProfile flow_initial(const Common& c, const FlowArgs& a)
{
    if (!a.init_file.empty()) {
        const ProfileFile pf = read_profile_csv(a.init_file);
        if (pf.header.N != c.N)
            throw UsageError("initial profile dimension does not match --dim");
        return pf.measure.profile();
    }
    const RadialGrid g = RadialGrid::uniform(c.N, a.r_max, a.cells);
    AnalyticProfile gauss{"gaussian", [](double r) { return std::exp(-0.5 * r * r); }};
    const RadialProfile f = gauss.sample(g);
    return f.scaled(1.0 / mass(f));
}

json flow_params(const Common& c, const FlowArgs& a)
{
    json j = params_json(c);
    j["cells"] = a.cells;
    j["r_max"] = a.r_max;
    j["t_end"] = a.t_end;
    j["dt"] = a.dt;
    j["dt_max"] = a.dt_max;
    j["init_file"] = a.init_file;
    return j;
}

json flow_summary(const FlowState& s)
{
    const auto& h = s.history;
    double drift = 0.0, rise = -INFINITY;
    for (std::size_t k = 0; k < h.size(); ++k) {
        drift = std::max(drift, std::abs(h[k].mass - h.front().mass) / h.front().mass);
        if (k > 0)
            rise = std::max(rise, h[k].free_energy - h[k - 1].free_energy);
    }
    return {{"time", s.time},
            {"steps", h.size() - 1},
            {"failed", s.failed},
            {"message", s.message},
            {"mass", h.back().mass},
            {"max_mass_drift", drift},
            {"max_energy_rise", h.size() > 1 ? json(rise) : json(nullptr)},
            {"free_energy", h.back().free_energy},
            {"innermost_mass", h.back().innermost_mass}};
}

void write_flow_artifacts(Output& out, const FlowState& s, const Common& c)
{
    if (!out.enabled())
        return;
    write_profile_csv(out.path("profile.csv"), RelaxedMeasure(s.profile, 0.0), c.lambda, c.q);
    out.add("profile.csv", "final density");
    write_history_csv(out.path("history.csv"), s);
    out.add("history.csv", "time series of mass, free energy, innermost-cell mass and dissipation");
}

FlowOptions flow_options(const FlowArgs& a)
{
    FlowOptions o;
    o.dt_initial = a.dt;
    o.dt_max = a.dt_max;
    return o;
}

int cmd_flow(const Common& c, const FlowArgs& a)
{
    const Params p(c.N, c.lambda, c.q);
    if (!(p.q < 1.0))
        throw UsageError("flow requires 0 < q < 1");
    const FlowState s = run(flow_initial(c, a), p, a.t_end, flow_options(a));
    json j = flow_params(c, a);
    j["result"] = flow_summary(s);
    j["stationary_residual"] = stationary_residual(s.profile, p);
    if (p.lambda == 2.0) {
        const RadialProfile st = stationary_profile_lambda2(p, mass(s.profile)).sample(s.profile.grid());
        j["l1_to_stationary"] = l1_distance(s.profile, st);
    }
    print(j);
    Output out(c.out, "flow", flow_params(c, a));
    write_flow_artifacts(out, s, c);
    if (out.enabled())
        out.write_json("flow.json", j, "flow summary");
    out.finish();
    return s.failed ? kNumerical : 0;
}

int cmd_toy(const Common& c, const FlowArgs& a)
{
    const Params p(c.N, c.lambda, c.q);
    const double m0 = toy_critical_mass(p);
    const ToyResult r = toy_run(flow_initial(c, a), p, a.mass_factor * m0, a.t_end, flow_options(a));
    json j = flow_params(c, a);
    j["mass_factor"] = a.mass_factor;
    j["critical_mass"] = m0;
    j["critical_mass_second_rule"] = toy_mass(0.0, p, true);
    j["verdict"] = r.verdict;
    j["fitted_h"] = r.verdict == "relaxing" ? json(r.fitted_h) : json(nullptr);
    j["l1_error"] = r.l1_error;
    j["innermost_growth"] = r.innermost_growth;
    j["result"] = flow_summary(r.state);
    print(j);
    json params = flow_params(c, a);
    params["mass_factor"] = a.mass_factor;
    Output out(c.out, "toy", params);
    write_flow_artifacts(out, r.state, c);
    if (out.enabled())
        out.write_json("toy.json", j, "toy-model verdict");
    out.finish();
    return r.state.failed ? kNumerical : 0;
}

int cmd_pm(const Common& c, const PMOptions& o)
{
    const PMParams p(c.N, c.lambda, c.q);
    const PMReport r = pm_minimize(p, o);
    json j = params_json(c);
    j.erase("seed");
    j["alpha"] = p.alpha;
    j["estimate_C"] = r.estimate_C;
    j["conformal_constant"] = conformal_constant(c.N, c.lambda);
    j["support_radius"] = r.support_radius;
    j["support_cells"] = r.support_cells;
    j["cells"] = o.cells;
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    j["final_residual"] = r.final_residual;
    print(j);
    json params = params_json(c);
    params["cells"] = o.cells;
    params["r_max"] = o.r_max;
    Output out(c.out, "pm", params);
    if (out.enabled()) {
        out.write_json("pm.json", j, "porous-medium estimate");
        write_profile_csv(out.path("profile.csv"), RelaxedMeasure(r.profile, 0.0), c.lambda, c.q);
        out.add("profile.csv", "compactly supported fixed point");
    }
    out.finish();
    return 0;
}

int cmd_logsob(const Common& c, const LogSobOptions& o)
{
    const Params p(c.N, c.lambda, 1.0);
    const LogSobReport r = logsob_estimate(p, o);
    json j{{"N", c.N}, {"lambda", c.lambda}, {"q", 1.0}};
    j["estimate_C_upper"] = r.estimate_C;
    j["conformal_constant"] = conformal_constant(c.N, c.lambda);
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    j["final_residual"] = r.final_residual;
    print(j);
    json params{{"N", c.N}, {"lambda", c.lambda}, {"cells", o.cells}};
    Output out(c.out, "logsob", params);
    if (out.enabled()) {
        out.write_json("logsob.json", j, "logarithmic-case estimate");
        write_profile_csv(out.path("profile.csv"), RelaxedMeasure(r.profile, 0.0), c.lambda, 1.0);
        out.add("profile.csv", "fixed-point profile");
    }
    out.finish();
    return 0;
}

int cmd_sweep(const Common& c, SweepSpec spec, const std::string& mode)
{
    spec.N = c.N;
    spec.mode = mode == "classify" ? SweepMode::minimize_classify : SweepMode::analytic_regions;
    spec.validate();
    const auto pts = sweep_region(spec);
    const std::string dir = c.out.empty() ? "." : c.out;
    json params{{"N", spec.N},
                {"lambda", {spec.lambda.min, spec.lambda.max, spec.lambda.steps}},
                {"q", {spec.q.min, spec.q.max, spec.q.steps}},
                {"mode", mode}};
    if (spec.mode == SweepMode::minimize_classify) {
        params["cells"] = spec.cells;
        params["max_iter"] = spec.max_iter;
    }
    Output out(dir, "sweep", params);
    {
        std::ofstream os(out.path("sweep.csv"));
        write_sweep_csv(os, spec, pts);
    }
    out.add("sweep.csv", "one row per (lambda, q) with region labels");
    {
        std::ofstream os(out.path("sweep.svg"));
        write_sweep_svg(os, spec, pts);
    }
    out.add("sweep.svg", "region map");
    out.finish();
    std::size_t errors = 0;
    for (const auto& p : pts)
        errors += !p.error.empty();
    print({{"points", pts.size()}, {"errors", errors}, {"out", dir}});
    return 0;
}

int cmd_verify(const std::string& suite, std::uint64_t seed)
{
    if (!is_suite(suite))
        throw UsageError("unknown suite: " + suite);
    const auto results = run_suite(suite, AcceptanceOptions{seed});
    print_results(std::cout, results);
    for (const auto& r : results)
        if (!r.pass)
            std::cerr << "failed: criterion " << r.id << " (" << r.name << ")\n";
    return all_passed(results) ? 0 : kNumerical;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Reverse Hardy-Littlewood-Sobolev numerical lab"};
    app.require_subcommand(1);
    Common c;

    auto* constants = app.add_subcommand("constants", "closed-form constants and thresholds");
    add_params(constants, c);

    MinimizeArgs ma;
    auto* minimize = app.add_subcommand("minimize", "relaxed minimizer and classification");
    add_params(minimize, c);
    add_minimize_options(minimize, ma);

    std::string energy_file;
    std::optional<double> energy_C;
    std::size_t energy_cells = 2048;
    auto* energy = app.add_subcommand("energy", "free energy, optimal rescale and virial residual");
    add_params(energy, c);
    energy->add_option("--profile", energy_file, "profile CSV (default: Carlson-Levin optimizer)");
    energy->add_option("--C", energy_C, "constant for the energy lower bound (default: closed form)")
        ->check(CLI::PositiveNumber);
    energy->add_option("--cells", energy_cells, "grid cells for the default profile")
        ->check(CLI::Range(std::size_t{64}, std::size_t{1} << 16));

    FlowArgs fa;
    auto* flow = app.add_subcommand("flow", "gradient flow of the free energy");
    add_params(flow, c);
    add_flow_options(flow, fa);

    FlowArgs ta;
    ta.t_end = 50.0;
    auto* toy = app.add_subcommand("toy", "fast diffusion in the fixed confining potential");
    add_params(toy, c);
    add_flow_options(toy, ta);
    toy->add_option("--mass-factor", ta.mass_factor, "initial mass over the critical mass")
        ->check(CLI::PositiveNumber);

    PMOptions po;
    auto* pm = app.add_subcommand("pm", "porous-medium range q > 1");
    add_params(pm, c);
    pm->add_option("--cells", po.cells, "uniform grid cells")->check(CLI::Range(std::size_t{8}, std::size_t{1} << 16));
    pm->add_option("--rmax", po.r_max, "grid radius")->check(CLI::PositiveNumber);
    pm->add_option("--tol", po.tol, "fixed-point tolerance")->check(CLI::PositiveNumber);
    pm->add_option("--max-iter", po.max_iter, "iteration cap")->check(CLI::PositiveNumber);
    pm->add_option("--damping", po.damping, "blend weight in (0, 1]")->check(CLI::Range(0.0, 1.0));

    LogSobOptions lo;
    auto* logsob = app.add_subcommand("logsob", "logarithmic case q = 1 (upper estimate)");
    add_params(logsob, c, false);
    logsob->add_option("--cells", lo.cells, "geometric grid cells")
        ->check(CLI::Range(std::size_t{32}, std::size_t{1} << 16));
    logsob->add_option("--tol", lo.tol, "fixed-point tolerance")->check(CLI::PositiveNumber);
    logsob->add_option("--max-iter", lo.max_iter, "iteration cap")->check(CLI::PositiveNumber);

    SweepSpec spec;
    std::string sweep_mode = "analytic";
    auto* sweep = app.add_subcommand("sweep", "region map over (lambda, q)");
    Common sc;
    sc.N = 4;
    add_params(sweep, sc, false, false);
    sweep->add_option("--lambda-min", spec.lambda.min, "smallest lambda")->check(CLI::PositiveNumber);
    sweep->add_option("--lambda-max", spec.lambda.max, "largest lambda")->check(CLI::PositiveNumber);
    sweep->add_option("--lambda-steps", spec.lambda.steps, "lambda grid points")->check(CLI::Range(2, 4096));
    sweep->add_option("--q-min", spec.q.min, "smallest q")->check(CLI::PositiveNumber);
    sweep->add_option("--q-max", spec.q.max, "largest q")->check(CLI::PositiveNumber);
    sweep->add_option("--q-steps", spec.q.steps, "q grid points")->check(CLI::Range(2, 4096));
    sweep->add_option("--mode", sweep_mode, "analytic regions or minimizer classification")
        ->check(CLI::IsMember({"analytic", "classify"}));
    sweep->add_option("--cells", spec.cells, "grid cells (classify)");
    sweep->add_option("--max-iter", spec.max_iter, "iteration cap (classify)");

    std::string suite = "all";
    auto* verify = app.add_subcommand("verify", "acceptance suites");
    verify->add_option("--suite", suite, "closed-forms, degenerate, virial, regions, positivity, flow, toy, "
                                         "pm-log, properties or all");
    verify->add_option("--seed", c.seed, "seed for randomized checks");
    verify->add_option("--config", c.config, "JSON file mirroring the flags; flags win");

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        args = merge_config(std::move(args));
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (*constants)
            return cmd_constants(c);
        if (*minimize)
            return cmd_minimize(c, ma);
        if (*energy)
            return cmd_energy(c, energy_file, energy_C, energy_cells);
        if (*flow)
            return cmd_flow(c, fa);
        if (*toy)
            return cmd_toy(c, ta);
        if (*pm)
            return cmd_pm(c, po);
        if (*logsob)
            return cmd_logsob(c, lo);
        if (*sweep)
            return cmd_sweep(sc, spec, sweep_mode);
        if (*verify)
            return cmd_verify(suite, c.seed);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const DegenerateError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumerical;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumerical;
    }
    return 0;
}
