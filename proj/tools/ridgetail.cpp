// Command-line front end: estimation of the supremum-functional constants,
// evaluation of the tail asymptotes, the fBm-sum simulation harness, and the
// local-expansion checks. Every run writes CSV artifacts plus a manifest
// recording the full configuration; re-running a manifest reproduces the
// outputs byte for byte.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ridgetail/asymptote.hpp"
#include "ridgetail/constants.hpp"
#include "ridgetail/fbm.hpp"
#include "ridgetail/harness.hpp"
#include "ridgetail/io.hpp"
#include "ridgetail/provider.hpp"

namespace fs = std::filesystem;
using namespace ridgetail;

namespace {

constexpr const char* kVersion = "0.1.0";

struct GlobalOpts {
    std::uint64_t seed = 1;
    int threads = 0;
    std::string out_dir;  // empty: timestamped subdirectory of the base dir
    bool svg = false;
};

std::string bool_str(bool b) { return b ? "true" : "false"; }

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stod(item));
    }
    if (out.empty()) throw CLI::ValidationError("expected a comma-separated list");
    return out;
}

fs::path prepare_out_dir(const GlobalOpts& g, const std::string& command) {
    if (!g.out_dir.empty()) {
        fs::create_directories(g.out_dir);
        return g.out_dir;
    }
    const char* env = std::getenv("RIDGETAIL_OUT");
    fs::path base = env ? fs::path(env) : fs::path("out");
    const auto now = std::chrono::system_clock::now();
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch());
    std::string stem = command + "-" + std::to_string(secs.count());
    fs::path dir = base / stem;
    for (int k = 1; fs::exists(dir); ++k) dir = base / (stem + "-" + std::to_string(k));
    fs::create_directories(dir);
    return dir;
}

using Manifest = std::vector<std::pair<std::string, std::string>>;

void finish_manifest(const Manifest& manifest, const GlobalOpts& g, const std::string& command,
                     const fs::path& dir) {
    Manifest head{{"command", command},
                  {"version", kVersion},
                  {"seed", std::to_string(g.seed)},
                  {"threads", std::to_string(g.threads)},
                  {"svg", bool_str(g.svg)}};
    head.insert(head.end(), manifest.begin(), manifest.end());
    write_keyvalue((dir / "manifest.ini").string(), head);
}

// manifest / config file -> synthetic argv (command first, then --key value)
std::vector<std::string> config_to_args(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("cannot read config file: " + path);
    std::string command;
    std::vector<std::string> args;
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || key == "version") continue;
        if (key == "command") {
            command = value;
        } else if (value == "true") {
            args.push_back("--" + key);
        } else if (value == "false") {
            // omitted flag
        } else {
            args.push_back("--" + key);
            args.push_back(value);
        }
    }
    if (command.empty()) throw CLI::ValidationError("config file does not name a command");
    std::vector<std::string> full{command};
    full.insert(full.end(), args.begin(), args.end());
    return full;
}

std::vector<std::vector<std::string>> constant_rows(
    const std::string& id, double a1, double a2, double gamma, double b, double beta,
    const std::string& region, const ConstantEstimate& est) {
    auto row = [&](double value, double se, bool extrapolated) {
        return std::vector<std::string>{id,
                                        format_number(a1),
                                        format_number(a2),
                                        format_number(gamma),
                                        format_number(b),
                                        format_number(beta),
                                        region,
                                        format_number(est.S),
                                        format_number(est.step),
                                        format_number(est.reps),
                                        format_number(value),
                                        format_number(se),
                                        bool_str(extrapolated),
                                        bool_str(est.converged)};
    };
    std::vector<std::vector<std::string>> rows;
    rows.push_back(row(est.raw_value, est.raw_se, false));
    if (est.extrapolated) rows.push_back(row(est.value, est.se, true));
    return rows;
}

const std::vector<std::string> kConstantHeader{
    "constant_id", "alpha1", "alpha2", "gamma", "b",     "beta",         "region",
    "S",           "step",   "reps",   "value", "stderr", "extrapolated", "converged"};

void write_asymptote_outputs(const fs::path& dir, const TailAsymptote& asym,
                             const std::vector<double>& u_grid) {
    write_csv((dir / "asymptote.csv").string(),
              {"case_tag", "K", "K_stderr", "p", "converged", "degenerate"},
              {{asym.case_tag, format_number(asym.K), format_number(asym.K_se),
                format_number(asym.p), bool_str(asym.converged), bool_str(asym.degenerate)}});
    if (!u_grid.empty()) {
        std::vector<std::vector<std::string>> rows;
        for (double u : u_grid)
            rows.push_back({format_number(u), format_number(asym.evaluate(u))});
        write_csv((dir / "asymptote_eval.csv").string(), {"u", "value"}, rows);
    }
}

struct PresetDef {
    double alpha1, alpha2;
};

const std::map<std::string, PresetDef> kPresets{
    {"cor41-sub1", {0.5, 0.75}}, {"cor41-eq1", {0.5, 1.0}},  {"cor41-super1", {0.75, 1.5}},
    {"cor42-sub1", {0.75, 0.75}}, {"cor42-alpha1", {1.0, 1.0}}, {"cor42-super1", {1.5, 1.5}},
};

struct ProviderOpts {
    double step = 0.05;
    long reps = 100000;
    bool pinned = false;
};

std::unique_ptr<ConstantsProvider> make_provider(const ProviderOpts& p, const GlobalOpts& g) {
    if (p.pinned)
        return std::make_unique<PinnedConstantsProvider>(PinnedConstantsProvider::classical());
    McConstantsProvider::Settings s;
    s.step = p.step;
    s.reps = p.reps;
    s.threads = g.threads;
    s.seed = g.seed;
    return std::make_unique<McConstantsProvider>(s);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tail asymptotics of Gaussian-field suprema with ridge-shaped variance maxima"};
    app.option_defaults()->take_last();
    app.require_subcommand(0, 1);

    GlobalOpts g;
    std::string config_path;
    app.add_option("--seed", g.seed, "master seed");
    app.add_option("--threads", g.threads, "worker threads (0 = auto; never changes results)");
    app.add_option("--out", g.out_dir, "output directory (default: timestamped subdir)");
    app.add_flag("--svg", g.svg, "also write SVG plots");
    app.add_option("--config", config_path, "key = value config file (e.g. a manifest)");

    // simulate
    auto* sim = app.add_subcommand("simulate", "sample one exact fBm path, write t,value CSV");
    double sim_alpha = 1.0, sim_end = 1.0;
    int sim_points = 101;
    sim->add_option("--alpha", sim_alpha, "fBm index in (0,2]")->required();
    sim->add_option("--end", sim_end, "grid endpoint (grid starts at 0)");
    sim->add_option("--points", sim_points, "number of grid points");

    // constant
    auto* con = app.add_subcommand("constant", "Monte Carlo estimate of a supremum constant");
    std::string con_kind, con_region = "interval", con_ladder = "2,4,8";
    double con_alpha = 1.0, con_alpha2 = -1.0, con_gamma = 0.0, con_b = 0.0, con_beta = -1.0;
    double con_S = 8.0, con_s1 = 0.0, con_s2 = 0.0, con_step = 0.05;
    long con_reps = 100000;
    bool con_one_sided = false;
    con->add_option("--kind", con_kind,
                    "pickands | pickands-finite | piterbarg | gen-rate | functional")
        ->required();
    con->add_option("--alpha", con_alpha)->required();
    con->add_option("--alpha2", con_alpha2, "second index (functional; default alpha)");
    con->add_option("--gamma", con_gamma);
    con->add_option("--b", con_b, "strip tilt");
    con->add_option("--beta", con_beta, "drift exponent (default alpha)");
    con->add_option("--S", con_S);
    con->add_option("--s1", con_s1);
    con->add_option("--s2", con_s2);
    con->add_option("--region", con_region, "interval | strip | half-strip (functional)");
    con->add_option("--ladder", con_ladder, "comma-separated S ladder");
    con->add_option("--step", con_step);
    con->add_option("--reps", con_reps);
    con->add_flag("--one-sided", con_one_sided);

    // asymptote / fbm-sum
    auto* asy = app.add_subcommand("asymptote", "evaluate a tail asymptote K u^p Psi(u)");
    std::string asy_preset, asy_scenario = "line", asy_ugrid;
    double asy_T1 = 1.0, asy_T2 = 1.0, asy_b = 0.0;
    double asy_r1c = 1.0, asy_r1i = 0.5, asy_r2c = 1.0, asy_r2i = 0.5, asy_vc = 1.0,
           asy_vi = 0.5;
    bool asy_boundary = false;
    ProviderOpts asy_prov;
    asy->add_option("--preset", asy_preset, "one of the bundled fBm-sum presets");
    asy->add_option("--scenario", asy_scenario, "line (flags below) when no preset is given");
    asy->add_option("--T1", asy_T1);
    asy->add_option("--T2", asy_T2);
    asy->add_option("--b", asy_b);
    asy->add_option("--rho1-coeff", asy_r1c);
    asy->add_option("--rho1-index", asy_r1i);
    asy->add_option("--rho2-coeff", asy_r2c);
    asy->add_option("--rho2-index", asy_r2i);
    asy->add_option("--v-coeff", asy_vc);
    asy->add_option("--v-index", asy_vi);
    asy->add_flag("--boundary", asy_boundary);
    asy->add_option("--u-grid", asy_ugrid, "comma-separated u values for the evaluation table");
    asy->add_option("--step", asy_prov.step);
    asy->add_option("--reps", asy_prov.reps);
    asy->add_flag("--pinned", asy_prov.pinned, "use the pinned classical constants table");

    auto* fbs = app.add_subcommand("fbm-sum", "tail asymptote for the two-fBm sum field");
    double fbs_a1 = 1.0, fbs_a2 = 1.0;
    std::string fbs_ugrid;
    ProviderOpts fbs_prov;
    fbs->add_option("--alpha1", fbs_a1)->required();
    fbs->add_option("--alpha2", fbs_a2)->required();
    fbs->add_option("--u-grid", fbs_ugrid);
    fbs->add_option("--step", fbs_prov.step);
    fbs->add_option("--reps", fbs_prov.reps);
    fbs->add_flag("--pinned", fbs_prov.pinned);

    // compare
    auto* cmp = app.add_subcommand("compare", "Monte Carlo exceedance vs asymptote table");
    double cmp_a1 = 1.0, cmp_a2 = 1.0;
    std::string cmp_u = "2.5,3.0,3.5", cmp_grids = "100,200,400";
    long cmp_reps = 200000;
    ProviderOpts cmp_prov;
    cmp->add_option("--alpha1", cmp_a1)->required();
    cmp->add_option("--alpha2", cmp_a2)->required();
    cmp->add_option("--u", cmp_u, "comma-separated u list");
    cmp->add_option("--grids", cmp_grids, "nested grid ladder (subintervals per axis)");
    cmp->add_option("--reps", cmp_reps);
    cmp->add_option("--step", cmp_prov.step);
    cmp->add_option("--constant-reps", cmp_prov.reps, "replications for the constant estimate");
    cmp->add_flag("--pinned", cmp_prov.pinned);

    // check-expansions
    auto* exp = app.add_subcommand("check-expansions",
                                   "local variance/correlation expansion error ladders");
    double exp_a1 = 1.0, exp_a2 = 1.0;
    std::string exp_deltas = "1e-2,1e-3,1e-4";
    int exp_points = 64;
    exp->add_option("--alpha1", exp_a1)->required();
    exp->add_option("--alpha2", exp_a2)->required();
    exp->add_option("--deltas", exp_deltas);
    exp->add_option("--points", exp_points);

    // global options may appear after the subcommand
    for (auto* s : app.get_subcommands([](const CLI::App*) { return true; }))
        s->fallthrough();

    // manifest / config replay: synthesize argv from the file, then let the
    // real command line override
    std::vector<std::string> args(argv + 1, argv + argc);
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            try {
                std::vector<std::string> head = config_to_args(args[i + 1]);
                args.erase(args.begin() + i, args.begin() + i + 2);
                args.insert(args.begin(), head.begin(), head.end());
            } catch (const CLI::Error& e) {
                std::cerr << "error: " << e.what() << "\n";
                return 2;
            }
            break;
        }
    }

    try {
        std::vector<char*> cargs;
        cargs.push_back(argv[0]);
        for (auto& a : args) cargs.push_back(a.data());
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (app.get_subcommands().empty()) {
        std::cerr << app.help();
        return 2;
    }
    CLI::App* sub = app.get_subcommands().front();
    const std::string command = sub->get_name();

    fs::path dir;
    try {
        dir = prepare_out_dir(g, command);

        if (sub == sim) {
            GridSpec grid{0.0, sim_end, sim_points};
            const FbmPath path = simulate_fbm(grid, sim_alpha, g.seed);
            std::vector<std::vector<std::string>> rows;
            for (int i = 0; i < grid.n_points; ++i)
                rows.push_back({format_number(grid.point(i)), format_number(path.values[i])});
            write_csv((dir / "path.csv").string(), {"t", "value"}, rows);
            Manifest manifest{{"alpha", format_number(sim_alpha)},
                              {"end", format_number(sim_end)},
                              {"points", format_number(sim_points)}};
            finish_manifest(manifest, g, command, dir);
        } else if (sub == con) {
            EstimatorOptions opt;
            opt.step = con_step;
            opt.reps = con_reps;
            opt.threads = g.threads;
            opt.seed = g.seed;
            const double a2 = con_alpha2 > 0 ? con_alpha2 : con_alpha;
            const double beta = con_beta > 0 ? con_beta : con_alpha;
            std::vector<std::vector<std::string>> rows;
            if (con_kind == "pickands") {
                const auto ladder = parse_list(con_ladder);
                const auto est = pickands(con_alpha, ladder, opt);
                rows = constant_rows("pickands-rate", con_alpha, con_alpha, 0, 0, con_alpha,
                                     "interval[0,S]/S", est);
            } else if (con_kind == "pickands-finite") {
                const auto est = pickands_finite(con_alpha, con_S, opt);
                rows = constant_rows("pickands-finite", con_alpha, con_alpha, 0, 0, con_alpha,
                                     "interval[0,S]", est);
            } else if (con_kind == "piterbarg") {
                const auto est = piterbarg(con_alpha, con_gamma, con_S, con_one_sided, opt);
                rows = constant_rows(con_one_sided ? "piterbarg-hat" : "piterbarg", con_alpha,
                                     con_alpha, con_gamma, 0, con_alpha,
                                     con_one_sided ? "interval[0,S]" : "interval[-S,S]", est);
            } else if (con_kind == "gen-rate") {
                const auto ladder = parse_list(con_ladder);
                const auto est =
                    gen_pickands_rate(con_alpha, con_gamma, con_b, con_one_sided, ladder, opt);
                rows = constant_rows(con_one_sided ? "strip-rate-hat" : "strip-rate", con_alpha,
                                     con_alpha, con_gamma, con_b, con_alpha,
                                     con_one_sided ? "half-strip/S" : "strip/S", est);
            } else if (con_kind == "functional") {
                RegionSpec region;
                if (con_region == "interval") {
                    region = RegionSpec::interval(con_s1, con_s2);
                } else if (con_region == "strip") {
                    region = RegionSpec::strip(con_S, con_b);
                } else if (con_region == "half-strip") {
                    region = RegionSpec::half_strip(con_S, con_b);
                } else {
                    throw std::domain_error("unknown region: " + con_region);
                }
                DriftSpec drift = con_gamma == 0.0
                                      ? DriftSpec::pickands()
                                      : (con_region == "interval"
                                             ? DriftSpec::piterbarg(con_gamma)
                                             : DriftSpec::generalized(con_gamma, con_b, beta));
                const auto est = functional_expectation(con_alpha, a2, region, drift, con_step,
                                                        con_reps, g.seed, g.threads);
                rows = constant_rows("functional", con_alpha, a2, con_gamma, con_b, beta,
                                     con_region, est);
            } else {
                throw std::domain_error("unknown constant kind: " + con_kind);
            }
            write_csv((dir / "constants.csv").string(), kConstantHeader, rows);
            Manifest manifest{{"kind", con_kind},
                              {"alpha", format_number(con_alpha)},
                              {"alpha2", format_number(a2)},
                              {"gamma", format_number(con_gamma)},
                              {"b", format_number(con_b)},
                              {"beta", format_number(beta)},
                              {"region", con_region},
                              {"S", format_number(con_S)},
                              {"s1", format_number(con_s1)},
                              {"s2", format_number(con_s2)},
                              {"ladder", con_ladder},
                              {"step", format_number(con_step)},
                              {"reps", format_number(con_reps)},
                              {"one-sided", bool_str(con_one_sided)}};
            finish_manifest(manifest, g, command, dir);
        } else if (sub == asy || sub == fbs) {
            const ProviderOpts& popt = sub == asy ? asy_prov : fbs_prov;
            auto provider = make_provider(popt, g);
            TailAsymptote asym;
            Manifest manifest;
            if (sub == fbs || !asy_preset.empty()) {
                double a1, a2;
                if (sub == fbs) {
                    a1 = fbs_a1;
                    a2 = fbs_a2;
                } else {
                    auto it = kPresets.find(asy_preset);
                    if (it == kPresets.end())
                        throw std::domain_error("unknown preset: " + asy_preset);
                    a1 = it->second.alpha1;
                    a2 = it->second.alpha2;
                    manifest.push_back({"preset", asy_preset});
                }
                asym = fbm_sum_asymptote(a1, a2, *provider);
                manifest.push_back({"alpha1", format_number(a1)});
                manifest.push_back({"alpha2", format_number(a2)});
            } else if (asy_scenario == "line") {
                LineScenario scn;
                scn.T1 = asy_T1;
                scn.T2 = asy_T2;
                scn.b = asy_b;
                scn.rho1 = {asy_r1c, asy_r1i};
                scn.rho2 = {asy_r2c, asy_r2i};
                scn.v = {asy_vc, asy_vi};
                scn.boundary = asy_boundary;
                asym = line_asymptote(scn, *provider);
                manifest = {{"scenario", "line"},
                            {"T1", format_number(asy_T1)},
                            {"T2", format_number(asy_T2)},
                            {"b", format_number(asy_b)},
                            {"rho1-coeff", format_number(asy_r1c)},
                            {"rho1-index", format_number(asy_r1i)},
                            {"rho2-coeff", format_number(asy_r2c)},
                            {"rho2-index", format_number(asy_r2i)},
                            {"v-coeff", format_number(asy_vc)},
                            {"v-index", format_number(asy_vi)},
                            {"boundary", bool_str(asy_boundary)}};
            } else {
                throw std::domain_error("unknown scenario kind: " + asy_scenario);
            }
            const std::string ugrid = sub == asy ? asy_ugrid : fbs_ugrid;
            write_asymptote_outputs(dir, asym, ugrid.empty() ? std::vector<double>{}
                                                             : parse_list(ugrid));
            manifest.push_back({"u-grid", ugrid});
            manifest.push_back({"step", format_number(popt.step)});
            manifest.push_back({"reps", format_number(popt.reps)});
            manifest.push_back({"pinned", bool_str(popt.pinned)});
            finish_manifest(manifest, g, command, dir);
        } else if (sub == cmp) {
            auto provider = make_provider(cmp_prov, g);
            const auto u_list = parse_list(cmp_u);
            std::vector<int> grids;
            for (double x : parse_list(cmp_grids)) grids.push_back(static_cast<int>(x));
            const CompareTable table = compare_run(cmp_a1, cmp_a2, u_list, grids, cmp_reps,
                                                   g.seed, *provider, g.threads);
            std::vector<std::vector<std::string>> rows;
            for (const auto& r : table.rows)
                rows.push_back({format_number(r.u), format_number(r.grid_n),
                                format_number(r.p_hat), format_number(r.se),
                                format_number(r.asym), format_number(r.ratio), bool_str(r.weak),
                                bool_str(r.trend_break)});
            write_csv((dir / "compare.csv").string(),
                      {"u", "grid_n", "p_hat", "stderr", "asymptote", "ratio", "weak",
                       "trend_break"},
                      rows);
            if (g.svg) {
                // ratio against u on the finest grid
                const int fine = *std::max_element(grids.begin(), grids.end());
                std::vector<double> xs, ys;
                for (const auto& r : table.rows)
                    if (r.grid_n == fine) {
                        xs.push_back(r.u);
                        ys.push_back(r.ratio);
                    }
                write_svg_plot((dir / "ratio_vs_u.svg").string(), xs, ys, "u", "p_hat/asymptote");
            }
            Manifest manifest{{"alpha1", format_number(cmp_a1)},
                              {"alpha2", format_number(cmp_a2)},
                              {"u", cmp_u},
                              {"grids", cmp_grids},
                              {"reps", format_number(cmp_reps)},
                              {"step", format_number(cmp_prov.step)},
                              {"constant-reps", format_number(cmp_prov.reps)},
                              {"pinned", bool_str(cmp_prov.pinned)}};
            finish_manifest(manifest, g, command, dir);
        } else if (sub == exp) {
            const auto deltas = parse_list(exp_deltas);
            const auto var_t = check_variance_expansion(exp_a1, exp_a2, deltas, exp_points, true);
            const auto var_s = check_variance_expansion(exp_a1, exp_a2, deltas, exp_points, false);
            const auto cor = check_correlation_expansion(exp_a1, exp_a2, deltas, exp_points);
            std::vector<std::vector<std::string>> rows;
            auto emit = [&](const char* id, const ExpansionReport& r) {
                for (std::size_t i = 0; i < r.deltas.size(); ++i)
                    rows.push_back({id, format_number(r.deltas[i]),
                                    format_number(r.max_rel_err[i])});
            };
            emit("variance-in-t", var_t);
            emit("variance-in-s", var_s);
            emit("correlation", cor);
            write_csv((dir / "expansions.csv").string(),
                      {"expansion_id", "delta", "max_rel_err"}, rows);
            if (g.svg)
                write_svg_plot((dir / "expansion_error.svg").string(), var_t.deltas,
                               var_t.max_rel_err, "delta", "max rel err", true, true);
            Manifest manifest{{"alpha1", format_number(exp_a1)},
                              {"alpha2", format_number(exp_a2)},
                              {"deltas", exp_deltas},
                              {"points", format_number(exp_points)}};
            finish_manifest(manifest, g, command, dir);
        }
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        if (!dir.empty())
            write_keyvalue((dir / "error.txt").string(), {{"error", e.what()}, {"kind", "usage"}});
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        if (!dir.empty())
            write_keyvalue((dir / "error.txt").string(), {{"error", e.what()}, {"kind", "usage"}});
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        if (!dir.empty())
            write_keyvalue((dir / "error.txt").string(),
                           {{"error", e.what()}, {"kind", "runtime"}});
        return 1;
    }
    std::cout << "wrote " << dir.string() << "\n";
    return 0;
}
