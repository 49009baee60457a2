// qgtk: verification suites, sweeps and solver runs.
// Exit codes: 0 ok, 1 usage or configuration error, 2 a check failed.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "qgtk/config.hpp"
#include "qgtk/field_ops.hpp"
#include "qgtk/flow.hpp"
#include "qgtk/suite.hpp"
#include "qgtk/tdqg.hpp"

using namespace qgtk;

namespace {

struct FlagSet {
    std::map<std::string, std::string> values;
    std::vector<std::pair<std::string, CLI::Option*>> options;
    std::map<std::string, std::string> storage;

    void add(CLI::App& app, const std::string& flag, const std::string& key, const std::string& help) {
        storage[key];
        options.emplace_back(key, app.add_option(flag, storage[key], help));
    }
    std::map<std::string, std::string> given() const {
        std::map<std::string, std::string> out;
        for (const auto& [key, opt] : options)
            if (opt->count() > 0) out[key] = storage.at(key);
        return out;
    }
};

void add_common(CLI::App& app, FlagSet& f, std::string& config_path) {
    app.add_option("--config", config_path, "key = value configuration file");
    f.add(app, "--nu", "nu", "horizontal viscosity");
    f.add(app, "--nu-prime", "nu_prime", "vertical viscosity");
    f.add(app, "--F", "F", "Froude-type anisotropy in (0,1]");
    f.add(app, "--n", "n", "grid points per axis");
    f.add(app, "--L", "L", "box length (default: per check)");
    f.add(app, "--seed", "seed", "random seed");
    f.add(app, "--output-dir", "output_dir", "output directory");
}

// defaults < config file < QGTK_OUTPUT_DIR < command-line flags
RunConfig build_config(const std::string& config_path, const std::map<std::string, std::string>& flags) {
    RunConfig c;
    if (!config_path.empty()) apply_settings(c, read_config_file(config_path));
    apply_environment(c);
    apply_settings(c, flags);
    return c;
}

int finish_suite(const SuiteOutcome& out, const RunConfig& c, bool sweep) {
    write_outputs(c.output_dir, out, c, sweep);
    std::cout << summary_text(out);
    std::cout << "outputs written to " << c.output_dir << "\n";
    if (!out.pass) {
        std::cerr << "failed checks:";
        for (const auto& f : out.failed) std::cerr << " " << f;
        std::cerr << "\n";
        return 2;
    }
    return 0;
}

void print_hypotheses(const HypothesisCheck& h) { std::cout << h.describe() << "\n"; }

int report_dir(const std::string& dir) {
    std::ifstream in(std::filesystem::path(dir) / "report.csv");
    if (!in) throw ConfigError("no report.csv in " + dir);
    std::string line;
    std::getline(in, line);
    std::vector<std::string> order;
    std::map<std::string, bool> pass;
    std::map<std::string, std::vector<std::string>> metrics;
    while (std::getline(in, line)) {
        std::vector<std::string> cell;
        std::stringstream ss(line);
        std::string x;
        while (std::getline(ss, x, ',')) cell.push_back(x);
        if (cell.size() != 5) throw ConfigError("malformed line in report.csv: " + line);
        if (!pass.count(cell[0])) {
            order.push_back(cell[0]);
            pass[cell[0]] = true;
        }
        pass[cell[0]] = pass[cell[0]] && cell[2] == "1";
        if (cell[3] != "rows") metrics[cell[0]].push_back(cell[1] + "." + cell[3] + " = " + cell[4]);
    }
    bool all = true;
    for (const auto& name : order) {
        std::cout << (pass[name] ? "PASS " : "FAIL ") << name << "\n";
        for (const auto& m : metrics[name]) std::cout << "    " << m << "\n";
        all = all && pass[name];
    }
    std::cout << "overall: " << (all ? "PASS" : "FAIL") << "\n";
    return all ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qgtk: numerical verification toolkit for a non-local anisotropic transport-diffusion model"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    std::string config_path;
    FlagSet flags;

    auto* verify = app.add_subcommand("verify", "run named checks ('all' for every check)");
    std::vector<std::string> checks;
    verify->add_option("checks", checks, "check names")->required();
    add_common(*verify, flags, config_path);

    auto* sweep = app.add_subcommand("sweep", "run one check over a parameter axis");
    add_common(*sweep, flags, config_path);
    flags.add(*sweep, "--axis", "axis", "F | nu_ratio | j | V");
    flags.add(*sweep, "--values", "values", "comma-separated values");
    flags.add(*sweep, "--check", "check", "check to sweep");

    auto* solve = app.add_subcommand("solve-tdqg", "solve the transport-diffusion model on the reference problem");
    add_common(*solve, flags, config_path);
    flags.add(*solve, "--t-final", "t_final", "final time");
    flags.add(*solve, "--dt", "dt", "time step");
    flags.add(*solve, "--save-every", "save_every", "snapshot stride");
    flags.add(*solve, "--v-amp", "v_amp", "per-shell velocity gradient amplitude");

    auto* qg = app.add_subcommand("solve-qg", "solve the coupled QG system from random band-limited vorticity");
    add_common(*qg, flags, config_path);
    flags.add(*qg, "--t-final", "t_final", "final time");
    flags.add(*qg, "--dt", "dt", "time step");
    flags.add(*qg, "--save-every", "save_every", "snapshot stride");
    double qg_amp = 2.0;
    qg->add_option("--amp", qg_amp, "sup norm of the initial vorticity");

    auto* report = app.add_subcommand("report", "summarize an existing output directory");
    std::string report_path;
    report->add_option("--dir", report_path, "output directory")->required();

    auto* list = app.add_subcommand("list", "list the available checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*list) {
            for (const auto& c : check_registry()) std::cout << c.name << "  " << c.description << "\n";
            return 0;
        }
        if (*report) return report_dir(report_path);

        RunConfig c = build_config(config_path, flags.given());
        if (*verify) {
            c.suite = checks;
            return finish_suite(run_suite(c), c, false);
        }
        if (*sweep) {
            if (c.sweep_axis.empty() || c.sweep_check.empty() || c.sweep_values.empty())
                throw ConfigError("sweep needs --axis, --values and --check");
            return finish_suite(run_sweep(c), c, true);
        }
        validate_config(c);
        if (*solve) {
            if (c.L > 0.0) throw ConfigError("solve-tdqg runs on its own box; --L is not supported");
            EstimateSettings s;
            s.seed = c.seed;
            if (c.v_amp > 0.0) s.amp_v = c.v_amp;
            TdqgProblem pr = reference_problem(c.params, c.n, s, c.t_final);
            pr.dt = c.dt;
            pr.save_every = c.save_every;
            const TdqgSolution sol = solve_tdqg(pr);
            const HypothesisCheck h = check_hypotheses(c.params, sol.C_prime, c.t_final, sol.V, s.C_flow, s.C_F, s.C_s);
            write_archive(c.output_dir, sol, c.params, &h);
            std::cout << "steps " << sol.steps << ", snapshots " << sol.ts.u.size() << ", V " << fmt_num(sol.V)
                      << ", C' " << fmt_num(sol.C_prime) << ", max CFL " << fmt_num(sol.max_cfl) << "\n";
            print_hypotheses(h);
            std::cout << "archive written to " << c.output_dir << "\n";
            return 0;
        }
        if (*qg) {
            const Grid3 g = c.L > 0.0 ? Grid3(c.n, c.L) : flow_grid(c.n);
            std::mt19937_64 rng(c.seed);
            ScalarField w0 = remove_mean(dealias(random_bandlimited(g, rng, 2.5)));
            w0 *= qg_amp / max_abs(w0);
            const TdqgSolution sol = solve_qg(w0, c.params, c.t_final, c.dt, c.save_every);
            write_archive(c.output_dir, sol, c.params);
            std::cout << "steps " << sol.steps << ", snapshots " << sol.ts.u.size() << ", V " << fmt_num(sol.V)
                      << ", reconstruction " << fmt_num(sol.recon_error) << "\n";
            std::cout << "archive written to " << c.output_dir << "\n";
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const CflError& e) {
        std::cerr << "usage error: " << e.what() << " (reduce --dt)\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
