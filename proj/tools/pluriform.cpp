// pluriform: command-line driver for the verification suites and multi-time
// flow experiments.
//
// Exit codes: 0 all checks pass, 1 a check or integration failed, 2 usage or
// configuration error.

#include "pluriform/cli/checks.hpp"
#include "pluriform/cli/config.hpp"
#include "pluriform/cli/parse.hpp"
#include "pluriform/pluriform.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace pluriform;
using namespace pluriform::cli;

/// Flags shared by every subcommand that works on a system.
struct SystemFlags {
    std::string system;
    std::string config_path;
    double alpha = 1.0;
    int n = 4;
    std::string boundary = "periodic";
    double omega = 1.0;
    std::uint64_t seed = 0;
    int samples = 100;
    double step = 1e-3;
    std::string output;

    CLI::Option* alpha_opt = nullptr;
    CLI::Option* n_opt = nullptr;
    CLI::Option* boundary_opt = nullptr;
    CLI::Option* omega_opt = nullptr;
    CLI::Option* seed_opt = nullptr;
    CLI::Option* samples_opt = nullptr;
    CLI::Option* step_opt = nullptr;
    CLI::Option* output_opt = nullptr;

    void attach(CLI::App* app) {
        app->add_option("system", system, "kepler | toda | harmonic");
        app->add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
        alpha_opt = app->add_option("--alpha", alpha, "Kepler coupling");
        n_opt = app->add_option("--n", n, "Toda lattice size");
        boundary_opt = app->add_option("--boundary", boundary, "Toda boundary: periodic | open_end");
        omega_opt = app->add_option("--omega", omega, "harmonic frequency");
        seed_opt = app->add_option("--seed", seed, "sampling seed (default: $PLURIFORM_SEED)");
        samples_opt = app->add_option("--samples", samples, "samples per check");
        step_opt = app->add_option("--step", step, "integrator step h");
        output_opt = app->add_option("--output,-o", output, "output file (default: stdout)");
    }

    /// Config file first, then explicitly given flags on top.
    RunConfig resolve() const {
        RunConfig c = config_path.empty() ? config_from_json(json::object()) : load_config(config_path);
        if (!system.empty()) c.system.name = system;
        if (alpha_opt->count() > 0) c.system.alpha = alpha;
        if (n_opt->count() > 0) c.system.n = n;
        if (boundary_opt->count() > 0) c.system.boundary = boundary;
        if (omega_opt->count() > 0) c.system.omega = omega;
        if (seed_opt->count() > 0) c.seed = seed;
        if (samples_opt->count() > 0) c.count = samples;
        if (step_opt->count() > 0) c.step = step;
        if (output_opt->count() > 0) c.output_path = output;
        c.validate();
        return c;
    }
};

struct InitialFlags {
    std::string x0;
    std::string p0;

    void attach(CLI::App* app) {
        app->add_option("--x0", x0, "initial configuration, comma separated");
        app->add_option("--p0", p0, "initial momenta, comma separated");
    }

    /// Given values, or a fixed default point for the system.
    PhasePoint resolve(const LagrangianSystem& sys) const {
        PhasePoint z{VectorXd::Zero(sys.n), VectorXd::Zero(sys.n)};
        if (sys.name == "kepler") {
            z.x << 1.0, 0.0, 0.0;
            z.p << 0.0, 0.8, 0.3;
        } else if (sys.name == "toda") {
            for (int i = 0; i < sys.n; ++i) {
                z.x(i) = 0.1 * i;
                z.p(i) = 0.5 * std::cos(static_cast<double>(i));
            }
        } else {
            z.x(0) = 1.0;
        }
        const auto fill = [&](const std::string& s, VectorXd& v, const char* what) {
            if (s.empty()) return;
            const auto vals = parse_list(s);
            if (static_cast<int>(vals.size()) != sys.n)
                throw ParameterError(std::string(what) + " needs " + std::to_string(sys.n) + " values");
            for (int i = 0; i < sys.n; ++i) v(i) = vals[static_cast<std::size_t>(i)];
        };
        fill(x0, z.x, "--x0");
        fill(p0, z.p, "--p0");
        return z;
    }
};

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParameterError("cannot write '" + path + "'");
    out << text;
}

int cmd_systems(bool as_json) {
    const std::vector<LagrangianSystem> all{make_kepler(1.0), make_toda(4, TodaBoundary::periodic),
                                            make_harmonic(1.0)};
    if (as_json) {
        json list = json::array();
        for (const auto& s : all)
            list.push_back({{"name", s.name}, {"dimension", s.n}, {"symmetries", s.symmetry_count()}});
        std::cout << json{{"systems", list}}.dump(2) << "\n";
    } else {
        for (const auto& s : all) {
            std::cout << s.name << " (m=" << s.symmetry_count() << ")";
            if (s.name == "toda") std::cout << "  dimension n >= 3, boundary periodic | open_end";
            else std::cout << "  dimension " << s.n;
            std::cout << "\n";
        }
    }
    return 0;
}

int cmd_verify(const SystemFlags& f, const std::string& checks_arg) {
    const RunConfig c = f.resolve();
    std::vector<std::string> checks = checks_arg.empty() ? check_names() : split(checks_arg, ',');
    for (const auto& n : checks)
        if (!is_check_name(n)) throw ParameterError("unknown check '" + n + "'");
    const json report = run_verify(c, checks);
    emit(report.dump(2) + "\n", c.output_path);
    return report.at("pass").get<bool>() ? 0 : 1;
}

int cmd_integrate(const SystemFlags& f, const InitialFlags& init, const std::string& spec) {
    const RunConfig c = f.resolve();
    const LagrangianSystem sys = build_system(c);
    const MultiTimePath path = parse_path(spec, sys.symmetry_count());
    const PhasePoint z0 = init.resolve(sys);
    const Trajectory traj = integrate_path(sys, path, z0, c.step);

    std::ostringstream out;
    const int m = sys.symmetry_count();
    out << "step";
    for (int k = 0; k <= m; ++k) out << ",t" << k;
    for (int i = 1; i <= sys.n; ++i) out << ",x_" << i;
    for (int i = 1; i <= sys.n; ++i) out << ",p_" << i;
    out << ",H";
    for (int k = 1; k <= m; ++k) out << ",H_" << k;
    out << "\n";
    for (std::size_t s = 0; s < traj.nodes.size(); ++s) {
        const auto& node = traj.nodes[s];
        out << s;
        for (int k = 0; k <= m; ++k) out << "," << format_double(node.times(k));
        for (int i = 0; i < sys.n; ++i) out << "," << format_double(node.phase.x(i));
        for (int i = 0; i < sys.n; ++i) out << "," << format_double(node.phase.p(i));
        for (int k = 0; k <= m; ++k) out << "," << format_double(node.integrals(k));
        out << "\n";
    }
    emit(out.str(), c.output_path);
    return 0;
}

std::pair<int, int> parse_plane(const std::string& s, int m) {
    const auto parts = split(s, ',');
    if (parts.size() != 2) throw ParameterError("plane must be two axis labels, e.g. t1,t2");
    const int k = parse_axis(parts[0], m);
    const int l = parse_axis(parts[1], m);
    if (k == l) throw ParameterError("plane needs two distinct axes");
    return {k, l};
}

int cmd_loop(const SystemFlags& f, const InitialFlags& init, const std::string& plane,
             const std::string& sides) {
    const RunConfig c = f.resolve();
    const LagrangianSystem sys = build_system(c);
    const auto [k, l] = parse_plane(plane, sys.symmetry_count());
    const auto ab = parse_list(sides);
    if (ab.size() != 2) throw ParameterError("sides must be two lengths, e.g. 0.2,0.2");
    const LoopSpec loop{k, l, ab[0], ab[1], init.resolve(sys), c.step};
    const double defect = loop_closedness_defect(sys, loop);
    const auto rep = bracket_constancy(sys, k, l, std::max(2, c.count), c.seed);
    const double area = ab[0] * ab[1];
    const double deviation = std::abs(defect - rep.mean_value * area);
    const double threshold = 1e-6;
    const bool pass = deviation < threshold;
    const json out{{"check", "loop"},
                   {"plane", {k, l}},
                   {"sides", {ab[0], ab[1]}},
                   {"step", c.step},
                   {"defect", defect},
                   {"c_kl", rep.mean_value},
                   {"c_kl_max_deviation", rep.max_deviation},
                   {"area", area},
                   {"max_residual", deviation},
                   {"threshold", threshold},
                   {"pass", pass}};
    emit(out.dump(2) + "\n", c.output_path);
    return pass ? 0 : 1;
}

int cmd_commute(const SystemFlags& f, const InitialFlags& init, const std::string& plane,
                double delta, const std::string& steps, bool table) {
    const RunConfig c = f.resolve();
    const LagrangianSystem sys = build_system(c);
    const auto [k, l] = parse_plane(plane, sys.symmetry_count());
    const auto hs = parse_list(steps);
    if (hs.empty()) throw ParameterError("need at least one step size");
    const PhasePoint z0 = init.resolve(sys);
    std::vector<double> defects;
    for (double h : hs) defects.push_back(commutativity_defect(sys, k, l, z0, delta, h));
    json rows = json::array();
    bool pass = true;
    for (std::size_t i = 0; i < hs.size(); ++i) {
        json row{{"h", hs[i]}, {"defect", defects[i]}};
        if (i > 0) {
            const double ratio = defects[i - 1] / defects[i];
            row["ratio"] = ratio;
            pass = pass && ratio >= 12.0 && ratio <= 20.0;
        }
        rows.push_back(row);
    }
    if (table) {
        std::ostringstream out;
        out << "h,defect,ratio\n";
        for (std::size_t i = 0; i < hs.size(); ++i) {
            out << format_double(hs[i]) << "," << format_double(defects[i]) << ",";
            if (i > 0) out << format_double(defects[i - 1] / defects[i]);
            out << "\n";
        }
        emit(out.str(), c.output_path);
    } else {
        const json out{{"check", "commute"}, {"plane", {k, l}}, {"delta", delta},
                       {"rows", rows},       {"ratio_band", {12.0, 20.0}}, {"pass", pass}};
        emit(out.dump(2) + "\n", c.output_path);
    }
    return pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Variational symmetries, Noether integrals and commuting multi-time flows"};
    app.require_subcommand(1);

    bool systems_json = false;
    auto* systems = app.add_subcommand("systems", "list built-in systems");
    systems->add_flag("--json", systems_json, "machine-readable output");

    SystemFlags verify_flags;
    std::string checks;
    auto* verify = app.add_subcommand("verify", "run identity checks and print a JSON report");
    verify_flags.attach(verify);
    verify->add_option("--checks", checks, "comma-separated subset of checks (default: all)");

    SystemFlags integrate_flags;
    InitialFlags integrate_init;
    std::string path_spec;
    auto* integrate = app.add_subcommand("integrate", "integrate a staircase path; CSV output");
    integrate_flags.attach(integrate);
    integrate_init.attach(integrate);
    integrate->add_option("--path", path_spec, "segments like t:1.0,t1:0.5,t2:-0.25 (omit for the start point only)");

    SystemFlags loop_flags;
    InitialFlags loop_init;
    std::string loop_plane = "t1,t2";
    std::string loop_sides = "0.2,0.2";
    auto* loop = app.add_subcommand("loop", "action around a rectangle in a time plane");
    loop_flags.attach(loop);
    loop_init.attach(loop);
    loop->add_option("--plane", loop_plane, "two axis labels");
    loop->add_option("--sides", loop_sides, "rectangle side lengths");

    SystemFlags commute_flags;
    InitialFlags commute_init;
    std::string commute_plane = "t1,t2";
    double delta = 0.2;
    std::string steps = "2e-3,1e-3,5e-4";
    bool table = false;
    auto* commute = app.add_subcommand("commute", "flow commutativity defect under step halving");
    commute_flags.attach(commute);
    commute_init.attach(commute);
    commute->add_option("--plane", commute_plane, "two axis labels");
    commute->add_option("--delta", delta, "flow duration per axis");
    commute->add_option("--steps", steps, "comma-separated step sizes");
    commute->add_flag("--table", table, "plain CSV table instead of JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (*systems) return cmd_systems(systems_json);
        if (*verify) return cmd_verify(verify_flags, checks);
        if (*integrate) return cmd_integrate(integrate_flags, integrate_init, path_spec);
        if (*loop) return cmd_loop(loop_flags, loop_init, loop_plane, loop_sides);
        if (*commute) return cmd_commute(commute_flags, commute_init, commute_plane, delta, steps, table);
    } catch (const ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const IndexError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
