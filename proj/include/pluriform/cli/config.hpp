#pragma once

// Run configuration shared by the command-line driver: system selection,
// tolerances, integrator step, sampling and output settings. Loaded from JSON;
// command-line flags are applied on top.

#include "pluriform/errors.hpp"
#include "pluriform/mechsys/systems.hpp"

#include <json.hpp>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <string>

namespace pluriform::cli {

using nlohmann::json;

inline constexpr std::uint64_t kDefaultSeed = 20240601;

struct SystemChoice {
    std::string name = "toda";
    double alpha = 1.0;
    int n = 4;
    std::string boundary = "periodic";
    double omega = 1.0;
};

struct Tolerances {
    double identity = 1e-10; ///< first-derivative identities; others scale from this
    double newton = 1e-12;
    double bracket = 1e-9;
};

struct BoxOverride {
    std::optional<Interval> x;
    std::optional<Interval> xdot;
    std::optional<Interval> xddot;
    std::optional<double> min_x_norm;
};

struct RunConfig {
    SystemChoice system;
    Tolerances tolerances;
    double step = 1e-3;
    int count = 100;
    std::uint64_t seed = kDefaultSeed;
    BoxOverride box;
    std::string output_path; ///< empty = stdout
    std::string format = "json";

    /// Throws ParameterError when an invariant is violated.
    void validate() const {
        if (system.name != "kepler" && system.name != "toda" && system.name != "harmonic")
            throw ParameterError("unknown system '" + system.name + "'");
        if (system.boundary != "periodic" && system.boundary != "open_end")
            throw ParameterError("boundary must be 'periodic' or 'open_end'");
        if (!(tolerances.identity > 0.0) || !(tolerances.newton > 0.0) || !(tolerances.bracket > 0.0))
            throw ParameterError("tolerances must be positive");
        if (!(step > 0.0)) throw ParameterError("integrator step must be positive");
        if (count < 1) throw ParameterError("sample count must be at least 1");
        if (format != "json" && format != "csv") throw ParameterError("format must be 'json' or 'csv'");
    }
};

/// PLURIFORM_SEED if set and parseable, else the built-in default.
inline std::uint64_t default_seed() {
    const char* env = std::getenv("PLURIFORM_SEED");
    if (env == nullptr || *env == '\0') return kDefaultSeed;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') throw ParameterError("PLURIFORM_SEED is not an unsigned integer");
    return static_cast<std::uint64_t>(v);
}

namespace detail {

inline Interval read_interval(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2)
        throw ParameterError(std::string(what) + " must be a [lo, hi] pair");
    const Interval r{j[0].get<double>(), j[1].get<double>()};
    if (!(r.lo < r.hi)) throw ParameterError(std::string(what) + " needs lo < hi");
    return r;
}

template <class T>
void read_opt(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

} // namespace detail

inline RunConfig config_from_json(const json& j) {
    RunConfig c;
    c.seed = default_seed();
    try {
        if (j.contains("system")) {
            const auto& s = j.at("system");
            if (s.is_string()) {
                c.system.name = s.get<std::string>();
            } else {
                detail::read_opt(s, "name", c.system.name);
                detail::read_opt(s, "alpha", c.system.alpha);
                detail::read_opt(s, "n", c.system.n);
                detail::read_opt(s, "boundary", c.system.boundary);
                detail::read_opt(s, "omega", c.system.omega);
            }
        }
        if (j.contains("tolerances")) {
            const auto& t = j.at("tolerances");
            detail::read_opt(t, "identity", c.tolerances.identity);
            detail::read_opt(t, "newton", c.tolerances.newton);
            detail::read_opt(t, "bracket", c.tolerances.bracket);
        }
        if (j.contains("integrator")) detail::read_opt(j.at("integrator"), "step", c.step);
        if (j.contains("sampling")) {
            const auto& s = j.at("sampling");
            detail::read_opt(s, "count", c.count);
            detail::read_opt(s, "seed", c.seed);
            if (s.contains("box")) {
                const auto& b = s.at("box");
                if (b.contains("x")) c.box.x = detail::read_interval(b.at("x"), "box.x");
                if (b.contains("xdot")) c.box.xdot = detail::read_interval(b.at("xdot"), "box.xdot");
                if (b.contains("xddot")) c.box.xddot = detail::read_interval(b.at("xddot"), "box.xddot");
                if (b.contains("min_x_norm")) c.box.min_x_norm = b.at("min_x_norm").get<double>();
            }
        }
        if (j.contains("output")) {
            const auto& o = j.at("output");
            detail::read_opt(o, "path", c.output_path);
            detail::read_opt(o, "format", c.format);
        }
    } catch (const json::exception& e) {
        throw ParameterError(std::string("config: ") + e.what());
    }
    return c;
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot open config file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParameterError(std::string("config parse error: ") + e.what());
    }
    return config_from_json(j);
}

inline json to_json(const RunConfig& c) {
    json box = json::object();
    if (c.box.x) box["x"] = {c.box.x->lo, c.box.x->hi};
    if (c.box.xdot) box["xdot"] = {c.box.xdot->lo, c.box.xdot->hi};
    if (c.box.xddot) box["xddot"] = {c.box.xddot->lo, c.box.xddot->hi};
    if (c.box.min_x_norm) box["min_x_norm"] = *c.box.min_x_norm;
    return {
        {"system", {{"name", c.system.name}, {"alpha", c.system.alpha}, {"n", c.system.n},
                    {"boundary", c.system.boundary}, {"omega", c.system.omega}}},
        {"tolerances", {{"identity", c.tolerances.identity}, {"newton", c.tolerances.newton},
                        {"bracket", c.tolerances.bracket}}},
        {"integrator", {{"step", c.step}}},
        {"sampling", {{"count", c.count}, {"seed", c.seed}, {"box", box}}},
        {"output", {{"path", c.output_path}, {"format", c.format}}},
    };
}

inline void apply_box(const BoxOverride& o, SampleBox& box) {
    const auto fill = [](std::vector<Interval>& v, const std::optional<Interval>& r) {
        if (r) v.assign(v.size(), *r);
    };
    fill(box.x, o.x);
    fill(box.xdot, o.xdot);
    fill(box.xddot, o.xddot);
    if (o.min_x_norm) box.min_x_norm = *o.min_x_norm;
}

/// Builds the configured system. Kepler can be asked for its full Runge-Lenz set.
inline LagrangianSystem build_system(const RunConfig& c, bool kepler_all_runge_lenz = false) {
    c.validate();
    LagrangianSystem sys;
    if (c.system.name == "kepler") {
        sys = make_kepler(c.system.alpha, kepler_all_runge_lenz ? KeplerSymmetries::runge_lenz
                                                                : KeplerSymmetries::first_only);
    } else if (c.system.name == "toda") {
        sys = make_toda(c.system.n, c.system.boundary == "periodic" ? TodaBoundary::periodic
                                                                    : TodaBoundary::open_end);
    } else {
        sys = make_harmonic(c.system.omega);
    }
    apply_box(c.box, sys.sample_box);
    return sys;
}

} // namespace pluriform::cli
