#pragma once

#include "spectra/assembler.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <string>

namespace spectra {

enum class Command { spectrum, verify, perturb, transform };
enum class OutputFormat { csv, json };

inline std::string to_string(Command c) {
    switch (c) {
        case Command::spectrum: return "spectrum";
        case Command::verify: return "verify";
        case Command::perturb: return "perturb";
        case Command::transform: return "transform";
    }
    return "?";
}

inline std::string to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

struct GridOverrides {
    std::optional<double> length;    // half-width (full line) or extent (radial/half line)
    std::optional<double> spacing;
    std::optional<double> offset;    // first node of a half-line grid
    std::optional<int> angular_cells;
};

struct PerturbSettings {
    double ell{3.0};
    double dv_tanh{0.0};    // coefficient of tanh z in delta_V
    double dv_csch2{0.0};   // coefficient of csch^2 z in delta_V
    int k_max{8};
};

/// Fully resolved run description. `resolved` echoes every effective
/// key (including applied defaults) for the report header.
struct RunConfig {
    Command command{Command::spectrum};
    OutputFormat format{OutputFormat::csv};
    double tolerance{1e-5};
    std::optional<PotentialFamily> radial;
    std::optional<AngularFamily> angular;
    QuantumRanges ranges{1, 1, 0, 1};
    GridOverrides grid;
    PerturbSettings perturb;
    std::map<std::string, std::string> resolved;
};

namespace detail {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

inline double parse_real(const std::string& value, int line) {
    std::size_t pos = 0;
    double out;
    try {
        out = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(line) + ": '" + value + "' is not a number");
    }
    if (pos != value.size())
        throw ConfigError("line " + std::to_string(line) + ": trailing characters in number '" + value + "'");
    return out;
}

inline int parse_int(const std::string& value, int line) {
    const double r = parse_real(value, line);
    const int i = static_cast<int>(std::lround(r));
    if (std::abs(r - i) > 0.0)
        throw ConfigError("line " + std::to_string(line) + ": '" + value + "' is not an integer");
    return i;
}

inline std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace detail

/// Strict parser of the flat sectioned key=value format. Sections:
/// [run], [potential.radial], [potential.angular], [grid], [quantum],
/// [perturb]. Unknown sections or keys fail with the line number; family
/// parameters have no silent defaults.
inline RunConfig parse_config(const std::string& text) {
    using detail::ConfigError;
    RunConfig cfg;
    std::map<std::string, std::map<std::string, std::pair<std::string, int>>> sections;
    {
        std::istringstream in(text);
        std::string raw, section;
        int line = 0;
        while (std::getline(in, raw)) {
            ++line;
            std::string s = raw;
            const auto hash = s.find('#');
            if (hash != std::string::npos) s = s.substr(0, hash);
            s = detail::trim(s);
            if (s.empty()) continue;
            if (s.front() == '[') {
                if (s.back() != ']')
                    throw ConfigError("line " + std::to_string(line) + ": malformed section header '" + s + "'");
                section = detail::trim(s.substr(1, s.size() - 2));
                static const char* known[] = {"run", "potential.radial", "potential.angular",
                                              "grid", "quantum", "perturb"};
                bool ok = false;
                for (const char* k : known) ok = ok || section == k;
                if (!ok)
                    throw ConfigError("line " + std::to_string(line) + ": unknown section [" + section + "]");
                continue;
            }
            const auto eq = s.find('=');
            if (eq == std::string::npos)
                throw ConfigError("line " + std::to_string(line) + ": expected key = value, got '" + s + "'");
            if (section.empty())
                throw ConfigError("line " + std::to_string(line) + ": key outside any section");
            const std::string key = detail::trim(s.substr(0, eq));
            const std::string value = detail::trim(s.substr(eq + 1));
            if (key.empty() || value.empty())
                throw ConfigError("line " + std::to_string(line) + ": empty key or value");
            if (sections[section].count(key))
                throw ConfigError("line " + std::to_string(line) + ": duplicate key '" + key + "' in [" + section + "]");
            sections[section][key] = {value, line};
        }
    }

    auto take = [&](const std::string& sec, const std::string& key)
        -> std::optional<std::pair<std::string, int>> {
        auto s = sections.find(sec);
        if (s == sections.end()) return std::nullopt;
        auto k = s->second.find(key);
        if (k == s->second.end()) return std::nullopt;
        auto out = k->second;
        s->second.erase(k);
        return out;
    };

    // [run]
    if (auto v = take("run", "command")) {
        const std::string& c = v->first;
        if (c == "spectrum") cfg.command = Command::spectrum;
        else if (c == "verify") cfg.command = Command::verify;
        else if (c == "perturb") cfg.command = Command::perturb;
        else if (c == "transform") cfg.command = Command::transform;
        else throw ConfigError("line " + std::to_string(v->second) + ": unknown command '" + c + "'");
    } else {
        throw ConfigError("[run] command is required (spectrum|verify|perturb|transform)");
    }
    if (auto v = take("run", "format")) {
        if (v->first == "csv") cfg.format = OutputFormat::csv;
        else if (v->first == "json") cfg.format = OutputFormat::json;
        else throw ConfigError("line " + std::to_string(v->second) + ": format must be csv or json");
    }
    if (auto v = take("run", "tolerance")) {
        cfg.tolerance = detail::parse_real(v->first, v->second);
        if (!(cfg.tolerance > 0.0))
            throw ConfigError("line " + std::to_string(v->second) + ": tolerance must be > 0");
    }

    // [potential.radial]
    if (sections.count("potential.radial") && !sections["potential.radial"].empty()) {
        auto fam = take("potential.radial", "family");
        if (!fam) throw ConfigError("[potential.radial] needs family =");
        static const std::map<std::string, FamilyTag> tags = {
            {"poschl_teller_I", FamilyTag::poschl_teller_I},
            {"rosen_morse_II", FamilyTag::rosen_morse_II},
            {"poschl_teller_II", FamilyTag::poschl_teller_II},
            {"coulomb", FamilyTag::radial_coulomb},
            {"radial_coulomb", FamilyTag::radial_coulomb},
            {"oscillator", FamilyTag::radial_oscillator},
            {"radial_oscillator", FamilyTag::radial_oscillator},
        };
        auto it = tags.find(fam->first);
        if (it == tags.end())
            throw ConfigError("line " + std::to_string(fam->second) + ": unknown radial family '" + fam->first + "'");
        std::map<std::string, double> params;
        static const std::map<FamilyTag, std::vector<std::string>> allowed = {
            {FamilyTag::poschl_teller_I, {"ell"}},
            {FamilyTag::rosen_morse_II, {"ell", "gamma"}},
            {FamilyTag::poschl_teller_II, {"ell", "alpha", "c"}},
            {FamilyTag::radial_coulomb, {"A"}},
            {FamilyTag::radial_oscillator, {"omega"}},
        };
        for (const auto& key : allowed.at(it->second))
            if (auto v = take("potential.radial", key)) params[key] = detail::parse_real(v->first, v->second);
        try {
            cfg.radial = make_family(it->second, std::move(params));
            // required-parameter check happens eagerly, not on first use
            for (const auto& key : allowed.at(it->second))
                if (key != "alpha" && key != "c") (void)cfg.radial->param(key);
            if (it->second == FamilyTag::poschl_teller_II) (void)cfg.radial->param("alpha");
        } catch (const std::exception& ex) {
            throw ConfigError(std::string("[potential.radial] ") + ex.what());
        }
    }

    // [potential.angular]
    if (sections.count("potential.angular") && !sections["potential.angular"].empty()) {
        auto fam = take("potential.angular", "family");
        if (!fam) throw ConfigError("[potential.angular] needs family =");
        try {
            if (fam->first == "zero") {
                cfg.angular = AngularFamily{};
            } else if (fam->first == "ring_trig" || fam->first == "ring") {
                auto b = take("potential.angular", "beta");
                auto g = take("potential.angular", "gamma");
                if (!b || !g) throw ConfigError("ring_trig needs beta and gamma");
                cfg.angular = make_ring_family(detail::parse_real(b->first, b->second),
                                               detail::parse_real(g->first, g->second));
            } else if (fam->first == "double_trig" || fam->first == "double") {
                auto d = take("potential.angular", "delta");
                auto c = take("potential.angular", "c");
                if (!d || !c) throw ConfigError("double_trig needs delta and c");
                cfg.angular = make_double_family(detail::parse_real(d->first, d->second),
                                                 detail::parse_real(c->first, c->second));
            } else {
                throw ConfigError("line " + std::to_string(fam->second) + ": unknown angular family '" +
                                  fam->first + "'");
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& ex) {
            throw ConfigError(std::string("[potential.angular] ") + ex.what());
        }
    }

    // [grid]
    if (auto v = take("grid", "L")) {
        cfg.grid.length = detail::parse_real(v->first, v->second);
        if (!(*cfg.grid.length > 0.0))
            throw ConfigError("line " + std::to_string(v->second) + ": L must be > 0");
    }
    if (auto v = take("grid", "spacing")) {
        cfg.grid.spacing = detail::parse_real(v->first, v->second);
        if (!(*cfg.grid.spacing > 0.0))
            throw ConfigError("line " + std::to_string(v->second) + ": spacing must be > 0");
    }
    if (auto v = take("grid", "offset")) {
        cfg.grid.offset = detail::parse_real(v->first, v->second);
        if (!(*cfg.grid.offset > 0.0))
            throw ConfigError("line " + std::to_string(v->second) + ": offset must be > 0");
    }
    if (auto v = take("grid", "angular_cells")) {
        cfg.grid.angular_cells = detail::parse_int(v->first, v->second);
        if (*cfg.grid.angular_cells < 16)
            throw ConfigError("line " + std::to_string(v->second) + ": angular_cells must be >= 16");
    }

    // [quantum]
    if (auto v = take("quantum", "n_r_max")) cfg.ranges.n_r_max = detail::parse_int(v->first, v->second);
    if (auto v = take("quantum", "n_theta_max")) cfg.ranges.n_theta_max = detail::parse_int(v->first, v->second);
    if (auto v = take("quantum", "m_min")) cfg.ranges.m_min = detail::parse_int(v->first, v->second);
    if (auto v = take("quantum", "m_max")) cfg.ranges.m_max = detail::parse_int(v->first, v->second);
    if (cfg.ranges.n_r_max < 0 || cfg.ranges.n_theta_max < 0 || cfg.ranges.m_min > cfg.ranges.m_max)
        throw ConfigError("[quantum] ranges must satisfy n_r_max >= 0, n_theta_max >= 0, m_min <= m_max");

    // [perturb]
    if (auto v = take("perturb", "ell")) cfg.perturb.ell = detail::parse_real(v->first, v->second);
    if (auto v = take("perturb", "dv_tanh")) cfg.perturb.dv_tanh = detail::parse_real(v->first, v->second);
    if (auto v = take("perturb", "dv_csch2")) cfg.perturb.dv_csch2 = detail::parse_real(v->first, v->second);
    if (auto v = take("perturb", "k_max")) {
        cfg.perturb.k_max = detail::parse_int(v->first, v->second);
        if (cfg.perturb.k_max < 1)
            throw ConfigError("line " + std::to_string(v->second) + ": k_max must be >= 1");
    }

    // strictness: everything must have been consumed
    for (const auto& [section, keys] : sections)
        for (const auto& [key, value] : keys)
            throw ConfigError("line " + std::to_string(value.second) + ": unknown key '" + key +
                              "' in [" + section + "]");

    // echo the resolved configuration, defaults included
    auto& r = cfg.resolved;
    r["run.command"] = to_string(cfg.command);
    r["run.format"] = to_string(cfg.format);
    r["run.tolerance"] = detail::format_real(cfg.tolerance);
    if (cfg.radial) {
        r["potential.radial.family"] = to_string(cfg.radial->tag);
        for (const auto& [k, v] : cfg.radial->params) r["potential.radial." + k] = detail::format_real(v);
    }
    if (cfg.angular) {
        r["potential.angular.family"] = to_string(cfg.angular->tag);
        switch (cfg.angular->tag) {
            case AngularFamilyTag::ring_trig:
                r["potential.angular.beta"] = detail::format_real(cfg.angular->beta);
                r["potential.angular.gamma"] = detail::format_real(cfg.angular->gamma);
                break;
            case AngularFamilyTag::double_trig:
                r["potential.angular.delta"] = detail::format_real(cfg.angular->delta);
                r["potential.angular.c"] = detail::format_real(cfg.angular->c);
                break;
            default:
                break;
        }
    }
    if (cfg.grid.length) r["grid.L"] = detail::format_real(*cfg.grid.length);
    if (cfg.grid.spacing) r["grid.spacing"] = detail::format_real(*cfg.grid.spacing);
    if (cfg.grid.offset) r["grid.offset"] = detail::format_real(*cfg.grid.offset);
    if (cfg.grid.angular_cells) r["grid.angular_cells"] = std::to_string(*cfg.grid.angular_cells);
    r["quantum.n_r_max"] = std::to_string(cfg.ranges.n_r_max);
    r["quantum.n_theta_max"] = std::to_string(cfg.ranges.n_theta_max);
    r["quantum.m_min"] = std::to_string(cfg.ranges.m_min);
    r["quantum.m_max"] = std::to_string(cfg.ranges.m_max);
    if (cfg.command == Command::perturb) {
        r["perturb.ell"] = detail::format_real(cfg.perturb.ell);
        r["perturb.dv_tanh"] = detail::format_real(cfg.perturb.dv_tanh);
        r["perturb.dv_csch2"] = detail::format_real(cfg.perturb.dv_csch2);
        r["perturb.k_max"] = std::to_string(cfg.perturb.k_max);
    }
    return cfg;
}

}  // namespace spectra
