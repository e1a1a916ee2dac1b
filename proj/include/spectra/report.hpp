#pragma once

#include "spectra/config.hpp"
#include "spectra/perturbation.hpp"

#include <nlohmann/json.hpp>

#include <sstream>
#include <string>
#include <vector>

namespace spectra {

/// Outcome of one CLI run: the rendered artifact plus the process exit code
/// (0 pass, 1 verification failure, 2 usage/config error — the latter is
/// raised as ConfigError before a RunResult exists).
struct RunResult {
    int exit_code{0};
    std::string output;
};

namespace detail {

using Json = nlohmann::ordered_json;

/// A rectangular table with string cells; numbers are pre-formatted at
/// 12 significant digits so CSV and JSON renderings are deterministic.
struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

inline std::string cell(double v) { return format_real(v); }
inline std::string cell(int v) { return std::to_string(v); }

inline std::string render_csv(const RunConfig& cfg, const std::vector<Table>& tables,
                              const std::vector<std::pair<std::string, std::string>>& summary) {
    std::ostringstream out;
    for (const auto& [k, v] : cfg.resolved) out << "# " << k << " = " << v << "\n";
    for (const auto& [k, v] : summary) out << "# " << k << " = " << v << "\n";
    for (const auto& t : tables) {
        out << "# table: " << t.name << "\n";
        for (std::size_t i = 0; i < t.columns.size(); ++i)
            out << (i ? "," : "") << t.columns[i];
        out << "\n";
        for (const auto& row : t.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
            out << "\n";
        }
    }
    return out.str();
}

inline std::string render_json(const RunConfig& cfg, const std::vector<Table>& tables,
                               const std::vector<std::pair<std::string, std::string>>& summary) {
    Json doc;
    Json config = Json::object();
    for (const auto& [k, v] : cfg.resolved) config[k] = v;
    doc["config"] = config;
    Json sum = Json::object();
    for (const auto& [k, v] : summary) sum[k] = v;
    doc["summary"] = sum;
    Json tbls = Json::object();
    for (const auto& t : tables) {
        Json tbl;
        tbl["columns"] = t.columns;
        tbl["rows"] = t.rows;
        tbls[t.name] = tbl;
    }
    doc["tables"] = tbls;
    return doc.dump(2) + "\n";
}

inline std::string render(const RunConfig& cfg, const std::vector<Table>& tables,
                          const std::vector<std::pair<std::string, std::string>>& summary) {
    return cfg.format == OutputFormat::csv ? render_csv(cfg, tables, summary)
                                           : render_json(cfg, tables, summary);
}

inline Grid1D grid_for(FamilyTag tag, const GridOverrides& ov) {
    const GridKind kind = natural_domain(tag);
    const double h = ov.spacing.value_or(0.01);
    switch (kind) {
        case GridKind::full_line: {
            const double L = ov.length.value_or(20.0);
            return default_full_line_grid(L, h);
        }
        case GridKind::half_line: {
            const double L = ov.length.value_or(20.0);
            const double off = ov.offset.value_or(1e-3);
            const int n = static_cast<int>(std::lround((L - off) / h)) + 1;
            return make_grid(GridKind::half_line, off, L, n);
        }
        case GridKind::radial: {
            const double L = ov.length.value_or(80.0);
            return default_radial_grid(L, h);
        }
        default:
            throw std::logic_error("grid_for: unsupported domain");
    }
}

inline RunResult run_spectrum(const RunConfig& cfg) {
    if (!cfg.radial || !cfg.angular)
        throw ConfigError("spectrum needs both [potential.radial] and [potential.angular]");
    PotentialSpec spec{*cfg.radial, *cfg.angular, cfg.ranges.m_min, cfg.ranges.m_max};
    const auto entries = total_spectrum(spec, cfg.ranges);
    Table t{"spectrum", {"n_r", "n_theta", "m", "ell_eff", "energy", "status"}, {}};
    for (const auto& e : entries)
        t.rows.push_back({cell(e.qn.n_r), cell(e.qn.n_theta), cell(e.qn.m),
                          e.ok ? cell(e.ell_eff) : "", e.ok ? cell(e.energy) : "",
                          e.ok ? "ok" : "error: " + e.error});
    const auto bad = std::count_if(entries.begin(), entries.end(),
                                   [](const FullSpectrumEntry& e) { return !e.ok; });
    return RunResult{0, render(cfg, {t},
                               {{"entries", cell(static_cast<int>(entries.size()))},
                                {"unresolved", cell(static_cast<int>(bad))}})};
}

/// verify for a single 1D family: analytic ladder vs oracle, level by level.
inline RunResult run_verify_1d(const RunConfig& cfg) {
    const PotentialFamily& fam = *cfg.radial;
    const Grid1D grid = grid_for(fam.tag, cfg.grid);
    const auto ladder = ladder_spectrum(fam, 64);
    if (ladder.empty()) throw ConfigError("verify: family has no bound states to check");
    auto V = [&fam](double z) { return evaluate_potential(fam, z); };
    const auto oracle = eigen_solve(V, grid, static_cast<int>(ladder.size()) + 1);

    Table t{"verify", {"n", "analytic", "oracle", "residual", "certified", "pass"}, {}};
    double max_res = 0.0;
    bool pass = oracle.levels.size() == ladder.size();
    for (std::size_t i = 0; i < ladder.size(); ++i) {
        if (i >= oracle.levels.size()) {
            t.rows.push_back({cell(static_cast<int>(i)), cell(ladder[i].energy), "", "", "", "fail"});
            pass = false;
            continue;
        }
        const double res = std::abs(ladder[i].energy - oracle.levels[i].energy);
        max_res = std::max(max_res, res);
        const bool ok = res <= cfg.tolerance;
        pass = pass && ok;
        t.rows.push_back({cell(static_cast<int>(i)), cell(ladder[i].energy),
                          cell(oracle.levels[i].energy), cell(res),
                          cell(oracle.certified_tolerance[i]), ok ? "pass" : "fail"});
    }
    return RunResult{pass ? 0 : 1,
                     render(cfg, {t},
                            {{"levels", cell(static_cast<int>(ladder.size()))},
                             {"oracle_levels", cell(static_cast<int>(oracle.levels.size()))},
                             {"max_residual", cell(max_res)},
                             {"tolerance", cell(cfg.tolerance)},
                             {"pass", pass ? "true" : "false"}})};
}

/// verify for a composed 3D spectrum: assembler vs both oracles.
inline RunResult run_verify_3d(const RunConfig& cfg) {
    PotentialSpec spec{*cfg.radial, *cfg.angular, cfg.ranges.m_min, cfg.ranges.m_max};
    const auto entries = total_spectrum(spec, cfg.ranges);
    const Grid1D radial = grid_for(cfg.radial->tag, cfg.grid);
    const auto report = verify_spectrum(entries, spec, cfg.tolerance, radial,
                                        cfg.grid.angular_cells.value_or(1000));
    Table t{"verify",
            {"n_r", "n_theta", "m", "ell_eff", "energy", "angular_residual", "radial_residual",
             "status"},
            {}};
    for (const auto& row : report.rows) {
        const auto& e = row.entry;
        if (row.skipped) {
            t.rows.push_back({cell(e.qn.n_r), cell(e.qn.n_theta), cell(e.qn.m), "", "", "", "",
                              "skipped: " + e.error});
            continue;
        }
        t.rows.push_back({cell(e.qn.n_r), cell(e.qn.n_theta), cell(e.qn.m), cell(e.ell_eff),
                          cell(e.energy), cell(row.angular_residual), cell(row.radial_residual),
                          row.pass ? "pass" : "fail"});
    }
    return RunResult{report.pass ? 0 : 1,
                     render(cfg, {t},
                            {{"checked", cell(report.checked)},
                             {"skipped", cell(report.skipped)},
                             {"max_angular_residual", cell(report.max_angular_residual)},
                             {"max_radial_residual", cell(report.max_radial_residual)},
                             {"tolerance", cell(cfg.tolerance)},
                             {"pass", report.pass ? "true" : "false"}})};
}

inline RunResult run_verify(const RunConfig& cfg) {
    if (!cfg.radial) throw ConfigError("verify needs a [potential.radial] family");
    const GridKind dom = natural_domain(cfg.radial->tag);
    if (dom == GridKind::radial) {
        if (!cfg.angular) throw ConfigError("verify of a radial family needs [potential.angular]");
        return run_verify_3d(cfg);
    }
    if (cfg.angular)
        throw ConfigError("verify of a 1D family takes no [potential.angular] section");
    return run_verify_1d(cfg);
}

inline RunResult run_perturb(const RunConfig& cfg) {
    const PerturbSettings& p = cfg.perturb;
    if (!(p.ell > 0.0)) throw ConfigError("perturb needs ell > 0");
    const auto base = make_family(FamilyTag::poschl_teller_I, {{"ell", p.ell}});
    const Superpotential w = lookup(FamilyTag::poschl_teller_I).step_superpotential(base, 0);

    Grid1D grid;
    if (p.dv_csch2 != 0.0) {
        const double L = cfg.grid.length.value_or(20.0);
        const double off = cfg.grid.offset.value_or(1e-3);
        const double h = cfg.grid.spacing.value_or(0.01);
        grid = make_grid(GridKind::half_line, off, L,
                         static_cast<int>(std::lround((L - off) / h)) + 1);
    } else {
        grid = default_full_line_grid(cfg.grid.length.value_or(20.0),
                                      cfg.grid.spacing.value_or(0.01));
    }
    const double a_tanh = p.dv_tanh, a_csch2 = p.dv_csch2;
    std::vector<std::function<double(double)>> dv = {[a_tanh, a_csch2](double z) {
        double v = a_tanh * std::tanh(z);
        if (a_csch2 != 0.0) {
            const double cs = csch(z);
            v += a_csch2 * cs * cs;
        }
        return v;
    }};
    const auto series = run_series(w, grid, dv, p.k_max);

    Table orders{"orders", {"k", "delta_eps", "partial_sum", "stability", "max_abs_delta_W"}, {}};
    for (std::size_t i = 0; i < series.orders.size(); ++i) {
        const auto& o = series.orders[i];
        orders.rows.push_back({cell(o.k), cell(o.delta_eps), cell(series.partial_sums[i]),
                               cell(series.stability[i]), cell(o.delta_W.cwiseAbs().maxCoeff())});
    }
    // plot-ready delta_W profiles, thinned to ~200 sample rows
    Table profiles{"delta_W_profiles", {"z"}, {}};
    for (const auto& o : series.orders) profiles.columns.push_back("delta_W_" + std::to_string(o.k));
    const int stride = std::max(1, grid.n_points / 200);
    for (int i = 0; i < grid.n_points; i += stride) {
        std::vector<std::string> row{cell(grid.point(i))};
        for (const auto& o : series.orders) row.push_back(cell(o.delta_W(i)));
        profiles.rows.push_back(std::move(row));
    }
    return RunResult{0, render(cfg, {orders, profiles},
                               {{"orders_computed", cell(static_cast<int>(series.orders.size()))},
                                {"terminated", series.terminated ? "true" : "false"},
                                {"total_delta_eps", cell(series.total_delta_eps)}})};
}

inline RunResult run_transform(const RunConfig& cfg) {
    if (!cfg.angular) throw ConfigError("transform needs a [potential.angular] family");
    const TransformedU2 frag = transform_U2(*cfg.angular);
    const bool half = frag.domain == GridKind::half_line;

    Table t{"transform", {"theta", "z", "U2_theta", "delta_V_z", "sin_theta_minus_sech_z",
                          "cos_theta_plus_tanh_z"},
            {}};
    const int n = 201;
    const double lo = half ? 0.5 * kPi + 0.01 : 0.05;
    const double hi = kPi - 0.05;
    for (int i = 0; i < n; ++i) {
        const double theta = lo + (hi - lo) * i / (n - 1);
        const double z = theta_to_z(theta);
        t.rows.push_back({cell(theta), cell(z), cell(cfg.angular->evaluate_theta(theta)),
                          cell(frag.delta_V(z) + frag.constant_shift),
                          cell(std::sin(theta) - sech(z)),
                          cell(std::cos(theta) + std::tanh(z))});
    }
    const AngularFamily back = reconstruct_U2_theta(frag);
    std::vector<std::pair<std::string, std::string>> summary = {
        {"z_domain", to_string(frag.domain)},
        {"constant_shift", cell(frag.constant_shift)},
        {"reconstructed_family", to_string(back.tag)}};
    if (back.tag == AngularFamilyTag::ring_trig) {
        summary.push_back({"reconstructed_beta", cell(back.beta)});
        summary.push_back({"reconstructed_gamma", cell(back.gamma)});
    } else if (back.tag == AngularFamilyTag::double_trig) {
        summary.push_back({"reconstructed_delta", cell(back.delta)});
        summary.push_back({"reconstructed_c", cell(back.c)});
    }
    return RunResult{0, render(cfg, {t}, summary)};
}

}  // namespace detail

using detail::ConfigError;

/// Executes a parsed configuration and renders the report. Throws ConfigError
/// for misuse (maps to exit code 2); otherwise the RunResult carries exit
/// code 0 (pass) or 1 (verification failure).
inline RunResult run_config(const RunConfig& cfg) {
    switch (cfg.command) {
        case Command::spectrum: return detail::run_spectrum(cfg);
        case Command::verify: return detail::run_verify(cfg);
        case Command::perturb: return detail::run_perturb(cfg);
        case Command::transform: return detail::run_transform(cfg);
    }
    throw std::logic_error("run_config: unknown command");
}

}  // namespace spectra
