#include "spectra/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

int main(int argc, char** argv) {
    CLI::App app{"spectra: shape-invariant potentials, non-central spectra, and numeric verification"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string format_override;
    double tolerance_override = -1.0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "path to the run configuration file")->required();
        sub->add_option("--out", out_path, "write the report here instead of stdout");
        sub->add_option("--format", format_override, "override output format (csv|json)")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--tolerance", tolerance_override, "override verification tolerance");
    };

    CLI::App* cmd_spectrum = app.add_subcommand("spectrum", "composite 3D spectrum table");
    CLI::App* cmd_verify = app.add_subcommand("verify", "analytic-vs-oracle residual report");
    CLI::App* cmd_perturb = app.add_subcommand("perturb", "order-by-order perturbation hierarchy");
    CLI::App* cmd_transform = app.add_subcommand("transform", "theta <-> z mapping tables");
    for (CLI::App* sub : {cmd_spectrum, cmd_verify, cmd_perturb, cmd_transform}) add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "error: cannot open config file '" << config_path << "'\n";
            return 2;
        }
        std::stringstream buffer;
        buffer << in.rdbuf();
        spectra::RunConfig cfg = spectra::parse_config(buffer.str());

        // the subcommand wins over any [run] command in the file
        const std::string sub = app.get_subcommands().front()->get_name();
        if (sub == "spectrum") cfg.command = spectra::Command::spectrum;
        else if (sub == "verify") cfg.command = spectra::Command::verify;
        else if (sub == "perturb") cfg.command = spectra::Command::perturb;
        else cfg.command = spectra::Command::transform;
        cfg.resolved["run.command"] = spectra::to_string(cfg.command);

        if (!format_override.empty()) {
            cfg.format = format_override == "json" ? spectra::OutputFormat::json
                                                   : spectra::OutputFormat::csv;
            cfg.resolved["run.format"] = spectra::to_string(cfg.format);
        }
        if (tolerance_override > 0.0) {
            cfg.tolerance = tolerance_override;
            cfg.resolved["run.tolerance"] = spectra::detail::format_real(cfg.tolerance);
        }

        const spectra::RunResult result = spectra::run_config(cfg);
        if (out_path.empty()) {
            std::cout << result.output;
        } else {
            std::ofstream out(out_path, std::ios::binary);
            if (!out) {
                std::cerr << "error: cannot write output file '" << out_path << "'\n";
                return 2;
            }
            out << result.output;
        }
        return result.exit_code;
    } catch (const spectra::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
