// cqedlab command-line front end.

#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cqedlab/core/errors.hpp"
#include "cqedlab/pipeline/commands.hpp"

using namespace cqedlab;

int main(int argc, char** argv) {
    CLI::App app{"cqedlab: cQED spectroscopy simulation and parameter extraction"};
    app.require_subcommand(1);

    SimulateOptions sim;
    auto* simulate = app.add_subcommand("simulate", "Generate a synthetic dataset from a sim config");
    simulate->add_option("kind", sim.kind, "flux-map | power-map | two-tone | t1-trace")->required();
    simulate->add_option("--config", sim.config, "cqedlab-sim-v1 JSON")->required();
    simulate->add_option("--out", sim.out_dir, "Output directory")->required();
    simulate->add_flag("--plot", sim.plot, "Also write an SVG rendering");

    FitOptions fit;
    std::optional<double> fit_fbare;
    std::optional<double> fit_t1;
    std::optional<double> fit_fqmax;
    std::string fit_out;
    bool power_axis = false;
    auto* fitc = app.add_subcommand("fit", "Fit a CSV dataset and write a cqedlab-fit-v1 JSON");
    fitc->add_option("kind", fit.kind, "lorentzian | rabi-splitting | decay | power-broadening | flux-noise | ridge")
        ->required();
    fitc->add_option("input", fit.input, "Input CSV")->required();
    fitc->add_option("--fbare", fit_fbare, "Bare cavity frequency (Hz), rabi-splitting");
    fitc->add_option("--t1", fit_t1, "T1 (s), power-broadening");
    fitc->add_option("--fqmax", fit_fqmax, "SQUID fq_max (Hz), flux-noise");
    fitc->add_option("--window", fit.window, "Flux window |phi| (Phi0), flux-noise")->capture_default_str();
    fitc->add_flag("--peak", fit.peak, "Fit a peak rather than a dip (lorentzian)");
    fitc->add_flag("--power-axis", power_axis, "Map x axis is readout power (ridge)");
    fitc->add_option("--out", fit_out, "Output JSON (default <input>.fit.json)");
    fitc->add_flag("--allow-nonconverged", fit.allow_nonconverged, "Exit 0 even if the fit did not converge");

    ExtractOptions ext;
    const char* extract_flags[] = {"chi", "g", "fbare", "fq", "fwhm", "fq-ref", "ej-ratio", "ec-ratio", "capacitance"};
    std::map<std::string, std::optional<double>> ext_values;
    auto* extract = app.add_subcommand("extract", "Evaluate a closed-form physical quantity");
    extract->add_option("quantity", ext.quantity, "fq-from-shift | g-from-shift | ncrit | t2-bound | scaling | ec")
        ->required();
    for (const char* name : extract_flags) {
        extract->add_option(std::string("--") + name, ext_values[name]);
    }

    ReportOptions rep;
    std::string report_name;
    std::string report_json;
    auto* report = app.add_subcommand("report", "Reproduction tables");
    report->add_option("table", report_name, "paper-numbers")
        ->required()
        ->check(CLI::IsMember({"paper-numbers"}));
    report->add_option("--json", report_json, "Also write the table as JSON");
    report->add_option("--g-scale", rep.g_scale, "Scale every embedded coupling (sensitivity check)")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_code::input;
    }

    if (*simulate) {
        try {
            sim.seed_override = seed_from_env();
        } catch (const ConfigError& e) {
            std::cerr << "error: " << e.what() << '\n';
            return exit_code::input;
        }
        return cmd_simulate(sim, std::cout, std::cerr);
    }
    if (*fitc) {
        fit.f_bare_hz = fit_fbare;
        fit.t1_s = fit_t1;
        fit.fq_max_hz = fit_fqmax;
        fit.map_axis = power_axis ? MapAxis::power : MapAxis::flux;
        if (!fit_out.empty()) {
            fit.out = fit_out;
        }
        return cmd_fit(fit, std::cout, std::cerr);
    }
    if (*extract) {
        for (const auto& [name, value] : ext_values) {
            if (value) {
                ext.args[name] = *value;
            }
        }
        return cmd_extract(ext, std::cout, std::cerr);
    }
    if (!report_json.empty()) {
        rep.json = report_json;
    }
    return cmd_report_paper_numbers(rep, std::cout, std::cerr);
}
