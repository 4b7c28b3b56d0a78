#include "cqedlab/pipeline/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

#include "cqedlab/core/errors.hpp"
#include "cqedlab/core/transmon.hpp"
#include "cqedlab/fit/fitters.hpp"
#include "cqedlab/fit/ridge.hpp"
#include "cqedlab/io/csv.hpp"
#include "cqedlab/io/json_io.hpp"
#include "cqedlab/io/schemas.hpp"
#include "cqedlab/io/svg.hpp"
#include "cqedlab/jc/hybridization.hpp"
#include "cqedlab/pipeline/report.hpp"
#include "cqedlab/pipeline/sim_config.hpp"
#include "cqedlab/spectro/simulate.hpp"

namespace cqedlab {

namespace fs = std::filesystem;

namespace {

template <typename Body>
int guarded(std::ostream& err, const std::string& context, Body&& body) {
    const std::string prefix = context.empty() ? "error: " : "error: " + context + ": ";
    try {
        return body();
    } catch (const ConfigError& e) {
        err << prefix << e.what() << '\n';
        return exit_code::input;
    } catch (const ParseError& e) {
        err << prefix << e.what() << '\n';
        return exit_code::input;
    } catch (const DomainError& e) {
        err << prefix << e.what() << '\n';
        return exit_code::input;
    } catch (const IoError& e) {
        err << prefix << e.what() << '\n';
        return exit_code::io;
    } catch (const FitError& e) {
        err << prefix << "fit failed: " << e.what() << '\n';
        return exit_code::failure;
    } catch (const std::exception& e) {
        err << prefix << e.what() << '\n';
        return exit_code::failure;
    }
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !out.write(content.data(), std::streamsize(content.size())) || !out.flush()) {
        throw IoError("cannot write " + path.string());
    }
}

Json parse_json(const std::string& text, const std::string& what) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(what, e.what());
    }
}

std::vector<double> to_vector(const Eigen::VectorXd& v) {
    return {v.data(), v.data() + v.size()};
}

}  // namespace

std::optional<std::uint64_t> seed_from_env() {
    const char* raw = std::getenv("CQEDLAB_SEED");
    if (raw == nullptr) {
        return std::nullopt;
    }
    const std::string_view s(raw);
    std::uint64_t seed = 0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), seed);
    if (s.empty() || ec != std::errc() || end != s.data() + s.size()) {
        throw ConfigError("CQEDLAB_SEED", "expected a non-negative integer, got '" + std::string(s) + "'");
    }
    return seed;
}

int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded(err, opt.config.string(), [&] {
        const auto kind = parse_sim_kind(opt.kind);
        if (!kind) {
            throw ConfigError("kind", "unknown simulation kind '" + opt.kind + "'");
        }
        const Json doc = parse_json(read_file(opt.config), "config");
        SimConfig cfg = sim_config_from_json(doc, opt.config.parent_path());
        if (opt.seed_override) {
            cfg.drive.seed = *opt.seed_override;
        }
        cfg.require_for(*kind);

        std::error_code ec;
        fs::create_directories(opt.out_dir, ec);
        if (ec) {
            throw IoError("cannot create " + opt.out_dir.string() + ": " + ec.message());
        }

        const std::string stem = sim_kind_name(*kind);
        const fs::path csv_path = opt.out_dir / (stem + ".csv");
        std::ostringstream csv;
        std::string svg;
        const char* data_schema = schema::kMap;

        switch (*kind) {
            case SimKind::flux_map: {
                const SpectroMap map = flux_map(cfg.device, cfg.phi_grid, cfg.freq_grid, cfg.drive, cfg.saturation);
                write_map_csv(csv, map);
                if (opt.plot) svg = render_map_svg(map, "cavity response vs flux", "flux (Phi0)");
                break;
            }
            case SimKind::power_map: {
                const SpectroMap map = power_map(cfg.device, cfg.flux_phi, cfg.power_grid_dbm, cfg.freq_grid,
                                                 cfg.saturation.value_or(SaturationModel{}), cfg.drive);
                write_map_csv(csv, map);
                if (opt.plot) svg = render_map_svg(map, "cavity response vs readout power", "readout power (dBm)");
                break;
            }
            case SimKind::two_tone: {
                const SpectroMap map =
                    two_tone_map(cfg.device, cfg.phi_grid, cfg.drive_freq_grid, cfg.drive, cfg.two_tone);
                write_map_csv(csv, map);
                if (opt.plot) svg = render_map_svg(map, "two-tone spectroscopy", "flux (Phi0)");
                break;
            }
            case SimKind::t1_trace: {
                const Eigen::VectorXd amps =
                    t1_trace(cfg.t1->t1_s, cfg.t1->amplitude, cfg.delay_grid, cfg.t1->noise_sigma, cfg.drive.seed);
                write_decay_csv(csv, cfg.delay_grid, amps);
                data_schema = schema::kTrace;
                if (opt.plot) {
                    svg = render_line_svg(to_vector(cfg.delay_grid * 1e9), to_vector(amps), "T1 decay", "delay (ns)",
                                          "amplitude");
                }
                break;
            }
        }

        write_file(csv_path, csv.str());
        Json files = Json::array({csv_path.filename().string()});
        if (opt.plot) {
            const fs::path svg_path = opt.out_dir / (stem + ".svg");
            write_file(svg_path, svg);
            files.push_back(svg_path.filename().string());
        }

        Json manifest;
        manifest["schema"] = schema::kManifest;
        manifest["command"] = "simulate";
        manifest["kind"] = stem;
        manifest["seed"] = cfg.drive.seed;
        manifest["schemas"] = {{"config", schema::kSim}, {"device", schema::kDevice}, {"data", data_schema}};
        manifest["files"] = files;
        manifest["config"] = sim_config_to_json(cfg);
        write_file(opt.out_dir / "manifest.json", manifest.dump(2) + "\n");

        out << "wrote " << csv_path.string() << '\n';
        return exit_code::ok;
    });
}

int cmd_fit(const FitOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded(err, opt.input.string(), [&] {
        const std::string text = read_file(opt.input);
        std::istringstream in(text);
        fs::path out_path = opt.out.value_or(fs::path(opt.input).replace_extension(".fit.json"));
        FitResult fit;

        if (opt.kind == "lorentzian") {
            fit = fit_lorentzian(read_trace_csv(in), opt.peak ? Polarity::peak : Polarity::dip);
        } else if (opt.kind == "rabi-splitting") {
            if (!opt.f_bare_hz) {
                throw ConfigError("--fbare", "required for rabi-splitting");
            }
            fit = fit_avoided_crossing(read_branch_csv(in), *opt.f_bare_hz);
        } else if (opt.kind == "decay") {
            const auto [delays, amps] = read_decay_csv(in);
            fit = fit_exponential_decay(delays, amps);
        } else if (opt.kind == "power-broadening") {
            const LinewidthSeries series = read_linewidth_csv(in);
            if (series.axis != LinewidthSeries::Axis::power_dbm) {
                throw ConfigError("input", "power-broadening needs a power_dbm column");
            }
            fit = fit_power_broadening(series, opt.t1_s);
        } else if (opt.kind == "flux-noise") {
            if (!opt.fq_max_hz) {
                throw ConfigError("--fqmax", "required for flux-noise");
            }
            const LinewidthSeries series = read_linewidth_csv(in);
            if (series.axis != LinewidthSeries::Axis::flux) {
                throw ConfigError("input", "flux-noise needs a phi column");
            }
            // only the flux slope enters; the coupling is irrelevant here
            const QubitModel q = QubitModel::squid("q", *opt.fq_max_hz, 1.0);
            fit = fit_flux_noise_amplitude(series, q, opt.window);
        } else if (opt.kind == "ridge") {
            const SpectroMap map = read_map_csv(in, opt.map_axis);
            const Ridge ridge = extract_dip_ridge(map);
            std::ostringstream csv;
            write_ridge_csv(csv, ridge);
            const fs::path ridge_path = fs::path(out_path).replace_extension("").replace_extension(".ridge.csv");
            write_file(ridge_path, csv.str());
            fit.params["columns_fitted"] = double(ridge.x.size());
            fit.params["columns_failed"] = double(ridge.failed_columns);
            const auto steps = detect_plateau_transitions(ridge);
            fit.params["transitions"] = double(steps.size());
            for (std::size_t i = 0; i < steps.size(); ++i) {
                fit.params["transition_" + std::to_string(i)] = steps[i];
            }
            fit.converged = true;
        } else {
            throw ConfigError("kind", "unknown fit kind '" + opt.kind + "'");
        }

        const Json doc = fit_to_json(fit, opt.kind);
        write_file(out_path, doc.dump(2) + "\n");
        out << doc.dump(2) << '\n';
        for (const auto& w : fit.warnings) {
            err << "warning: " << w << '\n';
        }
        if (!fit.converged && !opt.allow_nonconverged) {
            err << "error: fit did not converge (pass --allow-nonconverged to accept)\n";
            return exit_code::failure;
        }
        return exit_code::ok;
    });
}

namespace {

std::string human_value(double v, const std::string& unit) {
    char buf[64];
    const double a = std::abs(v);
    if (unit == "Hz") {
        if (a >= 1e9) {
            std::snprintf(buf, sizeof buf, "%.6g GHz", v / 1e9);
        } else if (a >= 1e6) {
            std::snprintf(buf, sizeof buf, "%.6g MHz", v / 1e6);
        } else if (a >= 1e3) {
            std::snprintf(buf, sizeof buf, "%.6g kHz", v / 1e3);
        } else {
            std::snprintf(buf, sizeof buf, "%.6g Hz", v);
        }
    } else if (unit == "s") {
        if (a < 1e-6) {
            std::snprintf(buf, sizeof buf, "%.6g ns", v * 1e9);
        } else if (a < 1e-3) {
            std::snprintf(buf, sizeof buf, "%.6g us", v * 1e6);
        } else {
            std::snprintf(buf, sizeof buf, "%.6g s", v);
        }
    } else {
        std::snprintf(buf, sizeof buf, "%.6g", v);
    }
    return buf;
}

}  // namespace

int cmd_extract(const ExtractOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded(err, "extract " + opt.quantity, [&] {
        struct Spec {
            std::vector<std::string> required;
            std::vector<std::string> optional;
        };
        const std::map<std::string, Spec> specs{
            {"fq-from-shift", {{"chi", "g", "fbare"}, {}}},
            {"g-from-shift", {{"chi", "fq", "fbare"}, {}}},
            {"ncrit", {{"g", "fq", "fbare"}, {}}},
            {"t2-bound", {{"fwhm"}, {}}},
            {"scaling", {{"fq-ref", "ej-ratio"}, {"ec-ratio"}}},
            {"ec", {{"capacitance"}, {}}},
        };
        const auto it = specs.find(opt.quantity);
        if (it == specs.end()) {
            throw ConfigError("quantity", "unknown quantity '" + opt.quantity + "'");
        }
        for (const auto& name : it->second.required) {
            if (!opt.args.count(name)) {
                throw ConfigError("--" + name, "required for " + opt.quantity);
            }
        }
        for (const auto& [name, value] : opt.args) {
            const auto& s = it->second;
            if (std::find(s.required.begin(), s.required.end(), name) == s.required.end() &&
                std::find(s.optional.begin(), s.optional.end(), name) == s.optional.end()) {
                throw ConfigError("--" + name, "not used by " + opt.quantity);
            }
        }
        const auto arg = [&](const std::string& k) { return opt.args.at(k); };

        double value = 0.0;
        std::string unit = "Hz";
        if (opt.quantity == "fq-from-shift") {
            value = fq_from_shift(arg("chi"), arg("g"), arg("fbare"));
        } else if (opt.quantity == "g-from-shift") {
            value = g_from_shift(arg("chi"), arg("fq"), arg("fbare"));
        } else if (opt.quantity == "ncrit") {
            value = critical_photon_number(arg("g"), arg("fq"), arg("fbare"));
            unit = "";
        } else if (opt.quantity == "t2-bound") {
            value = t2_lower_bound_from_fwhm(arg("fwhm"));
            unit = "s";
        } else if (opt.quantity == "scaling") {
            const double ec_ratio = opt.args.count("ec-ratio") ? arg("ec-ratio") : 1.0;
            value = scale_fq_by_design(arg("fq-ref"), arg("ej-ratio"), ec_ratio);
        } else {
            value = charging_energy(arg("capacitance"));
        }

        Json doc;
        doc["schema"] = schema::kExtract;
        doc["quantity"] = opt.quantity;
        doc["value"] = value;
        doc["unit"] = unit;
        Json inputs = Json::object();
        for (const auto& [k, v] : opt.args) {
            inputs[k] = v;
        }
        doc["inputs"] = std::move(inputs);
        out << human_value(value, unit) << '\n' << doc.dump() << '\n';
        return exit_code::ok;
    });
}

int cmd_report_paper_numbers(const ReportOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded(err, "report", [&] {
        if (!(opt.g_scale > 0.0)) {
            throw ConfigError("--g-scale", "must be positive");
        }
        ReproInputs inputs;
        inputs.g_scale = opt.g_scale;
        const auto rows = paper_number_rows(inputs);
        print_report(out, rows);
        if (opt.json) {
            write_file(*opt.json, report_to_json(rows).dump(2) + "\n");
        }
        for (const auto& r : rows) {
            if (!r.pass) {
                return exit_code::failure;
            }
        }
        return exit_code::ok;
    });
}

}  // namespace cqedlab
