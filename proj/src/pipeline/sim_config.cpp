#include "cqedlab/pipeline/sim_config.hpp"

#include <cmath>
#include <fstream>

#include "cqedlab/core/errors.hpp"
#include "cqedlab/io/schemas.hpp"

namespace cqedlab {

namespace {

using namespace json_field;

Eigen::VectorXd parse_grid(const Json& grids, const std::string& key, const std::string& path) {
    const auto it = grids.find(key);
    const std::string p = join(path, key);
    if (it == grids.end()) {
        return {};
    }
    Eigen::VectorXd out;
    if (it->is_array()) {
        out.resize(Eigen::Index(it->size()));
        for (std::size_t i = 0; i < it->size(); ++i) {
            const Json& v = (*it)[i];
            if (!v.is_number()) {
                throw ConfigError(p + "[" + std::to_string(i) + "]", "expected a number");
            }
            out(Eigen::Index(i)) = v.get<double>();
        }
    } else if (it->is_object()) {
        reject_unknown(*it, {"start", "stop", "count"}, p);
        const double start = number(*it, "start", p);
        const double stop = number(*it, "stop", p);
        const double count = number(*it, "count", p);
        if (count != std::floor(count) || count < 0) {
            throw ConfigError(join(p, "count"), "expected a non-negative integer");
        }
        if (count == 1 && start != stop) {
            throw ConfigError(join(p, "count"), "a single-point grid needs start == stop");
        }
        if (count == 1) {
            out = Eigen::VectorXd::Constant(1, start);
        } else {
            out = Eigen::VectorXd::LinSpaced(Eigen::Index(count), start, stop);
        }
    } else {
        throw ConfigError(p, "expected an array or {start, stop, count}");
    }
    if (out.size() == 0) {
        throw ConfigError(p, "grid must not be empty");
    }
    if (!out.allFinite()) {
        throw ConfigError(p, "grid values must be finite");
    }
    for (Eigen::Index i = 1; i < out.size(); ++i) {
        if (!(out(i) > out(i - 1))) {
            throw ConfigError(p, "grid must be strictly increasing");
        }
    }
    return out;
}

Json grid_to_json(const Eigen::VectorXd& v) {
    Json arr = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        arr.push_back(v(i));
    }
    return arr;
}

}  // namespace

std::optional<SimKind> parse_sim_kind(std::string_view name) {
    if (name == "flux-map") return SimKind::flux_map;
    if (name == "power-map") return SimKind::power_map;
    if (name == "two-tone") return SimKind::two_tone;
    if (name == "t1-trace") return SimKind::t1_trace;
    return std::nullopt;
}

const char* sim_kind_name(SimKind kind) {
    switch (kind) {
        case SimKind::flux_map: return "flux-map";
        case SimKind::power_map: return "power-map";
        case SimKind::two_tone: return "two-tone";
        case SimKind::t1_trace: return "t1-trace";
    }
    return "";
}

void SimConfig::require_for(SimKind kind) const {
    auto need = [](const Eigen::VectorXd& g, const char* path) {
        if (g.size() == 0) {
            throw ConfigError(path, "required field is missing");
        }
    };
    switch (kind) {
        case SimKind::flux_map:
            need(phi_grid, "grids.phi");
            need(freq_grid, "grids.freq_hz");
            break;
        case SimKind::power_map:
            need(power_grid_dbm, "grids.power_dbm");
            need(freq_grid, "grids.freq_hz");
            break;
        case SimKind::two_tone:
            need(phi_grid, "grids.phi");
            need(drive_freq_grid, "grids.drive_freq_hz");
            if (two_tone.qubit >= device.qubits.size()) {
                throw ConfigError("two_tone.qubit", "index out of range");
            }
            if (!device.qubits[two_tone.qubit].t1_s || !device.qubits[two_tone.qubit].t2_star_s) {
                throw ConfigError("device.qubits[" + std::to_string(two_tone.qubit) + "]",
                                  "two-tone simulation needs t1 and t2_star");
            }
            break;
        case SimKind::t1_trace:
            need(delay_grid, "grids.delay_s");
            if (!t1) {
                throw ConfigError("t1", "required field is missing");
            }
            break;
    }
}

SimConfig sim_config_from_json(const Json& doc, const std::filesystem::path& base_dir) {
    expect_schema(doc, schema::kSim, "");
    reject_unknown(doc, {"schema", "device", "device_file", "grids", "flux_phi", "drive", "saturation", "two_tone",
                         "t1", "notes"},
                   "");
    SimConfig cfg;

    if (doc.contains("device") == doc.contains("device_file")) {
        throw ConfigError("device", "exactly one of device or device_file is required");
    }
    if (doc.contains("device")) {
        cfg.device = device_from_json(object(doc, "device", ""), "device");
    } else {
        const std::filesystem::path file = base_dir / string(doc, "device_file", "");
        std::ifstream in(file);
        if (!in) {
            throw IoError("device_file: cannot open " + file.string());
        }
        Json dev;
        try {
            dev = Json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            throw ConfigError("device_file", e.what());
        }
        cfg.device = device_from_json(dev, "device_file");
    }

    if (const Json* grids = optional_object(doc, "grids", "")) {
        reject_unknown(*grids, {"phi", "freq_hz", "power_dbm", "drive_freq_hz", "delay_s"}, "grids");
        cfg.phi_grid = parse_grid(*grids, "phi", "grids");
        cfg.freq_grid = parse_grid(*grids, "freq_hz", "grids");
        cfg.power_grid_dbm = parse_grid(*grids, "power_dbm", "grids");
        cfg.drive_freq_grid = parse_grid(*grids, "drive_freq_hz", "grids");
        cfg.delay_grid = parse_grid(*grids, "delay_s", "grids");
    }
    cfg.flux_phi = optional_number(doc, "flux_phi", "").value_or(0.0);

    if (const Json* drive = optional_object(doc, "drive", "")) {
        reject_unknown(*drive, {"readout_power_dbm", "drive_power_dbm", "noise_sigma_db", "seed"}, "drive");
        cfg.drive.readout_power_dbm = optional_number(*drive, "readout_power_dbm", "drive").value_or(-50.0);
        cfg.drive.drive_power_dbm = optional_number(*drive, "drive_power_dbm", "drive");
        cfg.drive.noise_sigma_db = optional_number(*drive, "noise_sigma_db", "drive").value_or(0.0);
        if (drive->contains("seed")) {
            const Json& s = (*drive)["seed"];
            if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0)) {
                throw ConfigError("drive.seed", "expected a non-negative integer");
            }
            cfg.drive.seed = s.get<std::uint64_t>();
        }
        try {
            cfg.drive.validate();
        } catch (const DomainError& e) {
            throw ConfigError("drive", e.what());
        }
    }

    if (const Json* sat = optional_object(doc, "saturation", "")) {
        reject_unknown(*sat, {"transition_width_db", "broadening_factor"}, "saturation");
        SaturationModel m;
        m.transition_width_db = optional_number(*sat, "transition_width_db", "saturation").value_or(2.0);
        m.broadening_factor = optional_number(*sat, "broadening_factor", "saturation").value_or(1.5);
        try {
            m.validate();
        } catch (const DomainError& e) {
            throw ConfigError("saturation", e.what());
        }
        cfg.saturation = m;
    }

    if (const Json* tt = optional_object(doc, "two_tone", "")) {
        reject_unknown(*tt, {"qubit", "beta", "flux_noise_amplitude", "peak_height"}, "two_tone");
        const double qubit = optional_number(*tt, "qubit", "two_tone").value_or(0.0);
        if (qubit < 0 || qubit != std::floor(qubit)) {
            throw ConfigError("two_tone.qubit", "expected a non-negative integer");
        }
        cfg.two_tone.qubit = std::size_t(qubit);
        cfg.two_tone.beta = optional_number(*tt, "beta", "two_tone").value_or(0.0);
        cfg.two_tone.flux_noise_amplitude = optional_number(*tt, "flux_noise_amplitude", "two_tone").value_or(0.0);
        cfg.two_tone.peak_height = optional_number(*tt, "peak_height", "two_tone").value_or(1.0);
        try {
            cfg.two_tone.validate();
        } catch (const DomainError& e) {
            throw ConfigError("two_tone", e.what());
        }
    }

    if (const Json* t1 = optional_object(doc, "t1", "")) {
        reject_unknown(*t1, {"t1_s", "amplitude", "noise_sigma"}, "t1");
        T1Settings s;
        s.t1_s = number(*t1, "t1_s", "t1");
        s.amplitude = optional_number(*t1, "amplitude", "t1").value_or(1.0);
        s.noise_sigma = optional_number(*t1, "noise_sigma", "t1").value_or(0.0);
        if (!(s.t1_s > 0.0)) {
            throw ConfigError("t1.t1_s", "must be positive");
        }
        if (!(s.noise_sigma >= 0.0)) {
            throw ConfigError("t1.noise_sigma", "must be non-negative");
        }
        cfg.t1 = s;
    }
    return cfg;
}

Json sim_config_to_json(const SimConfig& cfg) {
    Json doc;
    doc["schema"] = schema::kSim;
    doc["device"] = device_to_json(cfg.device);
    Json grids = Json::object();
    if (cfg.phi_grid.size()) grids["phi"] = grid_to_json(cfg.phi_grid);
    if (cfg.freq_grid.size()) grids["freq_hz"] = grid_to_json(cfg.freq_grid);
    if (cfg.power_grid_dbm.size()) grids["power_dbm"] = grid_to_json(cfg.power_grid_dbm);
    if (cfg.drive_freq_grid.size()) grids["drive_freq_hz"] = grid_to_json(cfg.drive_freq_grid);
    if (cfg.delay_grid.size()) grids["delay_s"] = grid_to_json(cfg.delay_grid);
    doc["grids"] = std::move(grids);
    doc["flux_phi"] = cfg.flux_phi;
    doc["drive"] = {{"readout_power_dbm", cfg.drive.readout_power_dbm},
                    {"noise_sigma_db", cfg.drive.noise_sigma_db},
                    {"seed", cfg.drive.seed}};
    if (cfg.drive.drive_power_dbm) {
        doc["drive"]["drive_power_dbm"] = *cfg.drive.drive_power_dbm;
    }
    if (cfg.saturation) {
        doc["saturation"] = {{"transition_width_db", cfg.saturation->transition_width_db},
                             {"broadening_factor", cfg.saturation->broadening_factor}};
    }
    doc["two_tone"] = {{"qubit", cfg.two_tone.qubit},
                       {"beta", cfg.two_tone.beta},
                       {"flux_noise_amplitude", cfg.two_tone.flux_noise_amplitude},
                       {"peak_height", cfg.two_tone.peak_height}};
    if (cfg.t1) {
        doc["t1"] = {{"t1_s", cfg.t1->t1_s}, {"amplitude", cfg.t1->amplitude}, {"noise_sigma", cfg.t1->noise_sigma}};
    }
    return doc;
}

}  // namespace cqedlab
