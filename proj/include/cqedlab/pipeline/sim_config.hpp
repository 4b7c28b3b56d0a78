#pragma once

#include <filesystem>
#include <optional>
#include <string_view>

#include <Eigen/Core>

#include "cqedlab/core/device.hpp"
#include "cqedlab/io/json_io.hpp"
#include "cqedlab/spectro/types.hpp"

namespace cqedlab {

enum class SimKind { flux_map, power_map, two_tone, t1_trace };

std::optional<SimKind> parse_sim_kind(std::string_view name);
const char* sim_kind_name(SimKind kind);

struct T1Settings {
    double t1_s = 0.0;
    double amplitude = 1.0;
    double noise_sigma = 0.0;
};

// Parsed "cqedlab-sim-v1" document. Grids left empty were absent.
struct SimConfig {
    DeviceModel device;
    Eigen::VectorXd phi_grid;
    Eigen::VectorXd freq_grid;
    Eigen::VectorXd power_grid_dbm;
    Eigen::VectorXd drive_freq_grid;
    Eigen::VectorXd delay_grid;
    double flux_phi = 0.0;
    DriveConfig drive;
    std::optional<SaturationModel> saturation;
    TwoToneModel two_tone;
    std::optional<T1Settings> t1;

    // Throws ConfigError naming the first missing field `kind` needs.
    void require_for(SimKind kind) const;
};

// A device may be inline ("device") or referenced ("device_file", relative to base_dir).
SimConfig sim_config_from_json(const Json& doc, const std::filesystem::path& base_dir);

Json sim_config_to_json(const SimConfig& cfg);

}  // namespace cqedlab
