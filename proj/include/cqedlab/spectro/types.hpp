#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include <Eigen/Core>

namespace cqedlab {

// |S21| (dB) sampled on a strictly increasing axis. The axis is frequency for
// spectroscopy traces and delay (s) for decay traces.
struct SpectroTrace {
    Eigen::VectorXd axis;
    Eigen::VectorXd values;
    std::map<std::string, double> meta;

    void validate() const;
};

enum class MapAxis { flux, power };

// values(i, j) is |S21| in dB at x_axis(i), y_axis(j) (x-major).
struct SpectroMap {
    MapAxis x_kind = MapAxis::flux;
    Eigen::VectorXd x_axis;
    Eigen::VectorXd y_axis;
    Eigen::MatrixXd values;

    void validate() const;
    SpectroTrace column(Eigen::Index i) const;
};

struct DriveConfig {
    double readout_power_dbm = -50.0;
    std::optional<double> drive_power_dbm;
    double noise_sigma_db = 0.0;
    std::uint64_t seed = 0;

    void validate() const;
};

// Smooth crossover of each qubit from unsaturated to saturated versus readout
// power. Onsets sit at power_ref + 10 log10(n_crit) per qubit.
struct SaturationModel {
    double transition_width_db = 2.0;
    // Cavity linewidth multiplier while the last-saturating qubit is still
    // unsaturated. Placeholder value; no measured number backs it.
    double broadening_factor = 1.5;

    void validate() const;
};

// Two-tone peak parameters. beta converts linear drive power (mW) into
// n_s * omega_vac^2 (rad^2/s^2); the flux-noise amplitude A is in flux quanta and
// adds |dfq/dphi| A sqrt(ln 2) in quadrature to the FWHM when positive.
struct TwoToneModel {
    std::size_t qubit = 0;
    double beta = 0.0;
    double flux_noise_amplitude = 0.0;
    double peak_height = 1.0;

    void validate() const;
};

}  // namespace cqedlab
