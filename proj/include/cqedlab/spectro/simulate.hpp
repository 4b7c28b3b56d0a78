#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "cqedlab/core/device.hpp"
#include "cqedlab/spectro/types.hpp"

namespace cqedlab {

// fr = fb - sum over unsaturated qubits of chi_i(phi). Throws DomainError when
// an unsaturated qubit is exactly resonant with the cavity.
double dressed_cavity_frequency(const DeviceModel& dev, double phi, std::span<const bool> saturated);

// Same with a continuous saturation weight per qubit (0 = unsaturated, 1 = saturated).
double dressed_cavity_frequency_weighted(const DeviceModel& dev, double phi,
                                         std::span<const double> weights);

// Readout power (dBm) at which each qubit's saturation weight reaches 1/2.
std::vector<double> saturation_onsets_dbm(const DeviceModel& dev, double phi);

std::vector<double> saturation_weights(const DeviceModel& dev, double phi, double power_dbm,
                                       const SaturationModel& sat);

// Mean intracavity photon number for a readout power.
double photon_number(const DeviceModel& dev, double power_dbm);

// Low-power cavity response versus flux. Columns where some qubit lies within 5 g
// of the cavity are rendered as the two hybridized dips of equal depth. With a
// saturation model the readout power of `drive` sets per-qubit saturation.
SpectroMap flux_map(const DeviceModel& dev, const Eigen::VectorXd& phi_grid,
                    const Eigen::VectorXd& f_grid, const DriveConfig& drive,
                    const std::optional<SaturationModel>& sat = std::nullopt);

SpectroMap power_map(const DeviceModel& dev, double phi, const Eigen::VectorXd& power_grid_dbm,
                     const Eigen::VectorXd& f_grid, const SaturationModel& sat,
                     const DriveConfig& drive);

// Two-tone FWHM of the qubit line (Hz):
//   (2 pi HWHM)^2 = 1/T2*^2 + beta P_mW T1/T2*, flux noise added in quadrature.
double two_tone_fwhm(const QubitModel& q, double phi, std::optional<double> drive_power_dbm,
                     const TwoToneModel& model);

SpectroMap two_tone_map(const DeviceModel& dev, const Eigen::VectorXd& phi_grid,
                        const Eigen::VectorXd& drive_f_grid, const DriveConfig& drive,
                        const TwoToneModel& model);

// A exp(-t / T1) plus seeded Gaussian noise of absolute std noise_sigma.
Eigen::VectorXd t1_trace(double t1_s, double amplitude, const Eigen::VectorXd& delay_grid,
                         double noise_sigma, std::uint64_t seed);

// Linear mW from dBm.
double dbm_to_mw(double dbm);

}  // namespace cqedlab
