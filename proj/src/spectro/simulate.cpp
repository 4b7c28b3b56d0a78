#include "cqedlab/spectro/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "cqedlab/core/constants.hpp"
#include "cqedlab/core/errors.hpp"
#include "cqedlab/jc/hybridization.hpp"
#include "cqedlab/spectro/lineshape.hpp"

namespace cqedlab {

namespace {

// Independent stream per map column so results do not depend on the order in
// which columns are evaluated.
std::mt19937_64 column_stream(std::uint64_t seed, std::uint64_t column) {
    std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(column),
                      std::uint32_t(column >> 32)};
    return std::mt19937_64(seq);
}

void add_noise(Eigen::RowVectorXd& row, double sigma, std::uint64_t seed,
               std::uint64_t column) {
    if (sigma == 0.0) {
        return;
    }
    auto rng = column_stream(seed, column);
    std::normal_distribution<double> noise(0.0, sigma);
    for (Eigen::Index j = 0; j < row.size(); ++j) {
        row(j) += noise(rng);
    }
}

void check_grid(const Eigen::VectorXd& grid, const char* name) {
    SpectroTrace probe;
    probe.axis = grid;
    probe.values = Eigen::VectorXd::Zero(grid.size());
    try {
        probe.validate();
    } catch (const DomainError& e) {
        throw DomainError(std::string(name) + ": " + e.what());
    }
}

constexpr double kHybridizationWindow = 5.0;  // in units of g

double broadened_kappa(const DeviceModel& dev, std::span<const double> weights,
                       std::span<const double> onsets, const SaturationModel& sat) {
    const auto last = std::max_element(onsets.begin(), onsets.end()) - onsets.begin();
    const double unsaturated = 1.0 - weights[last];
    return dev.cavity.kappa_hz * (1.0 + (sat.broadening_factor - 1.0) * unsaturated);
}

Eigen::ArrayXd cavity_magnitude(const DeviceModel& dev, double phi, std::span<const double> weights,
                                const Eigen::ArrayXd& f, double kappa) {
    const double fb = dev.cavity.f_bare_hz;
    const double floor = dev.cavity.s21_floor;

    std::ptrdiff_t hybrid = -1;
    double closest = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < dev.qubits.size(); ++i) {
        const auto& q = dev.qubits[i];
        const double d = std::abs(qubit_frequency(q, phi) - fb);
        if (weights[i] < 0.5 && d <= kHybridizationWindow * q.g_hz && d / q.g_hz < closest) {
            closest = d / q.g_hz;
            hybrid = std::ptrdiff_t(i);
        }
    }

    if (hybrid < 0) {
        const double fr = dressed_cavity_frequency_weighted(dev, phi, weights);
        return lorentzian_dip_magnitude(f, fr, kappa, floor);
    }

    double pulled = fb;
    for (std::size_t i = 0; i < dev.qubits.size(); ++i) {
        if (std::ptrdiff_t(i) == hybrid || weights[i] >= 1.0) {
            continue;
        }
        const auto& q = dev.qubits[i];
        pulled -= (1.0 - weights[i]) * dispersive_shift(q.g_hz, qubit_frequency(q, phi), fb);
    }
    const auto& q = dev.qubits[std::size_t(hybrid)];
    const auto pair = hybridized_frequencies(qubit_frequency(q, phi), pulled, q.g_hz);
    return lorentzian_dip_magnitude(f, pair.lower, kappa, floor) *
           lorentzian_dip_magnitude(f, pair.upper, kappa, floor);
}

}  // namespace

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

double photon_number(const DeviceModel& dev, double power_dbm) {
    return std::pow(10.0, (power_dbm - dev.power_ref_dbm) / 10.0);
}

double dressed_cavity_frequency_weighted(const DeviceModel& dev, double phi,
                                         std::span<const double> weights) {
    if (weights.size() != dev.qubits.size()) {
        throw DomainError("one saturation weight per qubit expected");
    }
    const double fb = dev.cavity.f_bare_hz;
    double fr = fb;
    for (std::size_t i = 0; i < dev.qubits.size(); ++i) {
        if (weights[i] >= 1.0) {
            continue;
        }
        const auto& q = dev.qubits[i];
        const double fq = qubit_frequency(q, phi);
        if (fq == fb) {
            throw DomainError("qubit '" + q.label +
                              "' is resonant with the cavity; use the hybridized frequencies");
        }
        fr -= (1.0 - weights[i]) * dispersive_shift(q.g_hz, fq, fb);
    }
    return fr;
}

double dressed_cavity_frequency(const DeviceModel& dev, double phi, std::span<const bool> saturated) {
    std::vector<double> weights(saturated.size());
    std::transform(saturated.begin(), saturated.end(), weights.begin(),
                   [](bool s) { return s ? 1.0 : 0.0; });
    return dressed_cavity_frequency_weighted(dev, phi, weights);
}

std::vector<double> saturation_onsets_dbm(const DeviceModel& dev, double phi) {
    std::vector<double> onsets;
    onsets.reserve(dev.qubits.size());
    for (const auto& q : dev.qubits) {
        const double ncrit = critical_photon_number(q.g_hz, qubit_frequency(q, phi), dev.cavity.f_bare_hz);
        onsets.push_back(ncrit > 0.0 ? dev.power_ref_dbm + 10.0 * std::log10(ncrit)
                                     : -std::numeric_limits<double>::infinity());
    }
    return onsets;
}

std::vector<double> saturation_weights(const DeviceModel& dev, double phi, double power_dbm,
                                       const SaturationModel& sat) {
    std::vector<double> weights;
    for (double onset : saturation_onsets_dbm(dev, phi)) {
        if (std::isinf(onset)) {
            weights.push_back(1.0);
            continue;
        }
        const double x = (power_dbm - onset) / sat.transition_width_db;
        weights.push_back(1.0 / (1.0 + std::exp(-x)));
    }
    return weights;
}

SpectroMap flux_map(const DeviceModel& dev, const Eigen::VectorXd& phi_grid,
                    const Eigen::VectorXd& f_grid, const DriveConfig& drive,
                    const std::optional<SaturationModel>& sat) {
    dev.validate();
    drive.validate();
    check_grid(phi_grid, "flux grid");
    check_grid(f_grid, "frequency grid");
    if (sat) {
        sat->validate();
    }

    SpectroMap map;
    map.x_kind = MapAxis::flux;
    map.x_axis = phi_grid;
    map.y_axis = f_grid;
    map.values.resize(phi_grid.size(), f_grid.size());

    const Eigen::ArrayXd f = f_grid.array();
    for (Eigen::Index i = 0; i < phi_grid.size(); ++i) {
        const double phi = phi_grid(i);
        std::vector<double> weights(dev.qubits.size(), 0.0);
        double kappa = dev.cavity.kappa_hz;
        if (sat) {
            weights = saturation_weights(dev, phi, drive.readout_power_dbm, *sat);
            kappa = broadened_kappa(dev, weights, saturation_onsets_dbm(dev, phi), *sat);
        }
        Eigen::RowVectorXd row = 20.0 * cavity_magnitude(dev, phi, weights, f, kappa).log10().transpose();
        add_noise(row, drive.noise_sigma_db, drive.seed, std::uint64_t(i));
        map.values.row(i) = row;
    }
    return map;
}

SpectroMap power_map(const DeviceModel& dev, double phi, const Eigen::VectorXd& power_grid_dbm,
                     const Eigen::VectorXd& f_grid, const SaturationModel& sat,
                     const DriveConfig& drive) {
    dev.validate();
    drive.validate();
    sat.validate();
    check_grid(power_grid_dbm, "power grid");
    check_grid(f_grid, "frequency grid");

    SpectroMap map;
    map.x_kind = MapAxis::power;
    map.x_axis = power_grid_dbm;
    map.y_axis = f_grid;
    map.values.resize(power_grid_dbm.size(), f_grid.size());

    const auto onsets = saturation_onsets_dbm(dev, phi);
    const Eigen::ArrayXd f = f_grid.array();
    for (Eigen::Index i = 0; i < power_grid_dbm.size(); ++i) {
        const auto weights = saturation_weights(dev, phi, power_grid_dbm(i), sat);
        const double kappa = broadened_kappa(dev, weights, onsets, sat);
        const double fr = dressed_cavity_frequency_weighted(dev, phi, weights);
        Eigen::RowVectorXd row = lorentzian_s21(f, fr, kappa, dev.cavity.s21_floor).transpose();
        add_noise(row, drive.noise_sigma_db, drive.seed, std::uint64_t(i));
        map.values.row(i) = row;
    }
    return map;
}

double two_tone_fwhm(const QubitModel& q, double phi, std::optional<double> drive_power_dbm,
                     const TwoToneModel& model) {
    if (!q.t1_s || !q.t2_star_s) {
        throw DomainError("qubit '" + q.label + "' needs t1 and t2_star for two-tone spectra");
    }
    const double t1 = *q.t1_s;
    const double t2 = *q.t2_star_s;
    const double power_mw = drive_power_dbm ? dbm_to_mw(*drive_power_dbm) : 0.0;
    const double rate_sq = 1.0 / (t2 * t2) + model.beta * power_mw * t1 / t2;
    // FWHM = 2 HWHM = 2 sqrt(rate_sq) / (2 pi)
    const double base = std::sqrt(rate_sq) / kPi<double>;
    if (model.flux_noise_amplitude <= 0.0) {
        return base;
    }
    const double flux = std::abs(dfq_dphi(q, phi)) * model.flux_noise_amplitude * std::sqrt(std::log(2.0));
    return std::hypot(base, flux);
}

SpectroMap two_tone_map(const DeviceModel& dev, const Eigen::VectorXd& phi_grid,
                        const Eigen::VectorXd& drive_f_grid, const DriveConfig& drive,
                        const TwoToneModel& model) {
    dev.validate();
    drive.validate();
    model.validate();
    check_grid(phi_grid, "flux grid");
    check_grid(drive_f_grid, "drive frequency grid");
    if (model.qubit >= dev.qubits.size()) {
        throw DomainError("two-tone qubit index out of range");
    }
    const QubitModel& q = dev.qubits[model.qubit];

    SpectroMap map;
    map.x_kind = MapAxis::flux;
    map.x_axis = phi_grid;
    map.y_axis = drive_f_grid;
    map.values.resize(phi_grid.size(), drive_f_grid.size());

    const Eigen::ArrayXd f = drive_f_grid.array();
    for (Eigen::Index i = 0; i < phi_grid.size(); ++i) {
        const double phi = phi_grid(i);
        const double center = qubit_frequency(q, phi);
        const double half = two_tone_fwhm(q, phi, drive.drive_power_dbm, model) / 2.0;
        const Eigen::ArrayXd weight = (half * half) / ((f - center).square() + half * half);
        Eigen::RowVectorXd row = (20.0 * (1.0 + model.peak_height * weight).log10()).transpose();
        add_noise(row, drive.noise_sigma_db, drive.seed, std::uint64_t(i));
        map.values.row(i) = row;
    }
    return map;
}

Eigen::VectorXd t1_trace(double t1_s, double amplitude, const Eigen::VectorXd& delay_grid,
                         double noise_sigma, std::uint64_t seed) {
    if (!(t1_s > 0.0) || !std::isfinite(t1_s)) {
        throw DomainError("t1 must be positive");
    }
    if (!(noise_sigma >= 0.0)) {
        throw DomainError("noise sigma must be non-negative");
    }
    check_grid(delay_grid, "delay grid");
    Eigen::VectorXd out = amplitude * (-delay_grid.array() / t1_s).exp();
    if (noise_sigma > 0.0) {
        auto rng = column_stream(seed, 0);
        std::normal_distribution<double> noise(0.0, noise_sigma);
        for (Eigen::Index i = 0; i < out.size(); ++i) {
            out(i) += noise(rng);
        }
    }
    return out;
}

}  // namespace cqedlab
