#include "cqedlab/spectro/types.hpp"

#include <cmath>

#include "cqedlab/core/errors.hpp"

namespace cqedlab {

namespace {

void check_increasing(const Eigen::VectorXd& axis, const std::string& name) {
    if (axis.size() == 0) {
        throw DomainError(name + " is empty");
    }
    if (!axis.allFinite()) {
        throw DomainError(name + " contains non-finite values");
    }
    for (Eigen::Index i = 1; i < axis.size(); ++i) {
        if (!(axis(i) > axis(i - 1))) {
            throw DomainError(name + " must be strictly increasing");
        }
    }
}

}  // namespace

void SpectroTrace::validate() const {
    check_increasing(axis, "trace axis");
    if (values.size() != axis.size()) {
        throw DomainError("trace axis and values differ in length");
    }
    if (!values.allFinite()) {
        throw DomainError("trace values must be finite");
    }
}

void SpectroMap::validate() const {
    check_increasing(x_axis, "map x axis");
    check_increasing(y_axis, "map frequency axis");
    if (values.rows() != x_axis.size() || values.cols() != y_axis.size()) {
        throw DomainError("map values do not match axis dimensions");
    }
}

SpectroTrace SpectroMap::column(Eigen::Index i) const {
    SpectroTrace t;
    t.axis = y_axis;
    t.values = values.row(i).transpose();
    t.meta[x_kind == MapAxis::flux ? "phi" : "power_dbm"] = x_axis(i);
    return t;
}

void DriveConfig::validate() const {
    if (!(noise_sigma_db >= 0.0) || !std::isfinite(noise_sigma_db)) {
        throw DomainError("noise_sigma_db must be non-negative");
    }
    if (!std::isfinite(readout_power_dbm)) {
        throw DomainError("readout power must be finite");
    }
    if (drive_power_dbm && !std::isfinite(*drive_power_dbm)) {
        throw DomainError("drive power must be finite");
    }
}

void SaturationModel::validate() const {
    if (!(transition_width_db > 0.0) || !std::isfinite(transition_width_db)) {
        throw DomainError("saturation transition width must be positive");
    }
    if (!(broadening_factor > 0.0) || !std::isfinite(broadening_factor)) {
        throw DomainError("broadening factor must be positive");
    }
}

void TwoToneModel::validate() const {
    if (!(beta >= 0.0) || !std::isfinite(beta)) {
        throw DomainError("beta must be non-negative");
    }
    if (!(flux_noise_amplitude >= 0.0) || !std::isfinite(flux_noise_amplitude)) {
        throw DomainError("flux-noise amplitude must be non-negative");
    }
    if (!(peak_height > 0.0) || !std::isfinite(peak_height)) {
        throw DomainError("peak height must be positive");
    }
}

}  // namespace cqedlab
