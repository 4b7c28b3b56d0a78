#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "cqedlab/core/device.hpp"
#include "cqedlab/fit/result.hpp"
#include "cqedlab/spectro/types.hpp"

namespace cqedlab {

enum class Polarity { dip, peak };

// Extremum sample and a half-depth width estimate, used to seed line fits and to
// window multi-line columns.
struct LineEstimate {
    Eigen::Index index = 0;
    double center_hz = 0.0;
    double width_hz = 0.0;
    double amplitude = 0.0;  // extremum of |S21| - 1, linear
};

LineEstimate estimate_line(const SpectroTrace& trace, Polarity polarity);

// Fits |S21|dB = 20 log10(1 + a L(f; fr, kappa)) to the trace. Params: fr, kappa
// and floor (= 1 + a, dips) or height (= a, peaks).
FitResult fit_lorentzian(const SpectroTrace& trace, Polarity polarity);

struct BranchPoint {
    double fq_hz;
    double delta_hz;
};

struct BranchData {
    std::vector<BranchPoint> points;
};

// Fits delta(fq) = sqrt((fq - fb)^2 + 4 g^2) for g. Param: g.
FitResult fit_avoided_crossing(const BranchData& data, double f_bare_hz);

// Fits A exp(-t / T1). Params: t1, amplitude.
FitResult fit_exponential_decay(const Eigen::VectorXd& delays_s, const Eigen::VectorXd& amplitudes);

// T2* >= 1 / (2 pi HWHM) = 1 / (pi FWHM).
double t2_lower_bound_from_fwhm(double fwhm_hz);

struct LinewidthPoint {
    double coordinate;  // phi (flux quanta) or drive power (dBm)
    double fwhm_hz;
};

struct LinewidthSeries {
    enum class Axis { flux, power_dbm };
    Axis axis = Axis::flux;
    std::vector<LinewidthPoint> points;
};

// Weighted regression of (pi FWHM)^2 on linear drive power. Params: intercept,
// slope, t2_star (when the intercept is positive), beta (when t1 is given).
FitResult fit_power_broadening(const LinewidthSeries& series, std::optional<double> t1_s = std::nullopt);

// Regression through the origin of FWHM on |dfq/dphi| sqrt(ln 2) for points with
// |phi| <= phi_window. Param: A (flux quanta).
FitResult fit_flux_noise_amplitude(const LinewidthSeries& series, const QubitModel& q,
                                   double phi_window = 0.05);

}  // namespace cqedlab
