#pragma once

#include <cmath>

#include <Eigen/Core>

namespace cqedlab {

// Normalized Lorentzian, 1 at the center and 1/2 at f0 +- fwhm/2.
template <typename Scalar>
Scalar lorentzian_weight(Scalar f, Scalar f0, Scalar fwhm) {
    const Scalar half = fwhm / Scalar(2);
    const Scalar d = f - f0;
    return half * half / (d * d + half * half);
}

template <typename Scalar>
Scalar to_db(Scalar magnitude) {
    using std::log10;
    return Scalar(20) * log10(magnitude);
}

template <typename Scalar>
Scalar from_db(Scalar db) {
    using std::pow;
    return pow(Scalar(10), db / Scalar(20));
}

// Transmission dip: |S21| = 1 - (1 - floor) L(f), in dB.
template <typename Scalar>
Scalar lorentzian_s21(Scalar f, Scalar fr, Scalar kappa, Scalar floor) {
    return to_db(Scalar(1) - (Scalar(1) - floor) * lorentzian_weight(f, fr, kappa));
}

// Spectroscopy peak: |S21| = 1 + height L(f), in dB.
template <typename Scalar>
Scalar lorentzian_peak(Scalar f, Scalar f0, Scalar fwhm, Scalar height) {
    return to_db(Scalar(1) + height * lorentzian_weight(f, f0, fwhm));
}

// Linear-magnitude dip over a whole axis; callers multiply dips together and
// convert to dB once.
inline Eigen::ArrayXd lorentzian_dip_magnitude(const Eigen::ArrayXd& f, double fr, double kappa,
                                               double floor) {
    const double half = kappa / 2.0;
    return 1.0 - (1.0 - floor) * (half * half) / ((f - fr).square() + half * half);
}

inline Eigen::ArrayXd lorentzian_s21(const Eigen::ArrayXd& f, double fr, double kappa, double floor) {
    return 20.0 * lorentzian_dip_magnitude(f, fr, kappa, floor).log10();
}

}  // namespace cqedlab
