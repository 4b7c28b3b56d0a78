#pragma once

#include <cmath>
#include <string>

#include "cqedlab/core/constants.hpp"
#include "cqedlab/core/errors.hpp"

namespace cqedlab {

namespace detail {
inline void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw DomainError(std::string(what) + " must be positive and finite");
    }
}
}  // namespace detail

// fq = sqrt(8 EJ EC) / h with both energies given as frequencies (E/h).
template <typename Scalar>
Scalar transmon_fq(Scalar ej_over_h, Scalar ec_over_h) {
    using std::sqrt;
    detail::require_positive(double(ej_over_h), "EJ/h");
    detail::require_positive(double(ec_over_h), "EC/h");
    return sqrt(Scalar(8) * ej_over_h * ec_over_h);
}

// EC/h = e^2 / (2 C h), in Hz.
inline double charging_energy(double capacitance_f) {
    detail::require_positive(capacitance_f, "capacitance");
    return kElementaryCharge * kElementaryCharge / (2.0 * capacitance_f * kPlanck);
}

// EJ/h = Phi0 Ic / (2 pi h), in Hz.
inline double ej_from_ic(double critical_current_a) {
    detail::require_positive(critical_current_a, "critical current");
    return kFluxQuantum * critical_current_a / (2.0 * kPi<double> * kPlanck);
}

// Rescale a reference transmon frequency by design ratios of EJ and EC.
template <typename Scalar>
Scalar scale_fq_by_design(Scalar fq_ref, Scalar ej_ratio, Scalar ec_ratio) {
    using std::sqrt;
    detail::require_positive(double(ej_ratio), "EJ ratio");
    detail::require_positive(double(ec_ratio), "EC ratio");
    return fq_ref * sqrt(ej_ratio * ec_ratio);
}

}  // namespace cqedlab
