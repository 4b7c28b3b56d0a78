#pragma once

#include <cmath>

#include <Eigen/Core>

#include "cqedlab/core/constants.hpp"
#include "cqedlab/core/errors.hpp"

namespace cqedlab {

// Flux-tunable transmon with a symmetric SQUID:
//   fq(phi) = fq_max * sqrt(|cos(pi * phi)|),  phi in units of the flux quantum.
//
// phi is first reduced to r in [-1/2, 1/2] (exact in floating point), and
// |cos(pi r)| is evaluated as sin(pi (1/2 - |r|)) so the zeros at half-integer
// flux are exact and the result is exactly even.

namespace detail {

template <typename Scalar>
Scalar reduced_flux(Scalar phi) {
    using std::remainder;
    return remainder(phi, Scalar(1));
}

template <typename Scalar>
Scalar abs_cos_pi(Scalar reduced) {
    using std::abs;
    using std::sin;
    return sin(kPi<Scalar> * (Scalar(0.5) - abs(reduced)));
}

}  // namespace detail

template <typename Scalar>
Scalar squid_frequency(Scalar fq_max, Scalar phi) {
    using std::sqrt;
    return fq_max * sqrt(detail::abs_cos_pi(detail::reduced_flux(phi)));
}

// d fq / d phi in Hz per flux quantum. Singular where fq = 0.
template <typename Scalar>
Scalar squid_frequency_slope(Scalar fq_max, Scalar phi) {
    using std::abs;
    using std::sin;
    using std::sqrt;
    const Scalar r = detail::reduced_flux(phi);
    if (abs(Scalar(0.5) - abs(r)) < Scalar(1e-12)) {
        throw DomainError("flux derivative is singular at half-integer flux (fq = 0)");
    }
    const Scalar c = detail::abs_cos_pi(r);
    return -fq_max * (kPi<Scalar> / Scalar(2)) * sin(kPi<Scalar> * r) / sqrt(c);
}

inline Eigen::ArrayXd squid_frequency(double fq_max, const Eigen::ArrayXd& phi) {
    return phi.unaryExpr([fq_max](double p) { return squid_frequency(fq_max, p); });
}

inline Eigen::ArrayXd squid_frequency_slope(double fq_max, const Eigen::ArrayXd& phi) {
    return phi.unaryExpr([fq_max](double p) { return squid_frequency_slope(fq_max, p); });
}

}  // namespace cqedlab
