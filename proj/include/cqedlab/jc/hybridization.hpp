#pragma once

#include <algorithm>
#include <cmath>

#include "cqedlab/core/errors.hpp"

namespace cqedlab {

// Closed-form single-excitation physics of a qubit coupled to one cavity mode.
// Every frequency is linear (Hz); g is the "g/2pi" coupling.

template <typename Scalar>
struct HybridPair {
    Scalar lower;
    Scalar upper;

    Scalar splitting() const { return upper - lower; }
};

// f+- = [fq + fb +- sqrt((fq - fb)^2 + 4 g^2)] / 2.
//
// Evaluated as max/min of the bare frequencies pushed apart by
// 2 g^2 / (sqrt(d^2 + 4 g^2) + |d|), which is the same expression without the
// cancellation in the lower branch, and keeps lower <= min(fq, fb) exact.
template <typename Scalar>
HybridPair<Scalar> hybridized_frequencies(Scalar fq, Scalar f_bare, Scalar g) {
    using std::abs;
    using std::hypot;
    if (!(g > Scalar(0))) {
        throw DomainError("coupling g must be positive");
    }
    const Scalar d = abs(fq - f_bare);
    const Scalar push = Scalar(2) * g * g / (hypot(d, Scalar(2) * g) + d);
    return {std::min(fq, f_bare) - push, std::max(fq, f_bare) + push};
}

// f+ - f- = sqrt((fq - fb)^2 + 4 g^2).
template <typename Scalar>
Scalar rabi_splitting(Scalar fq, Scalar f_bare, Scalar g) {
    using std::hypot;
    if (!(g > Scalar(0))) {
        throw DomainError("coupling g must be positive");
    }
    return hypot(fq - f_bare, Scalar(2) * g);
}

// chi = g^2 / (fq - fb). Positive when the qubit sits above the cavity, in which
// case the low-power resonance is pulled down to fb - chi.
template <typename Scalar>
Scalar dispersive_shift(Scalar g, Scalar fq, Scalar f_bare) {
    const Scalar detuning = fq - f_bare;
    if (detuning == Scalar(0)) {
        throw DomainError("dispersive shift undefined at zero detuning");
    }
    return g * g / detuning;
}

template <typename Scalar>
Scalar fq_from_shift(Scalar chi, Scalar g, Scalar f_bare) {
    if (chi == Scalar(0)) {
        throw DomainError("zero dispersive shift: qubit frequency is unidentifiable");
    }
    if (!(g > Scalar(0))) {
        throw DomainError("coupling g must be positive");
    }
    return f_bare + g * g / chi;
}

template <typename Scalar>
Scalar g_from_shift(Scalar chi, Scalar fq, Scalar f_bare) {
    using std::sqrt;
    const Scalar detuning = fq - f_bare;
    if (chi == Scalar(0) || detuning == Scalar(0)) {
        throw DomainError("shift and detuning must both be non-zero");
    }
    if ((chi > Scalar(0)) != (detuning > Scalar(0))) {
        throw DomainError("shift and detuning have opposite signs");
    }
    return sqrt(chi * detuning);
}

// n_crit = Delta^2 / (4 g^2).
template <typename Scalar>
Scalar critical_photon_number(Scalar g, Scalar fq, Scalar f_bare) {
    if (!(g > Scalar(0))) {
        throw DomainError("coupling g must be positive");
    }
    const Scalar detuning = fq - f_bare;
    return detuning * detuning / (Scalar(4) * g * g);
}

// Omega = g/pi in angular units, i.e. 2 g as a linear frequency.
template <typename Scalar>
Scalar strong_coupling_exchange_rate(Scalar g) {
    if (!(g > Scalar(0))) {
        throw DomainError("coupling g must be positive");
    }
    return Scalar(2) * g;
}

}  // namespace cqedlab
