#include "cqedlab/core/device.hpp"

#include <cmath>
#include <set>

#include "cqedlab/core/errors.hpp"
#include "cqedlab/core/flux.hpp"

namespace cqedlab {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) {
        throw DomainError(what);
    }
}

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

QubitModel QubitModel::squid(std::string label, double fq_max_hz, double g_hz) {
    QubitModel q;
    q.label = std::move(label);
    q.kind = QubitKind::squid;
    q.frequency_hz = fq_max_hz;
    q.g_hz = g_hz;
    return q;
}

QubitModel QubitModel::fixed(std::string label, double fq_hz, double g_hz) {
    QubitModel q = squid(std::move(label), fq_hz, g_hz);
    q.kind = QubitKind::fixed;
    return q;
}

void QubitModel::validate() const {
    require(positive_finite(g_hz), "qubit '" + label + "': g must be positive");
    require(positive_finite(frequency_hz), "qubit '" + label + "': frequency must be positive");
    if (t1_s) {
        require(positive_finite(*t1_s), "qubit '" + label + "': t1 must be positive");
    }
    if (t2_star_s) {
        require(positive_finite(*t2_star_s), "qubit '" + label + "': t2_star must be positive");
    }
    if (t1_s && t2_star_s) {
        require(*t2_star_s <= 2.0 * *t1_s, "qubit '" + label + "': t2_star must not exceed 2*t1");
    }
    for (const auto& opt : {ej_over_h_hz, ec_over_h_hz, junction_width_um}) {
        if (opt) {
            require(positive_finite(*opt), "qubit '" + label + "': energies and widths must be positive");
        }
    }
}

void CavityModel::validate() const {
    require(positive_finite(f_bare_hz), "cavity: f_bare must be positive");
    require(positive_finite(kappa_hz), "cavity: kappa must be positive");
    require(std::isfinite(s21_floor) && s21_floor > 0.0 && s21_floor <= 1.0,
            "cavity: s21_floor must lie in (0, 1]");
}

void DeviceModel::validate() const {
    cavity.validate();
    require(!qubits.empty() && qubits.size() <= 2, "device: expected one or two qubits");
    std::set<std::string> labels;
    for (const auto& q : qubits) {
        q.validate();
        require(labels.insert(q.label).second, "device: duplicate qubit label '" + q.label + "'");
    }
    require(std::isfinite(power_ref_dbm), "device: power_ref_dbm must be finite");
}

double qubit_frequency(const QubitModel& q, double phi) {
    if (q.kind == QubitKind::fixed) {
        return q.frequency_hz;
    }
    return squid_frequency(q.frequency_hz, phi);
}

Eigen::ArrayXd qubit_frequency(const QubitModel& q, const Eigen::ArrayXd& phi) {
    if (q.kind == QubitKind::fixed) {
        return Eigen::ArrayXd::Constant(phi.size(), q.frequency_hz);
    }
    return squid_frequency(q.frequency_hz, phi);
}

double dfq_dphi(const QubitModel& q, double phi) {
    if (q.kind == QubitKind::fixed) {
        return 0.0;
    }
    return squid_frequency_slope(q.frequency_hz, phi);
}

}  // namespace cqedlab
