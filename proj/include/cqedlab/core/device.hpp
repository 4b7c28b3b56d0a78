#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace cqedlab {

enum class QubitKind { squid, fixed };

// All frequency-like fields are linear frequencies in Hz (the "X/2pi" values).
struct QubitModel {
    std::string label;
    QubitKind kind = QubitKind::squid;
    double frequency_hz = 0.0;  // fq_max for a SQUID qubit, fq for a fixed one
    double g_hz = 0.0;
    std::optional<double> t1_s;
    std::optional<double> t2_star_s;
    std::optional<double> ej_over_h_hz;
    std::optional<double> ec_over_h_hz;
    std::optional<double> junction_width_um;

    static QubitModel squid(std::string label, double fq_max_hz, double g_hz);
    static QubitModel fixed(std::string label, double fq_hz, double g_hz);

    // Throws DomainError on a violated invariant.
    void validate() const;
};

struct CavityModel {
    double f_bare_hz = 0.0;
    double kappa_hz = 0.0;
    double s21_floor = 0.1;

    void validate() const;
};

struct DeviceModel {
    CavityModel cavity;
    std::vector<QubitModel> qubits;
    double power_ref_dbm = -40.0;  // readout power giving one photon on average

    void validate() const;
};

double qubit_frequency(const QubitModel& q, double phi);
Eigen::ArrayXd qubit_frequency(const QubitModel& q, const Eigen::ArrayXd& phi);

// Zero for a fixed qubit.
double dfq_dphi(const QubitModel& q, double phi);

}  // namespace cqedlab
