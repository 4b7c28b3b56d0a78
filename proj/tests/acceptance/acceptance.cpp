// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cqedlab/core/device.hpp"
#include "cqedlab/core/transmon.hpp"
#include "cqedlab/fit/fitters.hpp"
#include "cqedlab/fit/ridge.hpp"
#include "cqedlab/io/json_io.hpp"
#include "cqedlab/jc/diagonalize.hpp"
#include "cqedlab/jc/hybridization.hpp"
#include "cqedlab/pipeline/commands.hpp"
#include "cqedlab/pipeline/report.hpp"
#include "cqedlab/pipeline/sim_config.hpp"
#include "cqedlab/spectro/lineshape.hpp"
#include "cqedlab/spectro/simulate.hpp"

using namespace cqedlab;
namespace fs = std::filesystem;

namespace {

const fs::path kConfigs = fs::path(CQEDLAB_SOURCE_DIR) / "configs";

struct Outcome {
    bool pass = true;
    std::string detail;

    // records |value - target| <= tol; values in display units
    void near(const char* what, double value, double target, double tol, const char* unit) {
        const bool ok = std::isfinite(value) && std::abs(value - target) <= tol;
        pass = pass && ok;
        char buf[200];
        std::snprintf(buf, sizeof buf, "%s%s %.6g %s (want %.6g +- %.3g)%s", detail.empty() ? "" : "; ", what, value,
                      unit, target, tol, ok ? "" : " <-");
        detail += buf;
    }
    void near_rel(const char* what, double value, double target, double rel, const char* unit) {
        near(what, value, target, rel * std::abs(target), unit);
    }
    void check(const char* what, bool ok) {
        pass = pass && ok;
        detail += std::string(detail.empty() ? "" : "; ") + what + (ok ? " ok" : " FAILED");
    }
};

DeviceModel load_device(const char* file) {
    std::ifstream in(kConfigs / file);
    return device_from_json(Json::parse(in));
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

constexpr double MHz = 1e6, GHz = 1e9, ns = 1e-9;

// device 1 cooldowns: chi, fq_max, cavity
constexpr std::array<double, 4> kD1Chi{6.15e6, 26.4e6, -9.92e6, -3.1e6};
constexpr std::array<double, 4> kD1FqMax{8.068e9, 6.438e9, 5.8e9, 4.33e9};
constexpr std::array<double, 4> kD1Fb{6.059e9, 6.0558e9, 6.8e9, 6.8e9};
// device 2 cooldowns: second (SQUID) and first (fixed) shifts, cavity
constexpr std::array<double, 4> kD2Second{1.28e6, 3.72e6, 3.4e6, 4.6e6};
constexpr std::array<double, 4> kD2First{2.25e6, -3.59e6, -1.6e6, -3.32e6};
constexpr std::array<double, 4> kD2Fb{6.0545e9, 6.8e9, 6.059e9, 6.059e9};

Outcome c1() {
    Outcome o;
    o.near("fq_max", fq_from_shift(26.4e6, 100.5e6, 6.0558e9) / GHz, 6.438, 0.002, "GHz");
    return o;
}

Outcome c2() {
    Outcome o;
    const std::array<double, 4> want{111.3, 100.5, 99.98, 87.54};
    const char* names[] = {"cd1 g", "cd2 g", "cd3 g", "cd4 g"};
    for (std::size_t i = 0; i < 4; ++i) {
        o.near_rel(names[i], g_from_shift(kD1Chi[i], kD1FqMax[i], kD1Fb[i]) / MHz, want[i], 0.01, "MHz");
    }
    return o;
}

Outcome c3() {
    Outcome o;
    const double fb = 6.0558e9, g = 100.5e6;
    std::mt19937_64 rng(7);
    std::normal_distribution<double> noise(0.0, 1e6);
    BranchData d;
    for (int i = -12; i <= 12; ++i) {
        const double fq = fb + 25e6 * i;
        d.points.push_back({fq, rabi_splitting(fq, fb, g) + noise(rng)});
    }
    const FitResult r = fit_avoided_crossing(d, fb);
    o.near("g", r.param("g") / MHz, 100.5, 2.0, "MHz");
    o.near_rel("min splitting", 2.0 * r.param("g") / MHz, 201.0, 0.02, "MHz");
    return o;
}

Outcome c4() {
    Outcome o;
    const DeviceModel dev = load_device("device1_cd2.json");
    const bool unsat[] = {false};
    o.near("fr", dressed_cavity_frequency(dev, 0.0, unsat) / GHz, 6.02937, 0.5e-3, "GHz");
    return o;
}

Outcome c5() {
    Outcome o;
    o.near_rel("T2*(64.6 MHz)", t2_lower_bound_from_fwhm(64.6e6) / ns, 4.927, 0.005, "ns");
    o.near_rel("T2*(743.7 MHz)", t2_lower_bound_from_fwhm(743.7e6) / ns, 0.428, 0.005, "ns");
    o.near_rel("T2*(18.05 MHz)", t2_lower_bound_from_fwhm(18.05e6) / ns, 17.63, 0.005, "ns");
    return o;
}

Outcome c6() {
    Outcome o;
    const Eigen::VectorXd delays = Eigen::VectorXd::LinSpaced(401, 0.0, 200e-9);
    const Eigen::VectorXd a = t1_trace(48e-9, 1.0, delays, 0.02, 11);
    o.near("T1", fit_exponential_decay(delays, a).param("t1") / ns, 48.0, 1.0, "ns");
    return o;
}

Outcome c7() {
    Outcome o;
    const std::array<double, 4> want{13.86, 9.48, 9.00, 8.23};
    const char* names[] = {"cd1 fq_max", "cd2 fq_max", "cd3 fq_max", "cd4 fq_max"};
    for (std::size_t i = 0; i < 4; ++i) {
        o.near_rel(names[i], fq_from_shift(kD2Second[i], 100e6, kD2Fb[i]) / GHz, want[i], 0.01, "GHz");
    }
    return o;
}

Outcome c8() {
    Outcome o;
    const std::array<double, 4> want{8.82, 5.059, 2.171, 4.174};
    const char* names[] = {"cd1 fq", "cd2 fq", "cd3 fq", "cd4 fq"};
    for (std::size_t i = 0; i < 4; ++i) {
        o.near_rel(names[i], fq_from_shift(kD2First[i], 78.9e6, kD2Fb[i]) / GHz, want[i], 0.01, "GHz");
    }
    return o;
}

Outcome c9() {
    Outcome o;
    const std::array<double, 2> want{4.846, 1.449};
    const char* names[] = {"cd1 ratio", "cd2 ratio"};
    for (std::size_t i = 0; i < 2; ++i) {
        const double fq_s = fq_from_shift(kD2Second[i], 100e6, kD2Fb[i]);
        const double fq_f = fq_from_shift(kD2First[i], 78.9e6, kD2Fb[i]);
        const double ratio =
            critical_photon_number(100e6, fq_s, kD2Fb[i]) / critical_photon_number(78.9e6, fq_f, kD2Fb[i]);
        o.near_rel(names[i], ratio, want[i], 0.05, "");
    }

    std::ifstream in(kConfigs / "power_map_device2_cd1.json");
    const SimConfig cfg = sim_config_from_json(Json::parse(in), kConfigs);
    const auto onsets = saturation_onsets_dbm(cfg.device, cfg.flux_phi);
    o.check("SQUID onset above fixed onset", onsets.at(0) > onsets.at(1));
    const SpectroMap map =
        power_map(cfg.device, cfg.flux_phi, cfg.power_grid_dbm, cfg.freq_grid, cfg.saturation.value_or(SaturationModel{}), cfg.drive);
    const auto steps = detect_plateau_transitions(extract_dip_ridge(map));
    o.check("two transitions in the power map", steps.size() == 2);
    if (steps.size() == 2) {
        o.near("first step (fixed)", steps[0], onsets[1], 1.0, "dBm");
        o.near("second step (SQUID)", steps[1], onsets[0], 1.0, "dBm");
    }
    return o;
}

Outcome c10() {
    Outcome o;
    o.near("EC", charging_energy(32.9e-15) / MHz, 588.0, 1.0, "MHz");
    o.near("sqrt(3.5) scaling", scale_fq_by_design(8.068e9, 3.5, 1.0) / GHz, 15.1, 0.05, "GHz");
    o.near("sqrt(2.0925) scaling", scale_fq_by_design(8.068e9, 0.75, 2.79) / GHz, 11.66, 0.02, "GHz");
    return o;
}

Outcome c11() {
    Outcome o;
    o.near("g", g_from_shift(2.25e6, 10.86e9, 6.0545e9) / MHz, 104.0, 1.0, "MHz");
    return o;
}

Outcome c12() {
    Outcome o;
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> fq(2e9, 12e9), fb(4e9, 8e9), gf(0.0, 0.099);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double b = fb(rng), q = fq(rng), g = gf(rng) * b;
        const JcSpectrum s = jc_diagonalize(q, b, g, 3);
        const auto p = hybridized_frequencies(q, b, g);
        worst = std::max({worst, std::abs(s.manifolds[1](0) / p.lower - 1.0), std::abs(s.manifolds[1](1) / p.upper - 1.0)});
    }
    o.near("max rel eigenvalue error", worst, 0.0, 1e-12, "");

    std::uniform_real_distribution<double> det(0.3e9, 3e9), ratio(0.001, 0.05), sign(-1.0, 1.0);
    double worst_pull = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double b = 6.5e9;
        const double d = det(rng) * (sign(rng) < 0 ? -1.0 : 1.0);
        const double g = ratio(rng) * std::abs(d);
        const double chi = dispersive_shift(g, b + d, b);
        worst_pull = std::max(worst_pull, std::abs(-jc_diagonalize(b + d, b, g, 3).dressed_cavity_pull() / chi - 1.0));
    }
    o.near("max rel pull vs chi", worst_pull, 0.0, 0.01, "");
    return o;
}

Outcome c13() {
    Outcome o;
    const double tol = 1e-4;
    auto rel = [](double a, double b) { return std::abs(a / b - 1.0); };

    {  // cavity dip
        const double fr = 6.02937e9, kappa = 2.6e6;
        SpectroTrace t;
        t.axis = Eigen::VectorXd::LinSpaced(201, fr - 5 * kappa, fr + 5 * kappa);
        t.values = t.axis.unaryExpr([&](double f) { return lorentzian_s21(f, fr, kappa, 0.1); });
        const FitResult r = fit_lorentzian(t, Polarity::dip);
        o.near("dip", std::max({rel(r.param("fr"), fr), rel(r.param("kappa"), kappa), rel(r.param("floor"), 0.1)}),
               0.0, tol, "rel");
    }
    {  // two-tone column -> qubit peak
        DeviceModel dev = load_device("device1_cd1.json");
        TwoToneModel m;
        m.beta = 2.21e15;
        m.peak_height = 0.5;
        DriveConfig drive;
        drive.drive_power_dbm = 8.0;
        const Eigen::VectorXd phi = Eigen::VectorXd::Constant(1, 0.1);
        const SpectroMap map = two_tone_map(dev, phi, Eigen::VectorXd::LinSpaced(801, 6.5e9, 8.5e9), drive, m);
        const FitResult r = fit_lorentzian(map.column(0), Polarity::peak);
        const QubitModel& q = dev.qubits[0];
        o.near("two-tone peak",
               std::max(rel(r.param("fr"), qubit_frequency(q, 0.1)), rel(r.param("kappa"), two_tone_fwhm(q, 0.1, 8.0, m))),
               0.0, tol, "rel");
    }
    {  // decay
        const Eigen::VectorXd t = Eigen::VectorXd::LinSpaced(401, 0.0, 200e-9);
        o.near("decay", rel(fit_exponential_decay(t, t1_trace(48e-9, 1.0, t, 0.0, 0)).param("t1"), 48e-9), 0.0, tol,
               "rel");
    }
    {  // splittings
        BranchData d;
        for (int i = -7; i <= 7; ++i) d.points.push_back({6.0558e9 + 40e6 * i, rabi_splitting(6.0558e9 + 40e6 * i, 6.0558e9, 100.5e6)});
        o.near("splitting", rel(fit_avoided_crossing(d, 6.0558e9).param("g"), 100.5e6), 0.0, tol, "rel");
    }
    {  // power broadening and flux noise
        QubitModel q = load_device("device1_cd1.json").qubits[0];
        TwoToneModel m;
        m.beta = 2.21e15;
        LinewidthSeries s;
        s.axis = LinewidthSeries::Axis::power_dbm;
        for (int i = 0; i < 8; ++i) s.points.push_back({-30.0 + 3 * i, two_tone_fwhm(q, 0.0, -30.0 + 3 * i, m)});
        const FitResult r = fit_power_broadening(s, *q.t1_s);
        o.near("power broadening", std::max(rel(r.param("t2_star"), *q.t2_star_s), rel(r.param("beta"), 2.21e15)), 0.0,
               tol, "rel");

        TwoToneModel fn;
        fn.flux_noise_amplitude = 0.1;
        q.t2_star_s.reset();
        q.t1_s.reset();
        LinewidthSeries f;
        for (int i = -10; i <= 10; ++i) {
            if (i == 0) continue;  // zero width at the sweet spot is not a valid linewidth
            const double phi = 0.005 * i;
            f.points.push_back({phi, std::abs(dfq_dphi(q, phi)) * 0.1 * std::sqrt(std::log(2.0))});
        }
        o.near("flux noise", rel(fit_flux_noise_amplitude(f, q, 0.05).param("A"), 0.1), 0.0, tol, "rel");
    }
    {  // flux map -> ridge
        DeviceModel dev = load_device("device1_cd1.json");
        const Eigen::VectorXd phi = Eigen::VectorXd::LinSpaced(21, -0.2, 0.2);
        const Ridge ridge = extract_dip_ridge(flux_map(dev, phi, Eigen::VectorXd::LinSpaced(1401, 6.0e9, 6.07e9), DriveConfig{}));
        const bool unsat[] = {false};
        double worst = 0.0;
        for (std::size_t i = 0; i < ridge.x.size(); ++i) {
            worst = std::max(worst, rel(ridge.fr_hz[i], dressed_cavity_frequency(dev, ridge.x[i], unsat)));
        }
        o.check("ridge covers every column", ridge.failed_columns == 0 && ridge.x.size() == 21);
        o.near("ridge", worst, 0.0, tol, "rel");
    }
    {  // byte determinism of every generator
        const fs::path dir = fs::temp_directory_path() / "cqedlab_acceptance";
        fs::remove_all(dir);
        const std::array<std::pair<const char*, const char*>, 4> runs{{{"flux-map", "flux_map_device1_cd2.json"},
                                                                      {"power-map", "power_map_device2_cd1.json"},
                                                                      {"two-tone", "two_tone_device1_cd1.json"},
                                                                      {"t1-trace", "t1_trace.json"}}};
        bool same = true;
        for (const auto& [kind, cfg] : runs) {
            std::ostringstream out, err;
            for (const char* sub : {"a", "b"}) {
                same = same && cmd_simulate({kind, kConfigs / cfg, dir / sub, false, std::nullopt}, out, err) == exit_code::ok;
            }
            const std::string csv = std::string(kind) + ".csv";
            same = same && slurp(dir / "a" / csv) == slurp(dir / "b" / csv) && !slurp(dir / "a" / csv).empty();
        }
        fs::remove_all(dir);
        o.check("same seed gives identical bytes", same);
    }
    return o;
}

Outcome c14() {
    Outcome o;
    QubitModel q = QubitModel::squid("Q1", 8.068e9, 111.3e6);
    const double root_ln2 = std::sqrt(std::log(2.0));
    {
        std::mt19937_64 rng(14);
        std::normal_distribution<double> noise(0.0, 0.02);
        LinewidthSeries s;
        for (int i = -10; i <= 10; ++i) {
            if (i == 0) continue;
            const double phi = 0.005 * i;
            s.points.push_back({phi, std::abs(dfq_dphi(q, phi)) * 0.1 * root_ln2 * (1.0 + noise(rng))});
        }
        o.near_rel("synthetic A", fit_flux_noise_amplitude(s, q, 0.05).param("A"), 0.1, 0.10, "Phi0");
    }
    {
        // sweet-spot width 64.6 MHz, broadening fixed by 743.7 MHz at 0.32 Phi0
        const double w0 = 64.6e6, w_end = 743.7e6;
        const double a_end = std::sqrt(w_end * w_end - w0 * w0) / (std::abs(dfq_dphi(q, 0.32)) * root_ln2);
        LinewidthSeries s;
        for (int i = -10; i <= 10; ++i) {
            const double phi = 0.005 * i;
            s.points.push_back({phi, std::hypot(w0, std::abs(dfq_dphi(q, phi)) * a_end * root_ln2)});
        }
        const double a = fit_flux_noise_amplitude(s, q, 0.05).param("A");
        o.near("log10 A from endpoint-constrained data", std::log10(a), -1.0, 0.5, "");
    }
    return o;
}

Outcome c15() {
    Outcome o;
    std::ostringstream out, err;
    const int code = cmd_report_paper_numbers({}, out, err);
    const auto rows = paper_number_rows();
    const bool all = std::all_of(rows.begin(), rows.end(), [](const ReproRow& r) { return r.pass; });
    o.check("exit 0", code == exit_code::ok);
    o.check(("all " + std::to_string(rows.size()) + " rows pass").c_str(), all);
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"fq_max inversion from the dispersive shift", c1},
        {"coupling per device-1 cooldown", c2},
        {"vacuum Rabi fit", c3},
        {"dressed low-power resonance", c4},
        {"T2* lower bounds", c5},
        {"T1 fit", c6},
        {"device-2 SQUID fq_max inference", c7},
        {"device-2 fixed-qubit fq inference", c8},
        {"critical photon number ratios and onset order", c9},
        {"charging energy and design scaling", c10},
        {"device-2 two-tone coupling", c11},
        {"JC oracle equivalence", c12},
        {"simulate-fit round trips and determinism", c13},
        {"flux-noise amplitude", c14},
        {"paper-numbers report", c15},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        failed += o.pass ? 0 : 1;
        std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    }
    std::printf("%zu/%zu criteria pass\n", criteria.size() - std::size_t(failed), criteria.size());
    return failed == 0 ? 0 : 1;
}
