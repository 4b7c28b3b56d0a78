#include "cqedlab/pipeline/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

#include "cqedlab/core/errors.hpp"
#include "cqedlab/core/transmon.hpp"
#include "cqedlab/fit/fitters.hpp"
#include "cqedlab/io/schemas.hpp"
#include "cqedlab/jc/hybridization.hpp"
#include "cqedlab/spectro/simulate.hpp"

namespace cqedlab {

namespace {

constexpr double kMHz = 1e6;
constexpr double kGHz = 1e9;
constexpr double kNs = 1e-9;

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

std::string d1_source(const ReproInputs& in, int cd) {
    return fmt("device 1 cooldown %.0f: chi = %.4g MHz, fq_max = %.5g GHz, ", cd + 1, in.d1_chi_hz[cd] / kMHz,
               in.d1_fq_max_hz[cd] / kGHz) +
           fmt("fbare = %.5g GHz", in.d1_f_bare_hz[cd] / kGHz);
}

std::string d2_fbare(const ReproInputs& in, int cd) {
    // only cooldown 1 (6.0545) and the nominal 6.8 GHz cavity are quoted
    const bool assumed = cd >= 1;
    return fmt("fbare = %.5g GHz", in.d2_f_bare_hz[cd] / kGHz) + (assumed ? " (assumed)" : "");
}

}  // namespace

ReproRow make_row(std::string name, double paper, double computed, std::string unit, double tolerance,
                  std::string source) {
    ReproRow r;
    r.name = std::move(name);
    r.paper_value = paper;
    r.computed_value = computed;
    r.unit = std::move(unit);
    r.tolerance = tolerance;
    r.pass = std::isfinite(computed) && std::abs(computed - paper) <= tolerance;
    r.source = std::move(source);
    return r;
}

std::vector<ReproRow> paper_number_rows(const ReproInputs& in) {
    std::vector<ReproRow> rows;
    const double s = in.g_scale;

    // device 1: qubit frequency from the cooldown-2 shift and the Rabi coupling
    rows.push_back(make_row("d1 cd2 fq_max from chi", 6.438,
                            fq_from_shift(in.d1_chi_hz[1], s * in.d1_g_ref_hz, in.d1_f_bare_hz[1]) / kGHz, "GHz",
                            0.002, d1_source(in, 1) + fmt(", g = %.4g MHz", s * in.d1_g_ref_hz / kMHz)));

    const std::array<double, 4> g_paper{111.3, 100.5, 99.98, 87.54};
    for (int cd = 0; cd < 4; ++cd) {
        const double g =
            g_from_shift(in.d1_chi_hz[cd], in.d1_fq_max_hz[cd], in.d1_f_bare_hz[cd]) / kMHz;
        rows.push_back(make_row(fmt("d1 cd%.0f g from chi", cd + 1), g_paper[cd], g, "MHz",
                                0.01 * g_paper[cd], d1_source(in, cd)));
    }

    // synthetic avoided crossing around the cooldown-2 cavity
    {
        const double fb = in.d1_f_bare_hz[1];
        const double g = s * in.d1_g_ref_hz;
        std::mt19937_64 rng(in.rabi_seed);
        std::normal_distribution<double> noise(0.0, in.rabi_noise_hz);
        BranchData data;
        for (int i = 0; i < 25; ++i) {
            const double fq = fb - 300e6 + 25e6 * i;
            data.points.push_back({fq, rabi_splitting(fq, fb, g) + noise(rng)});
        }
        const FitResult fit = fit_avoided_crossing(data, fb);
        const double g_fit = fit.converged ? fit.param("g") : NAN;
        const std::string src = fmt("synthetic splitting, g = %.4g MHz, fbare = %.5g GHz, ", g / kMHz, fb / kGHz) +
                                fmt("noise %.3g MHz, seed %.0f", in.rabi_noise_hz / kMHz, double(in.rabi_seed));
        rows.push_back(make_row("d1 cd2 vacuum Rabi fit g", 100.5, g_fit / kMHz, "MHz", 2.0, src));
        rows.push_back(make_row("d1 cd2 minimum splitting 2g", 201.0, 2.0 * g_fit / kMHz, "MHz", 0.02 * 201.0, src));
    }

    {
        DeviceModel dev;
        dev.cavity.f_bare_hz = in.d1_f_bare_hz[1];
        dev.cavity.kappa_hz = 2.6e6;
        dev.qubits.push_back(QubitModel::squid("Q1", in.d1_fq_max_hz[1], s * in.d1_g_ref_hz));
        const bool unsaturated[] = {false};
        rows.push_back(make_row("d1 cd2 dressed low-power resonance", 6.02937,
                                dressed_cavity_frequency(dev, 0.0, unsaturated) / kGHz, "GHz", 0.0005,
                                d1_source(in, 1) + fmt(", g = %.4g MHz, phi = 0", s * in.d1_g_ref_hz / kMHz)));
    }

    const std::array<double, 3> t2_paper{4.927, 0.428, 17.63};
    const std::array<const char*, 3> t2_names{"d1 cd1 T2* bound, sweet spot", "d1 cd1 T2* bound, flux edge",
                                              "d1 cd1 T2* bound, lowest drive power"};
    for (int i = 0; i < 3; ++i) {
        rows.push_back(make_row(t2_names[i], t2_paper[i], t2_lower_bound_from_fwhm(in.fwhm_hz[i]) / kNs, "ns",
                                0.005 * t2_paper[i], fmt("FWHM = %.4g MHz", in.fwhm_hz[i] / kMHz)));
    }

    {
        const Eigen::VectorXd delays = Eigen::VectorXd::LinSpaced(401, 0.0, 200e-9);
        const Eigen::VectorXd amps = t1_trace(in.t1_s, 1.0, delays, in.t1_noise, in.t1_seed);
        const FitResult fit = fit_exponential_decay(delays, amps);
        rows.push_back(make_row("d1 T1 decay fit", 48.0, fit.converged ? fit.param("t1") / kNs : NAN, "ns", 1.0,
                                fmt("synthetic decay, T1 = %.3g ns, noise %.2g of A, seed %.0f", in.t1_s / kNs,
                                    in.t1_noise, double(in.t1_seed))));
    }

    const std::array<double, 4> squid_paper{13.86, 9.48, 9.00, 8.23};
    const std::array<double, 4> fixed_paper{8.82, 5.059, 2.171, 4.174};
    std::array<double, 4> squid_fq{};
    std::array<double, 4> fixed_fq{};
    for (int cd = 0; cd < 4; ++cd) {
        squid_fq[cd] = fq_from_shift(in.d2_second_shift_hz[cd], s * in.d2_g_squid_hz, in.d2_f_bare_hz[cd]);
        rows.push_back(make_row(fmt("d2 cd%.0f SQUID fq_max", cd + 1), squid_paper[cd], squid_fq[cd] / kGHz, "GHz",
                                0.01 * squid_paper[cd],
                                fmt("second shift %.4g MHz, g = %.4g MHz, ", in.d2_second_shift_hz[cd] / kMHz,
                                    s * in.d2_g_squid_hz / kMHz) +
                                    d2_fbare(in, cd)));
    }
    for (int cd = 0; cd < 4; ++cd) {
        fixed_fq[cd] = fq_from_shift(in.d2_first_shift_hz[cd], s * in.d2_g_fixed_hz, in.d2_f_bare_hz[cd]);
        rows.push_back(make_row(fmt("d2 cd%.0f fixed-qubit fq", cd + 1), fixed_paper[cd], fixed_fq[cd] / kGHz, "GHz",
                                0.01 * fixed_paper[cd],
                                fmt("first shift %.4g MHz, g = %.4g MHz, ", in.d2_first_shift_hz[cd] / kMHz,
                                    s * in.d2_g_fixed_hz / kMHz) +
                                    d2_fbare(in, cd)));
    }

    const std::array<double, 2> ratio_paper{4.846, 1.449};
    for (int cd = 0; cd < 2; ++cd) {
        const double fb = in.d2_f_bare_hz[cd];
        const double ratio = critical_photon_number(s * in.d2_g_squid_hz, squid_fq[cd], fb) /
                             critical_photon_number(s * in.d2_g_fixed_hz, fixed_fq[cd], fb);
        rows.push_back(make_row(fmt("d2 cd%.0f n_crit ratio SQUID/fixed", cd + 1), ratio_paper[cd], ratio, "",
                                0.05 * ratio_paper[cd], "inferred fq values above, " + d2_fbare(in, cd)));
    }

    rows.push_back(make_row("d2 fixed-qubit E_C", 588.0, charging_energy(in.d2_fixed_capacitance_f) / kMHz, "MHz",
                            1.0, fmt("C = %.3g fF", in.d2_fixed_capacitance_f * 1e15)));
    rows.push_back(make_row("d2 SQUID fq_max by junction width", 15.1,
                            scale_fq_by_design(in.fq_ref_hz, in.ej_ratio_squid, 1.0) / kGHz, "GHz", 0.05,
                            fmt("fq_ref = %.5g GHz, E_J ratio %.3g", in.fq_ref_hz / kGHz, in.ej_ratio_squid)));
    rows.push_back(make_row("d2 fixed-qubit fq by design", 11.66,
                            scale_fq_by_design(in.fq_ref_hz, in.ej_ratio_fixed, in.ec_ratio_fixed) / kGHz, "GHz",
                            0.02,
                            fmt("fq_ref = %.5g GHz, E_J ratio %.3g, E_C ratio %.3g", in.fq_ref_hz / kGHz,
                                in.ej_ratio_fixed, in.ec_ratio_fixed)));
    rows.push_back(make_row("d2 cd1 g from two-tone transition", 104.0,
                            g_from_shift(in.d2_first_shift_hz[0], in.d2_transition_hz, in.d2_f_bare_hz[0]) / kMHz,
                            "MHz", 1.0,
                            fmt("shift %.4g MHz, transition %.5g GHz, ", in.d2_first_shift_hz[0] / kMHz,
                                in.d2_transition_hz / kGHz) +
                                d2_fbare(in, 0)));
    rows.push_back(make_row("d2 SQUID exchange rate", 200.0,
                            strong_coupling_exchange_rate(s * in.d2_g_squid_hz) / kMHz, "MHz", 1.0,
                            fmt("g = %.4g MHz", s * in.d2_g_squid_hz / kMHz)));
    return rows;
}

void print_report(std::ostream& out, const std::vector<ReproRow>& rows) {
    char line[512];
    std::snprintf(line, sizeof line, "%-38s %12s %12s %10s %-4s %-4s  %s\n", "quantity", "paper", "computed",
                  "tolerance", "unit", "ok", "inputs");
    out << line;
    std::size_t passed = 0;
    for (const auto& r : rows) {
        std::snprintf(line, sizeof line, "%-38s %12.6g %12.6g %10.3g %-4s %-4s  %s\n", r.name.c_str(), r.paper_value,
                      r.computed_value, r.tolerance, r.unit.c_str(), r.pass ? "PASS" : "FAIL", r.source.c_str());
        out << line;
        passed += r.pass ? 1 : 0;
    }
    out << passed << "/" << rows.size() << " rows pass\n";
}

Json report_to_json(const std::vector<ReproRow>& rows) {
    Json doc;
    doc["schema"] = schema::kReport;
    Json arr = Json::array();
    bool all = true;
    for (const auto& r : rows) {
        Json row;
        row["name"] = r.name;
        row["paper_value"] = r.paper_value;
        // NaN marks a failed computation; JSON has no NaN so it is written as null
        row["computed_value"] = std::isfinite(r.computed_value) ? Json(r.computed_value) : Json(nullptr);
        row["unit"] = r.unit;
        row["tolerance"] = r.tolerance;
        row["pass"] = r.pass;
        row["source"] = r.source;
        arr.push_back(std::move(row));
        all = all && r.pass;
    }
    doc["rows"] = std::move(arr);
    doc["all_pass"] = all;
    return doc;
}

std::vector<ReproRow> report_from_json(const Json& doc) {
    using namespace json_field;
    expect_schema(doc, schema::kReport, "");
    if (!doc.contains("rows") || !doc["rows"].is_array()) {
        throw ConfigError("rows", "expected an array");
    }
    std::vector<ReproRow> rows;
    for (std::size_t i = 0; i < doc["rows"].size(); ++i) {
        const Json& j = doc["rows"][i];
        const std::string p = "rows[" + std::to_string(i) + "]";
        reject_unknown(j, {"name", "paper_value", "computed_value", "unit", "tolerance", "pass", "source"}, p);
        ReproRow r;
        r.name = string(j, "name", p);
        r.paper_value = number(j, "paper_value", p);
        r.computed_value = j.contains("computed_value") && j["computed_value"].is_null()
                               ? NAN
                               : number(j, "computed_value", p);
        r.unit = string(j, "unit", p);
        r.tolerance = number(j, "tolerance", p);
        if (!j.contains("pass") || !j["pass"].is_boolean()) {
            throw ConfigError(join(p, "pass"), "expected a boolean");
        }
        r.pass = j["pass"].get<bool>();
        r.source = string(j, "source", p);
        const bool expected = std::isfinite(r.computed_value) &&
                              std::abs(r.computed_value - r.paper_value) <= r.tolerance;
        if (r.pass != expected) {
            throw ConfigError(join(p, "pass"), "inconsistent with value and tolerance");
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace cqedlab
