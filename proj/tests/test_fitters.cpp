#include <doctest.h>

#include <cmath>
#include <random>

#include "cqedlab/core/constants.hpp"
#include "cqedlab/core/errors.hpp"
#include "cqedlab/fit/fitters.hpp"
#include "cqedlab/fit/levenberg_marquardt.hpp"
#include "cqedlab/fit/ridge.hpp"
#include "cqedlab/jc/hybridization.hpp"
#include "cqedlab/spectro/lineshape.hpp"
#include "cqedlab/spectro/simulate.hpp"

using namespace cqedlab;

namespace {

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }

SpectroTrace dip_trace(double fr, double kappa, double floor, int n, double half_span) {
    SpectroTrace t;
    t.axis = Eigen::VectorXd::LinSpaced(n, fr - half_span, fr + half_span * 0.93);
    t.values.resize(n);
    for (int i = 0; i < n; ++i) t.values(i) = lorentzian_s21(t.axis(i), fr, kappa, floor);
    return t;
}

BranchData splittings(double fb, double g, int n = 15) {
    BranchData d;
    for (int i = 0; i < n; ++i) {
        const double fq = fb - 300e6 + 600e6 * i / double(n - 1);
        d.points.push_back({fq, rabi_splitting(fq, fb, g)});
    }
    return d;
}

double splitting_ssr(const BranchData& d, double fb, double g) {
    double s = 0.0;
    for (const auto& p : d.points) {
        const double r = rabi_splitting(p.fq_hz, fb, g) - p.delta_hz;
        s += r * r;
    }
    return s;
}

QubitModel device1_qubit() {
    QubitModel q = QubitModel::squid("Q1", 8.068e9, 111.3e6);
    q.t1_s = 48e-9;
    q.t2_star_s = 17.63e-9;
    return q;
}

}  // namespace

TEST_CASE("LM solves a linear least-squares problem in one accepted step") {
    struct Line {
        Eigen::VectorXd x, y;
        Eigen::VectorXd residuals(const Eigen::VectorXd& p) const {
            return (p(0) + p(1) * x.array()).matrix() - y;
        }
        Eigen::MatrixXd jacobian(const Eigen::VectorXd&) const {
            Eigen::MatrixXd j(x.size(), 2);
            j.col(0).setOnes();
            j.col(1) = x;
            return j;
        }
    };
    Line m{Eigen::VectorXd::LinSpaced(10, 0, 9), Eigen::VectorXd::LinSpaced(10, 1, 19)};
    const auto s = levenberg_marquardt(m, Eigen::VectorXd(Eigen::VectorXd::Zero(2)), LmOptions{});
    CHECK(s.converged);
    CHECK(s.x(0) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(s.x(1) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("noiseless dip is recovered to 1e-6") {
    const SpectroTrace t = dip_trace(6.02937e9, 2.6e6, 0.1, 201, 13e6);
    const FitResult r = fit_lorentzian(t, Polarity::dip);
    CHECK(r.converged);
    CHECK(rel_close(r.param("fr"), 6.02937e9, 1e-6));
    CHECK(rel_close(r.param("kappa"), 2.6e6, 1e-6));
    CHECK(rel_close(r.param("floor"), 0.1, 1e-6));
    CHECK(r.residual_rms < 1e-8);
    for (const auto& [k, s] : r.sigmas) CHECK(s >= 0.0);
}

TEST_CASE("noiseless peak is recovered to 1e-6") {
    SpectroTrace t;
    t.axis = Eigen::VectorXd::LinSpaced(301, 7.8e9, 8.3e9);
    t.values.resize(301);
    for (int i = 0; i < 301; ++i) t.values(i) = lorentzian_peak(t.axis(i), 8.068e9, 64.6e6, 0.5);
    const FitResult r = fit_lorentzian(t, Polarity::peak);
    CHECK(r.converged);
    CHECK(rel_close(r.param("fr"), 8.068e9, 1e-6));
    CHECK(rel_close(r.param("kappa"), 64.6e6, 1e-6));
    CHECK(rel_close(r.param("height"), 0.5, 1e-6));
}

TEST_CASE("line fit preconditions") {
    SpectroTrace flat;
    flat.axis = Eigen::VectorXd::LinSpaced(50, 6e9, 6.1e9);
    flat.values = Eigen::VectorXd::Constant(50, -0.5);
    CHECK_THROWS_AS(fit_lorentzian(flat, Polarity::dip), FitError);
    CHECK_THROWS_AS(fit_lorentzian(dip_trace(6e9, 2e6, 0.1, 7, 10e6), Polarity::dip), FitError);
    // a window narrower than two linewidths
    CHECK_THROWS_AS(fit_lorentzian(dip_trace(6e9, 2e6, 0.1, 50, 1.5e6), Polarity::dip), FitError);
}

TEST_CASE("line fit is deterministic") {
    SpectroTrace t = dip_trace(6.02937e9, 2.6e6, 0.1, 201, 13e6);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n(0.0, 0.1);
    for (Eigen::Index i = 0; i < t.values.size(); ++i) t.values(i) += n(rng);
    const FitResult a = fit_lorentzian(t, Polarity::dip);
    const FitResult b = fit_lorentzian(t, Polarity::dip);
    CHECK(a.params == b.params);
    CHECK(a.sigmas == b.sigmas);
    CHECK(a.iterations == b.iterations);
}

TEST_CASE("avoided crossing fit") {
    const double fb = 6.0558e9;
    const FitResult r = fit_avoided_crossing(splittings(fb, 100.5e6), fb);
    CHECK(r.converged);
    CHECK(rel_close(r.param("g"), 100.5e6, 1e-9));
}

TEST_CASE("avoided crossing preconditions") {
    BranchData one;
    one.points.push_back({6.0558e9, 201e6});
    CHECK_THROWS_AS(fit_avoided_crossing(one, 6.0558e9), FitError);
    BranchData same;
    for (int i = 0; i < 5; ++i) same.points.push_back({6.1e9, 210e6});
    CHECK_THROWS_AS(fit_avoided_crossing(same, 6.0558e9), FitError);
    BranchData neg = splittings(6e9, 100e6, 5);
    neg.points[2].delta_hz = -1.0;
    CHECK_THROWS_AS(fit_avoided_crossing(neg, 6e9), DomainError);
}

TEST_CASE("avoided crossing is translation invariant") {
    BranchData d = splittings(6.0558e9, 100.5e6);
    std::mt19937_64 rng(9);
    std::normal_distribution<double> n(0.0, 2e6);
    for (auto& p : d.points) p.delta_hz += n(rng);
    BranchData shifted = d;
    for (auto& p : shifted.points) p.fq_hz += 0.5e9;
    const double g0 = fit_avoided_crossing(d, 6.0558e9).param("g");
    const double g1 = fit_avoided_crossing(shifted, 6.5558e9).param("g");
    CHECK(rel_close(g0, g1, 1e-9));
}

TEST_CASE("avoided crossing optimum beats +-10 percent") {
    BranchData d = splittings(6.0558e9, 100.5e6);
    std::mt19937_64 rng(10);
    std::normal_distribution<double> n(0.0, 2e6);
    for (auto& p : d.points) p.delta_hz += n(rng);
    const double g = fit_avoided_crossing(d, 6.0558e9).param("g");
    const double best = splitting_ssr(d, 6.0558e9, g);
    CHECK(best <= splitting_ssr(d, 6.0558e9, 1.1 * g));
    CHECK(best <= splitting_ssr(d, 6.0558e9, 0.9 * g));
}

TEST_CASE("decay fit, exact data") {
    const Eigen::VectorXd t = (Eigen::VectorXd(2) << 10e-9, 60e-9).finished();
    const Eigen::VectorXd a = t1_trace(48e-9, 0.9, t, 0.0, 0);
    const FitResult r = fit_exponential_decay(t, a);
    CHECK(r.converged);
    CHECK(rel_close(r.param("t1"), 48e-9, 1e-9));
    CHECK(rel_close(r.param("amplitude"), 0.9, 1e-9));
    CHECK(!r.warnings.empty());  // fewer than 5 samples

    const Eigen::VectorXd tt = Eigen::VectorXd::LinSpaced(40, 0.0, 200e-9);
    const FitResult full = fit_exponential_decay(tt, t1_trace(48e-9, 1.0, tt, 0.0, 0));
    CHECK(rel_close(full.param("t1"), 48e-9, 1e-9));
    CHECK(full.warnings.empty());
}

TEST_CASE("decay fit errors and warnings") {
    const Eigen::VectorXd t = Eigen::VectorXd::LinSpaced(10, 0.0, 100e-9);
    CHECK_THROWS_AS(fit_exponential_decay(t, Eigen::VectorXd::Constant(10, 0.4)), FitError);
    Eigen::VectorXd neg = -t1_trace(48e-9, 1.0, t, 0.0, 0);
    neg(0) = 1.0;
    CHECK_THROWS_AS(fit_exponential_decay(t, neg), FitError);
    CHECK_THROWS_AS(fit_exponential_decay(t, t1_trace(48e-9, 1.0, t, 0.0, 0).reverse()), FitError);
    const Eigen::VectorXd short_span = Eigen::VectorXd::LinSpaced(10, 0.0, 20e-9);
    const FitResult r = fit_exponential_decay(short_span, t1_trace(48e-9, 1.0, short_span, 0.0, 0));
    CHECK(rel_close(r.param("t1"), 48e-9, 1e-6));
    REQUIRE(r.warnings.size() == 1);
    CHECK(r.warnings[0].find("span") != std::string::npos);
}

TEST_CASE("T2* lower bound") {
    CHECK(rel_close(t2_lower_bound_from_fwhm(64.6e6), 4.927397618944128e-9, 1e-14));
    CHECK(std::abs(t2_lower_bound_from_fwhm(64.6e6) - 4.927e-9) <= 0.01e-9);
    CHECK(rel_close(t2_lower_bound_from_fwhm(743.7e6), 0.4280084525800601e-9, 1e-14));
    CHECK(rel_close(t2_lower_bound_from_fwhm(18.05e6), 17.63489674148425e-9, 1e-14));
    CHECK_THROWS_AS(t2_lower_bound_from_fwhm(0.0), DomainError);
    CHECK_THROWS_AS(t2_lower_bound_from_fwhm(-1.0), DomainError);
    double prev = std::numeric_limits<double>::infinity();
    for (double f = 1e5; f < 1e10; f *= 1.7) {
        CHECK(t2_lower_bound_from_fwhm(f) < prev);
        prev = t2_lower_bound_from_fwhm(f);
    }
}

TEST_CASE("power broadening, noiseless") {
    const QubitModel q = device1_qubit();
    TwoToneModel m;
    m.beta = 2.21e15;
    LinewidthSeries s;
    s.axis = LinewidthSeries::Axis::power_dbm;
    for (int i = 0; i < 6; ++i) s.points.push_back({-20.0 + 4.0 * i, two_tone_fwhm(q, 0.0, -20.0 + 4.0 * i, m)});
    const FitResult r = fit_power_broadening(s, 48e-9);
    CHECK(rel_close(r.param("t2_star"), 17.63e-9, 1e-9));
    CHECK(rel_close(r.param("beta"), 2.21e15, 1e-6));
    CHECK(r.param("physical") == 1.0);
    CHECK(!fit_power_broadening(s).has("beta"));
}

TEST_CASE("power broadening edge cases") {
    LinewidthSeries flat;
    flat.axis = LinewidthSeries::Axis::power_dbm;
    for (int i = 0; i < 4; ++i) flat.points.push_back({-30.0 + 5 * i, 18.05e6});
    CHECK(rel_close(fit_power_broadening(flat).param("t2_star"), t2_lower_bound_from_fwhm(18.05e6), 1e-12));

    LinewidthSeries down = flat;
    for (int i = 0; i < 4; ++i) down.points[std::size_t(i)].fwhm_hz = 40e6 - 5e6 * i;
    const FitResult d = fit_power_broadening(down);
    CHECK(d.param("physical") == 0.0);
    CHECK(!d.warnings.empty());

    // steep rise through nearly zero at the lowest power extrapolates below zero
    LinewidthSeries steep;
    steep.axis = LinewidthSeries::Axis::power_dbm;
    for (double p : {0.0, 1.0, 2.0, 3.0}) {
        const double mw = std::pow(10.0, p / 10.0);
        steep.points.push_back({p, std::sqrt(std::max(1e16 * (mw - 1.05), 1e10)) / kPi<double>});
    }
    const FitResult u = fit_power_broadening(steep);
    CHECK(u.param("t2_star_unbounded") == 1.0);
    CHECK(!u.has("t2_star"));

    LinewidthSeries two = flat;
    two.points.resize(2);
    CHECK_THROWS_AS(fit_power_broadening(two), FitError);
    LinewidthSeries wrong = flat;
    wrong.axis = LinewidthSeries::Axis::flux;
    CHECK_THROWS_AS(fit_power_broadening(wrong), DomainError);
}

TEST_CASE("flux-noise regression through the origin") {
    const QubitModel q = QubitModel::squid("Q1", 8.068e9, 111.3e6);
    const double root_ln2 = std::sqrt(std::log(2.0));
    LinewidthSeries s;
    for (int i = 1; i <= 10; ++i) {
        const double phi = 0.005 * i;
        s.points.push_back({phi, std::abs(dfq_dphi(q, phi)) * 0.1 * root_ln2});
    }
    const FitResult r = fit_flux_noise_amplitude(s, q, 0.05);
    CHECK(rel_close(r.param("A"), 0.1, 1e-12));
    CHECK(r.param("points") == 10.0);

    // a zero-slope point at the sweet spot is ignored
    LinewidthSeries with_zero = s;
    with_zero.points.push_back({0.0, 18e6});
    const FitResult z = fit_flux_noise_amplitude(with_zero, q, 0.05);
    CHECK(z.param("A") == r.param("A"));

    // points outside the window are ignored
    LinewidthSeries wide = s;
    wide.points.push_back({0.3, 5e9});
    CHECK(fit_flux_noise_amplitude(wide, q, 0.05).param("A") == r.param("A"));
}

TEST_CASE("flux-noise preconditions") {
    const QubitModel q = QubitModel::squid("Q1", 8.068e9, 111.3e6);
    LinewidthSeries far;
    for (double phi : {0.2, 0.25, 0.3}) far.points.push_back({phi, 100e6});
    CHECK_THROWS_AS(fit_flux_noise_amplitude(far, q, 0.05), FitError);
    LinewidthSeries few;
    for (double phi : {0.0, 0.01, 0.02}) few.points.push_back({phi, 100e6});
    CHECK_THROWS_AS(fit_flux_noise_amplitude(few, q, 0.05), FitError);
}

TEST_CASE("ridge of a noiseless cooldown-1 flux map follows the dressed frequency") {
    DeviceModel dev;
    dev.cavity = {6.059e9, 2.6e6, 0.1};
    dev.qubits.push_back(QubitModel::squid("Q1", 8.068e9, 111.3e6));
    const Eigen::VectorXd phi = Eigen::VectorXd::LinSpaced(41, -0.2, 0.2);
    const Eigen::VectorXd f = Eigen::VectorXd::LinSpaced(1401, 6.0e9, 6.07e9);
    const Ridge r = extract_dip_ridge(flux_map(dev, phi, f, DriveConfig{}));
    CHECK(r.failed_columns == 0);
    REQUIRE(r.x.size() == 41);
    const bool unsat[] = {false};
    for (std::size_t i = 0; i < r.x.size(); ++i) {
        CHECK(std::abs(r.fr_hz[i] - dressed_cavity_frequency(dev, r.x[i], unsat)) <= 2.6e6 / 20);
    }
}

TEST_CASE("ridge skips a flat column") {
    DeviceModel dev;
    dev.cavity = {6.059e9, 2.6e6, 0.1};
    dev.qubits.push_back(QubitModel::squid("Q1", 8.068e9, 111.3e6));
    const Eigen::VectorXd phi = Eigen::VectorXd::LinSpaced(5, 0.0, 0.2);
    const Eigen::VectorXd f = Eigen::VectorXd::LinSpaced(401, 6.0e9, 6.07e9);
    SpectroMap m = flux_map(dev, phi, f, DriveConfig{});
    m.values.row(2).setZero();
    const Ridge r = extract_dip_ridge(m);
    CHECK(r.failed_columns == 1);
    CHECK(r.x.size() == 4);
    m.values.topRows(3).setZero();
    CHECK_THROWS_AS(extract_dip_ridge(m), FitError);
}

TEST_CASE("two-stage power map shows exactly two transitions") {
    DeviceModel dev;
    dev.cavity = {6.0545e9, 0.8e6, 0.1};
    dev.qubits.push_back(QubitModel::squid("SQUID", 13.867e9, 100e6));
    dev.qubits.push_back(QubitModel::fixed("fixed", 8.82126e9, 78.9e6));
    dev.power_ref_dbm = -47.4;
    SaturationModel sat;
    sat.transition_width_db = 1.0;
    const Eigen::VectorXd p = Eigen::VectorXd::LinSpaced(81, -40, 0);
    const Eigen::VectorXd f = Eigen::VectorXd::LinSpaced(301, 6.045e9, 6.06e9);
    const Ridge r = extract_dip_ridge(power_map(dev, 0.0, p, f, sat, DriveConfig{}));
    const auto steps = detect_plateau_transitions(r);
    REQUIRE(steps.size() == 2);
    const auto onsets = saturation_onsets_dbm(dev, 0.0);
    CHECK(std::abs(steps[0] - onsets[1]) < 0.5);
    CHECK(std::abs(steps[1] - onsets[0]) < 0.5);
    // total shift across the sweep is the sum of both pulls
    CHECK(r.fr_hz.back() - r.fr_hz.front() == doctest::Approx(2.25e6 + 1.28e6).epsilon(0.01));
}

TEST_CASE("branch extraction resolves the vacuum Rabi doublet") {
    DeviceModel dev;
    dev.cavity = {6.0558e9, 2.6e6, 0.1};
    dev.qubits.push_back(QubitModel::squid("Q1", 6.438e9, 100.5e6));
    const double ratio = 6.0558e9 / 6.438e9;
    const double phi_c = std::acos(ratio * ratio) / kPi<double>;
    const Eigen::VectorXd phi = (Eigen::VectorXd(3) << 0.0, phi_c, 0.45).finished();
    const Eigen::VectorXd f = Eigen::VectorXd::LinSpaced(2001, 5.85e9, 6.25e9);
    const auto cols = extract_dip_branches(flux_map(dev, phi, f, DriveConfig{}));
    REQUIRE(cols.size() == 3);
    CHECK(cols[0].centers_hz.size() == 1);
    REQUIRE(cols[1].centers_hz.size() == 2);
    CHECK(cols[1].centers_hz[1] - cols[1].centers_hz[0] == doctest::Approx(201e6).epsilon(0.02));
}
