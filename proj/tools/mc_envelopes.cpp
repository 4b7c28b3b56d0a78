// Seeded Monte-Carlo study behind the noise tolerances frozen in tests/test_noise_envelopes.cpp.
// Prints the worst and 95th-percentile error over 100 seeds for each fitter scenario.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <vector>

#include "cqedlab/core/device.hpp"
#include "cqedlab/fit/fitters.hpp"
#include "cqedlab/jc/hybridization.hpp"
#include "cqedlab/spectro/lineshape.hpp"
#include "cqedlab/spectro/simulate.hpp"

using namespace cqedlab;

namespace {

void report(const char* name, const char* unit, std::vector<double> err, double tol) {
    for (auto& e : err) e = std::abs(e);
    std::sort(err.begin(), err.end());
    std::printf("%-24s max %.4g  p95 %.4g  tol %.4g %s  %s\n", name, err.back(), err[94], tol, unit,
                err.back() <= tol ? "inside" : "OUTSIDE");
}

}  // namespace

int main() {
    const int trials = 100;

    {
        std::vector<double> err;
        const double fr = 6.02937e9, kappa = 2.6e6;
        const Eigen::VectorXd f = Eigen::VectorXd::LinSpaced(201, fr - 5 * kappa, fr + 5 * kappa);
        for (int s = 0; s < trials; ++s) {
            std::mt19937_64 rng(s);
            std::normal_distribution<double> n(0.0, 0.1);
            SpectroTrace t{f, Eigen::VectorXd(f.size()), {}};
            for (Eigen::Index i = 0; i < f.size(); ++i) t.values(i) = lorentzian_s21(f(i), fr, kappa, 0.1) + n(rng);
            err.push_back(fit_lorentzian(t, Polarity::dip).param("fr") - fr);
        }
        report("lorentzian fr", "Hz", err, kappa / 50);
    }
    {
        std::vector<double> err;
        const double fb = 6.0558e9, g = 100.5e6;
        for (int s = 0; s < trials; ++s) {
            std::mt19937_64 rng(s);
            std::normal_distribution<double> n(0.0, 2e6);
            BranchData d;
            for (int i = 0; i < 15; ++i) {
                const double fq = fb - 300e6 + 600e6 * i / 14.0;
                d.points.push_back({fq, rabi_splitting(fq, fb, g) + n(rng)});
            }
            err.push_back(fit_avoided_crossing(d, fb).param("g") - g);
        }
        report("avoided crossing g", "Hz", err, 2e6);
    }
    {
        std::vector<double> err;
        const Eigen::VectorXd delays = Eigen::VectorXd::LinSpaced(401, 0.0, 200e-9);
        for (int s = 0; s < trials; ++s) {
            const Eigen::VectorXd a = t1_trace(48e-9, 1.0, delays, 0.02, std::uint64_t(s));
            err.push_back(fit_exponential_decay(delays, a).param("t1") - 48e-9);
        }
        report("decay T1", "s", err, 1e-9);
    }
    {
        std::vector<double> err;
        QubitModel q = QubitModel::squid("Q1", 8.068e9, 111.3e6);
        q.t1_s = 48e-9;
        q.t2_star_s = 17.63e-9;
        TwoToneModel m;
        m.beta = 2.21e15;
        for (int s = 0; s < trials; ++s) {
            std::mt19937_64 rng(s);
            std::normal_distribution<double> n(0.0, 0.02);
            LinewidthSeries series;
            series.axis = LinewidthSeries::Axis::power_dbm;
            for (int i = 0; i < 8; ++i) {
                const double p = -30.0 + 3.0 * i;
                series.points.push_back({p, two_tone_fwhm(q, 0.0, p, m) * (1.0 + n(rng))});
            }
            err.push_back(fit_power_broadening(series).param("t2_star") / 17.63e-9 - 1.0);
        }
        report("power broadening T2*", "rel", err, 0.05);
    }
    {
        std::vector<double> err;
        QubitModel q = QubitModel::squid("Q1", 8.068e9, 111.3e6);
        q.t1_s = 48e-9;
        q.t2_star_s = 17.63e-9;
        TwoToneModel m;
        m.flux_noise_amplitude = 0.1;
        for (int s = 0; s < trials; ++s) {
            std::mt19937_64 rng(s);
            std::normal_distribution<double> n(0.0, 0.02);
            LinewidthSeries series;
            for (int i = -10; i <= 10; ++i) {
                const double phi = 0.005 * i;
                series.points.push_back({phi, two_tone_fwhm(q, phi, std::nullopt, m) * (1.0 + n(rng))});
            }
            err.push_back(fit_flux_noise_amplitude(series, q, 0.05).param("A") / 0.1 - 1.0);
        }
        report("flux-noise A", "rel", err, 0.10);
    }
}
