#include "cqedlab/fit/fitters.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cqedlab/core/errors.hpp"
#include "cqedlab/fit/levenberg_marquardt.hpp"
#include "cqedlab/spectro/lineshape.hpp"
#include "cqedlab/spectro/simulate.hpp"

namespace cqedlab {

namespace {

constexpr double kDbPerNeper = 20.0 / std::numbers::ln10;

double relative_rms(const Eigen::VectorXd& residuals, const Eigen::VectorXd& data) {
    const double scale = data.norm();
    return scale > 0.0 ? residuals.norm() / scale : residuals.norm() / std::sqrt(double(residuals.size()));
}

void note_convergence(FitResult& out, const LmOptions& options) {
    if (!out.converged) {
        out.warnings.push_back("did not converge within " + std::to_string(options.max_iterations) +
                               " iterations");
    }
}

// Half-level crossing on one side of the extremum, walking outward. Returns the
// interpolated frequency or NaN if the level is never reached.
double half_crossing(const Eigen::VectorXd& f, const Eigen::VectorXd& excess, Eigen::Index from, int dir) {
    const double peak = excess(from);
    for (Eigen::Index j = from + dir; j >= 0 && j < f.size(); j += dir) {
        if (excess(j) / peak <= 0.5) {
            const Eigen::Index prev = j - dir;
            const double a = excess(prev) / peak - 0.5;
            const double b = excess(j) / peak - 0.5;
            const double t = a == b ? 0.0 : a / (a - b);
            return f(prev) + t * (f(j) - f(prev));
        }
    }
    return std::nan("");
}

// Scaled Lorentzian model in dB: u = (f - f_ref) / w_ref, params (center, width, a).
struct LorentzianModel {
    Eigen::VectorXd u;
    Eigen::VectorXd data;

    Eigen::VectorXd residuals(const Eigen::VectorXd& p) const {
        const double h = p(1) / 2.0;
        const Eigen::ArrayXd d = u.array() - p(0);
        const Eigen::ArrayXd shape = h * h / (d.square() + h * h);
        return (kDbPerNeper * (1.0 + p(2) * shape).log() - data.array()).matrix();
    }

    Eigen::MatrixXd jacobian(const Eigen::VectorXd& p) const {
        const double h = p(1) / 2.0;
        const Eigen::ArrayXd d = u.array() - p(0);
        const Eigen::ArrayXd denom = d.square() + h * h;
        const Eigen::ArrayXd shape = h * h / denom;
        const Eigen::ArrayXd mag = 1.0 + p(2) * shape;
        Eigen::MatrixXd jac(u.size(), 3);
        jac.col(0) = (kDbPerNeper * p(2) * 2.0 * h * h * d / denom.square() / mag).matrix();
        jac.col(1) = (kDbPerNeper * p(2) * h * d.square() / denom.square() / mag).matrix();
        jac.col(2) = (kDbPerNeper * shape / mag).matrix();
        return jac;
    }
};

struct SplittingModel {
    Eigen::VectorXd detuning;
    Eigen::VectorXd delta;
    double scale;

    Eigen::VectorXd residuals(const Eigen::VectorXd& p) const {
        const double two_g = 2.0 * scale * p(0);
        return detuning.unaryExpr([two_g](double d) { return std::hypot(d, two_g); }) - delta;
    }

    Eigen::MatrixXd jacobian(const Eigen::VectorXd& p) const {
        const double two_g = 2.0 * scale * p(0);
        Eigen::MatrixXd jac(detuning.size(), 1);
        for (Eigen::Index i = 0; i < detuning.size(); ++i) {
            jac(i, 0) = 2.0 * scale * two_g / std::hypot(detuning(i), two_g);
        }
        return jac;
    }
};

struct DecayModel {
    Eigen::VectorXd t;
    Eigen::VectorXd y;
    double amplitude_scale;
    double t1_scale;

    Eigen::VectorXd residuals(const Eigen::VectorXd& p) const {
        const double t1 = t1_scale * p(1);
        return (amplitude_scale * p(0) * (-t.array() / t1).exp()).matrix() - y;
    }

    Eigen::MatrixXd jacobian(const Eigen::VectorXd& p) const {
        const double t1 = t1_scale * p(1);
        const Eigen::ArrayXd e = (-t.array() / t1).exp();
        Eigen::MatrixXd jac(t.size(), 2);
        jac.col(0) = (amplitude_scale * e).matrix();
        jac.col(1) = (amplitude_scale * p(0) * e * t.array() / (t1 * p(1))).matrix();
        return jac;
    }
};

}  // namespace

LineEstimate estimate_line(const SpectroTrace& trace, Polarity polarity) {
    trace.validate();
    const Eigen::VectorXd& f = trace.axis;
    const Eigen::VectorXd excess = trace.values.unaryExpr([](double db) { return from_db(db) - 1.0; });

    LineEstimate est;
    if (polarity == Polarity::dip) {
        excess.minCoeff(&est.index);
    } else {
        excess.maxCoeff(&est.index);
    }
    est.amplitude = excess(est.index);
    est.center_hz = f(est.index);
    if (est.amplitude == 0.0 || (polarity == Polarity::dip) != (est.amplitude < 0.0)) {
        throw FitError(polarity == Polarity::dip ? "trace has no dip" : "trace has no peak");
    }

    const double left = half_crossing(f, excess, est.index, -1);
    const double right = half_crossing(f, excess, est.index, +1);
    if (std::isnan(left) && std::isnan(right)) {
        throw FitError("trace does not reach the half-depth level on either side");
    }
    if (std::isnan(left)) {
        est.width_hz = 2.0 * (right - est.center_hz);
    } else if (std::isnan(right)) {
        est.width_hz = 2.0 * (est.center_hz - left);
    } else {
        est.width_hz = right - left;
    }
    if (!(est.width_hz > 0.0)) {
        // Line narrower than the sampling: fall back to one grid step.
        est.width_hz = (f(f.size() - 1) - f(0)) / double(f.size() - 1);
    }
    return est;
}

FitResult fit_lorentzian(const SpectroTrace& trace, Polarity polarity) {
    trace.validate();
    if (trace.axis.size() < 8) {
        throw FitError("line fit needs at least 8 samples");
    }
    if (trace.values.maxCoeff() - trace.values.minCoeff() < 1e-9) {
        throw FitError("flat trace");
    }

    const LineEstimate est = estimate_line(trace, polarity);
    const double span = trace.axis(trace.axis.size() - 1) - trace.axis(0);
    if (span < 2.0 * est.width_hz) {
        throw FitError("trace spans fewer than two linewidths");
    }

    LorentzianModel model;
    model.u = (trace.axis.array() - est.center_hz) / est.width_hz;
    model.data = trace.values;

    LmOptions options;
    Eigen::VectorXd x0(3);
    x0 << 0.0, 1.0, est.amplitude;
    const auto lm = levenberg_marquardt(model, x0, options);

    FitResult out;
    out.params["fr"] = est.center_hz + lm.x(0) * est.width_hz;
    out.params["kappa"] = std::abs(lm.x(1)) * est.width_hz;
    out.sigmas["fr"] = lm.sigma(0) * est.width_hz;
    out.sigmas["kappa"] = lm.sigma(1) * est.width_hz;
    if (polarity == Polarity::dip) {
        out.params["floor"] = 1.0 + lm.x(2);
        out.sigmas["floor"] = lm.sigma(2);
    } else {
        out.params["height"] = lm.x(2);
        out.sigmas["height"] = lm.sigma(2);
    }
    out.residual_rms = relative_rms(model.residuals(lm.x), trace.values);
    out.converged = lm.converged;
    out.iterations = lm.iterations;
    note_convergence(out, options);

    const double fr = out.params["fr"];
    if (fr < trace.axis(0) || fr > trace.axis(trace.axis.size() - 1)) {
        out.converged = false;
        out.warnings.push_back("fitted center lies outside the sampled range");
    }
    return out;
}

FitResult fit_avoided_crossing(const BranchData& data, double f_bare_hz) {
    const auto& pts = data.points;
    if (pts.size() < 3) {
        throw FitError("splitting fit needs at least 3 points");
    }
    for (const auto& p : pts) {
        if (!(p.delta_hz > 0.0) || !std::isfinite(p.delta_hz) || !std::isfinite(p.fq_hz)) {
            throw DomainError("splittings must be positive and finite");
        }
    }
    const bool all_same = std::all_of(pts.begin(), pts.end(), [&](const BranchPoint& p) {
        return p.fq_hz == pts.front().fq_hz && p.delta_hz == pts.front().delta_hz;
    });
    if (all_same) {
        throw FitError("all splitting points are identical");
    }

    SplittingModel model;
    model.detuning.resize(Eigen::Index(pts.size()));
    model.delta.resize(Eigen::Index(pts.size()));
    for (std::size_t i = 0; i < pts.size(); ++i) {
        model.detuning(Eigen::Index(i)) = pts[i].fq_hz - f_bare_hz;
        model.delta(Eigen::Index(i)) = pts[i].delta_hz;
    }
    model.scale = model.delta.minCoeff() / 2.0;

    LmOptions options;
    const auto lm = levenberg_marquardt(model, Eigen::VectorXd(Eigen::VectorXd::Ones(1)), options);

    FitResult out;
    out.params["g"] = std::abs(lm.x(0)) * model.scale;
    out.sigmas["g"] = lm.sigma(0) * model.scale;
    out.residual_rms = relative_rms(model.residuals(lm.x), model.delta);
    out.converged = lm.converged;
    out.iterations = lm.iterations;
    note_convergence(out, options);
    return out;
}

FitResult fit_exponential_decay(const Eigen::VectorXd& delays_s, const Eigen::VectorXd& amplitudes) {
    const Eigen::Index n = delays_s.size();
    if (amplitudes.size() != n) {
        throw FitError("delay and amplitude columns differ in length");
    }
    if (n < 2) {
        throw FitError("decay fit needs at least 2 samples");
    }
    if (!delays_s.allFinite() || !amplitudes.allFinite()) {
        throw FitError("decay samples must be finite");
    }
    const Eigen::Index positive = (amplitudes.array() > 0.0).count();
    if (2 * positive <= n) {
        throw FitError("majority of amplitudes are non-positive");
    }
    if (amplitudes.maxCoeff() == amplitudes.minCoeff()) {
        throw FitError("samples do not decay");
    }

    // log-domain seed on the positive samples
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (amplitudes(i) <= 0.0) {
            continue;
        }
        const double t = delays_s(i);
        const double ly = std::log(amplitudes(i));
        sx += t;
        sy += ly;
        sxx += t * t;
        sxy += t * ly;
    }
    const double m = double(positive);
    const double denom = m * sxx - sx * sx;
    if (positive < 2 || denom == 0.0) {
        throw FitError("decay fit needs two positive samples at distinct delays");
    }
    const double slope = (m * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / m;
    if (!(slope < 0.0)) {
        throw FitError("samples do not decay");
    }

    DecayModel model{delays_s, amplitudes, std::exp(intercept), -1.0 / slope};
    LmOptions options;
    const auto lm = levenberg_marquardt(model, Eigen::VectorXd(Eigen::VectorXd::Ones(2)), options);

    FitResult out;
    out.params["amplitude"] = lm.x(0) * model.amplitude_scale;
    out.params["t1"] = lm.x(1) * model.t1_scale;
    out.sigmas["amplitude"] = lm.sigma(0) * model.amplitude_scale;
    out.sigmas["t1"] = lm.sigma(1) * model.t1_scale;
    out.residual_rms = relative_rms(model.residuals(lm.x), amplitudes);
    out.converged = lm.converged;
    out.iterations = lm.iterations;
    note_convergence(out, options);

    if (n < 5) {
        out.warnings.push_back("fewer than 5 samples");
    }
    const double span = delays_s.maxCoeff() - delays_s.minCoeff();
    if (out.params["t1"] > span) {
        out.warnings.push_back("fitted T1 exceeds the sampled delay span");
    }
    return out;
}

double t2_lower_bound_from_fwhm(double fwhm_hz) {
    if (!(fwhm_hz > 0.0) || !std::isfinite(fwhm_hz)) {
        throw DomainError("linewidth must be positive");
    }
    return 1.0 / (std::numbers::pi * fwhm_hz);
}

FitResult fit_power_broadening(const LinewidthSeries& series, std::optional<double> t1_s) {
    if (series.axis != LinewidthSeries::Axis::power_dbm) {
        throw DomainError("power-broadening fit needs a series over drive power");
    }
    const auto& pts = series.points;
    if (pts.size() < 3) {
        throw FitError("power-broadening fit needs at least 3 drive powers");
    }
    if (t1_s && !(*t1_s > 0.0)) {
        throw DomainError("t1 must be positive");
    }

    const Eigen::Index n = Eigen::Index(pts.size());
    Eigen::MatrixXd design(n, 2);
    Eigen::VectorXd y(n);
    Eigen::VectorXd w(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& p = pts[std::size_t(i)];
        if (!(p.fwhm_hz > 0.0) || !std::isfinite(p.fwhm_hz) || !std::isfinite(p.coordinate)) {
            throw DomainError("linewidths must be positive and finite");
        }
        const double rate = std::numbers::pi * p.fwhm_hz;  // 2 pi HWHM
        design(i, 0) = 1.0;
        design(i, 1) = dbm_to_mw(p.coordinate);
        y(i) = rate * rate;
        w(i) = 1.0 / (y(i) * y(i));
    }

    const Eigen::Matrix2d normal = design.transpose() * w.asDiagonal() * design;
    const Eigen::Vector2d rhs = design.transpose() * w.asDiagonal() * y;
    const Eigen::FullPivLU<Eigen::Matrix2d> lu(normal);
    if (!lu.isInvertible()) {
        throw FitError("power-broadening fit needs at least two distinct drive powers");
    }
    const Eigen::Vector2d coef = lu.solve(rhs);
    const Eigen::VectorXd resid = design * coef - y;
    const double chi2 = (w.array() * resid.array().square()).sum();
    const Eigen::Matrix2d cov = lu.inverse() * (n > 2 ? chi2 / double(n - 2) : 0.0);

    FitResult out;
    const double c = coef(0);
    const double s = coef(1);
    out.params["intercept"] = c;
    out.params["slope"] = s;
    out.sigmas["intercept"] = std::sqrt(std::max(cov(0, 0), 0.0));
    out.sigmas["slope"] = std::sqrt(std::max(cov(1, 1), 0.0));
    out.residual_rms = relative_rms(resid, y);
    out.converged = true;
    out.iterations = 1;

    if (c > 0.0) {
        const double t2 = 1.0 / std::sqrt(c);
        out.params["t2_star"] = t2;
        out.sigmas["t2_star"] = 0.5 * std::pow(c, -1.5) * out.sigmas["intercept"];
        if (t1_s) {
            out.params["beta"] = s * t2 / *t1_s;
            out.sigmas["beta"] = out.sigmas["slope"] * t2 / *t1_s;
        }
    } else {
        out.params["t2_star_unbounded"] = 1.0;
        out.warnings.push_back("non-positive intercept: T2* is unbounded");
    }

    const double max_power = design.col(1).maxCoeff();
    const bool decreasing = s * max_power < -1e-9 * std::abs(c);
    out.params["physical"] = decreasing ? 0.0 : 1.0;
    if (decreasing) {
        out.warnings.push_back("linewidth decreases with drive power: non-physical series");
    }
    return out;
}

FitResult fit_flux_noise_amplitude(const LinewidthSeries& series, const QubitModel& q, double phi_window) {
    if (series.axis != LinewidthSeries::Axis::flux) {
        throw DomainError("flux-noise fit needs a series over flux");
    }
    if (!(phi_window > 0.0)) {
        throw DomainError("flux window must be positive");
    }

    const double root_ln2 = std::sqrt(std::log(2.0));
    std::vector<double> xs;
    std::vector<double> ys;
    std::size_t in_window = 0;
    for (const auto& p : series.points) {
        if (!(p.fwhm_hz > 0.0) || !std::isfinite(p.fwhm_hz)) {
            throw DomainError("linewidths must be positive and finite");
        }
        if (std::abs(p.coordinate) > phi_window * (1.0 + 1e-12)) {
            continue;
        }
        ++in_window;
        const double x = std::abs(dfq_dphi(q, p.coordinate)) * root_ln2;
        if (x > 0.0) {
            xs.push_back(x);
            ys.push_back(p.fwhm_hz);
        }
    }
    if (in_window == 0) {
        throw FitError("no linewidth points inside the flux window");
    }
    if (xs.size() < 3) {
        throw FitError("flux-noise fit needs at least 3 points with non-zero slope inside the window");
    }

    const Eigen::Map<const Eigen::VectorXd> x(xs.data(), Eigen::Index(xs.size()));
    const Eigen::Map<const Eigen::VectorXd> y(ys.data(), Eigen::Index(ys.size()));
    const double sxx = x.squaredNorm();
    const double amp = x.dot(y) / sxx;
    const Eigen::VectorXd resid = amp * x - y;

    FitResult out;
    out.params["A"] = amp;
    out.params["points"] = double(xs.size());
    out.sigmas["A"] = std::sqrt(resid.squaredNorm() / double(xs.size() - 1) / sxx);
    out.residual_rms = relative_rms(resid, y);
    out.converged = true;
    out.iterations = 1;
    return out;
}

}  // namespace cqedlab
