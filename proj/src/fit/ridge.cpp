#include "cqedlab/fit/ridge.hpp"

#include <algorithm>
#include <cmath>

#include "cqedlab/core/errors.hpp"
#include "cqedlab/fit/fitters.hpp"

namespace cqedlab {

namespace {

constexpr double kWindowWidths = 6.0;

SpectroTrace slice(const SpectroTrace& t, double lo, double hi) {
    const auto& f = t.axis;
    const Eigen::Index first = std::lower_bound(f.data(), f.data() + f.size(), lo) - f.data();
    const Eigen::Index last = std::upper_bound(f.data(), f.data() + f.size(), hi) - f.data();
    SpectroTrace out;
    out.axis = f.segment(first, last - first);
    out.values = t.values.segment(first, last - first);
    out.meta = t.meta;
    return out;
}

// Window of +-kWindowWidths estimated widths around a line, or the whole
// column when that leaves too few samples.
SpectroTrace line_window(const SpectroTrace& column, const LineEstimate& est, double lo_limit, double hi_limit) {
    const double lo = std::max(est.center_hz - kWindowWidths * est.width_hz, lo_limit);
    const double hi = std::min(est.center_hz + kWindowWidths * est.width_hz, hi_limit);
    SpectroTrace w = slice(column, lo, hi);
    return w.axis.size() >= 8 ? w : column;
}

}  // namespace

Ridge extract_dip_ridge(const SpectroMap& map) {
    map.validate();
    Ridge ridge;
    for (Eigen::Index i = 0; i < map.x_axis.size(); ++i) {
        const SpectroTrace column = map.column(i);
        try {
            const LineEstimate est = estimate_line(column, Polarity::dip);
            const FitResult fit =
                fit_lorentzian(line_window(column, est, column.axis(0), column.axis(column.axis.size() - 1)),
                               Polarity::dip);
            if (!fit.converged) {
                ++ridge.failed_columns;
                continue;
            }
            ridge.x.push_back(map.x_axis(i));
            ridge.fr_hz.push_back(fit.param("fr"));
            ridge.kappa_hz.push_back(fit.param("kappa"));
        } catch (const FitError&) {
            ++ridge.failed_columns;
        } catch (const DomainError&) {
            ++ridge.failed_columns;
        }
    }
    if (2 * ridge.failed_columns > std::size_t(map.x_axis.size())) {
        throw FitError("ridge extraction failed on " + std::to_string(ridge.failed_columns) + " of " +
                       std::to_string(map.x_axis.size()) + " columns");
    }
    return ridge;
}

std::vector<ColumnDips> extract_dip_branches(const SpectroMap& map, std::size_t max_dips) {
    map.validate();
    std::vector<ColumnDips> out;
    out.reserve(std::size_t(map.x_axis.size()));
    for (Eigen::Index i = 0; i < map.x_axis.size(); ++i) {
        ColumnDips dips;
        dips.x = map.x_axis(i);
        const SpectroTrace column = map.column(i);
        const double f_lo = column.axis(0);
        const double f_hi = column.axis(column.axis.size() - 1);
        try {
            // Locate candidate dips by repeatedly masking around the deepest one.
            std::vector<LineEstimate> found;
            SpectroTrace masked = column;
            while (found.size() < max_dips) {
                LineEstimate est;
                try {
                    est = estimate_line(masked, Polarity::dip);
                } catch (const FitError&) {
                    break;
                }
                if (!found.empty() && est.amplitude > 0.5 * found.front().amplitude) {
                    break;
                }
                found.push_back(est);
                const double lo = est.center_hz - 2.0 * kWindowWidths * est.width_hz;
                const double hi = est.center_hz + 2.0 * kWindowWidths * est.width_hz;
                for (Eigen::Index j = 0; j < masked.axis.size(); ++j) {
                    if (masked.axis(j) >= lo && masked.axis(j) <= hi) {
                        masked.values(j) = 0.0;
                    }
                }
                if (masked.values.minCoeff() == 0.0 && masked.values.maxCoeff() == 0.0) {
                    break;
                }
            }
            std::sort(found.begin(), found.end(),
                      [](const LineEstimate& a, const LineEstimate& b) { return a.center_hz < b.center_hz; });
            for (std::size_t k = 0; k < found.size(); ++k) {
                const double lo = k > 0 ? 0.5 * (found[k - 1].center_hz + found[k].center_hz) : f_lo;
                const double hi = k + 1 < found.size() ? 0.5 * (found[k].center_hz + found[k + 1].center_hz) : f_hi;
                const FitResult fit = fit_lorentzian(line_window(slice(column, lo, hi), found[k], lo, hi), Polarity::dip);
                if (fit.converged) {
                    dips.centers_hz.push_back(fit.param("fr"));
                }
            }
        } catch (const FitError&) {
            dips.centers_hz.clear();
        } catch (const DomainError&) {
            dips.centers_hz.clear();
        }
        std::sort(dips.centers_hz.begin(), dips.centers_hz.end());
        out.push_back(std::move(dips));
    }
    return out;
}

std::vector<double> detect_plateau_transitions(const Ridge& ridge, double min_fraction) {
    const std::size_t n = ridge.x.size();
    std::vector<double> out;
    if (n < 5) {
        return out;
    }
    std::vector<double> slope(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        slope[i] = std::abs((ridge.fr_hz[i + 1] - ridge.fr_hz[i - 1]) / (ridge.x[i + 1] - ridge.x[i - 1]));
    }
    const double largest = *std::max_element(slope.begin(), slope.end());
    if (largest == 0.0) {
        return out;
    }
    for (std::size_t i = 2; i + 2 < n; ++i) {
        const double s = slope[i];
        const bool local_max = s > slope[i - 1] && s >= slope[i + 1] && s > slope[i - 2] && s >= slope[i + 2];
        if (!local_max || s < min_fraction * largest) {
            continue;
        }
        // parabolic refinement on a uniform neighbourhood
        const double a = slope[i - 1];
        const double c = slope[i + 1];
        const double curvature = a - 2.0 * s + c;
        const double offset = curvature != 0.0 ? 0.5 * (a - c) / curvature : 0.0;
        const double step = 0.5 * (ridge.x[i + 1] - ridge.x[i - 1]);
        out.push_back(ridge.x[i] + std::clamp(offset, -0.5, 0.5) * step);
    }
    return out;
}

}  // namespace cqedlab
