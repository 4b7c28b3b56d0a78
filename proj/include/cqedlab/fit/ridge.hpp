#pragma once

#include <cstddef>
#include <vector>

#include "cqedlab/spectro/types.hpp"

namespace cqedlab {

struct Ridge {
    std::vector<double> x;
    std::vector<double> fr_hz;
    std::vector<double> kappa_hz;
    std::size_t failed_columns = 0;
};

// Per-column dip fit around the deepest sample. Columns whose fit fails or does
// not converge are skipped and counted; more than half failing throws FitError.
Ridge extract_dip_ridge(const SpectroMap& map);

struct ColumnDips {
    double x = 0.0;
    std::vector<double> centers_hz;  // ascending
};

// Up to `max_dips` dips per column. A secondary dip is kept when its linear depth
// is at least half that of the deepest one.
std::vector<ColumnDips> extract_dip_branches(const SpectroMap& map, std::size_t max_dips = 2);

// Positions (x units) of local maxima of |d fr / dx| along a ridge that reach at
// least `min_fraction` of the largest slope.
std::vector<double> detect_plateau_transitions(const Ridge& ridge, double min_fraction = 0.1);

}  // namespace cqedlab
