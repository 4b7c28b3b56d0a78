#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "cqedlab/fit/fitters.hpp"
#include "cqedlab/fit/ridge.hpp"
#include "cqedlab/spectro/types.hpp"

namespace cqedlab {

// Every file starts with "# <schema>" followed by a column header row. Numbers
// are written in shortest round-trip form, so identical data gives identical bytes.

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::size_t> lines;  // 1-based source line of each row
};

// Throws ParseError (with line number) on any malformed content.
CsvTable read_csv(std::istream& in, std::string_view schema);

std::string format_number(double v);

void write_map_csv(std::ostream& out, const SpectroMap& map);
SpectroMap read_map_csv(std::istream& in, MapAxis x_kind = MapAxis::flux);

void write_trace_csv(std::ostream& out, const SpectroTrace& trace);
SpectroTrace read_trace_csv(std::istream& in);

void write_decay_csv(std::ostream& out, const Eigen::VectorXd& delays_s, const Eigen::VectorXd& amplitudes);
std::pair<Eigen::VectorXd, Eigen::VectorXd> read_decay_csv(std::istream& in);

void write_branch_csv(std::ostream& out, const BranchData& data);
BranchData read_branch_csv(std::istream& in);

void write_linewidth_csv(std::ostream& out, const LinewidthSeries& series);
LinewidthSeries read_linewidth_csv(std::istream& in);

void write_ridge_csv(std::ostream& out, const Ridge& ridge);

}  // namespace cqedlab
