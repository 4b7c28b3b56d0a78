#pragma once

#include <string>
#include <vector>

#include "cqedlab/spectro/types.hpp"

namespace cqedlab {

// Presentation-only renderings; nothing numeric downstream reads them.
std::string render_map_svg(const SpectroMap& map, const std::string& title, const std::string& x_label);

std::string render_line_svg(const std::vector<double>& x, const std::vector<double>& y, const std::string& title,
                            const std::string& x_label, const std::string& y_label);

}  // namespace cqedlab
