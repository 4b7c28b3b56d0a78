#include "cqedlab/io/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace cqedlab {

namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 480;
constexpr double kLeft = 80;
constexpr double kRight = 30;
constexpr double kTop = 40;
constexpr double kBottom = 60;
constexpr Eigen::Index kMaxCells = 200;

std::string fmt(double v, const char* spec = "%.4g") {
    char buf[48];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += c;
        }
    }
    return out;
}

// viridis-like ramp through five anchors
std::string color(double t) {
    static constexpr std::array<std::array<double, 3>, 5> anchors{{
        {68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}}};
    t = std::clamp(t, 0.0, 1.0) * 4.0;
    const int k = std::min(int(t), 3);
    const double u = t - k;
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", int(anchors[k][0] + u * (anchors[k + 1][0] - anchors[k][0])),
                  int(anchors[k][1] + u * (anchors[k + 1][1] - anchors[k][1])),
                  int(anchors[k][2] + u * (anchors[k + 1][2] - anchors[k][2])));
    return buf;
}

void frame(std::ostringstream& out, const std::string& title, const std::string& x_label,
           const std::string& y_label, double x0, double x1, double y0, double y1) {
    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    out << "<rect x='" << kLeft << "' y='" << kTop << "' width='" << pw << "' height='" << ph
        << "' fill='none' stroke='black'/>\n";
    out << "<text x='" << kWidth / 2 << "' y='24' text-anchor='middle' font-size='16'>" << escape(title)
        << "</text>\n";
    out << "<text x='" << kLeft + pw / 2 << "' y='" << kHeight - 15
        << "' text-anchor='middle' font-size='13'>" << escape(x_label) << "</text>\n";
    out << "<text x='18' y='" << kTop + ph / 2 << "' text-anchor='middle' font-size='13' transform='rotate(-90 18 "
        << kTop + ph / 2 << ")'>" << escape(y_label) << "</text>\n";
    for (int k = 0; k <= 4; ++k) {
        const double u = k / 4.0;
        const double px = kLeft + u * pw;
        const double py = kTop + ph - u * ph;
        out << "<text x='" << px << "' y='" << kTop + ph + 18 << "' text-anchor='middle' font-size='11'>"
            << fmt(x0 + u * (x1 - x0)) << "</text>\n";
        out << "<text x='" << kLeft - 6 << "' y='" << py + 4 << "' text-anchor='end' font-size='11'>"
            << fmt(y0 + u * (y1 - y0)) << "</text>\n";
    }
}

}  // namespace

std::string render_map_svg(const SpectroMap& map, const std::string& title, const std::string& x_label) {
    std::ostringstream out;
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth << "' height='" << kHeight << "'>\n";
    out << "<rect width='100%' height='100%' fill='white'/>\n";

    const Eigen::Index nx = map.x_axis.size();
    const Eigen::Index ny = map.y_axis.size();
    const Eigen::Index cx = std::min(nx, kMaxCells);
    const Eigen::Index cy = std::min(ny, kMaxCells);
    const double lo = map.values.minCoeff();
    const double hi = map.values.maxCoeff();
    const double range = hi > lo ? hi - lo : 1.0;
    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    const double w = pw / double(cx);
    const double h = ph / double(cy);
    for (Eigen::Index i = 0; i < cx; ++i) {
        const Eigen::Index si = i * nx / cx;
        for (Eigen::Index j = 0; j < cy; ++j) {
            const Eigen::Index sj = j * ny / cy;
            out << "<rect x='" << fmt(kLeft + i * w, "%.2f") << "' y='" << fmt(kTop + ph - (j + 1) * h, "%.2f")
                << "' width='" << fmt(w + 0.3, "%.2f") << "' height='" << fmt(h + 0.3, "%.2f") << "' fill='"
                << color((map.values(si, sj) - lo) / range) << "'/>\n";
        }
    }
    frame(out, title, x_label, "Frequency (GHz)", map.x_axis(0), map.x_axis(nx - 1), map.y_axis(0) / 1e9,
          map.y_axis(ny - 1) / 1e9);
    out << "</svg>\n";
    return out.str();
}

std::string render_line_svg(const std::vector<double>& x, const std::vector<double>& y, const std::string& title,
                            const std::string& x_label, const std::string& y_label) {
    std::ostringstream out;
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth << "' height='" << kHeight << "'>\n";
    out << "<rect width='100%' height='100%' fill='white'/>\n";
    if (!x.empty() && x.size() == y.size()) {
        const auto [xmin, xmax] = std::minmax_element(x.begin(), x.end());
        const auto [ymin, ymax] = std::minmax_element(y.begin(), y.end());
        const double xr = *xmax > *xmin ? *xmax - *xmin : 1.0;
        const double yr = *ymax > *ymin ? *ymax - *ymin : 1.0;
        const double pw = kWidth - kLeft - kRight;
        const double ph = kHeight - kTop - kBottom;
        out << "<polyline fill='none' stroke='#1f77b4' stroke-width='1.5' points='";
        for (std::size_t i = 0; i < x.size(); ++i) {
            out << fmt(kLeft + (x[i] - *xmin) / xr * pw, "%.2f") << ','
                << fmt(kTop + ph - (y[i] - *ymin) / yr * ph, "%.2f") << ' ';
        }
        out << "'/>\n";
        frame(out, title, x_label, y_label, *xmin, *xmin + xr, *ymin, *ymin + yr);
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace cqedlab
