#include "cqedlab/io/csv.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

#include "cqedlab/core/errors.hpp"
#include "cqedlab/io/schemas.hpp"

namespace cqedlab {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

double parse_number(std::string_view field, std::size_t line) {
    double v = 0.0;
    if (!field.empty() && field.front() == '+') {
        field.remove_prefix(1);
    }
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
        throw ParseError(line, "not a number: '" + std::string(field) + "'");
    }
    if (!std::isfinite(v)) {
        throw ParseError(line, "non-finite value");
    }
    return v;
}

void write_header(std::ostream& out, const char* schema, std::initializer_list<const char*> columns) {
    out << "# " << schema << '\n';
    bool first = true;
    for (const char* c : columns) {
        out << (first ? "" : ",") << c;
        first = false;
    }
    out << '\n';
}

void expect_columns(const CsvTable& t, std::initializer_list<const char*> names) {
    bool ok = t.columns.size() == names.size();
    std::size_t i = 0;
    for (const char* n : names) {
        ok = ok && t.columns[i++] == n;
    }
    if (!ok) {
        std::string expected;
        for (const char* n : names) {
            expected += (expected.empty() ? "" : ",") + std::string(n);
        }
        throw ParseError(2, "expected columns " + expected);
    }
}

Eigen::VectorXd column_vector(const CsvTable& t, std::size_t col) {
    Eigen::VectorXd v(Eigen::Index(t.rows.size()));
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        v(Eigen::Index(i)) = t.rows[i][col];
    }
    return v;
}

void check_increasing(const CsvTable& t, std::size_t col, const char* what) {
    for (std::size_t i = 1; i < t.rows.size(); ++i) {
        if (!(t.rows[i][col] > t.rows[i - 1][col])) {
            throw ParseError(t.lines[i], std::string(what) + " must be strictly increasing");
        }
    }
}

}  // namespace

std::string format_number(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

CsvTable read_csv(std::istream& in, std::string_view schema) {
    CsvTable table;
    std::string line;
    std::size_t lineno = 0;

    if (!std::getline(in, line)) {
        throw ParseError(1, "empty file");
    }
    ++lineno;
    const std::string expected_header = "# " + std::string(schema);
    if (trim(line) != expected_header) {
        throw ParseError(lineno, "expected schema header '" + expected_header + "'");
    }
    if (!std::getline(in, line)) {
        throw ParseError(2, "missing column header");
    }
    ++lineno;
    for (auto name : split(line)) {
        if (name.empty()) {
            throw ParseError(lineno, "empty column name");
        }
        table.columns.emplace_back(name);
    }

    while (std::getline(in, line)) {
        ++lineno;
        const auto content = trim(line);
        if (content.empty() || content.front() == '#') {
            continue;
        }
        // every writer ends rows with '\n'; a row cut short at EOF looks otherwise valid
        if (in.eof()) {
            throw ParseError(lineno, "row has no line terminator (truncated file?)");
        }
        const auto fields = split(content);
        if (fields.size() != table.columns.size()) {
            throw ParseError(lineno, "expected " + std::to_string(table.columns.size()) + " fields, found " +
                                         std::to_string(fields.size()));
        }
        std::vector<double> row;
        row.reserve(fields.size());
        for (auto f : fields) {
            row.push_back(parse_number(f, lineno));
        }
        table.rows.push_back(std::move(row));
        table.lines.push_back(lineno);
    }
    if (table.rows.empty()) {
        throw ParseError(lineno + 1, "no data rows");
    }
    return table;
}

void write_map_csv(std::ostream& out, const SpectroMap& map) {
    write_header(out, schema::kMap, {"x", "freq_hz", "s21_db"});
    for (Eigen::Index i = 0; i < map.x_axis.size(); ++i) {
        const std::string x = format_number(map.x_axis(i));
        for (Eigen::Index j = 0; j < map.y_axis.size(); ++j) {
            out << x << ',' << format_number(map.y_axis(j)) << ',' << format_number(map.values(i, j)) << '\n';
        }
    }
}

SpectroMap read_map_csv(std::istream& in, MapAxis x_kind) {
    const CsvTable t = read_csv(in, schema::kMap);
    expect_columns(t, {"x", "freq_hz", "s21_db"});

    const std::size_t total = t.rows.size();
    std::size_t ny = 0;
    while (ny < total && t.rows[ny][0] == t.rows[0][0]) {
        ++ny;
    }
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t r = 0; r < total; ++r) {
        const std::size_t k = r % ny;
        const double x = t.rows[r][0];
        const double f = t.rows[r][1];
        if (k == 0) {
            if (!xs.empty() && !(x > xs.back())) {
                throw ParseError(t.lines[r], "x must be strictly increasing between blocks");
            }
            xs.push_back(x);
        } else if (x != xs.back()) {
            throw ParseError(t.lines[r], "incomplete frequency block");
        }
        if (r < ny) {
            if (!ys.empty() && !(f > ys.back())) {
                throw ParseError(t.lines[r], "frequency must be strictly increasing within a block");
            }
            ys.push_back(f);
        } else if (f != ys[k]) {
            throw ParseError(t.lines[r], "frequency axis differs from the first block");
        }
    }
    if (total % ny != 0) {
        throw ParseError(t.lines.back(), "incomplete frequency block (truncated file?)");
    }

    SpectroMap map;
    map.x_kind = x_kind;
    map.x_axis = Eigen::Map<const Eigen::VectorXd>(xs.data(), Eigen::Index(xs.size()));
    map.y_axis = Eigen::Map<const Eigen::VectorXd>(ys.data(), Eigen::Index(ys.size()));
    map.values.resize(map.x_axis.size(), map.y_axis.size());
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        map.values(Eigen::Index(r / ys.size()), Eigen::Index(r % ys.size())) = t.rows[r][2];
    }
    return map;
}

void write_trace_csv(std::ostream& out, const SpectroTrace& trace) {
    write_header(out, schema::kTrace, {"freq_hz", "s21_db"});
    for (Eigen::Index i = 0; i < trace.axis.size(); ++i) {
        out << format_number(trace.axis(i)) << ',' << format_number(trace.values(i)) << '\n';
    }
}

SpectroTrace read_trace_csv(std::istream& in) {
    const CsvTable t = read_csv(in, schema::kTrace);
    expect_columns(t, {"freq_hz", "s21_db"});
    check_increasing(t, 0, "freq_hz");
    SpectroTrace trace;
    trace.axis = column_vector(t, 0);
    trace.values = column_vector(t, 1);
    return trace;
}

void write_decay_csv(std::ostream& out, const Eigen::VectorXd& delays_s, const Eigen::VectorXd& amplitudes) {
    write_header(out, schema::kTrace, {"delay_s", "amplitude"});
    for (Eigen::Index i = 0; i < delays_s.size(); ++i) {
        out << format_number(delays_s(i)) << ',' << format_number(amplitudes(i)) << '\n';
    }
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> read_decay_csv(std::istream& in) {
    const CsvTable t = read_csv(in, schema::kTrace);
    expect_columns(t, {"delay_s", "amplitude"});
    check_increasing(t, 0, "delay_s");
    return {column_vector(t, 0), column_vector(t, 1)};
}

void write_branch_csv(std::ostream& out, const BranchData& data) {
    write_header(out, schema::kBranch, {"fq_hz", "delta_hz"});
    for (const auto& p : data.points) {
        out << format_number(p.fq_hz) << ',' << format_number(p.delta_hz) << '\n';
    }
}

BranchData read_branch_csv(std::istream& in) {
    const CsvTable t = read_csv(in, schema::kBranch);
    expect_columns(t, {"fq_hz", "delta_hz"});
    BranchData data;
    for (const auto& row : t.rows) {
        data.points.push_back({row[0], row[1]});
    }
    return data;
}

void write_linewidth_csv(std::ostream& out, const LinewidthSeries& series) {
    const bool flux = series.axis == LinewidthSeries::Axis::flux;
    write_header(out, schema::kLinewidth, {flux ? "phi" : "power_dbm", "fwhm_hz"});
    for (const auto& p : series.points) {
        out << format_number(p.coordinate) << ',' << format_number(p.fwhm_hz) << '\n';
    }
}

LinewidthSeries read_linewidth_csv(std::istream& in) {
    const CsvTable t = read_csv(in, schema::kLinewidth);
    LinewidthSeries series;
    if (t.columns.size() == 2 && t.columns[0] == "power_dbm") {
        series.axis = LinewidthSeries::Axis::power_dbm;
        expect_columns(t, {"power_dbm", "fwhm_hz"});
    } else {
        series.axis = LinewidthSeries::Axis::flux;
        expect_columns(t, {"phi", "fwhm_hz"});
    }
    for (const auto& row : t.rows) {
        series.points.push_back({row[0], row[1]});
    }
    return series;
}

void write_ridge_csv(std::ostream& out, const Ridge& ridge) {
    write_header(out, schema::kRidge, {"x", "fr_hz", "kappa_hz"});
    for (std::size_t i = 0; i < ridge.x.size(); ++i) {
        out << format_number(ridge.x[i]) << ',' << format_number(ridge.fr_hz[i]) << ','
            << format_number(ridge.kappa_hz[i]) << '\n';
    }
}

}  // namespace cqedlab
