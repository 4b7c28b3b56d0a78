#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "cqedlab/spectro/types.hpp"

namespace cqedlab {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failure = 1;  // reproduction or convergence failure
inline constexpr int input = 2;
inline constexpr int io = 3;
}  // namespace exit_code

struct SimulateOptions {
    std::string kind;
    std::filesystem::path config;
    std::filesystem::path out_dir;
    bool plot = false;
    std::optional<std::uint64_t> seed_override;
};

struct FitOptions {
    std::string kind;
    std::filesystem::path input;
    std::optional<std::filesystem::path> out;  // default: <input stem>.fit.json beside the input
    std::optional<double> f_bare_hz;
    std::optional<double> t1_s;
    std::optional<double> fq_max_hz;
    double window = 0.05;
    bool peak = false;
    MapAxis map_axis = MapAxis::flux;
    bool allow_nonconverged = false;
};

struct ExtractOptions {
    std::string quantity;
    std::map<std::string, double> args;  // flag name without dashes -> value
};

struct ReportOptions {
    std::optional<std::filesystem::path> json;
    double g_scale = 1.0;
};

// Each command returns an exit code and reports errors on `err`; nothing throws.
int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err);
int cmd_fit(const FitOptions& opt, std::ostream& out, std::ostream& err);
int cmd_extract(const ExtractOptions& opt, std::ostream& out, std::ostream& err);
int cmd_report_paper_numbers(const ReportOptions& opt, std::ostream& out, std::ostream& err);

// Parses CQEDLAB_SEED when set; a malformed value throws ConfigError.
std::optional<std::uint64_t> seed_from_env();

}  // namespace cqedlab
