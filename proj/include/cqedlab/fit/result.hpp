#pragma once

#include <map>
#include <string>
#include <vector>

namespace cqedlab {

struct FitResult {
    std::map<std::string, double> params;
    std::map<std::string, double> sigmas;
    double residual_rms = 0.0;  // rms residual relative to rms of the data
    bool converged = false;
    int iterations = 0;
    std::vector<std::string> warnings;

    // Throws std::out_of_range if the fit did not produce `name`.
    double param(const std::string& name) const { return params.at(name); }
    double sigma(const std::string& name) const { return sigmas.at(name); }
    bool has(const std::string& name) const { return params.count(name) != 0; }
};

}  // namespace cqedlab
