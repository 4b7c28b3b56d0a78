#include "cqedlab/jc/diagonalize.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "cqedlab/core/errors.hpp"

namespace cqedlab {

Eigen::Index JcSpectrum::state_count() const {
    Eigen::Index n = 0;
    for (const auto& m : manifolds) {
        n += m.size();
    }
    return n;
}

double JcSpectrum::dressed_cavity_pull() const {
    const Eigen::VectorXd& one = manifolds.at(1);
    const double ground = manifolds.at(0)(0);
    Eigen::Index nearest = 0;
    (one.array() - f_bare_hz).abs().minCoeff(&nearest);
    return one(nearest) - ground - f_bare_hz;
}

JcSpectrum jc_diagonalize(double fq_hz, double f_bare_hz, double g_hz, int truncation) {
    if (truncation < 2) {
        throw DomainError("photon truncation must be at least 2");
    }
    if (!(g_hz >= 0.0) || !(g_hz < f_bare_hz / 10.0)) {
        throw DomainError("coupling outside the rotating-wave regime (need 0 <= g < fb/10)");
    }

    JcSpectrum out;
    out.truncation = truncation;
    out.fq_hz = fq_hz;
    out.f_bare_hz = f_bare_hz;
    out.g_hz = g_hz;
    out.manifolds.reserve(truncation + 2);

    out.manifolds.push_back(Eigen::VectorXd::Zero(1));

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver;
    for (int m = 1; m <= truncation; ++m) {
        // basis {|g, m>, |e, m-1>}
        Eigen::Matrix2d block;
        const double coupling = g_hz * std::sqrt(double(m));
        block << m * f_bare_hz, coupling,
                 coupling, (m - 1) * f_bare_hz + fq_hz;
        Eigen::Vector2d values;
        if (coupling == 0.0) {
            values = block.diagonal();
            if (values(0) > values(1)) {
                std::swap(values(0), values(1));
            }
        } else {
            solver.compute(block, Eigen::EigenvaluesOnly);
            values = solver.eigenvalues();
        }
        out.manifolds.emplace_back(values);
    }

    out.manifolds.push_back(Eigen::VectorXd::Constant(1, truncation * f_bare_hz + fq_hz));
    return out;
}

}  // namespace cqedlab
