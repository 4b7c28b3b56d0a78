#pragma once

#include <vector>

#include <Eigen/Core>

namespace cqedlab {

// Eigenvalues (E/h, Hz) of the rotating-wave Jaynes-Cummings Hamiltonian
//   H/h = fb a^dag a + fq |e><e| + g (a^dag s- + a s+)
// in the product basis truncated at `truncation` photons. manifolds[m] holds the
// sorted eigenvalues of the block with m excitations; the last block
// (m = truncation + 1) contains only |e, truncation>.
struct JcSpectrum {
    int truncation = 0;
    double fq_hz = 0.0;
    double f_bare_hz = 0.0;
    double g_hz = 0.0;
    std::vector<Eigen::VectorXd> manifolds;

    Eigen::Index state_count() const;

    // (E|g,1~> - E|g,0~>) - fb, using the cavity-like member of the
    // one-excitation doublet. Tends to -chi in the dispersive limit.
    double dressed_cavity_pull() const;
};

// Throws DomainError if truncation < 2 or g is outside the RWA guard (g < fb/10).
JcSpectrum jc_diagonalize(double fq_hz, double f_bare_hz, double g_hz, int truncation);

}  // namespace cqedlab
