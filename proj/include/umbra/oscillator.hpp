#pragma once

#include "umbra/spectral.hpp"

namespace umbra {

/// Lowest eigenvalues of the continuum oscillator -1/2 d^2/dp^2 + p^2/2 on
/// [-1/a, 1/a] with clamped ends: the independent p-space oracle for the
/// lattice spectrum. Second-order finite differences on grid_points
/// interior nodes, eigenvalues only.
std::vector<double> pspace_oscillator_oracle(double a, int levels, int grid_points = 4000);

struct OscillatorPair {
    int lower_index = 0;  // indices into the sorted spectrum
    double mean = 0.0;
    double splitting = 0.0;
};

struct OscillatorReport {
    std::vector<double> eigenvalues;    // ascending, low part of the spectrum
    std::vector<int> pair_id;           // per eigenvalue; -1 if unpaired
    std::vector<OscillatorPair> pairs;
    std::vector<double> oracle;         // p-space oracle levels
    double max_pair_splitting = 0.0;    // over the lowest `pairs_requested`
    double max_mean_vs_oracle = 0.0;
    bool paired = false;                // lowest levels come as near-degenerate pairs
};

/// Diagonalizes H = (-Qc^2 + Xhat^2)/2 on a centered periodic lattice
/// (N = 2m, m odd so that Qp is invertible) and pairs near-degenerate
/// levels: the doubled spectrum of the continuum oscillator. Throws
/// std::domain_error on the parity violation.
OscillatorReport oscillator_spectrum(const PeriodicLattice& lat, int pairs_requested,
                                     double gap_factor = 1e-3);

}  // namespace umbra
