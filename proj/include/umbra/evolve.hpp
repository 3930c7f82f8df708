#pragma once

#include "umbra/spectral.hpp"

#include <span>

namespace umbra {

struct WaveState {
    Eigen::VectorXcd amp;
    double t = 0.0;

    double norm() const { return amp.norm(); }
};

struct EvolveResult {
    std::vector<double> times;
    std::vector<Eigen::VectorXcd> states;
    std::vector<double> norms;
    std::vector<double> energies;
    double max_norm_drift = 0.0;
    double max_energy_drift = 0.0;
};

/// psi(t) = exp(-i H t) psi0 through one eigendecomposition. Requires H
/// Hermitian within herm_tol; norm is conserved by construction and the
/// drift is reported.
EvolveResult evolve(const LatticeMatrix& h, const WaveState& psi0, std::span<const double> t_grid,
                    double herm_tol = 1e-10);

/// The umbral-mapped oscillator Hamiltonian in its commuted operator-string
/// form, built directly from (Qc, Qp^{-1}, X):
///   (1/2) [ -Qc^2 + W^2 (X^2 - a^2/2) + 2 a^2 W^3 Qc X + (5/4) a^4 W^4 Qc^2 ],
/// with W = Qp^{-1}. Equal to (-Qc^2 + Xhat^2)/2 as operators on the
/// infinite lattice; on a finite ring the two assemblies differ by the
/// winding correction of the position diagonal (see string_agreement_report).
Eigen::MatrixXd oscillator_string_form(const PeriodicLattice& lat);

/// (-Qc^2 + Xhat^2)/2 on the same lattice.
Eigen::MatrixXd oscillator_xhat_form(const PeriodicLattice& lat);

/// Agreement report for the two Hamiltonian assemblies. The operator
/// identity behind the string is exact (verified symbolically, zero
/// tolerance, in the umbral engine); as finite matrices the assemblies
/// differ because no position diagonal on a ring has uniform unit
/// increments: [Qp, X] - a^2 Qc is a rank-2 seam term E instead of zero.
/// The report carries the deviation together with the seam term that
/// explains it; seam_explained checks that removing every E-generated
/// term restores agreement to 1e-10.
struct StringAgreementReport {
    double matrix_deviation = 0.0;    // || string - xhat form ||_max
    double seam_norm = 0.0;           // || [Qp, X] - a^2 Qc ||_max
    bool seam_explained = false;      // deviation reproduced from E exactly
    double explained_residual = 0.0;  // leftover after the E-accounting
};

StringAgreementReport string_agreement_report(const PeriodicLattice& lat);

/// Normalized Gaussian packet exp(-(x-x0)^2/(4 w^2) + i p0 x) on the sites.
Eigen::VectorXcd gaussian_packet(const LatticeDesc& lat, double x0, double width, double p0);

}  // namespace umbra
