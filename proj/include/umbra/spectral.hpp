#pragma once

#include "umbra/numeric.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace umbra {

/// Periodic lattice with N sites and spacing a. Default sites are
/// x_j = j a, j = 0..N-1 (index arithmetic mod N); `centered` shifts the
/// labels to (j - N/2) a for problems that need a potential centered in
/// the window. Circulant operators are unaffected by the labeling.
struct PeriodicLattice {
    int N = 2;
    double a = 1.0;
    bool centered = false;

    std::vector<double> sites() const;
};

/// Zero-padded window into the infinite lattice: N odd, sites j a for
/// j = -(N-1)/2 .. (N-1)/2.
struct TruncatedLattice {
    int N = 3;  // odd
    double a = 1.0;

    std::vector<double> sites() const;
    int half() const { return (N - 1) / 2; }
};

using LatticeDesc = std::variant<PeriodicLattice, TruncatedLattice>;

std::string lattice_label(const LatticeDesc& lat);

/// Dense complex matrix tagged with its lattice and a verified
/// hermiticity flag (deviation measured in the max norm).
struct LatticeMatrix {
    Eigen::MatrixXcd m;
    std::string lattice;
    bool hermitian = false;
    double herm_deviation = 0.0;

    static LatticeMatrix tag(Eigen::MatrixXcd mat, const LatticeDesc& lat, double tol = 1e-12);
};

/// Position, central difference, its Pincherle derivative, and (where
/// Q'^{-1} exists) the symmetrized coordinate image:
///   X    = diag(x_j)
///   Qc   = (S - S^{-1}) / (2a)        (-i Qc is the momentum)
///   Qp   = (S + S^{-1}) / 2
///   Xhat = (X Qp^{-1} + Qp^{-1} X)/2
/// On a periodic lattice Qp is invertible iff N is odd or N = 2m with m
/// odd; on the zero-padded window it is always singular (xhat_error says
/// why Xhat is absent).
struct BuiltMatrices {
    Eigen::MatrixXd X;
    Eigen::MatrixXd Qc;   // real antisymmetric; momentum is -i Qc
    Eigen::MatrixXd Qp;
    std::optional<Eigen::MatrixXd> Qp_inv;
    std::optional<Eigen::MatrixXd> Xhat;
    std::string xhat_error;
    double qc_antisym_deviation = 0.0;
    double shift_boundary_defect = 0.0;  // ||S S^T - I||_max, nonzero on the window
    /// || [Qc, Xhat] - I ||_max where Xhat exists: the finite-lattice
    /// footprint of the domain subtleties; reported, never asserted zero.
    double ccr_deviation = 0.0;
};

/// Parity condition for the invertibility of Qp on a periodic lattice.
bool qp_invertible(int N);

BuiltMatrices build_matrices(const LatticeDesc& lat);

/// Shift matrix S f (x) = f(x + a) for either lattice type.
Eigen::MatrixXd shift_matrix(const LatticeDesc& lat);

/// Closed-form Q'^{-1} on a periodic lattice as an alternating sum of odd
/// (N = 2m, m odd) or mixed (N odd) shift powers. Throws std::domain_error
/// for N = 2m with m even, where det Qp = 0.
Eigen::MatrixXd qp_inverse_closed_form(const PeriodicLattice& lat);

/// The same closed form as exact circulant weights (coefficients of S^k),
/// for zero-tolerance verification of Qp * Q'^{-1} = I.
std::vector<Rat> qp_inverse_weights(int N);

/// Exact circulant convolution check: weights(Qp) * weights against the
/// identity, in rational arithmetic.
bool qp_inverse_exact_identity(int N);

struct DispersionReport {
    std::vector<double> eigenvalues;        // of -i Qc, ascending
    std::vector<double> expected;           // sin(a k_n)/a, ascending
    double max_abs_error = 0.0;
    double spectral_radius = 0.0;
    double bound = 0.0;                     // 1/a
    bool bound_respected = false;
};

DispersionReport dispersion_check(const PeriodicLattice& lat);

/// Samples exp[i (x/a) arcsin(lambda a)] on the sites and reports the
/// max-norm residual of the eigenvalue equation on interior rows.
/// Requires |lambda a| < 1.
struct MomentumEigenfunction {
    Eigen::VectorXcd f;
    double residual = 0.0;
};

MomentumEigenfunction momentum_eigenfunction(double lambda, const LatticeDesc& lat);

}  // namespace umbra
