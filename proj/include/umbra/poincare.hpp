#pragma once

#include "umbra/lattice_nd.hpp"

#include <array>
#include <string>
#include <vector>

namespace umbra {

/// 4x4 matrix over the Gaussian rationals.
using GMat4 = std::array<std::array<GaussRat, 4>, 4>;

GMat4 gmat_zero();
GMat4 gmat_identity();
GMat4 gmat_mul(const GMat4& a, const GMat4& b);
GMat4 gmat_add(const GMat4& a, const GMat4& b);
GMat4 gmat_scale(const GMat4& a, const GaussRat& c);
GMat4 gmat_conj_transpose(const GMat4& a);
/// Gauss-Jordan inverse; throws std::domain_error if singular.
GMat4 gmat_inverse(const GMat4& a);

/// Four gamma matrices with {g^mu, g^nu} = 2 eta^{mu nu}, eta = (+,-,-,-).
struct GammaSet {
    std::array<GMat4, 4> gamma;

    static GammaSet dirac_basis();
    /// U gamma U^dagger for a rational unitary built by a Cayley transform
    /// of an anti-Hermitian seed; preserves the Clifford relations.
    GammaSet conjugated(const GMat4& antihermitian_seed) const;

    bool valid() const;  // checks the anticommutation table exactly
};

/// Lattice representation of the Poincare generators over three spatial
/// axes (0..2) plus continuous time (axis 3, plain derivative):
///   P_i = -i Q_i,  P_0 = -i d_t,
///   M_i = eps_ijk xhat_j P_k,
///   L_i = y_0 P_i + boost_sign * kappa * xhat_i P_0.
/// With boost_sign = +1 the quadratic invariant -d_t^2 + sum Q_k^2 is
/// central at kappa = 1; the -1 variant still closes (into the compact
/// real form) but that invariant is no longer central - the verifier
/// reports this rather than asserting it away.
struct PoincareRep {
    int dim = 4;
    Rat kappa;
    int boost_sign = 1;
    NdVariant variant = NdVariant::central_symmetric;
    std::vector<ShiftInvariantOp> q;      // Q_1..Q_3 and d_t, dim-4 series
    std::vector<NormalOrderedOp> xhat;    // xhat_1..xhat_3 and y_0
    std::array<NormalOrderedOp, 4> p;     // index 0..2 spatial, 3 = time
    std::array<NormalOrderedOp, 3> m;     // rotations
    std::array<NormalOrderedOp, 3> l;     // boosts
    NormalOrderedOp casimir;              // -d_t^2 + sum Q_k^2

    PoincareRep() : casimir(4) {}
};

PoincareRep poincare_rep(NdVariant variant, const Rat& kappa, int boost_sign = 1);

/// One commutation relation, verified structurally to the given series
/// order and by application to all monomials of total degree <= degree.
struct RelationCheck {
    std::string relation;
    bool holds = false;
};

struct PoincareReport {
    int rotation_sign = 0;  // +1 if [M_1, M_2] = +i M_3, -1 for -i, 0 if neither
    std::vector<RelationCheck> relations;
    bool closed = false;            // all relations hold
    bool casimir_central = false;   // Casimir commutes with every generator
};

PoincareReport verify_poincare(const PoincareRep& rep, int degree = 4, int series_order = 6);

/// so(3) closure of the lattice angular momentum:
/// [L_i, L_j] = i eps_ijk L_k, checked structurally and on monomials.
struct So3Report {
    std::vector<RelationCheck> relations;
    bool closed = false;
    bool annihilates_radial_invariant = false;
};

So3Report verify_so3(const NdOps& ops, int degree = 5, int series_order = 7);

/// Exact check of the 4x4 operator-matrix identity
///   (i g^0 d_t + i g^k Q_k - m)(i g^0 d_t + i g^k Q_k + m)
///     = -d_t^2 + sum_k Q_k^2 - m^2.
bool dirac_factorization_check(const GammaSet& gammas, NdVariant variant, const Rat& mass,
                               int series_order = 6);

}  // namespace umbra
