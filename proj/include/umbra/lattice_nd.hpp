#pragma once

#include "umbra/sequence.hpp"

#include <array>
#include <optional>
#include <vector>

namespace umbra {

/// Hypercubic lattice in n dimensions. Spacings are symbols a_0..a_{n-1}
/// by default; numeric (positive rational) spacings are used for point
/// enumeration.
struct LatticeSpecND {
    int dim = 1;
    std::vector<SpacingScalar> spacing;           // one per axis
    std::optional<std::vector<Rat>> numeric;      // set for enumeration

    static LatticeSpecND symbolic(int dim);
    static LatticeSpecND with_numeric(std::vector<Rat> spacings);
};

enum class NdVariant { forward_basic, central_symmetric };

NdVariant nd_variant_from_string(const std::string& name);
std::string to_string(NdVariant v);

/// Per-dimension delta operators, shifts and coordinate images satisfying
/// [Q_i, xhat_j] = delta_ij, [Q_i, Q_j] = [xhat_i, xhat_j] = 0.
///   forward_basic:     Q_i forward difference, xhat_i = x_i S_i^{-1}
///   central_symmetric: Q_i central difference, xhat_i symmetrized
struct NdOps {
    int dim = 0;
    NdVariant variant = NdVariant::forward_basic;
    std::vector<ShiftInvariantOp> q;
    std::vector<ShiftInvariantOp> shift;
    std::vector<NormalOrderedOp> xhat;
};

NdOps build_nd_ops(const LatticeSpecND& spec, NdVariant variant);

/// Lattice angular momentum L_i = -i eps_ijk xhat_j Q_k (dim must be 3).
std::array<NormalOrderedOp, 3> angular_momentum(const NdOps& ops);

/// The radial invariant sum_k xhat_k^2 1 (x_k(x_k - a_k) for the forward
/// variant, x_k^2 - a_k^2/2 for the symmetric one).
LaurentPoly radial_invariant(const NdOps& ops);

/// Lattice points x = (m_1 a_1, ..., m_n a_n), |m_i| <= box_radius, with
/// radial invariant equal to c. Returned as integer multiples m.
std::vector<std::vector<long>> lattice_sphere(const LatticeSpecND& spec, const Rat& c,
                                              NdVariant variant, long box_radius);

/// Closure of a sphere point set under coordinate swaps and the reflection
/// m_k -> 1 - m_k per axis (forward variant; the symmetric variant reflects
/// through m_k -> -m_k). Requires equal spacings.
struct SphereSymmetryReport {
    bool closed_under_swaps = false;
    bool closed_under_reflections = false;
    int orbit_count = 0;
    std::vector<int> orbit_sizes;
};

SphereSymmetryReport sphere_symmetries_check(const std::vector<std::vector<long>>& points,
                                             const LatticeSpecND& spec, NdVariant variant);

/// Number of field species implied by the dispersion zeros: sin(a_k kappa_k)
/// vanishes twice per axis in the Brillouin zone, giving 2^n (2^{n+1} with
/// discretized time). Zero momenta returned in units of pi/a_k.
struct DoublingReport {
    long count = 0;
    std::vector<std::array<double, 2>> zeros_per_axis;  // {0, pi/a_k}
};

DoublingReport doubling_count(const LatticeSpecND& spec, bool include_time);

}  // namespace umbra
