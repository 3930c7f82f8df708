#pragma once

#include "umbra/delta.hpp"

#include <memory>
#include <vector>

namespace umbra {

/// Indexed polynomial family q_0, q_1, ... generated by a delta operator Q
/// and an xhat recipe through q_k = xhat^k 1. Basic sequences use
/// xhat = x Q'^{-1} (q_k(0) = 0 for k > 0, binomial type); Sheffer sets use
/// the symmetrized xhat and may have s_k(0) != 0.
///
/// The cache grows monotonically behind a mutex; shared copies are safe to
/// read concurrently.
class PolySequence {
public:
    enum class Flavor { basic, sheffer };

    PolySequence(ShiftInvariantOp delta, NormalOrderedOp xhat, Flavor flavor, int axis = 0);

    const ShiftInvariantOp& delta() const { return delta_; }
    const NormalOrderedOp& xhat() const { return xhat_; }
    Flavor flavor() const { return flavor_; }
    int axis() const { return axis_; }

    /// k-th polynomial of the family (degree k, exact).
    LaurentPoly poly(unsigned k) const;
    /// Value at the origin, s_k(0).
    SpacingScalar at_zero(unsigned k) const;

    /// Expands p exactly in this family: p = sum_k coeffs[k] poly(k).
    std::vector<SpacingScalar> expand(const LaurentPoly& p) const;

private:
    ShiftInvariantOp delta_;
    NormalOrderedOp xhat_;
    Flavor flavor_;
    int axis_;
    struct Cache;
    std::shared_ptr<Cache> cache_;
};

/// Basic sequence of a delta operator (Rodrigues recursion q_k = xhat q_{k-1}).
PolySequence basic_sequence(const ShiftInvariantOp& q, int axis = 0);
/// Sheffer set generated by the symmetric xhat.
PolySequence sheffer_sequence(const ShiftInvariantOp& q, int axis = 0);

/// Coefficients C(n,k) s_k(0) of the expansion s_n = sum_k C(n,k) s_k(0) q_{n-k},
/// verified exactly against the sequences; throws std::invalid_argument when
/// the two families have different delta operators, std::logic_error when the
/// identity fails.
std::vector<SpacingScalar> sheffer_expand(const PolySequence& s, const PolySequence& q, unsigned n);

/// f(xhat) 1: replaces the monomial x^k by the family's k-th polynomial.
/// Linear; maps 1 to 1. The input must be univariate in the family's axis.
LaurentPoly umbral_transform(const LaurentPoly& f, const PolySequence& seq);

/// Multivariate version with one family per coordinate.
LaurentPoly umbral_transform(const LaurentPoly& f, std::span<const PolySequence> seqs);

/// The associative, commutative product with poly(k) * poly(l) = poly(k+l).
LaurentPoly star_product(const LaurentPoly& f, const LaurentPoly& h, const PolySequence& seq);

/// Substitutes x_i -> xhat_i, D_i -> Q_i in a normal-ordered continuum
/// operator; commutators of images equal images of commutators.
NormalOrderedOp map_equation(const NormalOrderedOp& continuum,
                             std::span<const ShiftInvariantOp> q,
                             std::span<const NormalOrderedOp> xhat);
NormalOrderedOp map_equation(const NormalOrderedOp& continuum, const ShiftInvariantOp& q,
                             const NormalOrderedOp& xhat);

}  // namespace umbra
