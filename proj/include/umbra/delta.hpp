#pragma once

#include "umbra/noperator.hpp"

#include <string>

namespace umbra {

enum class DeltaKind { derivative, forward, backward, central, laguerre };

DeltaKind delta_kind_from_string(const std::string& name);
std::string to_string(DeltaKind kind);

/// Delta operator as a D_axis series:
///   derivative -> D
///   forward    -> (e^{sD} - 1)/s
///   backward   -> (1 - e^{-sD})/s
///   central    -> sinh(sD)/s
///   laguerre   -> D/(D-1) = -(D + D^2 + ...)
/// The spacing s must be a monomial c*a with positive rational c (it is
/// ignored for derivative and laguerre). Defaults to the axis symbol.
ShiftInvariantOp make_delta(DeltaKind kind, const SpacingScalar& spacing, int dim = 1,
                            int axis = 0);
ShiftInvariantOp make_delta(DeltaKind kind, int dim = 1, int axis = 0);

/// e^{c D_axis}; applied to f(x) gives f(x + c) exactly on polynomials.
ShiftInvariantOp shift_op(const SpacingScalar& c, int dim = 1, int axis = 0);

/// Pincherle derivative O' = [O, x_axis] — termwise d/dD_axis.
ShiftInvariantOp pincherle(const ShiftInvariantOp& op, int axis = 0);

/// Reciprocal formal series; requires invertible constant term.
ShiftInvariantOp invert_series(const ShiftInvariantOp& op);

/// x_axis Q'^{-1}, the Rodrigues multiplier of the basic sequence.
NormalOrderedOp basic_xhat(const ShiftInvariantOp& q, int axis = 0);

/// (x_axis Q'^{-1} + Q'^{-1} x_axis)/2 in normal form:
/// x_axis Q'^{-1} + (1/2) (Q'^{-1})'.
NormalOrderedOp symmetric_xhat(const ShiftInvariantOp& q, int axis = 0);

}  // namespace umbra
