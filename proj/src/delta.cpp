#include "umbra/delta.hpp"

#include <stdexcept>

namespace umbra {

DeltaKind delta_kind_from_string(const std::string& name) {
    if (name == "derivative") return DeltaKind::derivative;
    if (name == "forward") return DeltaKind::forward;
    if (name == "backward") return DeltaKind::backward;
    if (name == "central") return DeltaKind::central;
    if (name == "laguerre") return DeltaKind::laguerre;
    throw std::invalid_argument("unknown delta kind '" + name + "'");
}

std::string to_string(DeltaKind kind) {
    switch (kind) {
        case DeltaKind::derivative: return "derivative";
        case DeltaKind::forward: return "forward";
        case DeltaKind::backward: return "backward";
        case DeltaKind::central: return "central";
        case DeltaKind::laguerre: return "laguerre";
    }
    throw std::invalid_argument("unknown delta kind");
}

namespace {

void check_spacing(const SpacingScalar& s) {
    if (s.is_zero() || !s.is_monomial())
        throw std::invalid_argument("make_delta: spacing must be a nonzero monomial, got '" +
                                    s.str() + "'");
    const GaussRat& c = s.terms().begin()->second;
    if (!c.is_real() || c.real() <= 0)
        throw std::invalid_argument("make_delta: spacing coefficient must be a positive rational");
}

/// Extracts the order of D_axis when the index is supported on that axis
/// alone; -1 otherwise.
int axis_order(const DIdx& mu, int axis) {
    int m = 0;
    for (size_t i = 0; i < mu.size(); ++i) {
        if (static_cast<int>(i) == axis)
            m = mu[i];
        else if (mu[i] != 0)
            return -1;
    }
    return m;
}

}  // namespace

ShiftInvariantOp make_delta(DeltaKind kind, const SpacingScalar& spacing, int dim, int axis) {
    if (kind != DeltaKind::derivative && kind != DeltaKind::laguerre) check_spacing(spacing);
    switch (kind) {
        case DeltaKind::derivative:
            return ShiftInvariantOp::d_op(dim, axis).labeled("derivative");
        case DeltaKind::forward:
            // (e^{sD} - 1)/s : c_m = s^{m-1}/m!
            return ShiftInvariantOp(
                       dim,
                       [spacing, axis](const DIdx& mu) {
                           const int m = axis_order(mu, axis);
                           if (m <= 0) return SpacingScalar();
                           return spacing.pow(m - 1) *
                                  SpacingScalar(Rat(1, factorial(static_cast<unsigned>(m))));
                       },
                       "forward-difference")
                .labeled("forward-difference");
        case DeltaKind::backward:
            // (1 - e^{-sD})/s : c_m = (-1)^{m+1} s^{m-1}/m!
            return ShiftInvariantOp(
                dim,
                [spacing, axis](const DIdx& mu) {
                    const int m = axis_order(mu, axis);
                    if (m <= 0) return SpacingScalar();
                    Rat c(1, factorial(static_cast<unsigned>(m)));
                    if (m % 2 == 0) c = -c;
                    return spacing.pow(m - 1) * SpacingScalar(c);
                },
                "backward-difference");
        case DeltaKind::central:
            // sinh(sD)/s : c_m = s^{m-1}/m! for odd m
            return ShiftInvariantOp(
                dim,
                [spacing, axis](const DIdx& mu) {
                    const int m = axis_order(mu, axis);
                    if (m <= 0 || m % 2 == 0) return SpacingScalar();
                    return spacing.pow(m - 1) *
                           SpacingScalar(Rat(1, factorial(static_cast<unsigned>(m))));
                },
                "central-difference");
        case DeltaKind::laguerre:
            // D/(D-1) = -(D + D^2 + D^3 + ...)
            return ShiftInvariantOp(
                dim,
                [axis](const DIdx& mu) {
                    const int m = axis_order(mu, axis);
                    return m <= 0 ? SpacingScalar() : SpacingScalar(-1);
                },
                "laguerre");
    }
    throw std::invalid_argument("make_delta: unknown kind");
}

ShiftInvariantOp make_delta(DeltaKind kind, int dim, int axis) {
    return make_delta(kind, SpacingScalar::symbol(axis), dim, axis);
}

ShiftInvariantOp shift_op(const SpacingScalar& c, int dim, int axis) {
    return ShiftInvariantOp(
        dim,
        [c, axis](const DIdx& mu) {
            const int m = axis_order(mu, axis);
            if (m < 0) return SpacingScalar();
            return c.pow(m) * SpacingScalar(Rat(1, factorial(static_cast<unsigned>(m))));
        },
        "shift(" + c.str() + ")");
}

ShiftInvariantOp pincherle(const ShiftInvariantOp& op, int axis) { return op.derivative(axis); }

ShiftInvariantOp invert_series(const ShiftInvariantOp& op) { return op.inverse(); }

NormalOrderedOp basic_xhat(const ShiftInvariantOp& q, int axis) {
    if (!q.is_delta(axis)) throw std::domain_error("basic_xhat: operator is not a delta operator");
    const ShiftInvariantOp w = pincherle(q, axis).inverse();
    return NormalOrderedOp::coordinate(q.dim(), axis) * NormalOrderedOp::from_series(w);
}

NormalOrderedOp symmetric_xhat(const ShiftInvariantOp& q, int axis) {
    if (!q.is_delta(axis))
        throw std::domain_error("symmetric_xhat: operator is not a delta operator");
    const ShiftInvariantOp w = pincherle(q, axis).inverse();
    NormalOrderedOp out = NormalOrderedOp::coordinate(q.dim(), axis) * NormalOrderedOp::from_series(w);
    out += NormalOrderedOp::from_series(w.derivative(axis).scaled(SpacingScalar(Rat(1, 2))));
    return out;
}

}  // namespace umbra
