#pragma once

#include "umbra/polynomial.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace umbra {

/// Multi-index of derivative orders (D_0^{m_0} ... D_{n-1}^{m_{n-1}}).
using DIdx = std::vector<int>;

/// Enumerates all multi-indices of the given dimension with total order
/// <= max_total, in graded lexicographic order.
std::vector<DIdx> multi_indices_up_to(int dim, int max_total);

/// A shift-invariant operator: a formal power series
///   sum_mu c_mu D^mu
/// in the coordinate derivatives, with SpacingScalar coefficients produced
/// on demand by a pure generator and memoized. Acting on a polynomial of
/// degree d touches only orders <= d, so the action is finite and exact.
///
/// Values are immutable; the coefficient cache is shared between copies
/// and guarded by a mutex, so concurrent reads are safe.
class ShiftInvariantOp {
public:
    using Gen = std::function<SpacingScalar(const DIdx&)>;

    ShiftInvariantOp() : ShiftInvariantOp(zero(1)) {}
    ShiftInvariantOp(int dim, Gen gen, std::string label = "");

    static ShiftInvariantOp zero(int dim);
    static ShiftInvariantOp constant(int dim, const SpacingScalar& c);
    static ShiftInvariantOp identity(int dim);
    /// The derivative D_axis itself.
    static ShiftInvariantOp d_op(int dim, int axis = 0);
    /// Finite series from an explicit coefficient list in one axis:
    /// sum_m coeffs[m] D_axis^m.
    static ShiftInvariantOp from_coeffs(int dim, int axis,
                                        std::vector<SpacingScalar> coeffs,
                                        std::string label = "");

    int dim() const { return dim_; }
    const std::string& label() const { return label_; }
    ShiftInvariantOp labeled(std::string label) const;

    /// Coefficient of D^mu (memoized, thread-safe).
    SpacingScalar coeff(const DIdx& mu) const;
    /// 1-axis convenience: coefficient of D_axis^m.
    SpacingScalar coeff1(int m, int axis = 0) const;

    ShiftInvariantOp operator+(const ShiftInvariantOp& o) const;
    ShiftInvariantOp operator-(const ShiftInvariantOp& o) const;
    ShiftInvariantOp operator*(const ShiftInvariantOp& o) const;
    ShiftInvariantOp operator-() const;
    ShiftInvariantOp scaled(const SpacingScalar& c) const;
    ShiftInvariantOp pow(unsigned k) const;

    /// Termwise derivative with respect to D_axis: the Pincherle
    /// derivative [O, x_axis].
    ShiftInvariantOp derivative(int axis = 0) const;

    /// Reciprocal series; requires an invertible (monomial) constant term.
    /// Throws std::domain_error otherwise.
    ShiftInvariantOp inverse() const;

    /// Substitutes inner[i] for D_i; every inner series must have zero
    /// constant term. Dimensions of the inner ops must agree.
    ShiftInvariantOp composed(std::vector<ShiftInvariantOp> inner) const;

    /// Exact action on a polynomial: sum_mu c_mu d^mu p.
    LaurentPoly apply(const LaurentPoly& p) const;

    bool is_zero_to_order(int total_order) const;
    bool equal_to_order(const ShiftInvariantOp& o, int total_order) const;

    /// Delta operator in the given axis: zero constant term, unit
    /// coefficient on D_axis, and no off-axis terms up to probe_order.
    bool is_delta(int axis = 0, int probe_order = 8) const;

private:
    struct Cache;
    int dim_;
    Gen gen_;
    std::string label_;
    std::shared_ptr<Cache> cache_;
    void check_dim(const ShiftInvariantOp& o) const;
};

}  // namespace umbra
