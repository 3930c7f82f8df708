#pragma once

#include "umbra/series.hpp"

#include <map>

namespace umbra {

/// Operator in normal form: a finite sum of terms x^m f_m(D), one per
/// coordinate multi-index m, with every coordinate factor standing to the
/// left of every D-series. Multiplication reorders with the single rewrite
/// rule f(D) x_i = x_i f(D) + (d f / d D_i)(D), applied through the
/// multi-binomial identity
///   f(D) x^r = sum_{nu <= r} C(r, nu) x^{r - nu} (d^nu f)(D).
class NormalOrderedOp {
public:
    using Mono = LaurentPoly::Mono;
    using TermMap = std::map<Mono, ShiftInvariantOp>;

    NormalOrderedOp() : NormalOrderedOp(1) {}
    explicit NormalOrderedOp(int dim);

    static NormalOrderedOp zero(int dim) { return NormalOrderedOp(dim); }
    static NormalOrderedOp identity(int dim);
    static NormalOrderedOp constant(int dim, const SpacingScalar& c);
    /// Multiplication by the coordinate x_axis.
    static NormalOrderedOp coordinate(int dim, int axis);
    static NormalOrderedOp from_series(const ShiftInvariantOp& f);
    /// x^m f(D) as a single term.
    static NormalOrderedOp term(Mono m, const ShiftInvariantOp& f);

    int dim() const { return dim_; }
    const TermMap& terms() const { return terms_; }

    NormalOrderedOp& operator+=(const NormalOrderedOp& o);
    NormalOrderedOp& operator-=(const NormalOrderedOp& o);

    friend NormalOrderedOp operator+(NormalOrderedOp a, const NormalOrderedOp& b) { return a += b; }
    friend NormalOrderedOp operator-(NormalOrderedOp a, const NormalOrderedOp& b) { return a -= b; }
    NormalOrderedOp operator*(const NormalOrderedOp& o) const;
    NormalOrderedOp operator-() const;
    NormalOrderedOp scaled(const SpacingScalar& c) const;
    NormalOrderedOp pow(unsigned k) const;

    LaurentPoly apply(const LaurentPoly& p) const;

    bool is_zero_to_order(int series_order) const;
    bool equal_to_order(const NormalOrderedOp& o, int series_order) const;

    /// Drops terms whose series vanish to the given order. Purely cosmetic:
    /// equality and application are insensitive to stored zero terms.
    NormalOrderedOp pruned(int series_order) const;

private:
    int dim_;
    TermMap terms_;
    void add_term(const Mono& m, const ShiftInvariantOp& f);
    void check_dim(const NormalOrderedOp& o) const;
};

NormalOrderedOp commutator(const NormalOrderedOp& a, const NormalOrderedOp& b);

}  // namespace umbra
