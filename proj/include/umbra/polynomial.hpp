#pragma once

#include "umbra/spacing.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace umbra {

/// Polynomial in the lattice coordinates x_0..x_{dim-1} with SpacingScalar
/// coefficients — the universal exact value type. Coordinate exponents are
/// non-negative; the Laurent freedom lives in the coefficients.
///
/// Term maps are kept sorted with no zero coefficients, so equality is
/// structural. Values are immutable after construction.
class LaurentPoly {
public:
    using Mono = std::vector<int>;  // length == dim, entries >= 0
    using TermMap = std::map<Mono, SpacingScalar>;

    LaurentPoly() : dim_(1) {}
    explicit LaurentPoly(int dim);

    static LaurentPoly constant(int dim, const SpacingScalar& c);
    static LaurentPoly coordinate(int dim, int axis, int power = 1);
    static LaurentPoly from_terms(int dim, TermMap terms);
    /// Univariate polynomial sum_k coeffs[k] x^k in one coordinate.
    static LaurentPoly univariate(std::span<const SpacingScalar> coeffs);

    int dim() const { return dim_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    /// Degree in one coordinate, or total degree; -1 for the zero polynomial.
    int degree(int axis) const;
    int total_degree() const;

    SpacingScalar coeff(const Mono& m) const;
    /// Leading coefficient in the given coordinate (of x_axis^degree(axis));
    /// requires the polynomial to involve only that coordinate.
    SpacingScalar leading_coeff(int axis) const;

    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly& operator*=(const LaurentPoly& o);
    LaurentPoly& operator*=(const SpacingScalar& c);

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(LaurentPoly a, const LaurentPoly& b) { return a *= b; }
    friend LaurentPoly operator*(LaurentPoly a, const SpacingScalar& c) { return a *= c; }
    friend LaurentPoly operator*(const SpacingScalar& c, LaurentPoly a) { return a *= c; }
    LaurentPoly operator-() const;

    LaurentPoly pow(unsigned k) const;

    LaurentPoly derivative(int axis) const;
    /// x_axis -> x_axis + c, expanded exactly.
    LaurentPoly shifted(int axis, const SpacingScalar& c) const;
    /// x_axis -> value (polynomial composition; value must have equal dim).
    LaurentPoly substituted(int axis, const LaurentPoly& value) const;
    /// Embeds into a larger dimension, coordinate i -> coordinate axis_map[i].
    LaurentPoly embedded(int new_dim, std::span<const int> axis_map) const;

    /// Full evaluation at a symbolic/exact point.
    SpacingScalar eval(std::span<const SpacingScalar> point) const;
    GaussRat eval_numeric(std::span<const Rat> point, std::span<const Rat> spacings) const;

    /// Split off one coordinate: coefficients of x_axis^k as polynomials
    /// in the remaining coordinates (same dim, axis exponent zeroed).
    std::vector<LaurentPoly> coeffs_in(int axis) const;
    /// True if only x_axis appears.
    bool univariate_in(int axis) const;
    /// The single coordinate appearing in the polynomial; throws
    /// std::domain_error if more than one does. Constants report axis 0.
    int sole_axis() const;

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.dim_ == b.dim_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

    std::string str() const;

private:
    int dim_;
    TermMap terms_;
    void insert(Mono m, SpacingScalar c);
    void check_dim(const LaurentPoly& o) const;
};

std::ostream& operator<<(std::ostream& os, const LaurentPoly& p);

}  // namespace umbra
