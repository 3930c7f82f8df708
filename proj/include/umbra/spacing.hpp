#pragma once

#include "umbra/numeric.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace umbra {

/// Scalar of the exact engine: a Laurent polynomial in the lattice spacing
/// symbols a_0, a_1, ... with Gaussian-rational coefficients. Exponents may
/// be negative (1/(2a) and friends). One symbol per lattice axis; the
/// 1-dimensional operators only ever use a_0, printed as "a".
///
/// Values are immutable after construction and normalized: no zero
/// coefficients, exponent keys carry no trailing zeros, term maps are
/// ordered — equality is structural.
class SpacingScalar {
public:
    /// Exponents of (a_0, a_1, ...); normalized to drop trailing zeros.
    using Exp = std::vector<int>;
    using TermMap = std::map<Exp, GaussRat>;

    SpacingScalar() = default;  // zero
    SpacingScalar(int n);                 // NOLINT(google-explicit-constructor)
    SpacingScalar(const Rat& c);          // NOLINT(google-explicit-constructor)
    SpacingScalar(const GaussRat& c);     // NOLINT(google-explicit-constructor)

    /// a_axis^power
    static SpacingScalar symbol(int axis = 0, int power = 1);
    static SpacingScalar monomial(const GaussRat& c, int axis, int power);
    static SpacingScalar from_terms(TermMap terms);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool is_monomial() const { return terms_.size() == 1; }
    /// Constant term as a value; throws std::domain_error if non-constant.
    GaussRat constant_value() const;

    GaussRat coeff(const Exp& e) const;
    const TermMap& terms() const { return terms_; }

    SpacingScalar& operator+=(const SpacingScalar& o);
    SpacingScalar& operator-=(const SpacingScalar& o);
    SpacingScalar& operator*=(const SpacingScalar& o);

    friend SpacingScalar operator+(SpacingScalar a, const SpacingScalar& b) { return a += b; }
    friend SpacingScalar operator-(SpacingScalar a, const SpacingScalar& b) { return a -= b; }
    friend SpacingScalar operator*(SpacingScalar a, const SpacingScalar& b) { return a *= b; }
    SpacingScalar operator-() const;

    /// Reciprocal; defined for monomials only (the units of the ring).
    SpacingScalar inverse() const;
    SpacingScalar operator/(const SpacingScalar& divisor) const { return *this * divisor.inverse(); }

    SpacingScalar pow(int k) const;  // negative k allowed for monomials

    friend bool operator==(const SpacingScalar& a, const SpacingScalar& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const SpacingScalar& a, const SpacingScalar& b) { return !(a == b); }

    /// Substitutes numeric values for the spacing symbols.
    GaussRat eval(std::span<const Rat> spacings) const;
    std::complex<double> eval_complex(std::span<const double> spacings) const;

    std::string str() const;

private:
    TermMap terms_;
    void insert(Exp e, GaussRat c);
};

std::ostream& operator<<(std::ostream& os, const SpacingScalar& s);

}  // namespace umbra
