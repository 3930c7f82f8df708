#pragma once

#include "umbra/polynomial.hpp"

#include <span>
#include <vector>

namespace umbra {

/// Triangular table of Stirling numbers, grown on demand. Rows satisfy
///   second kind: S(n,k) = k S(n-1,k) + S(n-1,k-1)
///   first kind (signed): s(n,k) = s(n-1,k-1) - (n-1) s(n-1,k)
/// Access through stirling1/stirling2 goes to shared memo tables guarded
/// by a mutex; a table value is plain data once returned.
class StirlingTable {
public:
    enum class Kind { first_signed, second };

    explicit StirlingTable(Kind kind, unsigned cap = 64);

    Rat value(unsigned n, unsigned k);  // throws std::domain_error if k > n
    Kind kind() const { return kind_; }
    unsigned cap() const { return cap_; }

private:
    Kind kind_;
    unsigned cap_;
    std::vector<std::vector<Rat>> rows_;
    void grow(unsigned n);
};

/// S(n,k), second kind. Memoized globally; throws std::domain_error if k > n.
Rat stirling2(unsigned n, unsigned k);
/// s(n,k), first kind, signed.
Rat stirling1(unsigned n, unsigned k);

/// x^(k) = x (x-a) ... (x-(k-1)a), expanded in the monomial basis (dim 1).
LaurentPoly falling_factorial(unsigned k);

/// Coefficients F with p = sum_k F_k x^(k). The polynomial must involve a
/// single coordinate (pass axis, or let it be inferred); otherwise a
/// domain error is thrown. Spacing symbol follows the coordinate axis.
std::vector<SpacingScalar> monomial_to_factorial(const LaurentPoly& p);
std::vector<SpacingScalar> monomial_to_factorial(const LaurentPoly& p, int axis);

/// Inverse conversion: sum_k F_k x^(k) expanded in the monomial basis.
LaurentPoly factorial_to_monomial(std::span<const SpacingScalar> coeffs);

}  // namespace umbra
