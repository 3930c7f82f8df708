#pragma once

#include "umbra/sequence.hpp"

namespace umbra {

/// Physicists' Hermite polynomial H_n (generating function exp(2ys - s^2)),
/// as an exact univariate polynomial.
LaurentPoly hermite_poly(unsigned n);

/// Discrete Hermite polynomial: the umbral transform of H_n under the
/// given family.
LaurentPoly discrete_hermite(unsigned n, const PolySequence& seq);

/// Coefficient extraction from the two-variable factorial generating
/// function written as the double sum
///   sum_l sum_{k=1..l} 2^{l-k} (-1)^k / (k! (l-k)!) s^(l+k) x^(l-k),
/// taken literally (inner index starting at 1): the n-th polynomial is n!
/// times the coefficient of s^(n). The printed sum omits the k = 0 term, so
/// this differs from discrete_hermite(n, forward basic) by exactly
/// 2^n x^(n); the tests assert that discrepancy rather than absorbing it.
LaurentPoly hermite_from_double_sum(unsigned n);

}  // namespace umbra
