#pragma once

#include "umbra/numeric.hpp"

#include <span>
#include <string>
#include <vector>

namespace umbra {

/// A series in the falling-factorial basis, sum_k F_k x^(k), with exact
/// rational coefficients and a fixed numeric spacing. Partial sums at
/// lattice points x = n a (n >= 0) stabilize once k > n.
struct NewtonSeries {
    std::vector<Rat> coeffs;  // F_0, F_1, ...
    Rat spacing;
    std::string source;

    /// Factorial-basis coefficients of the term-by-term image of exp(k y):
    /// F_l = k^l / l!.
    static NewtonSeries umbral_exp(const Rat& k, const Rat& spacing, unsigned k_max);
};

/// Monomial-to-factorial conversion of a power series,
///   F_k = sum_m f_{k+m} S(k+m, k) a^m,
/// truncated to the supplied coefficients. For inputs that are truncated
/// series (not polynomials) the caller must supply guard terms beyond k_max;
/// with treat_as_polynomial the missing tail is taken as exactly zero.
/// Throws std::invalid_argument when f has fewer than k_max+1 terms and is
/// not declared a polynomial.
NewtonSeries newton_map(std::span<const Rat> f_coeffs, const Rat& spacing, unsigned k_max,
                        bool treat_as_polynomial = false);

enum class NewtonVerdict { terminating, converging, diverging };

std::string to_string(NewtonVerdict v);

struct NewtonTermRow {
    unsigned k = 0;
    Rat term;          // F_k x^(k)
    Rat partial_sum;
    double ratio = 0;  // |T_k / T_{k-1}|, 0 when undefined
};

struct NewtonEvalReport {
    Rat value;                   // partial sum through k_cut
    NewtonVerdict verdict = NewtonVerdict::converging;
    double max_growth = 0;       // max_k |T_k| / min_{j<=k} |T_j| over nonzero terms
    double tail_ratio = 0;       // |T_k/T_{k-1}| averaged over the last few terms
    std::vector<NewtonTermRow> rows;
};

/// Evaluates partial sums of the series at x, with a divergence verdict:
/// terminating when x/a is a non-negative integer, otherwise diverging when
/// the term magnitudes have grown by blowup_threshold over their minimum by
/// term k_cut.
NewtonEvalReport eval_newton(const NewtonSeries& series, const Rat& x, unsigned k_cut,
                             double blowup_threshold = 1e6);

/// Forward-difference oscillator at E = 1/2: the terminating factorial
/// series psi(x) = sum_l (-1)^l / (2^l l!) x^(2l) evaluated on the
/// non-negative lattice, checked exactly against the recast second-order
/// difference equation
///   x (x-a) psi(x-2a) = (1/a^2) [psi(x) - 2 psi(x+a) + psi(x+2a)] + psi(x),
/// plus two full-lattice extensions (the equation leaves psi(-a), psi(-2a)
/// free) and a quotient-criterion divergence probe at an off-lattice point.
struct HOForwardReport {
    Rat a;
    std::vector<Rat> psi;           // psi(n a), n = 0..n_max
    bool difference_eq_exact = false;
    // Extensions: psi(n a) for n = -n_max..n_max, as (seed pair -> values).
    struct Extension {
        Rat seed_minus_1, seed_minus_2;  // psi(-a), psi(-2a)
        std::vector<Rat> values;         // index i <-> n = i - n_max
        bool difference_eq_exact = false;
    };
    Extension extension_a, extension_b;
    bool extensions_agree_nonneg = false;
    bool extensions_differ_negative = false;
    // Divergence probe at x = a/2.
    double growth_at_half = 0;       // |T_50| / min_j |T_j|
    bool diverging_at_half = false;
};

HOForwardReport ho_forward_solution(unsigned n_max, const Rat& a, unsigned divergence_terms = 50,
                                    double blowup_threshold = 1e6);

/// psi value of the terminating series at x = n a (exact).
Rat ho_forward_psi(long n, const Rat& a);

}  // namespace umbra
