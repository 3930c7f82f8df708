#include "umbra/newton.hpp"

#include "umbra/stirling.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace umbra {

NewtonSeries NewtonSeries::umbral_exp(const Rat& k, const Rat& spacing, unsigned k_max) {
    NewtonSeries s;
    s.spacing = spacing;
    s.source = "exp(" + rat_string(k) + "*y)";
    s.coeffs.reserve(k_max + 1);
    Rat term(1);
    for (unsigned l = 0; l <= k_max; ++l) {
        s.coeffs.push_back(term);
        term = term * k / Rat(l + 1);
    }
    return s;
}

NewtonSeries newton_map(std::span<const Rat> f_coeffs, const Rat& spacing, unsigned k_max,
                        bool treat_as_polynomial) {
    if (!treat_as_polynomial && f_coeffs.size() < static_cast<size_t>(k_max) + 1)
        throw std::invalid_argument("newton_map: insufficient input order for requested k_max");
    NewtonSeries s;
    s.spacing = spacing;
    s.source = "newton_map";
    s.coeffs.assign(static_cast<size_t>(k_max) + 1, Rat(0));
    for (unsigned k = 0; k <= k_max; ++k) {
        Rat apow(1);
        Rat sum(0);
        for (size_t m = 0; k + m < f_coeffs.size(); ++m) {
            const Rat& f = f_coeffs[k + m];
            if (!f.is_zero()) sum += f * stirling2(static_cast<unsigned>(k + m), k) * apow;
            apow *= spacing;
        }
        s.coeffs[k] = sum;
    }
    return s;
}

std::string to_string(NewtonVerdict v) {
    switch (v) {
        case NewtonVerdict::terminating: return "terminating";
        case NewtonVerdict::converging: return "converging";
        case NewtonVerdict::diverging: return "diverging";
    }
    return "unknown";
}

namespace {

double safe_abs_double(const Rat& r) {
    const double d = std::abs(rat_double(r));
    return std::isfinite(d) ? d : std::numeric_limits<double>::max();
}

}  // namespace

NewtonEvalReport eval_newton(const NewtonSeries& series, const Rat& x, unsigned k_cut,
                             double blowup_threshold) {
    if (series.spacing.is_zero()) throw std::invalid_argument("eval_newton: zero spacing");
    NewtonEvalReport rep;
    const Rat ratio_xa = x / series.spacing;
    const bool lattice_point =
        denominator(ratio_xa) == 1 && numerator(ratio_xa) >= 0;

    Rat falling(1);  // x^(k) at the point
    Rat sum(0);
    double min_abs = std::numeric_limits<double>::infinity();
    double prev_abs = 0;
    double tail_ratio_acc = 0;
    int tail_count = 0;
    const unsigned kmax = std::min<unsigned>(k_cut, static_cast<unsigned>(series.coeffs.size()) - 1);
    for (unsigned k = 0; k <= kmax; ++k) {
        const Rat term = series.coeffs[k] * falling;
        sum += term;
        NewtonTermRow row;
        row.k = k;
        row.term = term;
        row.partial_sum = sum;
        const double abs_term = safe_abs_double(term);
        if (abs_term > 0) {
            row.ratio = (prev_abs > 0) ? abs_term / prev_abs : 0;
            if (abs_term < min_abs) min_abs = abs_term;
            rep.max_growth = std::max(rep.max_growth, abs_term / min_abs);
            if (k + 8 > kmax && row.ratio > 0) {
                tail_ratio_acc += row.ratio;
                ++tail_count;
            }
            prev_abs = abs_term;
        }
        rep.rows.push_back(std::move(row));
        falling *= (x - Rat(k) * series.spacing);
    }
    rep.value = sum;
    rep.tail_ratio = tail_count > 0 ? tail_ratio_acc / tail_count : 0;
    if (lattice_point)
        rep.verdict = NewtonVerdict::terminating;
    else if (rep.max_growth > blowup_threshold)
        rep.verdict = NewtonVerdict::diverging;
    else
        rep.verdict = NewtonVerdict::converging;
    return rep;
}

Rat ho_forward_psi(long n, const Rat& a) {
    if (n < 0) throw std::invalid_argument("ho_forward_psi: series terminates only for n >= 0");
    const Rat x = Rat(n) * a;
    Rat sum(0);
    Rat coeff(1);    // (-1)^l / (2^l l!)
    Rat falling(1);  // x^(2l) at the point
    for (long l = 0; 2 * l <= n; ++l) {
        if (l > 0) {
            coeff *= Rat(-1, 2 * l);
            falling *= (x - Rat(2 * l - 2) * a) * (x - Rat(2 * l - 1) * a);
        }
        sum += coeff * falling;
    }
    return sum;
}

namespace {

/// Right-hand side of the recast difference equation at x = n a.
Rat ho_rhs(const std::vector<Rat>& psi, long n, long offset, const Rat& a) {
    const auto at = [&](long m) { return psi[static_cast<size_t>(m + offset)]; };
    const Rat inv_a2 = Rat(1) / (a * a);
    return inv_a2 * (at(n) - Rat(2) * at(n + 1) + at(n + 2)) + at(n);
}

Rat ho_lhs_factor(long n, const Rat& a) {
    const Rat x = Rat(n) * a;
    return x * (x - a);
}

}  // namespace

HOForwardReport ho_forward_solution(unsigned n_max, const Rat& a, unsigned divergence_terms,
                                    double blowup_threshold) {
    if (a <= 0) throw std::invalid_argument("ho_forward_solution: spacing must be positive");
    HOForwardReport rep;
    rep.a = a;
    const long N = static_cast<long>(n_max);
    rep.psi.reserve(n_max + 1);
    for (long n = 0; n <= N; ++n) rep.psi.push_back(ho_forward_psi(n, a));

    // Exactness of the difference equation on the non-negative lattice,
    // 0 <= n <= n_max - 2 (the upper rows need psi(n+2)).
    rep.difference_eq_exact = true;
    for (long n = 0; n + 2 <= N; ++n) {
        const Rat lhs = (n >= 2) ? ho_lhs_factor(n, a) * rep.psi[static_cast<size_t>(n - 2)]
                                 : Rat(0);  // x (x-a) vanishes at n = 0, 1
        Rat rhs(0);
        {
            const auto at = [&](long m) { return rep.psi[static_cast<size_t>(m)]; };
            rhs = (at(n) - Rat(2) * at(n + 1) + at(n + 2)) / (a * a) + at(n);
        }
        if (lhs != rhs) rep.difference_eq_exact = false;
    }

    // Two full-lattice extensions from arbitrary seeds psi(-a), psi(-2a).
    const auto extend = [&](Rat seed1, Rat seed2) {
        HOForwardReport::Extension ext;
        ext.seed_minus_1 = seed1;
        ext.seed_minus_2 = seed2;
        std::vector<Rat> full(static_cast<size_t>(2 * N + 1), Rat(0));
        const long offset = N;  // index i <-> n = i - offset
        for (long n = 0; n <= N; ++n) full[static_cast<size_t>(n + offset)] = rep.psi[static_cast<size_t>(n)];
        if (N >= 1) full[static_cast<size_t>(-1 + offset)] = seed1;
        if (N >= 2) full[static_cast<size_t>(-2 + offset)] = seed2;
        // March downward: at x = n a with n <= -1 the factor x(x-a) is
        // nonzero, so the equation determines psi((n-2)a).
        for (long n = -1; n - 2 >= -N; --n) {
            const Rat value = ho_rhs(full, n, offset, a) / ho_lhs_factor(n, a);
            full[static_cast<size_t>(n - 2 + offset)] = value;
        }
        ext.values = std::move(full);
        ext.difference_eq_exact = true;
        for (long n = -(N - 2); n + 2 <= N; ++n) {
            const Rat lhs = ho_lhs_factor(n, a) * ext.values[static_cast<size_t>(n - 2 + N)];
            const Rat rhs = ho_rhs(ext.values, n, N, a);
            if (lhs != rhs) ext.difference_eq_exact = false;
        }
        return ext;
    };
    rep.extension_a = extend(Rat(0), Rat(0));
    rep.extension_b = extend(Rat(1), Rat(-1));

    rep.extensions_agree_nonneg = true;
    for (long n = 0; n <= N; ++n)
        if (rep.extension_a.values[static_cast<size_t>(n + N)] !=
            rep.extension_b.values[static_cast<size_t>(n + N)])
            rep.extensions_agree_nonneg = false;
    rep.extensions_differ_negative = false;
    for (long n = -N; n < 0; ++n)
        if (rep.extension_a.values[static_cast<size_t>(n + N)] !=
            rep.extension_b.values[static_cast<size_t>(n + N)])
            rep.extensions_differ_negative = true;

    // Quotient-criterion probe at the off-lattice point x = a/2: the term
    // magnitudes grow without bound.
    {
        const Rat x = a / 2;
        Rat term(1);
        double min_abs = 1.0;
        double growth = 0;
        for (unsigned l = 0; l < divergence_terms; ++l) {
            const Rat ratio =
                (x - Rat(2 * l) * a) * (x - Rat(2 * l + 1) * a) / Rat(2 * (l + 1));
            term *= ratio;
            const double abs_term = safe_abs_double(term);
            if (abs_term > 0 && abs_term < min_abs) min_abs = abs_term;
            if (abs_term > 0) growth = std::max(growth, abs_term / min_abs);
        }
        rep.growth_at_half = growth;
        rep.diverging_at_half = growth > blowup_threshold;
    }
    return rep;
}

}  // namespace umbra
