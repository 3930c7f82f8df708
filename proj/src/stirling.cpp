#include "umbra/stirling.hpp"

#include <mutex>
#include <stdexcept>

namespace umbra {

StirlingTable::StirlingTable(Kind kind, unsigned cap) : kind_(kind), cap_(cap) {
    rows_.push_back({Rat(1)});  // n = 0 row
}

void StirlingTable::grow(unsigned n) {
    while (rows_.size() <= n) {
        const unsigned m = static_cast<unsigned>(rows_.size());  // building row m
        const auto& prev = rows_.back();
        std::vector<Rat> row(m + 1);
        for (unsigned k = 0; k <= m; ++k) {
            const Rat above = (k <= m - 1) ? prev[k] : Rat(0);
            const Rat diag = (k >= 1) ? prev[k - 1] : Rat(0);
            row[k] = (kind_ == Kind::second) ? Rat(k) * above + diag
                                             : diag - Rat(m - 1) * above;
        }
        rows_.push_back(std::move(row));
    }
}

Rat StirlingTable::value(unsigned n, unsigned k) {
    if (k > n) throw std::domain_error("StirlingTable: k > n");
    if (n > cap_) throw std::domain_error("StirlingTable: n exceeds table cap");
    grow(n);
    return rows_[n][k];
}

namespace {

std::mutex g_stirling_mutex;

Rat memoized(StirlingTable::Kind kind, unsigned n, unsigned k) {
    static StirlingTable second(StirlingTable::Kind::second);
    static StirlingTable first(StirlingTable::Kind::first_signed);
    std::lock_guard<std::mutex> lock(g_stirling_mutex);
    return (kind == StirlingTable::Kind::second ? second : first).value(n, k);
}

}  // namespace

Rat stirling2(unsigned n, unsigned k) { return memoized(StirlingTable::Kind::second, n, k); }
Rat stirling1(unsigned n, unsigned k) { return memoized(StirlingTable::Kind::first_signed, n, k); }

LaurentPoly falling_factorial(unsigned k) {
    LaurentPoly p = LaurentPoly::constant(1, SpacingScalar(1));
    const LaurentPoly x = LaurentPoly::coordinate(1, 0);
    for (unsigned j = 0; j < k; ++j)
        p *= x - LaurentPoly::constant(1, SpacingScalar::monomial(GaussRat(Rat(j)), 0, 1));
    return p;
}

std::vector<SpacingScalar> monomial_to_factorial(const LaurentPoly& p) {
    return monomial_to_factorial(p, p.sole_axis());
}

std::vector<SpacingScalar> monomial_to_factorial(const LaurentPoly& p, int axis) {
    if (!p.univariate_in(axis))
        throw std::domain_error("monomial_to_factorial: multivariate input");
    const int deg = p.degree(axis);
    std::vector<SpacingScalar> out(static_cast<size_t>(std::max(deg, 0)) + 1);
    if (p.is_zero()) return out;
    for (const auto& [m, c] : p.terms()) {
        const unsigned n = static_cast<unsigned>(m[static_cast<size_t>(axis)]);
        for (unsigned k = 0; k <= n; ++k) {
            const Rat s = stirling2(n, k);
            if (s.is_zero()) continue;
            out[k] += c * SpacingScalar::monomial(GaussRat(s), axis, static_cast<int>(n - k));
        }
    }
    return out;
}

LaurentPoly factorial_to_monomial(std::span<const SpacingScalar> coeffs) {
    LaurentPoly out(1);
    for (size_t n = 0; n < coeffs.size(); ++n) {
        if (coeffs[n].is_zero()) continue;
        std::vector<SpacingScalar> mono(n + 1);
        for (unsigned k = 0; k <= n; ++k) {
            const Rat s = stirling1(static_cast<unsigned>(n), k);
            if (s.is_zero()) continue;
            mono[k] = coeffs[n] * SpacingScalar::monomial(GaussRat(s), 0, static_cast<int>(n - k));
        }
        out += LaurentPoly::univariate(mono);
    }
    return out;
}

}  // namespace umbra
