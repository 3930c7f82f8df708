#include "umbra/hermite.hpp"

#include "umbra/stirling.hpp"

namespace umbra {

LaurentPoly hermite_poly(unsigned n) {
    // H_0 = 1, H_1 = 2y, H_{k+1} = 2 y H_k - 2 k H_{k-1}
    LaurentPoly prev = LaurentPoly::constant(1, SpacingScalar(1));
    if (n == 0) return prev;
    const LaurentPoly y = LaurentPoly::coordinate(1, 0);
    LaurentPoly cur = y * SpacingScalar(2);
    for (unsigned k = 1; k < n; ++k) {
        LaurentPoly next = y * cur * SpacingScalar(2) - prev * SpacingScalar(Rat(2) * Rat(k));
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

LaurentPoly discrete_hermite(unsigned n, const PolySequence& seq) {
    return umbral_transform(hermite_poly(n), seq);
}

LaurentPoly hermite_from_double_sum(unsigned n) {
    // Terms with s^(l+k): l + k = n, k >= 1, l - k = n - 2k >= 0.
    LaurentPoly out(1);
    const Rat nfact(factorial(n));
    for (unsigned k = 1; 2 * k <= n; ++k) {
        const unsigned l = n - k;
        Rat c = nfact * Rat(Int(1) << (l - k)) / Rat(factorial(k) * factorial(l - k));
        if (k % 2 == 1) c = -c;
        out += falling_factorial(n - 2 * k) * SpacingScalar(c);
    }
    return out;
}

}  // namespace umbra
