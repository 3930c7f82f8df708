#include <doctest.h>

#include "umbra/hermite.hpp"
#include "umbra/newton.hpp"
#include "umbra/stirling.hpp"

#include <cmath>
#include <random>

using namespace umbra;

namespace {

std::mt19937_64 rng(424242);

Rat random_rat() {
    std::uniform_int_distribution<int> num(-5, 5), den(1, 5);
    return Rat(num(rng), den(rng));
}

LaurentPoly random_univariate(int max_deg) {
    std::uniform_int_distribution<int> deg(0, max_deg);
    LaurentPoly p(1);
    for (int k = deg(rng); k >= 0; --k)
        p += LaurentPoly::coordinate(1, 0, k) * SpacingScalar(random_rat());
    return p;
}

const SpacingScalar a_sym = SpacingScalar::symbol(0);
LaurentPoly xpow(int k) { return LaurentPoly::coordinate(1, 0, k); }
LaurentPoly amono(int apow, Rat c = Rat(1)) {
    return LaurentPoly::constant(1, SpacingScalar::monomial(GaussRat(std::move(c)), 0, apow));
}

const std::array<DeltaKind, 5> kAllKinds{DeltaKind::derivative, DeltaKind::forward,
                                         DeltaKind::backward, DeltaKind::central,
                                         DeltaKind::laguerre};

/// Closed form of the central-difference basic sequence:
/// q_k = x prod_{n=1}^{k-1} (x + k a - 2 n a).
LaurentPoly central_basic_closed(int k) {
    if (k == 0) return LaurentPoly::constant(1, SpacingScalar(1));
    LaurentPoly p = xpow(1);
    for (int n = 1; n <= k - 1; ++n) p *= xpow(1) + amono(1, Rat(k - 2 * n));
    return p;
}

}  // namespace

TEST_SUITE("umbral-engine") {

TEST_CASE("basic sequences: closed forms") {
    SUBCASE("derivative: powers") {
        const auto seq = basic_sequence(make_delta(DeltaKind::derivative));
        for (unsigned k = 0; k <= 6; ++k) CHECK(seq.poly(k) == xpow(static_cast<int>(k)));
    }
    SUBCASE("forward: falling factorials") {
        const auto seq = basic_sequence(make_delta(DeltaKind::forward));
        for (unsigned k = 0; k <= 8; ++k) CHECK(seq.poly(k) == falling_factorial(k));
    }
    SUBCASE("central: product form") {
        const auto seq = basic_sequence(make_delta(DeltaKind::central));
        CHECK(seq.poly(3) == xpow(1) * (xpow(1) + amono(1)) * (xpow(1) - amono(1)));
        for (unsigned k = 0; k <= 8; ++k)
            CHECK(seq.poly(k) == central_basic_closed(static_cast<int>(k)));
    }
    SUBCASE("laguerre: rodrigues against the explicit multiplier") {
        const auto seq = basic_sequence(make_delta(DeltaKind::laguerre));
        CHECK(seq.poly(1) == -xpow(1));
        // -(D-1)^2 written out as -1 + 2D - D^2, an independent route
        const auto w = ShiftInvariantOp::from_coeffs(
            1, 0, {SpacingScalar(-1), SpacingScalar(2), SpacingScalar(-1)});
        const auto mult = NormalOrderedOp::coordinate(1, 0) * NormalOrderedOp::from_series(w);
        LaurentPoly p = LaurentPoly::constant(1, SpacingScalar(1));
        for (unsigned k = 0; k <= 8; ++k) {
            CHECK(seq.poly(k) == p);
            p = mult.apply(p);
        }
    }
}

TEST_CASE("basic sequence defining properties") {
    for (const auto kind : kAllKinds) {
        const auto q = make_delta(kind);
        const auto seq = basic_sequence(q);
        const std::vector<SpacingScalar> origin{SpacingScalar()};
        for (unsigned k = 1; k <= 12; ++k) {
            CHECK(seq.poly(k).degree(0) == static_cast<int>(k));
            CHECK(seq.poly(k).eval(origin).is_zero());
            CHECK(q.apply(seq.poly(k)) == seq.poly(k - 1) * SpacingScalar(Rat(k)));
        }
    }
}

TEST_CASE("binomial type for all basic sequences") {
    const std::vector<int> axis_x{0}, axis_y{1};
    for (const auto kind : kAllKinds) {
        const auto seq = basic_sequence(make_delta(kind));
        for (unsigned k = 0; k <= 8; ++k) {
            const LaurentPoly sum2 = LaurentPoly::coordinate(2, 0) + LaurentPoly::coordinate(2, 1);
            const LaurentPoly lhs = seq.poly(k).embedded(2, axis_x).substituted(0, sum2);
            LaurentPoly rhs(2);
            for (unsigned l = 0; l <= k; ++l)
                rhs += seq.poly(l).embedded(2, axis_x) * seq.poly(k - l).embedded(2, axis_y) *
                       SpacingScalar(binomial(k, l));
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("central basic sequence: inverse pincherle action") {
    // Q'^{-1} q_k = prod_{n=1}^{k} (x + (k+1) a - 2 n a)
    const auto q = make_delta(DeltaKind::central);
    const auto w = invert_series(pincherle(q));
    const auto seq = basic_sequence(q);
    for (int k = 1; k <= 8; ++k) {
        LaurentPoly want = LaurentPoly::constant(1, SpacingScalar(1));
        for (int n = 1; n <= k; ++n) want *= xpow(1) + amono(1, Rat(k + 1 - 2 * n));
        CHECK(w.apply(seq.poly(static_cast<unsigned>(k))) == want);
    }
}

TEST_CASE("sheffer sequences") {
    SUBCASE("forward closed form") {
        const auto seq = sheffer_sequence(make_delta(DeltaKind::forward));
        CHECK(seq.poly(2) == (xpow(1) - amono(1, Rat(1, 2))) * (xpow(1) - amono(1, Rat(3, 2))));
        for (unsigned k = 0; k <= 6; ++k) {
            LaurentPoly want = LaurentPoly::constant(1, SpacingScalar(1));
            for (unsigned j = 1; j <= k; ++j) want *= xpow(1) - amono(1, Rat(2 * j - 1) / 2);
            CHECK(seq.poly(k) == want);
        }
        // the symmetric recipe shifts the forward family off the origin
        CHECK(seq.poly(1) == xpow(1) - amono(1, Rat(1, 2)));
    }
    SUBCASE("central low polynomials") {
        const auto seq = sheffer_sequence(make_delta(DeltaKind::central));
        CHECK(seq.poly(0) == LaurentPoly::constant(1, SpacingScalar(1)));
        CHECK(seq.poly(1) == xpow(1));
        CHECK(seq.poly(2) == xpow(2) - amono(2, Rat(1, 2)));
    }
    SUBCASE("derivative: sheffer equals basic") {
        const auto seq = sheffer_sequence(make_delta(DeltaKind::derivative));
        for (unsigned k = 0; k <= 6; ++k) CHECK(seq.poly(k) == xpow(static_cast<int>(k)));
    }
    SUBCASE("defining relation for all kinds") {
        for (const auto kind : kAllKinds) {
            const auto q = make_delta(kind);
            const auto seq = sheffer_sequence(q);
            for (unsigned k = 1; k <= 12; ++k)
                CHECK(q.apply(seq.poly(k)) == seq.poly(k - 1) * SpacingScalar(Rat(k)));
        }
    }
}

TEST_CASE("sheffer expansion in the basic sequence") {
    SUBCASE("central n = 2") {
        const auto q = make_delta(DeltaKind::central);
        const auto s = sheffer_sequence(q);
        const auto b = basic_sequence(q);
        const auto coeffs = sheffer_expand(s, b, 2);
        REQUIRE(coeffs.size() == 3);
        CHECK(coeffs[0] == SpacingScalar(1));
        CHECK(coeffs[1].is_zero());
        CHECK(coeffs[2] == -SpacingScalar::monomial(GaussRat(Rat(1, 2)), 0, 2));
        CHECK(s.at_zero(2) == -SpacingScalar::monomial(GaussRat(Rat(1, 2)), 0, 2));
        CHECK(s.at_zero(1).is_zero());
    }
    SUBCASE("n = 0") {
        const auto q = make_delta(DeltaKind::forward);
        const auto coeffs = sheffer_expand(sheffer_sequence(q), basic_sequence(q), 0);
        REQUIRE(coeffs.size() == 1);
        CHECK(coeffs[0] == SpacingScalar(1));
    }
    SUBCASE("forward n <= 6: identity holds exactly") {
        const auto q = make_delta(DeltaKind::forward);
        const auto s = sheffer_sequence(q);
        const auto b = basic_sequence(q);
        for (unsigned n = 0; n <= 6; ++n) CHECK_NOTHROW(sheffer_expand(s, b, n));
        const auto c2 = sheffer_expand(s, b, 2);
        CHECK(c2[1] == SpacingScalar(2) * s.at_zero(1));
        CHECK(s.at_zero(1) == -SpacingScalar::monomial(GaussRat(Rat(1, 2)), 0, 1));
    }
    SUBCASE("mismatched delta operators are rejected") {
        CHECK_THROWS_AS(sheffer_expand(sheffer_sequence(make_delta(DeltaKind::central)),
                                       basic_sequence(make_delta(DeltaKind::forward)), 2),
                        std::invalid_argument);
    }
}

TEST_CASE("umbral transform") {
    const auto fwd = basic_sequence(make_delta(DeltaKind::forward));
    CHECK(umbral_transform(xpow(2), fwd) == xpow(1) * (xpow(1) - amono(1)));
    const auto cen_s = sheffer_sequence(make_delta(DeltaKind::central));
    CHECK(umbral_transform(xpow(2), cen_s) == xpow(2) - amono(2, Rat(1, 2)));
    const auto one = LaurentPoly::constant(1, SpacingScalar(1));
    CHECK(umbral_transform(one, fwd) == one);
    for (int trial = 0; trial < 8; ++trial) {
        const LaurentPoly p = random_univariate(5), q = random_univariate(5);
        CHECK(umbral_transform(p + q, fwd) == umbral_transform(p, fwd) + umbral_transform(q, fwd));
    }
}

TEST_CASE("star product") {
    const auto fwd = basic_sequence(make_delta(DeltaKind::forward));
    CHECK(star_product(falling_factorial(1), falling_factorial(1), fwd) == falling_factorial(2));

    const auto cen = basic_sequence(make_delta(DeltaKind::central));
    const LaurentPoly x = xpow(1);
    const LaurentPoly xx = star_product(x, x, cen);
    CHECK(star_product(xx, x, cen) == star_product(x, xx, cen));
    CHECK(star_product(xx, x, cen) ==
          xpow(3) - xpow(1) * SpacingScalar::monomial(GaussRat(1), 0, 2));

    SUBCASE("unit, commutativity, associativity on random inputs") {
        const auto one = LaurentPoly::constant(1, SpacingScalar(1));
        for (int trial = 0; trial < 10; ++trial) {
            const LaurentPoly p = random_univariate(5), q = random_univariate(5),
                              r = random_univariate(5);
            CHECK(star_product(p, one, fwd) == p);
            CHECK(star_product(p, q, fwd) == star_product(q, p, fwd));
            CHECK(star_product(star_product(p, q, cen), r, cen) ==
                  star_product(p, star_product(q, r, cen), cen));
        }
    }
    SUBCASE("q_k * q_l = q_{k+l}") {
        for (const auto kind : {DeltaKind::forward, DeltaKind::central, DeltaKind::laguerre}) {
            const auto seq = basic_sequence(make_delta(kind));
            for (unsigned k = 0; k <= 4; ++k)
                for (unsigned l = 0; l <= 4; ++l)
                    CHECK(star_product(seq.poly(k), seq.poly(l), seq) == seq.poly(k + l));
        }
    }
    SUBCASE("delta is a derivation of the star product") {
        for (const auto kind : {DeltaKind::forward, DeltaKind::central}) {
            const auto q = make_delta(kind);
            const auto seq = basic_sequence(q);
            for (int trial = 0; trial < 10; ++trial) {
                const LaurentPoly p = random_univariate(6), h = random_univariate(6);
                CHECK(q.apply(star_product(p, h, seq)) ==
                      star_product(q.apply(p), h, seq) + star_product(p, q.apply(h), seq));
            }
        }
    }
}

TEST_CASE("map_equation") {
    const auto q = make_delta(DeltaKind::forward);
    const auto xhat = basic_xhat(q);
    const auto d_cont = NormalOrderedOp::from_series(ShiftInvariantOp::d_op(1));

    SUBCASE("generator goes to the delta operator") {
        CHECK(map_equation(d_cont, q, xhat).equal_to_order(NormalOrderedOp::from_series(q), 10));
    }
    SUBCASE("harmonic oscillator becomes the umbral difference operator") {
        NormalOrderedOp h = NormalOrderedOp::from_series(
            ShiftInvariantOp::d_op(1).pow(2).scaled(SpacingScalar(Rat(-1, 2))));
        h += NormalOrderedOp::term({2}, ShiftInvariantOp::constant(1, SpacingScalar(Rat(1, 2))));
        const auto mapped = map_equation(h, q, xhat);
        const auto direct =
            NormalOrderedOp::from_series(q.pow(2)).scaled(SpacingScalar(Rat(-1, 2))) +
            (xhat * xhat).scaled(SpacingScalar(Rat(1, 2)));
        CHECK(mapped.equal_to_order(direct, 10));
        // action: 1/2 [ -Q^2 p + x (x-a) p(x-2a) ]
        for (int trial = 0; trial < 6; ++trial) {
            const LaurentPoly p = random_univariate(6);
            const LaurentPoly want = (q.apply(q.apply(p)) * SpacingScalar(Rat(-1, 2))) +
                                     (xpow(1) * (xpow(1) - amono(1)) *
                                      p.shifted(0, -(a_sym + a_sym)) * SpacingScalar(Rat(1, 2)));
            CHECK(mapped.apply(p) == want);
        }
    }
    SUBCASE("y d/dy maps to xhat Q with [Q, xhat Q] = Q") {
        const auto ydy = NormalOrderedOp::term({1}, ShiftInvariantOp::d_op(1));
        const auto img = map_equation(ydy, q, xhat);
        CHECK(img.equal_to_order(xhat * NormalOrderedOp::from_series(q), 8));
        CHECK(commutator(NormalOrderedOp::from_series(q), img)
                  .equal_to_order(NormalOrderedOp::from_series(q), 8));
    }
    SUBCASE("substitution is a commutator homomorphism") {
        std::uniform_int_distribution<int> xp(0, 3), dp(0, 2);
        for (int trial = 0; trial < 6; ++trial) {
            const NormalOrderedOp A =
                NormalOrderedOp::term({xp(rng)},
                                      ShiftInvariantOp::d_op(1).pow(static_cast<unsigned>(dp(rng))))
                    .scaled(SpacingScalar(random_rat()));
            const NormalOrderedOp B =
                NormalOrderedOp::term({xp(rng)},
                                      ShiftInvariantOp::d_op(1).pow(static_cast<unsigned>(dp(rng))))
                    .scaled(SpacingScalar(random_rat()));
            const auto img_comm = map_equation(commutator(A, B), q, xhat);
            const auto comm_img = commutator(map_equation(A, q, xhat), map_equation(B, q, xhat));
            CHECK(img_comm.equal_to_order(comm_img, 6));
        }
    }
}

TEST_CASE("symmetric oscillator: commuted operator string") {
    // xhat^2 = W^2 (x^2 - a^2/2) + 2 a^2 W^3 Q x + 5/4 a^4 W^4 Q^2, W = Q'^{-1}
    const auto q = make_delta(DeltaKind::central);
    const auto xhat = symmetric_xhat(q);
    const auto w = invert_series(pincherle(q));
    const auto x_noo = NormalOrderedOp::coordinate(1, 0);
    const NormalOrderedOp lhs = xhat * xhat;
    NormalOrderedOp rhs =
        NormalOrderedOp::from_series(w.pow(2)) *
        (x_noo * x_noo -
         NormalOrderedOp::constant(1, SpacingScalar::monomial(GaussRat(Rat(1, 2)), 0, 2)));
    rhs += (NormalOrderedOp::from_series(w.pow(3) * q) * x_noo)
               .scaled(SpacingScalar::monomial(GaussRat(2), 0, 2));
    rhs += NormalOrderedOp::from_series(w.pow(4) * q.pow(2))
               .scaled(SpacingScalar::monomial(GaussRat(Rat(5, 4)), 0, 4));
    CHECK(lhs.equal_to_order(rhs, 8));
}

TEST_CASE("newton series of the exponential") {
    const Rat k(1, 2), a(1);
    const auto series = NewtonSeries::umbral_exp(k, a, 40);
    SUBCASE("lattice values are (1 + k a)^n, exactly") {
        for (long n = 0; n <= 20; ++n) {
            const auto rep = eval_newton(series, Rat(n), 25);
            CHECK(rep.verdict == NewtonVerdict::terminating);
            Rat want(1);
            for (long j = 0; j < n; ++j) want *= (Rat(1) + k * a);
            CHECK(rep.value == want);
        }
        const auto rep3 = eval_newton(series, Rat(3), 3);
        CHECK(rep3.value == Rat(27, 8));
    }
    SUBCASE("x = 0 gives F_0") {
        const auto rep = eval_newton(series, Rat(0), 10);
        CHECK(rep.value == Rat(1));
    }
    SUBCASE("|ka| > 1 diverges off the lattice") {
        const auto big = NewtonSeries::umbral_exp(Rat(2), Rat(1), 60);
        const auto rep = eval_newton(big, Rat(1, 2), 50);
        CHECK(rep.verdict == NewtonVerdict::diverging);
        CHECK(rep.max_growth > 1e6);
        CHECK(eval_newton(big, Rat(4), 50).verdict == NewtonVerdict::terminating);
    }
    SUBCASE("|ka| < 1 converges off the lattice") {
        const auto rep = eval_newton(series, Rat(1, 2), 40);
        CHECK(rep.verdict == NewtonVerdict::converging);
        const double want = std::pow(1.5, 0.5);  // (1+ka)^{x/a}
        CHECK(std::abs(rat_double(rep.value) - want) < 1e-9);
    }
}

TEST_CASE("newton_map implements the factorial-basis conversion") {
    SUBCASE("polynomial input reproduces monomial_to_factorial") {
        const std::vector<Rat> f{Rat(0), Rat(0), Rat(1)};  // y^2
        const Rat a(3, 2);
        const auto s = newton_map(f, a, 2);
        CHECK(s.coeffs[0] == Rat(0));
        CHECK(s.coeffs[1] == a);
        CHECK(s.coeffs[2] == Rat(1));
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<Rat> coeffs(6);
            for (auto& c : coeffs) c = random_rat();
            const auto got = newton_map(coeffs, a, 5, true);
            std::vector<SpacingScalar> sym(coeffs.size());
            for (size_t i = 0; i < coeffs.size(); ++i) sym[i] = SpacingScalar(coeffs[i]);
            const auto conv = monomial_to_factorial(LaurentPoly::univariate(sym));
            const std::vector<Rat> spacings{a};
            for (size_t i = 0; i < got.coeffs.size(); ++i) {
                const GaussRat v = i < conv.size() ? conv[i].eval(spacings) : GaussRat(0);
                CHECK(got.coeffs[i] == v.real());
            }
        }
    }
    SUBCASE("exponential input matches the rate identity") {
        // For f = exp(beta y) the factorial coefficients are gamma^l / l!
        // with gamma = (e^{beta a} - 1)/a.
        const Rat beta(1, 2), a(1, 2);
        std::vector<Rat> f(60);
        Rat term(1);
        for (size_t j = 0; j < f.size(); ++j) {
            f[j] = term;
            term = term * beta / Rat(j + 1);
        }
        const auto s = newton_map(f, a, 8);
        const double gamma = (std::exp(rat_double(beta * a)) - 1.0) / rat_double(a);
        double want = 1.0;
        for (int l = 0; l <= 8; ++l) {
            CHECK(rat_double(s.coeffs[static_cast<size_t>(l)]) ==
                  doctest::Approx(want).epsilon(1e-10));
            want *= gamma / (l + 1);
        }
    }
    SUBCASE("insufficient input order") {
        const std::vector<Rat> f{Rat(1), Rat(1)};
        CHECK_THROWS_AS(newton_map(f, Rat(1), 5), std::invalid_argument);
        CHECK_NOTHROW(newton_map(f, Rat(1), 5, true));
    }
}

TEST_CASE("forward-difference oscillator ground series") {
    const auto rep = ho_forward_solution(30, Rat(1));
    CHECK(rep.psi[0] == Rat(1));
    CHECK(rep.psi[1] == Rat(1));  // only l = 0 survives at n = 1
    CHECK(rep.psi[2] == Rat(0));  // 1 - (1/2) x (x-a) at x = 2a, a = 1
    CHECK(rep.difference_eq_exact);
    CHECK(rep.extension_a.difference_eq_exact);
    CHECK(rep.extension_b.difference_eq_exact);
    CHECK(rep.extensions_agree_nonneg);
    CHECK(rep.extensions_differ_negative);
    CHECK(rep.diverging_at_half);
    CHECK(rep.growth_at_half > 1e6);

    SUBCASE("seeds are reproduced in the extensions") {
        CHECK(rep.extension_a.values[29] == Rat(0));  // n = -1
        CHECK(rep.extension_b.values[29] == Rat(1));
        CHECK(rep.extension_b.values[28] == Rat(-1));  // n = -2
    }
}

TEST_CASE("discrete hermite polynomials") {
    const auto fwd = basic_sequence(make_delta(DeltaKind::forward));
    CHECK(hermite_poly(2) ==
          xpow(2) * SpacingScalar(4) - LaurentPoly::constant(1, SpacingScalar(2)));
    CHECK(hermite_poly(3) == xpow(3) * SpacingScalar(8) - xpow(1) * SpacingScalar(12));

    CHECK(discrete_hermite(0, fwd) == LaurentPoly::constant(1, SpacingScalar(1)));
    CHECK(discrete_hermite(1, fwd) == xpow(1) * SpacingScalar(2));
    CHECK(discrete_hermite(2, fwd) == xpow(1) * (xpow(1) - amono(1)) * SpacingScalar(4) -
                                          LaurentPoly::constant(1, SpacingScalar(2)));

    SUBCASE("generating-function double sum omits exactly the leading term") {
        // SELF-CHECK: the double sum as printed starts its inner index at 1;
        // restoring the k = 0 term 2^n x^(n) reproduces the umbral transform.
        for (unsigned n = 0; n <= 8; ++n) {
            const LaurentPoly lead = falling_factorial(n) * SpacingScalar(Rat(Int(1) << n));
            CHECK(discrete_hermite(n, fwd) == hermite_from_double_sum(n) + lead);
            if (n >= 2) CHECK(discrete_hermite(n, fwd) != hermite_from_double_sum(n));
        }
    }
}

}  // TEST_SUITE
