#include <doctest.h>

#include "umbra/json_io.hpp"
#include "umbra/stirling.hpp"

#include <functional>
#include <map>
#include <random>

using namespace umbra;

namespace {

// ---- independent oracles ------------------------------------------------

/// Number of partitions of an n-element set into k nonempty blocks, by
/// direct enumeration of element placements.
long count_set_partitions(int n, int k) {
    std::function<long(int, int)> go = [&](int i, int blocks) -> long {
        if (i == n) return blocks == k ? 1 : 0;
        long total = go(i + 1, blocks + 1);   // open a new block
        total += blocks * go(i + 1, blocks);  // join an existing one
        return total;
    };
    return go(0, 0);
}

/// Polynomial in (x, a) as a map (x-power, a-power) -> coefficient;
/// oracle expansion of x (x-a) (x-2a) ... independent of LaurentPoly.
using XAPoly = std::map<std::pair<int, int>, Rat>;

XAPoly xapoly_mul_linear(const XAPoly& p, int shift_multiple) {
    XAPoly out;  // multiply by (x - shift_multiple * a)
    for (const auto& [key, c] : p) {
        out[{key.first + 1, key.second}] += c;
        if (shift_multiple != 0) out[{key.first, key.second + 1}] -= Rat(shift_multiple) * c;
    }
    return out;
}

XAPoly oracle_falling(int k) {
    XAPoly p{{{0, 0}, Rat(1)}};
    for (int j = 0; j < k; ++j) p = xapoly_mul_linear(p, j);
    return p;
}

Rat oracle_falling_coeff(int k, int xpow, int apow) {
    const XAPoly p = oracle_falling(k);
    auto it = p.find({xpow, apow});
    return it == p.end() ? Rat(0) : it->second;
}

// ---- random generators ---------------------------------------------------

std::mt19937_64 rng(20240817);

Rat random_rat() {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
    return Rat(num(rng), den(rng));
}

GaussRat random_gauss() { return GaussRat(random_rat(), random_rat()); }

SpacingScalar random_spacing() {
    std::uniform_int_distribution<int> nterms(0, 3), apow(-2, 2);
    SpacingScalar s;
    const int n = nterms(rng);
    for (int i = 0; i < n; ++i) s += SpacingScalar::monomial(random_gauss(), 0, apow(rng));
    return s;
}

LaurentPoly random_poly(int dim, int max_deg) {
    std::uniform_int_distribution<int> nterms(0, 4), deg(0, max_deg);
    LaurentPoly p(dim);
    const int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        LaurentPoly t = LaurentPoly::constant(dim, random_spacing());
        for (int ax = 0; ax < dim; ++ax) t *= LaurentPoly::coordinate(dim, ax, deg(rng));
        p += t;
    }
    return p;
}

const SpacingScalar a_sym = SpacingScalar::symbol(0);

}  // namespace

TEST_SUITE("exact-core") {

TEST_CASE("rationals are canonical") {
    const Rat r = Rat(6) / Rat(-4);
    CHECK(numerator(r) == -3);
    CHECK(denominator(r) == 2);
    CHECK(parse_rational("-3/2") == r);
    CHECK(parse_rational("5") == Rat(5));
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
}

TEST_CASE("gaussian rationals") {
    const GaussRat i = GaussRat::i();
    CHECK(i * i == GaussRat(-1));
    const GaussRat z(Rat(3), Rat(-2));
    CHECK(z * z.inverse() == GaussRat(1));
    CHECK(z + z.conj() == GaussRat(Rat(6)));
    CHECK_THROWS_AS(GaussRat(0).inverse(), std::domain_error);
}

TEST_CASE("stirling2 examples against the set-partition oracle") {
    CHECK(stirling2(5, 5) == Rat(1));
    CHECK(stirling2(3, 0) == Rat(0));
    CHECK(count_set_partitions(4, 2) == 7);
    CHECK(stirling2(4, 2) == Rat(7));
    for (int n = 0; n <= 8; ++n)
        for (int k = 0; k <= n; ++k)
            CHECK(stirling2(static_cast<unsigned>(n), static_cast<unsigned>(k)) ==
                  Rat(count_set_partitions(n, k)));
    CHECK_THROWS_AS(stirling2(2, 3), std::domain_error);
}

TEST_CASE("stirling1 examples against the falling-factorial oracle") {
    // x^(n) = sum_k s(n,k) a^{n-k} x^k
    CHECK(oracle_falling_coeff(2, 1, 1) == Rat(-1));
    CHECK(stirling1(2, 1) == Rat(-1));
    CHECK(oracle_falling_coeff(3, 2, 1) == Rat(-3));
    CHECK(stirling1(3, 2) == Rat(-3));
    CHECK(oracle_falling_coeff(3, 1, 2) == Rat(2));
    CHECK(stirling1(3, 1) == Rat(2));
    for (int n = 0; n <= 10; ++n)
        for (int k = 0; k <= n; ++k)
            CHECK(stirling1(static_cast<unsigned>(n), static_cast<unsigned>(k)) ==
                  oracle_falling_coeff(n, k, n - k));
}

TEST_CASE("falling factorial closed forms") {
    CHECK(falling_factorial(0) == LaurentPoly::constant(1, SpacingScalar(1)));

    const LaurentPoly x = LaurentPoly::coordinate(1, 0);
    const LaurentPoly x2 = LaurentPoly::coordinate(1, 0, 2);
    const LaurentPoly x3 = LaurentPoly::coordinate(1, 0, 3);
    CHECK(falling_factorial(2) == x2 - x * a_sym);
    CHECK(falling_factorial(3) == x3 - x2 * SpacingScalar::monomial(GaussRat(3), 0, 1) +
                                      x * SpacingScalar::monomial(GaussRat(2), 0, 2));
}

TEST_CASE("monomial/factorial basis conversions") {
    const LaurentPoly x2 = LaurentPoly::coordinate(1, 0, 2);
    const auto f2 = monomial_to_factorial(x2);
    REQUIRE(f2.size() == 3);
    CHECK(f2[0].is_zero());
    CHECK(f2[1] == a_sym);
    CHECK(f2[2] == SpacingScalar(1));

    const LaurentPoly x3 = LaurentPoly::coordinate(1, 0, 3);
    const auto f3 = monomial_to_factorial(x3);
    const LaurentPoly rebuilt =
        falling_factorial(3) + falling_factorial(2) * SpacingScalar::monomial(GaussRat(3), 0, 1) +
        falling_factorial(1) * SpacingScalar::monomial(GaussRat(1), 0, 2);
    CHECK(factorial_to_monomial(f3) == x3);
    CHECK(rebuilt == x3);

    const auto f1 = monomial_to_factorial(LaurentPoly::constant(1, SpacingScalar(1)));
    REQUIRE(f1.size() == 1);
    CHECK(f1[0] == SpacingScalar(1));

    SUBCASE("factorial to monomial examples") {
        std::vector<SpacingScalar> c(3);
        c[2] = SpacingScalar(1);
        CHECK(factorial_to_monomial(c) ==
              LaurentPoly::coordinate(1, 0, 2) - LaurentPoly::coordinate(1, 0) * a_sym);
        const std::vector<SpacingScalar> unit{SpacingScalar(1)};
        CHECK(factorial_to_monomial(unit) == LaurentPoly::constant(1, SpacingScalar(1)));
        // x^(1) + x^(3) = x^3 - 3a x^2 + (1 + 2a^2) x
        std::vector<SpacingScalar> mixed(4);
        mixed[1] = SpacingScalar(1);
        mixed[3] = SpacingScalar(1);
        const LaurentPoly x = LaurentPoly::coordinate(1, 0);
        const LaurentPoly want =
            LaurentPoly::coordinate(1, 0, 3) -
            LaurentPoly::coordinate(1, 0, 2) * SpacingScalar::monomial(GaussRat(3), 0, 1) +
            x * (SpacingScalar(1) + SpacingScalar::monomial(GaussRat(2), 0, 2));
        CHECK(factorial_to_monomial(mixed) == want);
    }

    SUBCASE("multivariate input is rejected") {
        const LaurentPoly mixed = LaurentPoly::coordinate(2, 0) * LaurentPoly::coordinate(2, 1);
        CHECK_THROWS_AS(monomial_to_factorial(mixed), std::domain_error);
    }
}

TEST_CASE("monomial expansion identity up to n = 12") {
    for (unsigned n = 0; n <= 12; ++n) {
        LaurentPoly sum(1);
        for (unsigned k = 0; k <= n; ++k) {
            const Rat s = stirling2(n, k);
            if (s.is_zero()) continue;
            sum += falling_factorial(k) *
                   SpacingScalar::monomial(GaussRat(s), 0, static_cast<int>(n - k));
        }
        CHECK(sum == LaurentPoly::coordinate(1, 0, static_cast<int>(n)));
    }
}

TEST_CASE("basis conversion round trips on random lists") {
    std::uniform_int_distribution<size_t> len(1, 12);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<SpacingScalar> coeffs(len(rng));
        for (auto& c : coeffs) c = SpacingScalar(random_rat());
        const LaurentPoly p = factorial_to_monomial(coeffs);
        auto back = monomial_to_factorial(p);
        back.resize(coeffs.size());
        for (size_t i = 0; i < coeffs.size(); ++i) CHECK(back[i] == coeffs[i]);
    }
}

TEST_CASE("stirling matrices are inverse triangles (a = 1)") {
    for (unsigned n = 0; n <= 12; ++n)
        for (unsigned k = 0; k <= n; ++k) {
            Rat dot(0);
            for (unsigned j = k; j <= n; ++j) dot += stirling2(n, j) * stirling1(j, k);
            CHECK(dot == (n == k ? Rat(1) : Rat(0)));
        }
}

TEST_CASE("ring axioms on random operands") {
    for (int trial = 0; trial < 60; ++trial) {
        const SpacingScalar a = random_spacing(), b = random_spacing(), c = random_spacing();
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
    }
    for (int trial = 0; trial < 30; ++trial) {
        const int dim = 1 + (trial % 2);
        const LaurentPoly p = random_poly(dim, 3), q = random_poly(dim, 3), r = random_poly(dim, 3);
        CHECK(p + q == q + p);
        CHECK(p * q == q * p);
        CHECK((p * q) * r == p * (q * r));
        CHECK(p * (q + r) == p * q + p * r);
    }
}

TEST_CASE("spacing scalar units") {
    const SpacingScalar half_inv_a = SpacingScalar::monomial(GaussRat(Rat(1, 2)), 0, -1);
    CHECK(half_inv_a * SpacingScalar::monomial(GaussRat(2), 0, 1) == SpacingScalar(1));
    CHECK(half_inv_a.inverse() == SpacingScalar::monomial(GaussRat(2), 0, 1));
    CHECK_THROWS_AS((SpacingScalar(1) + a_sym).inverse(), std::domain_error);
    CHECK_THROWS_AS(SpacingScalar().inverse(), std::domain_error);
}

TEST_CASE("canonical json round trip") {
    for (int trial = 0; trial < 25; ++trial) {
        const LaurentPoly p = random_poly(1 + trial % 3, 4);
        CHECK(poly_from_json(to_json(p)) == p);
    }
    const LaurentPoly p = LaurentPoly::coordinate(1, 0, 2) - LaurentPoly::coordinate(1, 0) * a_sym;
    const Json j = to_json(p);
    CHECK(j["dim"] == 1);
    CHECK(j["terms"][0]["exp"] == Json::array({1}));
    CHECK(j["terms"][0]["coef"][0]["apow"] == 1);
    CHECK(j["terms"][0]["coef"][0]["num"] == "-1");
    CHECK(j["terms"][0]["coef"][0]["den"] == "1");
}

}  // TEST_SUITE
