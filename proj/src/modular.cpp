#include "umbra/modular.hpp"

#include "umbra/numeric.hpp"

#include <stdexcept>

namespace umbra {

namespace {

std::int64_t pos_mod(std::int64_t v, std::int64_t p) {
    std::int64_t r = v % p;
    return r < 0 ? r + p : r;
}

std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t p) {
    std::int64_t r = 1;
    base = pos_mod(base, p);
    while (exp > 0) {
        if (exp & 1) r = (r * base) % p;
        base = (base * base) % p;
        exp >>= 1;
    }
    return r;
}

}  // namespace

ModMatrix mod_reduce(ModMatrix m, std::int64_t p) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = pos_mod(m(i, j), p);
    return m;
}

ModMatrix mod_mul(const ModMatrix& a, const ModMatrix& b, std::int64_t p) {
    return mod_reduce(a * b, p);
}

ModMatrix mod_inverse(const ModMatrix& m, std::int64_t p) {
    const auto n = m.rows();
    ModMatrix a = mod_reduce(m, p);
    ModMatrix inv = ModMatrix::Identity(n, n);
    for (Eigen::Index col = 0; col < n; ++col) {
        Eigen::Index pivot = -1;
        for (Eigen::Index r = col; r < n; ++r)
            if (a(r, col) != 0) {
                pivot = r;
                break;
            }
        if (pivot == -1) throw std::domain_error("mod_inverse: singular matrix");
        a.row(col).swap(a.row(pivot));
        inv.row(col).swap(inv.row(pivot));
        const std::int64_t s = mod_pow(a(col, col), p - 2, p);  // Fermat inverse
        for (Eigen::Index j = 0; j < n; ++j) {
            a(col, j) = (a(col, j) * s) % p;
            inv(col, j) = (inv(col, j) * s) % p;
        }
        for (Eigen::Index r = 0; r < n; ++r) {
            if (r == col || a(r, col) == 0) continue;
            const std::int64_t f = a(r, col);
            for (Eigen::Index j = 0; j < n; ++j) {
                a(r, j) = pos_mod(a(r, j) - f * a(col, j), p);
                inv(r, j) = pos_mod(inv(r, j) - f * inv(col, j), p);
            }
        }
    }
    return inv;
}

ModularMatrixRep finite_field_rep(std::int64_t p) {
    if (p < 2 || !is_prime(static_cast<std::uint64_t>(p)))
        throw std::invalid_argument("finite_field_rep: p must be prime");
    const auto n = static_cast<Eigen::Index>(p);
    ModularMatrixRep rep;
    rep.p = p;
    rep.x = ModMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) rep.x(i, i) = i;
    rep.q = ModMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) rep.q(i, (i + 1) % n) = 1;

    rep.qprime = mod_reduce(rep.q * rep.x - rep.x * rep.q, p);
    rep.qprime_equals_q = (rep.qprime == rep.q);
    rep.xhat = mod_mul(rep.x, mod_inverse(rep.qprime, p), p);

    const ModMatrix comm = mod_reduce(rep.q * rep.xhat - rep.xhat * rep.q, p);
    rep.ccr_holds = (comm == ModMatrix::Identity(n, n));
    return rep;
}

}  // namespace umbra
