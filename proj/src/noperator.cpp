#include "umbra/noperator.hpp"

#include <stdexcept>

namespace umbra {

namespace {

template <typename F>
void for_each_below(const NormalOrderedOp::Mono& bound, F&& f) {
    NormalOrderedOp::Mono nu(bound.size(), 0);
    while (true) {
        f(nu);
        size_t i = 0;
        while (i < nu.size()) {
            if (nu[i] < bound[i]) {
                ++nu[i];
                break;
            }
            nu[i] = 0;
            ++i;
        }
        if (i == nu.size()) return;
    }
}

Rat multi_binomial(const NormalOrderedOp::Mono& r, const NormalOrderedOp::Mono& nu) {
    Rat b(1);
    for (size_t i = 0; i < r.size(); ++i)
        b *= binomial(static_cast<unsigned>(r[i]), static_cast<unsigned>(nu[i]));
    return b;
}

}  // namespace

NormalOrderedOp::NormalOrderedOp(int dim) : dim_(dim) {
    if (dim < 1) throw std::invalid_argument("NormalOrderedOp: dim must be >= 1");
}

NormalOrderedOp NormalOrderedOp::identity(int dim) {
    return from_series(ShiftInvariantOp::identity(dim));
}

NormalOrderedOp NormalOrderedOp::constant(int dim, const SpacingScalar& c) {
    return from_series(ShiftInvariantOp::constant(dim, c));
}

NormalOrderedOp NormalOrderedOp::coordinate(int dim, int axis) {
    if (axis < 0 || axis >= dim) throw std::invalid_argument("NormalOrderedOp: axis out of range");
    Mono m(static_cast<size_t>(dim), 0);
    m[static_cast<size_t>(axis)] = 1;
    return term(std::move(m), ShiftInvariantOp::identity(dim));
}

NormalOrderedOp NormalOrderedOp::from_series(const ShiftInvariantOp& f) {
    return term(Mono(static_cast<size_t>(f.dim()), 0), f);
}

NormalOrderedOp NormalOrderedOp::term(Mono m, const ShiftInvariantOp& f) {
    NormalOrderedOp op(f.dim());
    if (static_cast<int>(m.size()) != f.dim())
        throw std::invalid_argument("NormalOrderedOp: monomial length != dim");
    op.terms_.emplace(std::move(m), f);
    return op;
}

void NormalOrderedOp::check_dim(const NormalOrderedOp& o) const {
    if (dim_ != o.dim_) throw std::invalid_argument("NormalOrderedOp: dimension mismatch");
}

void NormalOrderedOp::add_term(const Mono& m, const ShiftInvariantOp& f) {
    auto it = terms_.find(m);
    if (it == terms_.end())
        terms_.emplace(m, f);
    else
        it->second = it->second + f;
}

NormalOrderedOp& NormalOrderedOp::operator+=(const NormalOrderedOp& o) {
    check_dim(o);
    for (const auto& [m, f] : o.terms_) add_term(m, f);
    return *this;
}

NormalOrderedOp& NormalOrderedOp::operator-=(const NormalOrderedOp& o) {
    check_dim(o);
    for (const auto& [m, f] : o.terms_) add_term(m, -f);
    return *this;
}

NormalOrderedOp NormalOrderedOp::operator*(const NormalOrderedOp& o) const {
    check_dim(o);
    NormalOrderedOp out(dim_);
    for (const auto& [m, f] : terms_) {
        for (const auto& [r, g] : o.terms_) {
            // x^m f(D) x^r g(D) = sum_{nu <= r} C(r,nu) x^{m+r-nu} (d^nu f) g
            for_each_below(r, [&](const Mono& nu) {
                ShiftInvariantOp df = f;
                for (size_t i = 0; i < nu.size(); ++i)
                    for (int j = 0; j < nu[i]; ++j) df = df.derivative(static_cast<int>(i));
                Mono key(m.size());
                for (size_t i = 0; i < m.size(); ++i) key[i] = m[i] + r[i] - nu[i];
                const Rat b = multi_binomial(r, nu);
                ShiftInvariantOp piece = df * g;
                if (b != 1) piece = piece.scaled(SpacingScalar(b));
                out.add_term(key, piece);
            });
        }
    }
    return out;
}

NormalOrderedOp NormalOrderedOp::operator-() const {
    NormalOrderedOp out(dim_);
    for (const auto& [m, f] : terms_) out.terms_.emplace(m, -f);
    return out;
}

NormalOrderedOp NormalOrderedOp::scaled(const SpacingScalar& c) const {
    NormalOrderedOp out(dim_);
    for (const auto& [m, f] : terms_) out.terms_.emplace(m, f.scaled(c));
    return out;
}

NormalOrderedOp NormalOrderedOp::pow(unsigned k) const {
    NormalOrderedOp r = identity(dim_);
    NormalOrderedOp base = *this;
    while (k > 0) {
        if (k & 1u) r = r * base;
        base = base * base;
        k >>= 1u;
    }
    return r;
}

LaurentPoly NormalOrderedOp::apply(const LaurentPoly& p) const {
    if (p.dim() != dim_) throw std::invalid_argument("NormalOrderedOp::apply: dimension mismatch");
    LaurentPoly out(dim_);
    for (const auto& [m, f] : terms_) {
        LaurentPoly fp = f.apply(p);
        if (fp.is_zero()) continue;
        LaurentPoly xm = LaurentPoly::constant(dim_, SpacingScalar(1));
        for (size_t i = 0; i < m.size(); ++i)
            if (m[i] > 0) xm *= LaurentPoly::coordinate(dim_, static_cast<int>(i), m[i]);
        out += xm * fp;
    }
    return out;
}

bool NormalOrderedOp::is_zero_to_order(int series_order) const {
    for (const auto& [m, f] : terms_)
        if (!f.is_zero_to_order(series_order)) return false;
    return true;
}

bool NormalOrderedOp::equal_to_order(const NormalOrderedOp& o, int series_order) const {
    check_dim(o);
    auto zero = ShiftInvariantOp::zero(dim_);
    for (const auto& [m, f] : terms_) {
        auto it = o.terms_.find(m);
        const ShiftInvariantOp& g = (it == o.terms_.end()) ? zero : it->second;
        if (!f.equal_to_order(g, series_order)) return false;
    }
    for (const auto& [m, g] : o.terms_)
        if (terms_.find(m) == terms_.end() && !g.is_zero_to_order(series_order)) return false;
    return true;
}

NormalOrderedOp NormalOrderedOp::pruned(int series_order) const {
    NormalOrderedOp out(dim_);
    for (const auto& [m, f] : terms_)
        if (!f.is_zero_to_order(series_order)) out.terms_.emplace(m, f);
    return out;
}

NormalOrderedOp commutator(const NormalOrderedOp& a, const NormalOrderedOp& b) {
    return a * b - b * a;
}

}  // namespace umbra
