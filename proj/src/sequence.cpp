#include "umbra/sequence.hpp"

#include <mutex>
#include <stdexcept>

namespace umbra {

struct PolySequence::Cache {
    std::mutex mutex;
    std::vector<LaurentPoly> polys;
};

PolySequence::PolySequence(ShiftInvariantOp delta, NormalOrderedOp xhat, Flavor flavor, int axis)
    : delta_(std::move(delta)),
      xhat_(std::move(xhat)),
      flavor_(flavor),
      axis_(axis),
      cache_(std::make_shared<Cache>()) {
    if (delta_.dim() != xhat_.dim())
        throw std::invalid_argument("PolySequence: delta/xhat dimension mismatch");
    cache_->polys.push_back(LaurentPoly::constant(delta_.dim(), SpacingScalar(1)));
}

LaurentPoly PolySequence::poly(unsigned k) const {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    while (cache_->polys.size() <= k)
        cache_->polys.push_back(xhat_.apply(cache_->polys.back()));
    return cache_->polys[k];
}

SpacingScalar PolySequence::at_zero(unsigned k) const {
    const LaurentPoly p = poly(k);
    std::vector<SpacingScalar> origin(static_cast<size_t>(p.dim()), SpacingScalar());
    return p.eval(origin);
}

std::vector<SpacingScalar> PolySequence::expand(const LaurentPoly& p) const {
    if (p.dim() != delta_.dim())
        throw std::invalid_argument("PolySequence::expand: dimension mismatch");
    if (!p.univariate_in(axis_))
        throw std::domain_error("PolySequence::expand: input not univariate in the family axis");
    LaurentPoly rest = p;
    const int deg = std::max(p.degree(axis_), 0);
    std::vector<SpacingScalar> coeffs(static_cast<size_t>(deg) + 1);
    for (int k = deg; k >= 0; --k) {
        if (rest.is_zero()) break;
        const int d = rest.degree(axis_);
        if (d < k) continue;
        const LaurentPoly qk = poly(static_cast<unsigned>(k));
        const SpacingScalar c = rest.leading_coeff(axis_) / qk.leading_coeff(axis_);
        coeffs[static_cast<size_t>(k)] = c;
        rest -= qk * c;
    }
    if (!rest.is_zero())
        throw std::logic_error("PolySequence::expand: triangular reduction left a remainder");
    return coeffs;
}

PolySequence basic_sequence(const ShiftInvariantOp& q, int axis) {
    return PolySequence(q, basic_xhat(q, axis), PolySequence::Flavor::basic, axis);
}

PolySequence sheffer_sequence(const ShiftInvariantOp& q, int axis) {
    return PolySequence(q, symmetric_xhat(q, axis), PolySequence::Flavor::sheffer, axis);
}

std::vector<SpacingScalar> sheffer_expand(const PolySequence& s, const PolySequence& q,
                                          unsigned n) {
    if (s.delta().dim() != q.delta().dim() ||
        !s.delta().equal_to_order(q.delta(), static_cast<int>(n) + 2))
        throw std::invalid_argument("sheffer_expand: families have different delta operators");
    std::vector<SpacingScalar> coeffs(n + 1);
    LaurentPoly sum(s.delta().dim());
    for (unsigned k = 0; k <= n; ++k) {
        coeffs[k] = SpacingScalar(binomial(n, k)) * s.at_zero(k);
        sum += q.poly(n - k) * coeffs[k];
    }
    if (sum != s.poly(n))
        throw std::logic_error("sheffer_expand: expansion identity failed");
    return coeffs;
}

LaurentPoly umbral_transform(const LaurentPoly& f, const PolySequence& seq) {
    if (f.dim() != seq.delta().dim())
        throw std::invalid_argument("umbral_transform: dimension mismatch");
    if (!f.univariate_in(seq.axis()))
        throw std::domain_error("umbral_transform: input not univariate in the family axis");
    LaurentPoly out(f.dim());
    for (const auto& [m, c] : f.terms())
        out += seq.poly(static_cast<unsigned>(m[static_cast<size_t>(seq.axis())])) * c;
    return out;
}

LaurentPoly umbral_transform(const LaurentPoly& f, std::span<const PolySequence> seqs) {
    if (static_cast<int>(seqs.size()) != f.dim())
        throw std::invalid_argument("umbral_transform: need one family per coordinate");
    LaurentPoly out(f.dim());
    for (const auto& [m, c] : f.terms()) {
        LaurentPoly t = LaurentPoly::constant(f.dim(), c);
        for (size_t i = 0; i < m.size(); ++i)
            if (m[i] > 0) t *= seqs[i].poly(static_cast<unsigned>(m[i]));
        out += t;
    }
    return out;
}

LaurentPoly star_product(const LaurentPoly& f, const LaurentPoly& h, const PolySequence& seq) {
    const std::vector<SpacingScalar> fc = seq.expand(f);
    const std::vector<SpacingScalar> hc = seq.expand(h);
    LaurentPoly out(f.dim());
    for (size_t k = 0; k < fc.size(); ++k) {
        if (fc[k].is_zero()) continue;
        for (size_t l = 0; l < hc.size(); ++l) {
            if (hc[l].is_zero()) continue;
            out += seq.poly(static_cast<unsigned>(k + l)) * (fc[k] * hc[l]);
        }
    }
    return out;
}

NormalOrderedOp map_equation(const NormalOrderedOp& continuum,
                             std::span<const ShiftInvariantOp> q,
                             std::span<const NormalOrderedOp> xhat) {
    const int dim = continuum.dim();
    if (static_cast<int>(q.size()) != dim || static_cast<int>(xhat.size()) != dim)
        throw std::invalid_argument("map_equation: need one (Q, xhat) pair per coordinate");
    std::vector<ShiftInvariantOp> inner(q.begin(), q.end());
    NormalOrderedOp out(dim);
    for (const auto& [m, f] : continuum.terms()) {
        // y^m f(d_y) -> xhat^m f(Q), renormal-ordered by the operator product.
        NormalOrderedOp img = NormalOrderedOp::from_series(f.composed(inner));
        for (size_t i = m.size(); i-- > 0;)
            for (int j = 0; j < m[i]; ++j) img = xhat[i] * img;
        out += img;
    }
    return out;
}

NormalOrderedOp map_equation(const NormalOrderedOp& continuum, const ShiftInvariantOp& q,
                             const NormalOrderedOp& xhat) {
    return map_equation(continuum, std::span<const ShiftInvariantOp>(&q, 1),
                        std::span<const NormalOrderedOp>(&xhat, 1));
}

}  // namespace umbra
