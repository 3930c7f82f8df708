#include "umbra/series.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace umbra {

namespace {

int total(const DIdx& mu) { return std::accumulate(mu.begin(), mu.end(), 0); }

bool is_zero_idx(const DIdx& mu) {
    return std::all_of(mu.begin(), mu.end(), [](int m) { return m == 0; });
}

/// Calls f for every nu with 0 <= nu <= bound componentwise.
template <typename F>
void for_each_in_box(const DIdx& bound, F&& f) {
    DIdx nu(bound.size(), 0);
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

}  // namespace

std::vector<DIdx> multi_indices_up_to(int dim, int max_total) {
    std::vector<DIdx> out;
    DIdx bound(static_cast<size_t>(dim), max_total);
    for_each_in_box(bound, [&](const DIdx& mu) {
        if (total(mu) <= max_total) out.push_back(mu);
    });
    std::sort(out.begin(), out.end(), [](const DIdx& a, const DIdx& b) {
        const int ta = total(a), tb = total(b);
        return ta != tb ? ta < tb : a < b;
    });
    return out;
}

struct ShiftInvariantOp::Cache {
    std::mutex mutex;
    std::map<DIdx, SpacingScalar> values;
};

ShiftInvariantOp::ShiftInvariantOp(int dim, Gen gen, std::string label)
    : dim_(dim), gen_(std::move(gen)), label_(std::move(label)), cache_(std::make_shared<Cache>()) {
    if (dim < 1) throw std::invalid_argument("ShiftInvariantOp: dim must be >= 1");
}

ShiftInvariantOp ShiftInvariantOp::zero(int dim) {
    return constant(dim, SpacingScalar());
}

ShiftInvariantOp ShiftInvariantOp::constant(int dim, const SpacingScalar& c) {
    return ShiftInvariantOp(
        dim, [c](const DIdx& mu) { return is_zero_idx(mu) ? c : SpacingScalar(); },
        c.is_zero() ? "0" : "const");
}

ShiftInvariantOp ShiftInvariantOp::identity(int dim) {
    return constant(dim, SpacingScalar(1)).labeled("1");
}

ShiftInvariantOp ShiftInvariantOp::d_op(int dim, int axis) {
    if (axis < 0 || axis >= dim) throw std::invalid_argument("ShiftInvariantOp: axis out of range");
    return ShiftInvariantOp(
        dim,
        [axis, dim](const DIdx& mu) {
            for (int i = 0; i < dim; ++i) {
                const int want = (i == axis) ? 1 : 0;
                if (mu[static_cast<size_t>(i)] != want) return SpacingScalar();
            }
            return SpacingScalar(1);
        },
        "D");
}

ShiftInvariantOp ShiftInvariantOp::from_coeffs(int dim, int axis,
                                               std::vector<SpacingScalar> coeffs,
                                               std::string label) {
    if (axis < 0 || axis >= dim) throw std::invalid_argument("ShiftInvariantOp: axis out of range");
    auto shared = std::make_shared<std::vector<SpacingScalar>>(std::move(coeffs));
    return ShiftInvariantOp(
        dim,
        [shared, axis](const DIdx& mu) {
            int m = -1;
            for (size_t i = 0; i < mu.size(); ++i) {
                if (static_cast<int>(i) == axis) {
                    m = mu[i];
                } else if (mu[i] != 0) {
                    return SpacingScalar();
                }
            }
            if (m < 0 || static_cast<size_t>(m) >= shared->size()) return SpacingScalar();
            return (*shared)[static_cast<size_t>(m)];
        },
        std::move(label));
}

ShiftInvariantOp ShiftInvariantOp::labeled(std::string label) const {
    ShiftInvariantOp o = *this;
    o.label_ = std::move(label);
    return o;
}

SpacingScalar ShiftInvariantOp::coeff(const DIdx& mu) const {
    if (static_cast<int>(mu.size()) != dim_)
        throw std::invalid_argument("ShiftInvariantOp::coeff: index size != dim");
    {
        std::lock_guard<std::mutex> lock(cache_->mutex);
        auto it = cache_->values.find(mu);
        if (it != cache_->values.end()) return it->second;
    }
    SpacingScalar v = gen_(mu);
    std::lock_guard<std::mutex> lock(cache_->mutex);
    return cache_->values.emplace(mu, std::move(v)).first->second;
}

SpacingScalar ShiftInvariantOp::coeff1(int m, int axis) const {
    DIdx mu(static_cast<size_t>(dim_), 0);
    mu[static_cast<size_t>(axis)] = m;
    return coeff(mu);
}

void ShiftInvariantOp::check_dim(const ShiftInvariantOp& o) const {
    if (dim_ != o.dim_) throw std::invalid_argument("ShiftInvariantOp: dimension mismatch");
}

ShiftInvariantOp ShiftInvariantOp::operator+(const ShiftInvariantOp& o) const {
    check_dim(o);
    ShiftInvariantOp a = *this, b = o;
    return ShiftInvariantOp(
        dim_, [a, b](const DIdx& mu) { return a.coeff(mu) + b.coeff(mu); },
        "(" + label_ + "+" + o.label_ + ")");
}

ShiftInvariantOp ShiftInvariantOp::operator-(const ShiftInvariantOp& o) const {
    check_dim(o);
    ShiftInvariantOp a = *this, b = o;
    return ShiftInvariantOp(
        dim_, [a, b](const DIdx& mu) { return a.coeff(mu) - b.coeff(mu); },
        "(" + label_ + "-" + o.label_ + ")");
}

ShiftInvariantOp ShiftInvariantOp::operator*(const ShiftInvariantOp& o) const {
    check_dim(o);
    ShiftInvariantOp a = *this, b = o;
    return ShiftInvariantOp(
        dim_,
        [a, b](const DIdx& mu) {
            SpacingScalar sum;
            for_each_in_box(mu, [&](const DIdx& nu) {
                const SpacingScalar ca = a.coeff(nu);
                if (ca.is_zero()) return;
                DIdx rest(mu.size());
                for (size_t i = 0; i < mu.size(); ++i) rest[i] = mu[i] - nu[i];
                sum += ca * b.coeff(rest);
            });
            return sum;
        },
        "(" + label_ + "*" + o.label_ + ")");
}

ShiftInvariantOp ShiftInvariantOp::operator-() const {
    ShiftInvariantOp a = *this;
    return ShiftInvariantOp(
        dim_, [a](const DIdx& mu) { return -a.coeff(mu); }, "-" + label_);
}

ShiftInvariantOp ShiftInvariantOp::scaled(const SpacingScalar& c) const {
    ShiftInvariantOp a = *this;
    return ShiftInvariantOp(
        dim_, [a, c](const DIdx& mu) { return a.coeff(mu) * c; }, label_);
}

ShiftInvariantOp ShiftInvariantOp::pow(unsigned k) const {
    ShiftInvariantOp r = identity(dim_);
    ShiftInvariantOp base = *this;
    while (k > 0) {
        if (k & 1u) r = r * base;
        base = base * base;
        k >>= 1u;
    }
    return r;
}

ShiftInvariantOp ShiftInvariantOp::derivative(int axis) const {
    if (axis < 0 || axis >= dim_) throw std::invalid_argument("ShiftInvariantOp: axis out of range");
    ShiftInvariantOp a = *this;
    return ShiftInvariantOp(
        dim_,
        [a, axis](const DIdx& mu) {
            DIdx up = mu;
            up[static_cast<size_t>(axis)] += 1;
            return a.coeff(up) * SpacingScalar(up[static_cast<size_t>(axis)]);
        },
        label_ + "'");
}

namespace {

struct InverseState {
    std::mutex mutex;
    std::map<DIdx, SpacingScalar> memo;
};

SpacingScalar inverse_coeff(const ShiftInvariantOp& src, const SpacingScalar& c0_inv,
                            std::map<DIdx, SpacingScalar>& memo, const DIdx& mu) {
    auto it = memo.find(mu);
    if (it != memo.end()) return it->second;
    SpacingScalar value;
    if (is_zero_idx(mu)) {
        value = c0_inv;
    } else {
        // b_mu = -c0^{-1} sum_{0 < nu <= mu} c_nu b_{mu-nu}
        SpacingScalar sum;
        for_each_in_box(mu, [&](const DIdx& nu) {
            if (is_zero_idx(nu)) return;
            const SpacingScalar c = src.coeff(nu);
            if (c.is_zero()) return;
            DIdx rest(mu.size());
            for (size_t i = 0; i < mu.size(); ++i) rest[i] = mu[i] - nu[i];
            sum += c * inverse_coeff(src, c0_inv, memo, rest);
        });
        value = -(c0_inv * sum);
    }
    return memo.emplace(mu, std::move(value)).first->second;
}

}  // namespace

ShiftInvariantOp ShiftInvariantOp::inverse() const {
    const SpacingScalar c0 = coeff(DIdx(static_cast<size_t>(dim_), 0));
    if (c0.is_zero() || !c0.is_monomial())
        throw std::domain_error("ShiftInvariantOp::inverse: constant term '" + c0.str() +
                                "' is not invertible");
    const SpacingScalar c0_inv = c0.inverse();
    auto state = std::make_shared<InverseState>();
    ShiftInvariantOp src = *this;
    return ShiftInvariantOp(
        dim_,
        [src, c0_inv, state](const DIdx& mu) {
            std::lock_guard<std::mutex> lock(state->mutex);
            return inverse_coeff(src, c0_inv, state->memo, mu);
        },
        label_ + "^-1");
}

namespace {

struct ComposeState {
    std::mutex mutex;
    std::map<DIdx, ShiftInvariantOp> products;  // nu -> prod_i inner[i]^{nu_i}
    std::vector<std::vector<ShiftInvariantOp>> powers;  // per axis powers
};

}  // namespace

ShiftInvariantOp ShiftInvariantOp::composed(std::vector<ShiftInvariantOp> inner) const {
    if (static_cast<int>(inner.size()) != dim_)
        throw std::invalid_argument("ShiftInvariantOp::composed: need one inner op per axis");
    const int inner_dim = inner.front().dim();
    for (const auto& g : inner) {
        if (g.dim() != inner_dim)
            throw std::invalid_argument("ShiftInvariantOp::composed: inner dims differ");
        if (!g.coeff(DIdx(static_cast<size_t>(inner_dim), 0)).is_zero())
            throw std::domain_error(
                "ShiftInvariantOp::composed: inner series must have zero constant term");
    }
    auto state = std::make_shared<ComposeState>();
    state->powers.resize(inner.size());
    for (size_t i = 0; i < inner.size(); ++i)
        state->powers[i].push_back(identity(inner_dim));
    auto shared_inner = std::make_shared<std::vector<ShiftInvariantOp>>(std::move(inner));
    ShiftInvariantOp outer = *this;

    return ShiftInvariantOp(
        inner_dim,
        [outer, shared_inner, state, inner_dim](const DIdx& mu) {
            // c_mu(f o g) = sum_{|nu| <= |mu|} f_nu c_mu(prod_i g_i^{nu_i});
            // the inner ops kill constants, so the sum is finite.
            const int order = total(mu);
            SpacingScalar sum;
            for (const DIdx& nu : multi_indices_up_to(outer.dim(), order)) {
                const SpacingScalar f = outer.coeff(nu);
                if (f.is_zero()) continue;
                ShiftInvariantOp prod = identity(inner_dim);
                {
                    std::lock_guard<std::mutex> lock(state->mutex);
                    auto it = state->products.find(nu);
                    if (it == state->products.end()) {
                        for (size_t i = 0; i < nu.size(); ++i) {
                            auto& pows = state->powers[i];
                            while (static_cast<int>(pows.size()) <= nu[i])
                                pows.push_back(pows.back() * (*shared_inner)[i]);
                            if (nu[i] > 0) prod = prod * pows[static_cast<size_t>(nu[i])];
                        }
                        state->products.emplace(nu, prod);
                    } else {
                        prod = it->second;
                    }
                }
                sum += f * prod.coeff(mu);
            }
            return sum;
        },
        label_ + "(composed)");
}

LaurentPoly ShiftInvariantOp::apply(const LaurentPoly& p) const {
    if (p.dim() != dim_) throw std::invalid_argument("ShiftInvariantOp::apply: dimension mismatch");
    if (p.is_zero()) return p;
    DIdx bound(static_cast<size_t>(dim_));
    for (int i = 0; i < dim_; ++i) bound[static_cast<size_t>(i)] = std::max(p.degree(i), 0);

    // d^mu p computed along a graded ladder: each index reuses a neighbor.
    std::map<DIdx, LaurentPoly> derivs;
    derivs.emplace(DIdx(static_cast<size_t>(dim_), 0), p);
    LaurentPoly out(p.dim());
    for_each_in_box(bound, [&](const DIdx& mu) {
        if (derivs.find(mu) == derivs.end()) {
            DIdx prev = mu;
            int axis = 0;
            for (size_t i = 0; i < mu.size(); ++i)
                if (mu[i] > 0) {
                    axis = static_cast<int>(i);
                    break;
                }
            prev[static_cast<size_t>(axis)] -= 1;
            if (derivs.find(prev) == derivs.end()) return;  // ancestor already vanished
            LaurentPoly d = derivs.at(prev).derivative(axis);
            if (d.is_zero()) return;
            derivs.emplace(mu, std::move(d));
        }
        const SpacingScalar c = coeff(mu);
        if (!c.is_zero()) out += derivs.at(mu) * c;
    });
    return out;
}

bool ShiftInvariantOp::is_zero_to_order(int total_order) const {
    for (const DIdx& mu : multi_indices_up_to(dim_, total_order))
        if (!coeff(mu).is_zero()) return false;
    return true;
}

bool ShiftInvariantOp::equal_to_order(const ShiftInvariantOp& o, int total_order) const {
    check_dim(o);
    for (const DIdx& mu : multi_indices_up_to(dim_, total_order))
        if (coeff(mu) != o.coeff(mu)) return false;
    return true;
}

bool ShiftInvariantOp::is_delta(int axis, int probe_order) const {
    if (!coeff(DIdx(static_cast<size_t>(dim_), 0)).is_zero()) return false;
    const SpacingScalar c1 = coeff1(1, axis);
    if (c1.is_zero() || !c1.is_monomial()) return false;
    for (const DIdx& mu : multi_indices_up_to(dim_, probe_order)) {
        bool off_axis = false;
        for (size_t i = 0; i < mu.size(); ++i)
            if (static_cast<int>(i) != axis && mu[i] != 0) off_axis = true;
        if (off_axis && !coeff(mu).is_zero()) return false;
    }
    return true;
}

}  // namespace umbra
