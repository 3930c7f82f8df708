#include "umbra/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace umbra {

LaurentPoly::LaurentPoly(int dim) : dim_(dim) {
    if (dim < 1) throw std::invalid_argument("LaurentPoly: dim must be >= 1");
}

LaurentPoly LaurentPoly::constant(int dim, const SpacingScalar& c) {
    LaurentPoly p(dim);
    if (!c.is_zero()) p.terms_.emplace(Mono(static_cast<size_t>(dim), 0), c);
    return p;
}

LaurentPoly LaurentPoly::coordinate(int dim, int axis, int power) {
    if (axis < 0 || axis >= dim) throw std::invalid_argument("LaurentPoly: axis out of range");
    if (power < 0) throw std::invalid_argument("LaurentPoly: negative coordinate power");
    LaurentPoly p(dim);
    Mono m(static_cast<size_t>(dim), 0);
    m[static_cast<size_t>(axis)] = power;
    p.terms_.emplace(std::move(m), SpacingScalar(1));
    return p;
}

LaurentPoly LaurentPoly::from_terms(int dim, TermMap terms) {
    LaurentPoly p(dim);
    for (auto& [m, c] : terms) {
        if (c.is_zero()) continue;
        if (static_cast<int>(m.size()) != dim)
            throw std::invalid_argument("LaurentPoly: monomial length != dim");
        if (std::any_of(m.begin(), m.end(), [](int e) { return e < 0; }))
            throw std::invalid_argument("LaurentPoly: negative coordinate exponent");
        p.insert(m, c);
    }
    return p;
}

LaurentPoly LaurentPoly::univariate(std::span<const SpacingScalar> coeffs) {
    LaurentPoly p(1);
    for (size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k].is_zero()) continue;
        p.terms_.emplace(Mono{static_cast<int>(k)}, coeffs[k]);
    }
    return p;
}

int LaurentPoly::degree(int axis) const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m[static_cast<size_t>(axis)]);
    return d;
}

int LaurentPoly::total_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_)
        d = std::max(d, std::accumulate(m.begin(), m.end(), 0));
    return d;
}

SpacingScalar LaurentPoly::coeff(const Mono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? SpacingScalar() : it->second;
}

SpacingScalar LaurentPoly::leading_coeff(int axis) const {
    if (!univariate_in(axis))
        throw std::domain_error("LaurentPoly::leading_coeff: polynomial is not univariate");
    const int d = degree(axis);
    if (d < 0) return SpacingScalar();
    Mono m(static_cast<size_t>(dim_), 0);
    m[static_cast<size_t>(axis)] = d;
    return coeff(m);
}

void LaurentPoly::insert(Mono m, SpacingScalar c) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        if (!c.is_zero()) terms_.emplace(std::move(m), std::move(c));
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

void LaurentPoly::check_dim(const LaurentPoly& o) const {
    if (dim_ != o.dim_) throw std::invalid_argument("LaurentPoly: dimension mismatch");
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    check_dim(o);
    for (const auto& [m, c] : o.terms_) insert(m, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    check_dim(o);
    for (const auto& [m, c] : o.terms_) insert(m, -c);
    return *this;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
    check_dim(o);
    TermMap out;
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) {
            SpacingScalar c = ca * cb;
            if (c.is_zero()) continue;
            Mono m(ma.size());
            for (size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
            auto it = out.find(m);
            if (it == out.end())
                out.emplace(std::move(m), std::move(c));
            else {
                it->second += c;
                if (it->second.is_zero()) out.erase(it);
            }
        }
    terms_ = std::move(out);
    return *this;
}

LaurentPoly& LaurentPoly::operator*=(const SpacingScalar& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    TermMap out;
    for (const auto& [m, v] : terms_) {
        SpacingScalar w = v * c;
        if (!w.is_zero()) out.emplace(m, std::move(w));
    }
    terms_ = std::move(out);
    return *this;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly p(dim_);
    for (const auto& [m, c] : terms_) p.terms_.emplace(m, -c);
    return p;
}

LaurentPoly LaurentPoly::pow(unsigned k) const {
    LaurentPoly r = constant(dim_, SpacingScalar(1));
    LaurentPoly base = *this;
    while (k > 0) {
        if (k & 1u) r *= base;
        base *= base;
        k >>= 1u;
    }
    return r;
}

LaurentPoly LaurentPoly::derivative(int axis) const {
    LaurentPoly p(dim_);
    const auto ax = static_cast<size_t>(axis);
    for (const auto& [m, c] : terms_) {
        if (m[ax] == 0) continue;
        Mono d = m;
        d[ax] -= 1;
        p.insert(std::move(d), c * SpacingScalar(m[ax]));
    }
    return p;
}

LaurentPoly LaurentPoly::shifted(int axis, const SpacingScalar& c) const {
    if (c.is_zero()) return *this;
    LaurentPoly p(dim_);
    const auto ax = static_cast<size_t>(axis);
    for (const auto& [m, v] : terms_) {
        const int e = m[ax];
        // (x + c)^e = sum_j C(e, j) c^{e-j} x^j
        SpacingScalar cpow(1);
        std::vector<SpacingScalar> cpows(static_cast<size_t>(e) + 1);
        for (int j = 0; j <= e; ++j) {
            cpows[static_cast<size_t>(j)] = cpow;
            cpow *= c;
        }
        for (int j = 0; j <= e; ++j) {
            Mono t = m;
            t[ax] = j;
            p.insert(std::move(t),
                     v * cpows[static_cast<size_t>(e - j)] *
                         SpacingScalar(binomial(static_cast<unsigned>(e), static_cast<unsigned>(j))));
        }
    }
    return p;
}

LaurentPoly LaurentPoly::substituted(int axis, const LaurentPoly& value) const {
    check_dim(value);
    LaurentPoly out(dim_);
    const auto ax = static_cast<size_t>(axis);
    const int dmax = degree(axis);
    std::vector<LaurentPoly> vpow;
    vpow.push_back(constant(dim_, SpacingScalar(1)));
    for (int j = 1; j <= dmax; ++j) vpow.push_back(vpow.back() * value);
    for (const auto& [m, c] : terms_) {
        Mono rest = m;
        rest[ax] = 0;
        LaurentPoly t(dim_);
        t.terms_.emplace(std::move(rest), c);
        out += t * vpow[static_cast<size_t>(m[ax])];
    }
    return out;
}

LaurentPoly LaurentPoly::embedded(int new_dim, std::span<const int> axis_map) const {
    if (static_cast<int>(axis_map.size()) != dim_)
        throw std::invalid_argument("LaurentPoly::embedded: axis_map size != dim");
    LaurentPoly p(new_dim);
    for (const auto& [m, c] : terms_) {
        Mono t(static_cast<size_t>(new_dim), 0);
        for (size_t i = 0; i < m.size(); ++i) {
            const int target = axis_map[i];
            if (target < 0 || target >= new_dim)
                throw std::invalid_argument("LaurentPoly::embedded: axis out of range");
            t[static_cast<size_t>(target)] += m[i];
        }
        p.insert(std::move(t), c);
    }
    return p;
}

SpacingScalar LaurentPoly::eval(std::span<const SpacingScalar> point) const {
    if (static_cast<int>(point.size()) != dim_)
        throw std::invalid_argument("LaurentPoly::eval: point size != dim");
    SpacingScalar out;
    for (const auto& [m, c] : terms_) {
        SpacingScalar t = c;
        for (size_t i = 0; i < m.size(); ++i)
            if (m[i] != 0) t *= point[i].pow(m[i]);
        out += t;
    }
    return out;
}

GaussRat LaurentPoly::eval_numeric(std::span<const Rat> point, std::span<const Rat> spacings) const {
    if (static_cast<int>(point.size()) != dim_)
        throw std::invalid_argument("LaurentPoly::eval_numeric: point size != dim");
    GaussRat out(0);
    for (const auto& [m, c] : terms_) {
        GaussRat t = c.eval(spacings);
        for (size_t i = 0; i < m.size(); ++i) {
            Rat p(1);
            for (int j = 0; j < m[i]; ++j) p *= point[i];
            t *= GaussRat(p);
        }
        out += t;
    }
    return out;
}

std::vector<LaurentPoly> LaurentPoly::coeffs_in(int axis) const {
    const auto ax = static_cast<size_t>(axis);
    std::vector<LaurentPoly> out(static_cast<size_t>(degree(axis)) + 1, LaurentPoly(dim_));
    if (is_zero()) return out;
    for (const auto& [m, c] : terms_) {
        Mono rest = m;
        rest[ax] = 0;
        out[static_cast<size_t>(m[ax])].insert(std::move(rest), c);
    }
    return out;
}

bool LaurentPoly::univariate_in(int axis) const {
    for (const auto& [m, c] : terms_)
        for (size_t i = 0; i < m.size(); ++i)
            if (m[i] != 0 && static_cast<int>(i) != axis) return false;
    return true;
}

int LaurentPoly::sole_axis() const {
    int axis = -1;
    for (const auto& [m, c] : terms_)
        for (size_t i = 0; i < m.size(); ++i)
            if (m[i] != 0) {
                if (axis == -1)
                    axis = static_cast<int>(i);
                else if (axis != static_cast<int>(i))
                    throw std::domain_error(
                        "LaurentPoly: multivariate input without a designated coordinate");
            }
    return axis == -1 ? 0 : axis;
}

std::string LaurentPoly::str() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) {
    if (p.is_zero()) return os << "0";
    bool first = true;
    for (const auto& [m, c_raw] : p.terms()) {
        SpacingScalar c = c_raw;
        bool neg = false;
        if (c.is_monomial()) {
            const GaussRat& g = c.terms().begin()->second;
            if (g.is_real() && g.real() < 0) {
                neg = true;
                c = -c;
            }
        }
        os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
        first = false;
        const bool has_coords = std::any_of(m.begin(), m.end(), [](int e) { return e != 0; });
        const bool trivial = (c == SpacingScalar(1)) && has_coords;
        if (!trivial) {
            const bool sum = c.terms().size() > 1;
            os << (sum ? "(" : "") << c << (sum ? ")" : "");
        }
        bool any = !trivial;
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (any) os << "*";
            if (p.dim() == 1)
                os << "x";
            else
                os << "x" << i;
            if (m[i] != 1) os << "^" << m[i];
            any = true;
        }
    }
    return os;
}

}  // namespace umbra
