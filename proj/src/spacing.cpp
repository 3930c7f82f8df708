#include "umbra/spacing.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

namespace umbra {

namespace {

void strip_trailing_zeros(SpacingScalar::Exp& e) {
    while (!e.empty() && e.back() == 0) e.pop_back();
}

SpacingScalar::Exp add_exps(const SpacingScalar::Exp& a, const SpacingScalar::Exp& b) {
    SpacingScalar::Exp r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    strip_trailing_zeros(r);
    return r;
}

}  // namespace

SpacingScalar::SpacingScalar(int n) {
    if (n != 0) terms_[{}] = GaussRat(n);
}

SpacingScalar::SpacingScalar(const Rat& c) {
    if (!c.is_zero()) terms_[{}] = GaussRat(c);
}

SpacingScalar::SpacingScalar(const GaussRat& c) {
    if (!c.is_zero()) terms_[{}] = c;
}

SpacingScalar SpacingScalar::symbol(int axis, int power) {
    return monomial(GaussRat(1), axis, power);
}

SpacingScalar SpacingScalar::monomial(const GaussRat& c, int axis, int power) {
    if (axis < 0) throw std::invalid_argument("SpacingScalar: negative axis");
    SpacingScalar s;
    if (c.is_zero()) return s;
    Exp e;
    if (power != 0) {
        e.assign(static_cast<size_t>(axis) + 1, 0);
        e[static_cast<size_t>(axis)] = power;
    }
    s.terms_[std::move(e)] = c;
    return s;
}

SpacingScalar SpacingScalar::from_terms(TermMap terms) {
    SpacingScalar s;
    for (auto& [e, c] : terms) {
        if (c.is_zero()) continue;
        Exp key = e;
        strip_trailing_zeros(key);
        s.insert(std::move(key), c);
    }
    return s;
}

bool SpacingScalar::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

GaussRat SpacingScalar::constant_value() const {
    if (terms_.empty()) return GaussRat(0);
    if (!is_constant()) throw std::domain_error("SpacingScalar: not constant: " + str());
    return terms_.begin()->second;
}

GaussRat SpacingScalar::coeff(const Exp& e) const {
    Exp key = e;
    strip_trailing_zeros(key);
    auto it = terms_.find(key);
    return it == terms_.end() ? GaussRat(0) : it->second;
}

void SpacingScalar::insert(Exp e, GaussRat c) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        if (!c.is_zero()) terms_.emplace(std::move(e), std::move(c));
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

SpacingScalar& SpacingScalar::operator+=(const SpacingScalar& o) {
    for (const auto& [e, c] : o.terms_) insert(e, c);
    return *this;
}

SpacingScalar& SpacingScalar::operator-=(const SpacingScalar& o) {
    for (const auto& [e, c] : o.terms_) insert(e, -c);
    return *this;
}

SpacingScalar& SpacingScalar::operator*=(const SpacingScalar& o) {
    TermMap out;
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : o.terms_) {
            const GaussRat c = ca * cb;
            if (c.is_zero()) continue;
            Exp e = add_exps(ea, eb);
            auto it = out.find(e);
            if (it == out.end())
                out.emplace(std::move(e), c);
            else {
                it->second += c;
                if (it->second.is_zero()) out.erase(it);
            }
        }
    terms_ = std::move(out);
    return *this;
}

SpacingScalar SpacingScalar::operator-() const {
    SpacingScalar s;
    for (const auto& [e, c] : terms_) s.terms_.emplace(e, -c);
    return s;
}

SpacingScalar SpacingScalar::inverse() const {
    if (is_zero()) throw std::domain_error("SpacingScalar: division by zero");
    if (!is_monomial())
        throw std::domain_error("SpacingScalar: '" + str() + "' is not a unit (monomials only)");
    const auto& [e, c] = *terms_.begin();
    SpacingScalar s;
    Exp inv(e.size());
    for (size_t i = 0; i < e.size(); ++i) inv[i] = -e[i];
    s.terms_.emplace(std::move(inv), c.inverse());
    return s;
}

SpacingScalar SpacingScalar::pow(int k) const {
    if (k < 0) return inverse().pow(-k);
    SpacingScalar r(1);
    SpacingScalar base = *this;
    unsigned n = static_cast<unsigned>(k);
    while (n > 0) {
        if (n & 1u) r *= base;
        base *= base;
        n >>= 1u;
    }
    return r;
}

GaussRat SpacingScalar::eval(std::span<const Rat> spacings) const {
    GaussRat out(0);
    for (const auto& [e, c] : terms_) {
        GaussRat t = c;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (i >= spacings.size())
                throw std::invalid_argument("SpacingScalar::eval: missing spacing value");
            if (spacings[i].is_zero() && e[i] < 0)
                throw std::domain_error("SpacingScalar::eval: negative power of zero spacing");
            Rat p(1);
            const Rat& base = spacings[i];
            for (int j = 0; j < std::abs(e[i]); ++j) p *= base;
            t *= (e[i] > 0) ? GaussRat(p) : GaussRat(p).inverse();
        }
        out += t;
    }
    return out;
}

std::complex<double> SpacingScalar::eval_complex(std::span<const double> spacings) const {
    std::complex<double> out(0.0, 0.0);
    for (const auto& [e, c] : terms_) {
        std::complex<double> t = c.to_complex();
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (i >= spacings.size())
                throw std::invalid_argument("SpacingScalar::eval_complex: missing spacing value");
            t *= std::pow(spacings[i], e[i]);
        }
        out += t;
    }
    return out;
}

std::string SpacingScalar::str() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const SpacingScalar& s) {
    if (s.is_zero()) return os << "0";
    bool first = true;
    for (const auto& [e, c_raw] : s.terms()) {
        GaussRat c = c_raw;
        const bool neg = c.is_real() && c.real() < 0;
        if (neg) c = -c;
        os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
        first = false;
        const bool trivial_coeff = (c == GaussRat(1)) && !e.empty();
        if (!trivial_coeff) os << c;
        bool any = false;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (any || !trivial_coeff) os << "*";
            os << (i == 0 ? std::string("a") : "a" + std::to_string(i));
            if (e[i] != 1) os << "^" << e[i];
            any = true;
        }
    }
    return os;
}

}  // namespace umbra
