#include "umbra/numeric.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

namespace umbra {

Int factorial(unsigned n) {
    Int r = 1;
    for (unsigned k = 2; k <= n; ++k) r *= k;
    return r;
}

Rat binomial(unsigned n, unsigned k) {
    if (k > n) return Rat(0);
    if (k > n - k) k = n - k;
    Int num = 1, den = 1;
    for (unsigned j = 0; j < k; ++j) {
        num *= Int(n - j);
        den *= Int(j + 1);
    }
    return Rat(num, den);
}

Rat parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("parse_rational: empty string");
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("parse_rational: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        return Rat(num, den);
    } catch (const std::runtime_error& e) {
        throw std::invalid_argument(std::string("parse_rational: bad input '") + s + "'");
    }
}

std::string rat_string(const Rat& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

double rat_double(const Rat& r) { return r.convert_to<double>(); }

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

GaussRat GaussRat::inverse() const {
    if (is_zero()) throw std::domain_error("GaussRat: division by zero");
    const Rat n = norm2();
    return GaussRat(re_ / n, -im_ / n);
}

GaussRat& GaussRat::operator+=(const GaussRat& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussRat& GaussRat::operator-=(const GaussRat& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussRat& GaussRat::operator*=(const GaussRat& o) {
    const Rat re = re_ * o.re_ - im_ * o.im_;
    im_ = re_ * o.im_ + im_ * o.re_;
    re_ = re;
    return *this;
}

GaussRat& GaussRat::operator/=(const GaussRat& o) { return *this *= o.inverse(); }

GaussRat GaussRat::pow(unsigned k) const {
    GaussRat r(1);
    GaussRat base = *this;
    while (k > 0) {
        if (k & 1u) r *= base;
        base *= base;
        k >>= 1u;
    }
    return r;
}

std::string GaussRat::str() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const GaussRat& v) {
    if (v.is_real()) return os << v.real();
    if (v.real().is_zero()) return os << v.imag() << "*i";
    return os << "(" << v.real() << (v.imag() > 0 ? "+" : "-")
              << boost::multiprecision::abs(v.imag()) << "*i)";
}

}  // namespace umbra
