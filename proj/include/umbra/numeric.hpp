#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace umbra {

/// Arbitrary-precision integers and rationals. Rationals are kept in
/// canonical form (reduced, positive denominator) by the backend.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

Int factorial(unsigned n);
Rat binomial(unsigned n, unsigned k);

/// Parses "3", "-7", "1/2", "-3/4". Throws std::invalid_argument on
/// malformed input or zero denominator.
Rat parse_rational(const std::string& s);

std::string rat_string(const Rat& r);
double rat_double(const Rat& r);

bool is_prime(std::uint64_t n);

/// Gaussian rational p + q i. The exact scalar field of the engine:
/// the Lie-algebra representations need an exact imaginary unit.
class GaussRat {
public:
    GaussRat() = default;
    GaussRat(int n) : re_(n) {}                 // NOLINT(google-explicit-constructor)
    GaussRat(const Int& n) : re_(n) {}          // NOLINT(google-explicit-constructor)
    GaussRat(Rat re) : re_(std::move(re)) {}    // NOLINT(google-explicit-constructor)
    GaussRat(Rat re, Rat im) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussRat i() { return GaussRat(Rat(0), Rat(1)); }

    const Rat& real() const { return re_; }
    const Rat& imag() const { return im_; }

    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_real() const { return im_.is_zero(); }

    GaussRat conj() const { return GaussRat(re_, -im_); }
    Rat norm2() const { return re_ * re_ + im_ * im_; }
    GaussRat inverse() const;  // throws std::domain_error on zero

    GaussRat& operator+=(const GaussRat& o);
    GaussRat& operator-=(const GaussRat& o);
    GaussRat& operator*=(const GaussRat& o);
    GaussRat& operator/=(const GaussRat& o);

    friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
    friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
    friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
    friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }
    GaussRat operator-() const { return GaussRat(-re_, -im_); }

    friend bool operator==(const GaussRat& a, const GaussRat& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

    GaussRat pow(unsigned k) const;

    std::complex<double> to_complex() const {
        return {rat_double(re_), rat_double(im_)};
    }

    std::string str() const;

private:
    Rat re_{0};
    Rat im_{0};
};

std::ostream& operator<<(std::ostream& os, const GaussRat& v);

}  // namespace umbra
