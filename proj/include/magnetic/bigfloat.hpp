#pragma once

// Variable precision binary floating point (MPFR through Boost.Multiprecision)
// and a small complex type on top of it.

#include "magnetic/arith.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <string>

namespace magnetic {

using BigFloat = boost::multiprecision::mpfr_float;

/// Sets the working precision of newly created BigFloats for its lifetime.
/// The setting is process wide; numeric code is not meant to run concurrently.
class PrecisionScope {
public:
    explicit PrecisionScope(unsigned bits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

    unsigned bits() const { return bits_; }

private:
    unsigned bits_;
    unsigned saved_digits_;
};

unsigned digits10_for_bits(unsigned bits);

struct BigComplex {
    BigFloat re = 0;
    BigFloat im = 0;

    BigComplex() = default;
    BigComplex(BigFloat r, BigFloat i = 0) : re(std::move(r)), im(std::move(i)) {}  // NOLINT

    BigComplex& operator+=(const BigComplex& o)
    {
        re += o.re;
        im += o.im;
        return *this;
    }
    BigComplex& operator-=(const BigComplex& o)
    {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    BigComplex& operator*=(const BigComplex& o)
    {
        BigFloat r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    BigComplex& operator*=(const BigFloat& s)
    {
        re *= s;
        im *= s;
        return *this;
    }

    friend BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
    friend BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
    friend BigComplex operator*(BigComplex a, const BigComplex& b) { return a *= b; }
    friend BigComplex operator*(BigComplex a, const BigFloat& s) { return a *= s; }
    friend BigComplex operator*(const BigFloat& s, BigComplex a) { return a *= s; }
    BigComplex operator-() const { return {-re, -im}; }

    friend BigComplex operator/(const BigComplex& a, const BigComplex& b);
};

BigFloat abs(const BigComplex& z);
BigComplex conj(const BigComplex& z);
BigComplex exp(const BigComplex& z);
/// Principal branch.
BigComplex log(const BigComplex& z);
BigComplex pow(const BigComplex& z, long n);
/// exp(2 pi i x).
BigComplex e_of(const BigComplex& x);
BigFloat pi_value();

BigFloat to_bigfloat(const Rational& x);
BigComplex to_bigcomplex(const Cyclotomic& x);
/// Decimal string with the given number of significant digits.
std::string to_decimal(const BigFloat& x, int digits);

}  // namespace magnetic
