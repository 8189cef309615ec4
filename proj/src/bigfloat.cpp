#include "magnetic/bigfloat.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace magnetic {

unsigned digits10_for_bits(unsigned bits)
{
    return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

PrecisionScope::PrecisionScope(unsigned bits)
    : bits_(bits), saved_digits_(BigFloat::default_precision())
{
    BigFloat::default_precision(digits10_for_bits(bits));
}

PrecisionScope::~PrecisionScope() { BigFloat::default_precision(saved_digits_); }

BigComplex operator/(const BigComplex& a, const BigComplex& b)
{
    BigFloat d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

BigFloat abs(const BigComplex& z) { return boost::multiprecision::hypot(z.re, z.im); }

BigComplex conj(const BigComplex& z) { return {z.re, -z.im}; }

BigComplex exp(const BigComplex& z)
{
    BigFloat m = boost::multiprecision::exp(z.re);
    return {m * boost::multiprecision::cos(z.im), m * boost::multiprecision::sin(z.im)};
}

BigComplex log(const BigComplex& z)
{
    return {boost::multiprecision::log(abs(z)), boost::multiprecision::atan2(z.im, z.re)};
}

BigComplex pow(const BigComplex& z, long n)
{
    if (n < 0)
        return BigComplex(1) / pow(z, -n);
    BigComplex r(1), b = z;
    while (n > 0) {
        if (n & 1)
            r *= b;
        n >>= 1;
        if (n)
            b *= b;
    }
    return r;
}

BigFloat pi_value()
{
    BigFloat r;
    mpfr_const_pi(r.backend().data(), MPFR_RNDN);
    return r;
}

BigComplex e_of(const BigComplex& x)
{
    BigFloat two_pi = 2 * pi_value();
    return exp(BigComplex(-two_pi * x.im, two_pi * x.re));
}

BigFloat to_bigfloat(const Rational& x)
{
    BigFloat n(x.get_num().get_str());
    BigFloat d(x.get_den().get_str());
    return n / d;
}

BigComplex to_bigcomplex(const Cyclotomic& x)
{
    BigComplex sum;
    long m = x.order();
    for (std::size_t i = 0; i < x.coeffs().size(); ++i) {
        if (sgn(x.coeffs()[i]) == 0)
            continue;
        sum += e_of(BigComplex(to_bigfloat(make_rational(static_cast<long>(i), m)))) * to_bigfloat(x.coeffs()[i]);
    }
    return sum;
}

std::string to_decimal(const BigFloat& x, int digits)
{
    std::ostringstream out;
    out << std::scientific << std::setprecision(digits) << x;
    return out.str();
}

}  // namespace magnetic
