#pragma once

// Exact number domains: big integers and rationals (GMP), elements of
// cyclotomic fields, Bernoulli numbers/polynomials and divisibility tests.

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace magnetic {

using Integer = mpz_class;
using Rational = mpq_class;

/// Reduced p/q; throws InputError when q == 0.
Rational make_rational(const Integer& num, const Integer& den);
/// Accepts "p", "p/q" and "-p/q" with optional surrounding blanks.
Rational parse_rational(std::string_view text);
std::string to_string(const Integer& x);
std::string to_string(const Rational& x);

bool is_integer(const Rational& x);
Integer floor(const Rational& x);
Integer ceil(const Rational& x);
/// x - floor(x), in [0, 1).
Rational frac(const Rational& x);
Integer lcm(const Integer& a, const Integer& b);
Integer binomial(unsigned long n, unsigned long k);
Integer power(const Integer& base, unsigned long exp);
Rational power(const Rational& base, long exp);

long gcd_long(long a, long b);
long lcm_long(long a, long b);
long euler_phi(long m);

enum class Divisibility { yes, no, indeterminate };

std::string_view to_string(Divisibility d);

/// yes iff a is an integer divisible by t; indeterminate when a is not an
/// integer.
Divisibility integer_divisibility(const Rational& a, const Integer& t);

/// Coefficients (constant term first) of the m-th cyclotomic polynomial.
const std::vector<Integer>& cyclotomic_polynomial(long m);

/// Element of Q(zeta_M) in the power basis 1, zeta, ..., zeta^(phi(M)-1),
/// always reduced modulo Phi_M. Binary operations on different orders work
/// in the least common order.
class Cyclotomic {
public:
    Cyclotomic();
    Cyclotomic(long value);  // NOLINT(google-explicit-constructor)
    Cyclotomic(const Rational& value);  // NOLINT(google-explicit-constructor)
    /// Interprets coeffs as a polynomial in zeta_order of any length.
    Cyclotomic(long order, std::vector<Rational> coeffs);

    /// zeta_m^a.
    static Cyclotomic root_of_unity(long m, long a);
    /// e(x) = exp(2 pi i x) for rational x, in the field of order den(x).
    static Cyclotomic e(const Rational& x);

    long order() const { return order_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    /// Same element in Q(zeta_new_order); throws InputError when it does not
    /// lie in that field.
    Cyclotomic embed(long new_order) const;
    /// Same element in the smallest field Q(zeta_d) with d | order().
    Cyclotomic minimal() const;

    bool is_zero() const;
    std::optional<Rational> as_rational() const;
    /// All power-basis coordinates integral, i.e. x lies in Z[zeta_M].
    bool is_integral() const;

    /// Complex conjugation zeta -> zeta^-1.
    Cyclotomic conj() const;

    std::complex<double> to_complex() const;

    Cyclotomic& operator+=(const Cyclotomic& o);
    Cyclotomic& operator-=(const Cyclotomic& o);
    Cyclotomic& operator*=(const Cyclotomic& o);
    Cyclotomic& operator*=(const Rational& r);
    Cyclotomic& operator/=(const Rational& r);

    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
    friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
    friend Cyclotomic operator*(Cyclotomic a, const Rational& r) { return a *= r; }
    friend Cyclotomic operator*(const Rational& r, Cyclotomic a) { return a *= r; }
    friend Cyclotomic operator/(Cyclotomic a, const Rational& r) { return a /= r; }
    Cyclotomic operator-() const;

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);
    friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

private:
    void reduce(std::vector<Rational> poly);
    Cyclotomic descend(long new_order) const;

    long order_ = 1;
    std::vector<Rational> coeffs_;
};

std::string to_string(const Cyclotomic& x);

/// yes iff x and x/t are both cyclotomic integers; indeterminate when x
/// itself is not integral.
Divisibility cyclo_divisible_by_int(const Cyclotomic& x, const Integer& t);

/// B_n with the convention B_1 = -1/2. Cached; safe for concurrent use.
const Rational& bernoulli_number(unsigned n);
/// B_k(x) = sum_j binom(k, j) B_j x^(k-j).
Rational bernoulli_polynomial(unsigned k, const Rational& x);

}  // namespace magnetic
