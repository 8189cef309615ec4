#pragma once

// Elliptic examples: quotients of Eisenstein series with divisible
// coefficients, the prime power divisibility of j, and the meromorphic
// forms sum_Q chi_D(Q) Q(z, 1)^(-k) over positive definite binary forms.

#include "magnetic/bigfloat.hpp"
#include "magnetic/qseries.hpp"

#include <string>
#include <vector>

namespace magnetic {

/// a x^2 + b x y + c y^2.
struct BQF {
    Integer a;
    Integer b;
    Integer c;

    Integer discriminant() const { return b * b - 4 * a * c; }
    Integer value(const Integer& x, const Integer& y) const { return a * x * x + b * x * y + c * y * y; }
    friend bool operator==(const BQF& p, const BQF& q) { return p.a == q.a && p.b == q.b && p.c == q.c; }
};

std::string to_string(const BQF& q);

/// Reduced representative: |b| <= a <= c, and b >= 0 when |b| = a or a = c.
BQF reduce_form(const BQF& q);

/// Forms with 1 <= a <= a_max and b in (-a, a] with b^2 = disc mod 4a, one
/// per translation class (a, b mod 2a).
std::vector<BQF> enumerate_forms(long disc, long a_max);

bool is_discriminant(long d);
bool is_fundamental_discriminant(long d);

/// chi_D(Q) = (D | r) for r represented by Q and prime to D; 0 when
/// gcd(a, b, c, D) > 1. disc(Q) must be d D with d a discriminant.
int genus_character(const BQF& q, long fundamental);

struct FkdDCoefficients {
    int k = 2;
    long d = 0;
    long D = 0;
    long a_max = 0;
    unsigned bits = 256;
    std::size_t classes = 0;
    /// coefficients[m - 1] multiplies e(m z), m = 1..n_max.
    std::vector<BigComplex> coefficients;
    /// Bound on the change of coefficient m from forms with a > a_max.
    std::vector<BigFloat> class_tail_bound;
    /// Expansion valid for Im z above this.
    BigFloat pole_height;
};

/// Fourier coefficients of sum_{Q, a <= a_max} chi_D(Q) Q(z, 1)^(-k), the
/// normalizing constant taken as 1. Requires k >= 2 and d D < 0.
FkdDCoefficients fkdd_coefficients(int k, long d, long D, long n_max, unsigned bits = 256, long a_max = 200);

/// sum_m c(m) e(m z) over the stored coefficients.
BigComplex evaluate_fourier(const FkdDCoefficients& f, const BigComplex& z);

enum class ClassicalMagnetic { E4D_over_E6sq, E6D_over_E4cu };

ClassicalMagnetic parse_classical_magnetic(std::string_view name);
std::string_view to_string(ClassicalMagnetic which);
/// Weight and the exponent e with n^e | c(n).
int weight_of(ClassicalMagnetic which);
int divisibility_exponent(ClassicalMagnetic which);

FourierSeries classical_magnetic(ClassicalMagnetic which, long prec);

struct ClassicalEntry {
    long n;
    Integer coefficient;
    Integer modulus;
    bool pass;
};

struct ClassicalReport {
    ClassicalMagnetic which;
    long prec;
    std::vector<ClassicalEntry> entries;
    std::size_t failures = 0;
};

/// n^e | c(n) for 1 <= n < prec.
ClassicalReport check_classical_magnetic(ClassicalMagnetic which, long prec);

struct JEntry {
    long m;
    int a, b, c, d;
    Integer coefficient;
    Integer modulus;
    bool pass;
};

struct JReport {
    long bound;
    std::vector<JEntry> entries;
    std::size_t failures = 0;
};

/// For m = 2^a 3^b 5^c 7^d n with gcd(n, 210) = 1, tests
/// 2^(3a+8) 3^(2b+5) 5^(c+1) 7^d | a_j(m) as written, m = 1..bound.
JReport j_divisibility_report(long bound);

}  // namespace magnetic
