#include "magnetic/elliptic.hpp"

#include "magnetic/errors.hpp"

#include <cmath>
#include <numeric>
#include <set>

namespace magnetic {

namespace {

long mod_pos(long x, long m)
{
    long r = x % m;
    return r < 0 ? r + m : r;
}

Integer integer_gcd(const Integer& a, const Integer& b)
{
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

int kronecker_symbol(long D, const Integer& r)
{
    return mpz_kronecker(Integer(D).get_mpz_t(), r.get_mpz_t());
}

long valuation(long& n, long p)
{
    long v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

}  // namespace

std::string to_string(const BQF& q)
{
    return "(" + q.a.get_str() + ", " + q.b.get_str() + ", " + q.c.get_str() + ")";
}

BQF reduce_form(const BQF& q)
{
    Integer disc = q.discriminant();
    if (sgn(q.a) <= 0 || sgn(disc) >= 0)
        throw InputError("reduce_form needs a positive definite form, got " + to_string(q));
    BQF r = q;
    for (;;) {
        if (r.b <= -r.a || r.b > r.a) {
            Integer t;
            Integer num = r.a - r.b, den = 2 * r.a;
            mpz_fdiv_q(t.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
            r.b += den * t;
            r.c = (r.b * r.b - disc) / (4 * r.a);
        }
        if (r.a > r.c) {
            std::swap(r.a, r.c);
            r.b = -r.b;
            continue;
        }
        break;
    }
    if (r.a == r.c && sgn(r.b) < 0)
        r.b = -r.b;
    return r;
}

std::vector<BQF> enumerate_forms(long disc, long a_max)
{
    if (disc >= 0 || !is_discriminant(disc))
        throw InputError("enumerate_forms needs a negative discriminant, got " + std::to_string(disc));
    std::vector<BQF> out;
    for (long a = 1; a <= a_max; ++a)
        for (long b = -a + 1; b <= a; ++b)
            if (mod_pos(b * b - disc, 4 * a) == 0)
                out.push_back({a, b, (b * b - disc) / (4 * a)});
    return out;
}

bool is_discriminant(long d) { return mod_pos(d, 4) == 0 || mod_pos(d, 4) == 1; }

bool is_fundamental_discriminant(long d)
{
    if (d == 0)
        return false;
    auto squarefree = [](long n) {
        n = std::labs(n);
        for (long p = 2; p * p <= n; ++p)
            if (n % (p * p) == 0)
                return false;
        return true;
    };
    if (mod_pos(d, 4) == 1)
        return squarefree(d);
    if (mod_pos(d, 4) != 0)
        return false;
    long m = d / 4;
    return (mod_pos(m, 4) == 2 || mod_pos(m, 4) == 3) && squarefree(m);
}

int genus_character(const BQF& q, long fundamental)
{
    if (!is_fundamental_discriminant(fundamental))
        throw InputError(std::to_string(fundamental) + " is not a fundamental discriminant");
    Integer disc = q.discriminant();
    Integer D(fundamental);
    if (!mpz_divisible_p(disc.get_mpz_t(), D.get_mpz_t()))
        throw InputError("discriminant of " + to_string(q) + " is not a multiple of " + D.get_str());
    Integer d = disc / D;
    Integer d4 = d % 4;
    if (d4 < 0)
        d4 += 4;
    if (d4 != 0 && d4 != 1)
        throw InputError("discriminant of " + to_string(q) + " divided by D is not a discriminant");
    if (integer_gcd(integer_gcd(q.a, q.b), integer_gcd(q.c, D)) > 1)
        return 0;

    std::set<Integer> seen;
    std::optional<int> value;
    for (long radius = 1; radius <= 64 && seen.size() < 4; ++radius)
        for (long x = -radius; x <= radius; ++x)
            for (long y = -radius; y <= radius; ++y) {
                if (std::max(std::labs(x), std::labs(y)) != radius || std::gcd(x, y) != 1)
                    continue;
                Integer r = q.value(x, y);
                if (sgn(r) <= 0 || integer_gcd(r, D) != 1 || !seen.insert(r).second)
                    continue;
                int chi = kronecker_symbol(fundamental, r);
                if (value && *value != chi)
                    throw InternalError("genus character depends on the represented value for " + to_string(q));
                value = chi;
            }
    if (!value)
        throw Error("no represented value prime to D found for " + to_string(q));
    return *value;
}

FkdDCoefficients fkdd_coefficients(int k, long d, long D, long n_max, unsigned bits, long a_max)
{
    if (k < 2)
        throw InputError("k must be at least 2");
    if (!is_discriminant(d))
        throw InputError(std::to_string(d) + " is not a discriminant");
    if (!is_fundamental_discriminant(D))
        throw InputError(std::to_string(D) + " is not a fundamental discriminant");
    if (d * D >= 0)
        throw InputError("d D must be negative");
    if (n_max < 1 || a_max < 1)
        throw InputError("n_max and a_max must be positive");
    const long disc = d * D;

    FkdDCoefficients out;
    out.k = k;
    out.d = d;
    out.D = D;
    out.a_max = a_max;
    out.bits = bits;

    // partial fractions cancel to about a^(2k-1)
    unsigned guard = static_cast<unsigned>(std::ceil((2 * k) * std::log2(static_cast<double>(a_max) + 1))) + 64;
    PrecisionScope scope(bits + guard);

    const BigFloat pi = pi_value();
    const BigFloat s = boost::multiprecision::sqrt(BigFloat(-disc));
    out.pole_height = s / 2;

    // (-2 pi i)^j / (j - 1)!
    std::vector<BigComplex> lipschitz(static_cast<std::size_t>(k) + 1);
    {
        BigComplex step(0, -2 * pi), acc(1);
        BigFloat fact = 1;
        for (int j = 1; j <= k; ++j) {
            acc *= step;
            if (j > 1)
                fact *= j - 1;
            lipschitz[static_cast<std::size_t>(j)] = acc * (BigFloat(1) / fact);
        }
    }

    std::vector<BigComplex> coeffs(static_cast<std::size_t>(n_max));
    for (const BQF& q : enumerate_forms(disc, a_max)) {
        int chi = genus_character(q, D);
        if (chi == 0)
            continue;
        ++out.classes;
        const long a = q.a.get_si(), b = q.b.get_si();
        // Q(z, 1) = a (z - w)(z - wb), w = (-b + i s) / 2a, delta = wb - w = -i s / a
        BigFloat inv_delta_im = BigFloat(a) / s;  // 1/delta = i a / s
        BigComplex inv_delta(0, inv_delta_im);
        std::vector<BigComplex> ca(static_cast<std::size_t>(k) + 1), cb(static_cast<std::size_t>(k) + 1);
        BigComplex dpow = pow(inv_delta, k);
        for (int t = 0; t < k; ++t) {
            BigFloat bin(binomial(static_cast<unsigned long>(k + t - 1), static_cast<unsigned long>(t)).get_str());
            int j = k - t;
            ca[static_cast<std::size_t>(j)] = dpow * ((k % 2 ? -1 : 1) * bin);
            cb[static_cast<std::size_t>(j)] = dpow * ((t % 2 ? -1 : 1) * bin);
            dpow *= inv_delta;
        }
        BigFloat scale = BigFloat(chi) / boost::multiprecision::pow(BigFloat(a), k);
        // e(-w) and e(-wb)
        BigFloat angle = pi * b / a;
        BigComplex phase(boost::multiprecision::cos(angle), boost::multiprecision::sin(angle));
        BigFloat grow = boost::multiprecision::exp(pi * s / a);
        BigComplex e1 = phase * grow, e2 = phase * (BigFloat(1) / grow);
        BigComplex p1(1), p2(1);
        for (long m = 1; m <= n_max; ++m) {
            p1 *= e1;
            p2 *= e2;
            BigComplex term;
            BigFloat mpow = 1;
            for (int j = 1; j <= k; ++j) {
                term += lipschitz[static_cast<std::size_t>(j)] * mpow *
                        (ca[static_cast<std::size_t>(j)] * p1 + cb[static_cast<std::size_t>(j)] * p2);
                mpow *= m;
            }
            coeffs[static_cast<std::size_t>(m - 1)] += term * scale;
        }
    }

    // Forms with a > A: N(a) <= 3 sqrt|disc| tau(a) classes, each with
    // |c(m)| <= e^(2 pi m y) a^-k (y/2)^(1-2k) sqrt(pi) Gamma(k-1/2)/Gamma(k)
    // for y >= s/a; sum_{a>A} tau(a) a^-k <= k A^(1-k) ((ln A + 1)/(k-1) + 1/(k-1)^2).
    BigFloat A(a_max);
    BigFloat tau_tail = k * boost::multiprecision::pow(A, 1 - k) *
                        ((boost::multiprecision::log(A) + 1) / (k - 1) + BigFloat(1) / ((k - 1) * (k - 1)));
    BigFloat shape = boost::multiprecision::sqrt(pi) * boost::multiprecision::tgamma(BigFloat(k) - BigFloat("0.5")) /
                     boost::multiprecision::tgamma(BigFloat(k));
    BigFloat front = 3 * s * tau_tail * shape;
    for (long m = 1; m <= n_max; ++m) {
        BigFloat y = BigFloat(2 * k - 1) / (2 * pi * m);
        BigFloat ymin = s / (A + 1);
        if (y < ymin)
            y = ymin;
        out.class_tail_bound.push_back(front * boost::multiprecision::exp(2 * pi * m * y) *
                                       boost::multiprecision::pow(y / 2, 1 - 2 * k));
    }
    out.coefficients = std::move(coeffs);
    return out;
}

BigComplex evaluate_fourier(const FkdDCoefficients& f, const BigComplex& z)
{
    if (z.im <= f.pole_height)
        throw InputError("expansion only valid for Im z > " + to_decimal(f.pole_height, 10));
    BigComplex q = e_of(z), qm(1), sum;
    for (const auto& c : f.coefficients) {
        qm *= q;
        sum += c * qm;
    }
    return sum;
}

ClassicalMagnetic parse_classical_magnetic(std::string_view name)
{
    if (name == "E4D_over_E6sq")
        return ClassicalMagnetic::E4D_over_E6sq;
    if (name == "E6D_over_E4cu")
        return ClassicalMagnetic::E6D_over_E4cu;
    throw InputError("unknown form '" + std::string(name) + "', expected E4D_over_E6sq or E6D_over_E4cu");
}

std::string_view to_string(ClassicalMagnetic which)
{
    return which == ClassicalMagnetic::E4D_over_E6sq ? "E4D_over_E6sq" : "E6D_over_E4cu";
}

int weight_of(ClassicalMagnetic which) { return which == ClassicalMagnetic::E4D_over_E6sq ? 4 : 6; }

int divisibility_exponent(ClassicalMagnetic which) { return weight_of(which) / 2 - 1; }

FourierSeries classical_magnetic(ClassicalMagnetic which, long prec)
{
    if (prec < 1)
        throw InputError("prec must be at least 1");
    return evaluate_classical_expression(
        which == ClassicalMagnetic::E4D_over_E6sq ? "E4*Delta/E6^2" : "E6*Delta/E4^3", prec);
}

ClassicalReport check_classical_magnetic(ClassicalMagnetic which, long prec)
{
    FourierSeries f = classical_magnetic(which, prec);
    ClassicalReport r{which, prec, {}, 0};
    const unsigned long e = static_cast<unsigned long>(divisibility_exponent(which));
    for (long n = 1; n < prec; ++n) {
        Rational c = f.coefficient(n);
        if (!is_integer(c))
            throw InternalError("non-integral coefficient in " + std::string(to_string(which)));
        Integer mod = power(Integer(n), e);
        bool ok = mpz_divisible_p(c.get_num().get_mpz_t(), mod.get_mpz_t()) != 0;
        r.entries.push_back({n, c.get_num(), mod, ok});
        if (!ok)
            ++r.failures;
    }
    return r;
}

JReport j_divisibility_report(long bound)
{
    if (bound < 1)
        throw InputError("bound must be at least 1");
    FourierSeries j = classical_generator(ClassicalForm::j, bound + 1);
    JReport r{bound, {}, 0};
    for (long m = 1; m <= bound; ++m) {
        long rest = m;
        int a = static_cast<int>(valuation(rest, 2));
        int b = static_cast<int>(valuation(rest, 3));
        int c = static_cast<int>(valuation(rest, 5));
        int d = static_cast<int>(valuation(rest, 7));
        Integer mod = power(Integer(2), 3 * a + 8) * power(Integer(3), 2 * b + 5) * power(Integer(5), c + 1) *
                      power(Integer(7), d);
        Integer coeff = j.coefficient(m).get_num();
        bool ok = mpz_divisible_p(coeff.get_mpz_t(), mod.get_mpz_t()) != 0;
        r.entries.push_back({m, a, b, c, d, coeff, mod, ok});
        if (!ok)
            ++r.failures;
    }
    return r;
}

}  // namespace magnetic
