#include <doctest.h>

#include "magnetic/arith.hpp"
#include "magnetic/errors.hpp"
#include "support/oracles.hpp"

#include <random>

using namespace magnetic;

TEST_CASE("rational parsing and printing")
{
    CHECK(parse_rational("3/6") == Rational(1, 2));
    CHECK(parse_rational(" -7 ") == Rational(-7));
    CHECK(to_string(make_rational(4, -6)) == "-2/3");
    CHECK_THROWS_AS(parse_rational("1/0"), InputError);
    CHECK_THROWS_AS(parse_rational("x"), InputError);
    CHECK(frac(Rational(-1, 3)) == Rational(2, 3));
}

TEST_CASE("roots of unity")
{
    CHECK(Cyclotomic::root_of_unity(1, 0) == Cyclotomic(1));
    CHECK(Cyclotomic::root_of_unity(4, 2) == Cyclotomic(-1));
    CHECK(Cyclotomic::root_of_unity(3, 1) + Cyclotomic::root_of_unity(3, 2) == Cyclotomic(-1));
    CHECK(Cyclotomic::root_of_unity(6, 3).as_rational() == Rational(-1));
    CHECK(Cyclotomic::e(Rational(5, 4)) == Cyclotomic::root_of_unity(4, 1));
}

TEST_CASE("root of unity products add exponents")
{
    for (long m : {1, 2, 3, 4, 5, 8, 9, 12, 15, 24})
        for (long a = -m; a <= m; ++a)
            for (long b = 0; b < m; ++b)
                CHECK(Cyclotomic::root_of_unity(m, a) * Cyclotomic::root_of_unity(m, b) ==
                      Cyclotomic::root_of_unity(m, a + b));
}

TEST_CASE("embedding round trip and mixed orders")
{
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> coeff(-9, 9);
    for (long m : {3, 4, 5, 12}) {
        std::vector<Rational> c(static_cast<std::size_t>(euler_phi(m)));
        for (auto& x : c)
            x = make_rational(coeff(rng), 6 + coeff(rng) * coeff(rng) % 5);
        Cyclotomic x(m, c);
        for (long k : {2, 3, 5}) {
            Cyclotomic y = x.embed(k * m);
            CHECK(y.order() == k * m);
            CHECK(y == x);
            CHECK(y.embed(m).coeffs() == x.coeffs());
        }
    }
    // i + zeta_3 lives in order 12; subtracting zeta_3 gets back i
    Cyclotomic i = Cyclotomic::root_of_unity(4, 1);
    Cyclotomic w = Cyclotomic::root_of_unity(3, 1);
    Cyclotomic s = i + w;
    CHECK(s.order() == 12);
    CHECK(s - w == i);
    CHECK((i * i).as_rational() == Rational(-1));
    CHECK((w * w.conj()).as_rational() == Rational(1));
}

TEST_CASE("cyclotomic divisibility")
{
    Cyclotomic x = Cyclotomic(2) + Cyclotomic(2) * Cyclotomic::root_of_unity(4, 1);
    CHECK(cyclo_divisible_by_int(x, 2) == Divisibility::yes);
    CHECK(cyclo_divisible_by_int(Cyclotomic(3), 2) == Divisibility::no);
    CHECK(cyclo_divisible_by_int(Cyclotomic(Rational(1, 2)), 2) == Divisibility::indeterminate);
    CHECK(cyclo_divisible_by_int(Cyclotomic(0), 7) == Divisibility::yes);
}

TEST_CASE("divisibility is closed under addition")
{
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> coeff(-20, 20);
    for (int trial = 0; trial < 200; ++trial) {
        long m = std::vector<long>{3, 5, 7, 8, 12}[static_cast<std::size_t>(trial % 5)];
        long t = 2 + trial % 4;
        auto random = [&] {
            std::vector<Rational> c(static_cast<std::size_t>(m));
            for (auto& v : c)
                v = coeff(rng);
            return Cyclotomic(m, c);
        };
        Cyclotomic x = random(), y = random();
        if (cyclo_divisible_by_int(x, t) == Divisibility::yes &&
            cyclo_divisible_by_int(y, t) == Divisibility::yes)
            CHECK(cyclo_divisible_by_int(x + y, t) == Divisibility::yes);
        Cyclotomic tx = x * Rational(t);
        CHECK(cyclo_divisible_by_int(tx, t) == Divisibility::yes);
    }
}

TEST_CASE("integer divisibility")
{
    CHECK(integer_divisibility(196884, 2) == Divisibility::yes);
    CHECK(integer_divisibility(0, 7) == Divisibility::yes);
    CHECK(integer_divisibility(Rational(3, 2), 3) == Divisibility::indeterminate);
    CHECK(integer_divisibility(9, 2) == Divisibility::no);
    CHECK(to_string(Divisibility::indeterminate) == "indeterminate");
}

TEST_CASE("Bernoulli numbers agree with an independent recurrence")
{
    for (unsigned n = 0; n <= 40; ++n)
        CHECK(bernoulli_number(n) == oracle::bernoulli(n));
    CHECK(bernoulli_number(10) == Rational(5, 66));
}

TEST_CASE("Bernoulli polynomials")
{
    CHECK(bernoulli_polynomial(1, Rational(1, 2)) == 0);
    CHECK(bernoulli_polynomial(2, 0) == Rational(1, 6));
    CHECK(bernoulli_polynomial(2, Rational(1, 3)) == Rational(-1, 18));
    for (unsigned k = 0; k <= 20; ++k)
        for (long num = 0; num <= 12; ++num) {
            Rational x(num, 12);
            x.canonicalize();
            Rational sign = k % 2 == 0 ? 1 : -1;
            CHECK(bernoulli_polynomial(k, 1 - x) == sign * bernoulli_polynomial(k, x));
        }
}

TEST_CASE("cyclotomic polynomials")
{
    CHECK(cyclotomic_polynomial(1) == std::vector<Integer>{-1, 1});
    CHECK(cyclotomic_polynomial(12) == std::vector<Integer>{1, 0, -1, 0, 1});
    CHECK(cyclotomic_polynomial(105).size() == 49);
    CHECK(euler_phi(105) == 48);
}
