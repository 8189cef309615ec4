#include <doctest.h>

#include "magnetic/errors.hpp"
#include "magnetic/vvmf.hpp"

using namespace magnetic;

namespace {

std::shared_ptr<const WeilRep> rep_of(const char* name)
{
    return std::make_shared<const WeilRep>(builtin_lattice(name));
}

}  // namespace

TEST_CASE("scalar forms")
{
    auto trivial = rep_of("U+U+E8(-1)");
    VVModularForm j = from_scalar(classical_generator(ClassicalForm::j, 10), trivial, 0);
    CHECK(j.coefficient(0, -1) == 1);
    CHECK(j.coefficient(0, 0) == 744);
    VVModularForm g = from_scalar(evaluate_classical_expression("E4^2/Delta", 10), trivial, -4);
    auto pp = g.principal_part();
    CHECK(pp.size() == 1);
    CHECK(pp.begin()->first == std::make_pair(std::size_t{0}, Rational(-1)));
    CHECK(pp.begin()->second == 1);
    CHECK_THROWS_AS(from_scalar(classical_generator(ClassicalForm::j, 10), rep_of("A1"), 0), InputError);
    // odd weight for a unimodular lattice of signature (2, 10) forces zero
    CHECK_THROWS_AS(from_scalar(classical_generator(ClassicalForm::E4, 5), trivial, 3), InputError);
}

TEST_CASE("grid and symmetry checks")
{
    auto a1 = rep_of("A1");
    FourierSeries good0(1, 5, {{0, 1}, {2, 3}});
    FourierSeries good1(4, 5, {{1, 2}, {5, -1}});
    CHECK_NOTHROW(VVModularForm(a1, Rational(1, 2), {good0, good1}));
    FourierSeries bad1(4, 5, {{2, 2}});
    CHECK_THROWS_AS(VVModularForm(a1, Rational(1, 2), {good0, bad1}), InputError);
    CHECK_THROWS_AS(VVModularForm(a1, Rational(1, 2), {good0}), InputError);

    auto a2 = rep_of("A2");
    FourierSeries c1(3, 4, {{1, 1}});
    FourierSeries c2(3, 4, {{1, 2}});
    CHECK(central_symmetry_sign(*a2, 1) == 1);
    CHECK_NOTHROW(VVModularForm(a2, 1, {FourierSeries(1, 4), c1, c1}));
    CHECK_THROWS_AS(VVModularForm(a2, 1, {FourierSeries(1, 4), c1, c2}), InputError);
}

TEST_CASE("Bol images")
{
    auto trivial = rep_of("U+U+E8(-1)");
    VVModularForm g = from_scalar(evaluate_classical_expression("E4^2/Delta", 20), trivial, -4);
    VVModularForm f = bol(g, 6);
    CHECK(f.weight() == 6);
    CHECK(f.coefficient(0, -1) == -1);
    CHECK(f.coefficient(0, 0) == 0);
    CHECK(f.coefficient(0, 2) == 32 * g.coefficient(0, 2));
    CHECK_THROWS_AS(bol(g, 4), InputError);
    CHECK(bol(g * Rational(0), 6).is_zero());
    CHECK(bol(g * Rational(7, 3), 6) == bol(g, 6) * Rational(7, 3));

    auto two = rep_of("U");
    VVModularForm h = from_scalar(FourierSeries(1, 5, {{-1, 2}, {3, 5}}), two, 0);
    CHECK(bol(h, 2).coefficient(0, 3) == 15);
}

TEST_CASE("tensor with invariant vectors")
{
    auto trivial = rep_of("U+U+E8(-1)");
    VVModularForm g = from_scalar(evaluate_classical_expression("E4^2/Delta", 8), trivial, -4);

    WeilRep unit(builtin_lattice("U"));
    VVModularForm same = tensor_with_invariant({1}, unit, g);
    CHECK(same.components() == g.components());
    CHECK(same.rep().lattice().rank() == 14);

    WeilRep u2(builtin_lattice("U(2)"));
    // indicator of an isotropic subgroup of order 2
    IntVector v(4);
    for (std::size_t i = 0; i < 4; ++i)
        if (u2.disc().q_value(i) == 0 && (i == 0 || v[0] != 0) && std::count(v.begin(), v.end(), 1) < 2)
            v[i] = 1;
    CHECK(is_invariant(u2, v));
    CHECK_FALSE(is_invariant(u2, {1, 1, 1, 1}));
    CHECK_FALSE(is_invariant(u2, {1, 0, 0, 0}));
    CHECK_THROWS_AS(tensor_with_invariant({1, 1, 1, 1}, u2, g), InputError);
    VVModularForm t = tensor_with_invariant(v, u2, g);
    CHECK(t.rep().dimension() == 4);
    std::size_t copies = 0;
    for (const auto& c : t.components())
        if (c == g.component(0))
            ++copies;
    CHECK(copies == 2);
    CHECK(bol(t, 6) == tensor_with_invariant(v, u2, bol(g, 6)));
}

TEST_CASE("input divisibility report")
{
    auto trivial = rep_of("U+U+E8(-1)");
    VVModularForm e4 = from_scalar(classical_generator(ClassicalForm::E4, 6), trivial, 4);
    DivisibilityReport r = check_input_divisibility(e4, 1, 3);
    auto verdict_at = [&](long n) {
        for (const auto& e : r.entries)
            if (e.exponent == n)
                return e.verdict;
        FAIL("missing exponent");
        return Divisibility::indeterminate;
    };
    CHECK(verdict_at(1) == Divisibility::yes);
    CHECK(verdict_at(2) == Divisibility::yes);  // 2160 / 4
    CHECK(verdict_at(3) == Divisibility::no);   // 6720 / 9
    CHECK(verdict_at(4) == Divisibility::yes);  // 17520 / 16
    CHECK_FALSE(r.all_pass());

    VVModularForm g = from_scalar(evaluate_classical_expression("E4^2/Delta", 40), trivial, -4);
    DivisibilityReport rb = check_input_divisibility(bol(g, 6), 1, 6);
    CHECK(rb.all_pass());
    CHECK(rb.entries.size() == bol(g, 6).component(0).terms().size());
    CHECK_THROWS_AS(check_input_divisibility(g, 1, 1), InputError);

    VVModularForm half = from_scalar(FourierSeries(1, 3, {{1, Rational(1, 2)}}), rep_of("U"), 0);
    CHECK(check_input_divisibility(half, 1, 2).indeterminate == 1);
}

TEST_CASE("numeric modularity")
{
    PrecisionScope scope(256);
    auto trivial = rep_of("U+U+E8(-1)");
    VVModularForm j = from_scalar(classical_generator(ClassicalForm::j, 120), trivial, 0);
    BigComplex tau(BigFloat("0.3"), BigFloat(2));
    SpotCheckReport r = modularity_spot_check(j, {tau});
    CHECK(r.passed);
    CHECK_FALSE(r.tail_warning);
    CHECK(r.points[0].deviation_s < BigFloat("1e-10"));
    CHECK(r.points[0].deviation_t < BigFloat("1e-60"));

    std::vector<FourierSeries> broken = j.components();
    broken[0] += FourierSeries::monomial(1, 1, broken[0].prec());
    VVModularForm bad(trivial, 0, broken);
    CHECK_FALSE(modularity_spot_check(bad, {tau}).passed);

    VVModularForm e4 = from_scalar(classical_generator(ClassicalForm::E4, 60), trivial, 4);
    SpotCheckOptions opts;
    opts.growth_a = 240;
    opts.growth_b = 0.1;
    SpotCheckReport r4 = modularity_spot_check(e4, {BigComplex(BigFloat("-0.2"), BigFloat("1.5"))}, opts);
    CHECK(r4.passed);

    VVModularForm short_j = from_scalar(classical_generator(ClassicalForm::j, 3), trivial, 0);
    CHECK(modularity_spot_check(short_j, {tau}).tail_warning);
}

TEST_CASE("vector valued spot check")
{
    // theta series of A1: q^(n^2) on coset 0, q^((n + 1/2)^2) on coset 1
    auto a1 = rep_of("A1");
    long prec = 40;
    std::map<long, Rational> c0, c1;
    for (long n = -10; n <= 10; ++n) {
        if (n * n < prec)
            c0[4 * n * n] += 1;
        if ((2 * n + 1) * (2 * n + 1) < 4 * prec)
            c1[(2 * n + 1) * (2 * n + 1)] += 1;
    }
    FourierSeries s0 = FourierSeries(4, prec, c0).normalized(), s1(4, prec, c1);
    VVModularForm theta(a1, Rational(1, 2), {s0, s1});
    SpotCheckOptions opts;
    opts.growth_a = 2;
    opts.growth_b = 0;
    auto r = modularity_spot_check(theta, {BigComplex(BigFloat("0.1"), BigFloat("1.2"))}, opts);
    CHECK(r.passed);

    // the same series do not sit on the grid of the dual representation
    auto dual = std::make_shared<const WeilRep>(a1->dual());
    CHECK_THROWS_AS(VVModularForm(dual, Rational(1, 2), {s0, s1}), InputError);

    // swapping the components breaks the S check
    FourierSeries w0 = FourierSeries(4, prec, {{4, 1}}).normalized();
    VVModularForm wrong(a1, Rational(1, 2), {s0 + w0, s1});
    CHECK_FALSE(modularity_spot_check(wrong, {BigComplex(BigFloat("0.1"), BigFloat("1.2"))}, opts).passed);
}
