#include <doctest.h>

#include "magnetic/errors.hpp"
#include "magnetic/weil.hpp"

#include <random>

using namespace magnetic;

namespace {

const char* const kLattices[] = {"U", "A1", "A1(-1)", "A1+A1(-1)", "A1(-1)^2+U", "A2", "U(2)", "D4(-1)"};

CycloMatrix power(const CycloMatrix& m, int e)
{
    CycloMatrix r = identity_matrix(m.rows());
    for (int i = 0; i < e; ++i)
        r = r * m;
    return r;
}

}  // namespace

TEST_CASE("generator matrices for small groups")
{
    WeilRep trivial(builtin_lattice("U"));
    CHECK(trivial.rho_s() == identity_matrix(1));
    CHECK(trivial.rho_t() == identity_matrix(1));

    WeilRep a1(builtin_lattice("A1"));
    CHECK(a1.rho_t()(0, 0) == Cyclotomic(1));
    CHECK(a1.rho_t()(1, 1) == Cyclotomic::root_of_unity(4, 1));
    WeilRep a1m(builtin_lattice("A1(-1)"));
    CHECK(a1m.rho_t()(1, 1) == Cyclotomic::root_of_unity(4, 3));

    WeilRep ii(builtin_lattice("U+U+E8(-1)"));
    CHECK(ii.rho_s() == identity_matrix(1));

    WeilRep two(builtin_lattice("A1(-1)^2"));
    // sqrt(i)^2 / sqrt(4) = i / 2
    CHECK(two.rho_s()(0, 0) == Cyclotomic::root_of_unity(4, 1) * Rational(1, 2));
    CHECK(two.cyclo_order() == 8);
}

TEST_CASE("square roots")
{
    for (long n = 1; n <= 60; ++n) {
        Cyclotomic r = cyclotomic_sqrt(n);
        CHECK((r * r).as_rational() == Rational(n));
        CHECK(r.to_complex().real() > 0);
    }
}

TEST_CASE("metaplectic relations and unitarity")
{
    for (const char* name : kLattices) {
        CAPTURE(name);
        WeilRep w(builtin_lattice(name));
        const CycloMatrix& s = w.rho_s();
        const CycloMatrix& t = w.rho_t();
        CycloMatrix id = identity_matrix(w.dimension());
        CHECK(power(s, 8) == id);
        CHECK(power(s * t, 3) == s * s);
        CHECK(s * conjugate_transpose(s) == id);
        CHECK(t * conjugate_transpose(t) == id);
        CHECK(t * w.rho_t_inverse() == id);
        CHECK(rho_word(w, {}) == id);
        CHECK(rho_word(w, parse_word("S T S T S T")) == rho_word(w, parse_word("S S")));
        CHECK(rho_word(w, parse_word("T T^-1 S")) == s);
    }
}

TEST_CASE("orthogonal sums give Kronecker products")
{
    const std::pair<const char*, const char*> pairs[] = {
        {"A1", "A1(-1)"}, {"A1(-1)", "A1(-1)"}, {"A1(-1)^2", "U"}, {"A2", "A1"}, {"U(2)", "A1(-1)"}};
    for (auto [x, y] : pairs) {
        CAPTURE(x);
        CAPTURE(y);
        EvenLattice a = builtin_lattice(x), b = builtin_lattice(y);
        WeilRep wa(a), wb(b), ws(direct_sum(a, b));
        auto map = direct_sum_index_map(wa.disc(), wb.disc(), ws.disc());
        CycloMatrix ks = kronecker(wa.rho_s(), wb.rho_s());
        CycloMatrix kt = kronecker(wa.rho_t(), wb.rho_t());
        for (std::size_t i = 0; i < map.size(); ++i)
            for (std::size_t j = 0; j < map.size(); ++j) {
                CHECK(ws.rho_s()(map[i], map[j]) == ks(i, j));
                CHECK(ws.rho_t()(map[i], map[j]) == kt(i, j));
            }
    }
}

TEST_CASE("dual representation")
{
    WeilRep a1(builtin_lattice("A1"));
    WeilRep d = a1.dual();
    CHECK(d.is_dual());
    CHECK(d.rho_t()(1, 1) == Cyclotomic::root_of_unity(4, 3));
    CHECK(d.b_plus() == 0);
    CHECK(d.b_minus() == 1);
    for (const char* name : kLattices) {
        CAPTURE(name);
        WeilRep w(builtin_lattice(name));
        WeilRep dd = w.dual().dual();
        CHECK(dd.rho_s() == w.rho_s());
        CHECK(dd.rho_t() == w.rho_t());
        CycloMatrix s = w.rho_s(), ds = w.dual().rho_s();
        for (std::size_t i = 0; i < s.rows(); ++i)
            for (std::size_t j = 0; j < s.cols(); ++j)
                CHECK(ds(i, j) == s(i, j).conj());
    }
}

TEST_CASE("SL2 words")
{
    CHECK(sl2_product(sl2_word(1, 0, 0, 1)) == std::array<long, 4>{1, 0, 0, 1});
    CHECK(sl2_product(sl2_word(0, -1, 1, 0)) == std::array<long, 4>{0, -1, 1, 0});
    CHECK(sl2_product(sl2_word(-1, 0, 0, -1)) == std::array<long, 4>{-1, 0, 0, -1});
    std::mt19937 rng(17);
    std::uniform_int_distribution<long> dist(-30, 30);
    int found = 0;
    while (found < 200) {
        long a = dist(rng), c = dist(rng);
        Integer g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), Integer(a).get_mpz_t(), Integer(c).get_mpz_t());
        if (g != 1)
            continue;
        // a d - b c = 1 with d = s, b = -t
        long d = s.get_si(), b = -t.get_si();
        CHECK(sl2_product(sl2_word(a, b, c, d)) == std::array<long, 4>{a, b, c, d});
        ++found;
    }
    CHECK_THROWS_AS(sl2_word(1, 1, 1, 1), InputError);
    CHECK(to_string(parse_word("S,T^-1 Ti")) == "S T^-1 T^-1");
    CHECK_THROWS_AS(parse_word("SX"), InputError);
}
