#include "magnetic/weil.hpp"

#include "magnetic/errors.hpp"

#include <cctype>

namespace magnetic {

Cyclotomic cyclotomic_sqrt(long n)
{
    if (n < 1)
        throw InputError("square root of a non-positive integer");
    long s = 1, r = 1, m = n;
    for (long p = 2; p * p <= m; ++p) {
        while (m % (p * p) == 0) {
            m /= p * p;
            s *= p;
        }
    }
    r = m;
    if (r == 1)
        return Cyclotomic(s);
    // sum_{x mod 4r} e(x^2 / 4r) = 2 (1 + i) sqrt(r)
    long four_r = 4 * r;
    std::vector<Rational> gauss(static_cast<std::size_t>(four_r));
    for (long x = 0; x < four_r; ++x)
        gauss[static_cast<std::size_t>((x * x) % four_r)] += 1;
    Cyclotomic g(four_r, std::move(gauss));
    Cyclotomic one_minus_i = Cyclotomic(1) - Cyclotomic::root_of_unity(4, 1);
    return g * one_minus_i * Rational(s, 4);
}

namespace {

long squarefree_part(long n)
{
    long r = n;
    for (long p = 2; p * p <= r; ++p)
        while (r % (p * p) == 0)
            r /= p * p;
    return r;
}

}  // namespace

WeilRep::WeilRep(EvenLattice lattice) : WeilRep(std::make_shared<const EvenLattice>(std::move(lattice)), false) {}

WeilRep::WeilRep(std::shared_ptr<const EvenLattice> lattice, bool negated)
    : lattice_(std::move(lattice)), negated_(negated)
{
    build();
}

Rational WeilRep::q_value(std::size_t coset) const
{
    const Rational& q = disc().q_value(coset);
    return negated_ ? frac(-q) : q;
}

void WeilRep::build()
{
    const DiscriminantGroup& d = disc();
    std::size_t n = d.order();
    long r = squarefree_part(static_cast<long>(n));
    order_ = lcm_long(lcm_long(8, d.level()), 4 * r);

    t_ = CycloMatrix(n, n);
    t_inv_ = CycloMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        t_(i, i) = Cyclotomic::e(q_value(i)).embed(order_);
        t_inv_(i, i) = Cyclotomic::e(-q_value(i)).embed(order_);
    }

    // sqrt(i)^(b- - b+) / sqrt|D|
    Cyclotomic sqrt_d = cyclotomic_sqrt(static_cast<long>(n));
    long sd2 = static_cast<long>(n);
    // 1/sqrt(n) = sqrt(n)/n
    Cyclotomic factor = Cyclotomic::root_of_unity(8, b_minus() - b_plus()) * sqrt_d / Rational(sd2);
    factor = factor.embed(order_);
    s_ = CycloMatrix(n, n);
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t b = g; b < n; ++b) {
            Rational pairing = d.bilinear(b, g);
            if (negated_)
                pairing = -pairing;
            Cyclotomic v = factor * Cyclotomic::e(-pairing);
            s_(g, b) = v;
            s_(b, g) = v;
        }
}

WeilRep WeilRep::dual() const { return WeilRep(lattice_, !negated_); }

// ---------------------------------------------------------------------------

std::vector<Generator> parse_word(std::string_view text)
{
    std::vector<Generator> word;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '*') {
            ++i;
            continue;
        }
        if (c == 'S') {
            word.push_back(Generator::S);
            ++i;
        } else if (c == 'T') {
            ++i;
            if (text.substr(i, 3) == "^-1") {
                word.push_back(Generator::T_inverse);
                i += 3;
            } else if (i < text.size() && text[i] == 'i') {
                word.push_back(Generator::T_inverse);
                ++i;
            } else {
                word.push_back(Generator::T);
            }
        } else {
            throw InputError("unexpected character '" + std::string(1, c) + "' in group word");
        }
    }
    return word;
}

std::string to_string(const std::vector<Generator>& word)
{
    std::string out;
    for (Generator g : word) {
        if (!out.empty())
            out += ' ';
        out += g == Generator::S ? "S" : g == Generator::T ? "T" : "T^-1";
    }
    return out;
}

CycloMatrix identity_matrix(std::size_t n) { return CycloMatrix::identity(n, Cyclotomic(1)); }

CycloMatrix rho_word(const WeilRep& w, const std::vector<Generator>& word)
{
    CycloMatrix m = identity_matrix(w.dimension());
    for (Generator g : word) {
        if (g == Generator::S) {
            m = m * w.rho_s();
        } else {
            // right multiplication by a diagonal matrix scales columns
            const CycloMatrix& t = g == Generator::T ? w.rho_t() : w.rho_t_inverse();
            for (std::size_t j = 0; j < m.cols(); ++j)
                for (std::size_t i = 0; i < m.rows(); ++i)
                    if (!m(i, j).is_zero())
                        m(i, j) *= t(j, j);
        }
    }
    return m;
}

std::array<long, 4> sl2_product(const std::vector<Generator>& word)
{
    std::array<long, 4> m{1, 0, 0, 1};
    for (Generator g : word) {
        std::array<long, 4> x = g == Generator::S   ? std::array<long, 4>{0, -1, 1, 0}
                                : g == Generator::T ? std::array<long, 4>{1, 1, 0, 1}
                                                    : std::array<long, 4>{1, -1, 0, 1};
        m = {m[0] * x[0] + m[1] * x[2], m[0] * x[1] + m[1] * x[3], m[2] * x[0] + m[3] * x[2],
             m[2] * x[1] + m[3] * x[3]};
    }
    return m;
}

std::vector<Generator> sl2_word(long a, long b, long c, long d)
{
    if (a * d - b * c != 1)
        throw InputError("matrix is not in SL2(Z)");
    std::vector<Generator> word;
    auto push_t = [&](long k) {
        for (long i = 0; i < k; ++i)
            word.push_back(Generator::T);
        for (long i = 0; i < -k; ++i)
            word.push_back(Generator::T_inverse);
    };
    // M = T^q1 S T^q2 S ... (+-1) T^b
    while (c != 0) {
        long q = a / c;
        if ((a % c != 0) && ((a < 0) != (c < 0)))
            --q;
        push_t(q);
        a -= q * c;
        b -= q * d;
        // M <- S^-1 M
        word.push_back(Generator::S);
        long na = c, nb = d, nc = -a, nd = -b;
        a = na;
        b = nb;
        c = nc;
        d = nd;
    }
    if (a == -1) {
        word.push_back(Generator::S);
        word.push_back(Generator::S);
        b = -b;
    }
    push_t(b);
    return word;
}

CycloMatrix conjugate_transpose(const CycloMatrix& m)
{
    CycloMatrix r(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            r(j, i) = m(i, j).conj();
    return r;
}

CycloMatrix kronecker(const CycloMatrix& a, const CycloMatrix& b)
{
    CycloMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j).is_zero())
                continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
    return r;
}

std::vector<std::size_t> direct_sum_index_map(const DiscriminantGroup& d1, const DiscriminantGroup& d2,
                                              const DiscriminantGroup& sum)
{
    if (d1.order() * d2.order() != sum.order())
        throw InputError("group orders do not multiply to the direct sum order");
    std::vector<std::size_t> map;
    map.reserve(sum.order());
    for (std::size_t i = 0; i < d1.order(); ++i)
        for (std::size_t j = 0; j < d2.order(); ++j) {
            RatVector x = d1.representative(i);
            const RatVector& y = d2.representative(j);
            x.insert(x.end(), y.begin(), y.end());
            map.push_back(sum.coset_of(x));
        }
    return map;
}

}  // namespace magnetic
