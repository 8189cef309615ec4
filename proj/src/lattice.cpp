#include "magnetic/lattice.hpp"

#include "magnetic/errors.hpp"

#include <cctype>
#include <numeric>

namespace magnetic {

namespace {

long mod_floor(const Integer& a, long m)
{
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(m));
    return r.get_si();
}

RatVector reduce_mod_lattice(RatVector x)
{
    for (auto& c : x)
        c = frac(c);
    return x;
}

}  // namespace

DiscriminantGroup::DiscriminantGroup(const IntMatrix& gram) : gram_(gram)
{
    std::size_t n = gram.rows();
    SmithForm snf = smith_normal_form(gram);
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < n; ++i) {
        if (snf.diagonal[i] == 0)
            throw InputError("Gram matrix is singular");
        if (abs(snf.diagonal[i]) > 1)
            keep.push_back(i);
    }
    u_ = IntMatrix(keep.size(), n);
    for (std::size_t r = 0; r < keep.size(); ++r) {
        std::size_t i = keep[r];
        long d = Integer(abs(snf.diagonal[i])).get_si();
        divisors_.push_back(d);
        order_ *= static_cast<std::size_t>(d);
        for (std::size_t c = 0; c < n; ++c)
            u_(r, c) = snf.U(i, c);
        RatVector g(n);
        for (std::size_t c = 0; c < n; ++c)
            g[c] = make_rational(snf.V(c, i), snf.diagonal[i]);
        generators_.push_back(std::move(g));
    }

    reps_.reserve(order_);
    q_values_.reserve(order_);
    RatMatrix g_rat = to_rational(gram);
    for (std::size_t idx = 0; idx < order_; ++idx) {
        std::vector<long> t = digits(idx);
        RatVector x(n);
        for (std::size_t i = 0; i < t.size(); ++i)
            for (std::size_t c = 0; c < n; ++c)
                x[c] += Rational(t[i]) * generators_[i][c];
        x = reduce_mod_lattice(std::move(x));
        q_values_.push_back(frac(dot(x, g_rat * x) / 2));
        reps_.push_back(std::move(x));
    }

    Integer level = 1;
    for (std::size_t i = 0; i < generators_.size(); ++i) {
        RatVector gi = g_rat * generators_[i];
        level = lcm(level, Integer(Rational(dot(generators_[i], gi) / 2).get_den()));
        for (std::size_t j = i + 1; j < generators_.size(); ++j)
            level = lcm(level, Integer(dot(generators_[j], gi).get_den()));
    }
    level_ = level.get_si();
}

std::vector<long> DiscriminantGroup::digits(std::size_t coset) const
{
    if (coset >= order_)
        throw InputError("coset index out of range");
    std::vector<long> t(divisors_.size());
    for (std::size_t i = divisors_.size(); i-- > 0;) {
        t[i] = static_cast<long>(coset % static_cast<std::size_t>(divisors_[i]));
        coset /= static_cast<std::size_t>(divisors_[i]);
    }
    return t;
}

std::size_t DiscriminantGroup::from_digits(const std::vector<long>& t) const
{
    if (t.size() != divisors_.size())
        throw InputError("wrong number of coset digits");
    std::size_t idx = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        long d = divisors_[i];
        idx = idx * static_cast<std::size_t>(d) + static_cast<std::size_t>(((t[i] % d) + d) % d);
    }
    return idx;
}

std::size_t DiscriminantGroup::coset_of(const RatVector& x) const
{
    std::size_t n = gram_.rows();
    if (x.size() != n)
        throw InputError("vector dimension does not match the lattice rank");
    IntVector y(n);
    for (std::size_t r = 0; r < n; ++r) {
        Rational s = 0;
        for (std::size_t c = 0; c < n; ++c)
            s += Rational(gram_(r, c)) * x[c];
        if (!is_integer(s))
            throw InputError("vector is not in the dual lattice");
        y[r] = s.get_num();
    }
    std::vector<long> t(divisors_.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        Integer s = 0;
        for (std::size_t c = 0; c < n; ++c)
            s += u_(i, c) * y[c];
        t[i] = mod_floor(s, divisors_[i]);
    }
    return from_digits(t);
}

Rational DiscriminantGroup::bilinear(std::size_t a, std::size_t b) const
{
    return frac(dot(reps_[a], to_rational(gram_) * reps_[b]));
}

std::size_t DiscriminantGroup::add(std::size_t a, std::size_t b) const
{
    std::vector<long> ta = digits(a), tb = digits(b);
    for (std::size_t i = 0; i < ta.size(); ++i)
        ta[i] += tb[i];
    return from_digits(ta);
}

std::size_t DiscriminantGroup::negate(std::size_t a) const
{
    std::vector<long> t = digits(a);
    for (auto& x : t)
        x = -x;
    return from_digits(t);
}

// ---------------------------------------------------------------------------

std::pair<int, int> signature(const IntMatrix& gram)
{
    RatVector p = characteristic_polynomial(to_rational(gram));
    // all roots are real, so Descartes' rule is exact
    auto changes = [](const RatVector& c, bool negate_x) {
        int count = 0, last = 0;
        for (std::size_t i = 0; i < c.size(); ++i) {
            int s = sgn(c[i]);
            if (negate_x && i % 2 == 1)
                s = -s;
            if (s == 0)
                continue;
            if (last != 0 && s != last)
                ++count;
            last = s;
        }
        return count;
    };
    return {changes(p, false), changes(p, true)};
}

EvenLattice::EvenLattice(IntMatrix gram, std::string name) : gram_(std::move(gram)), name_(std::move(name))
{
    std::size_t n = gram_.rows();
    if (gram_.cols() != n)
        throw InputError("Gram matrix must be square");
    for (std::size_t i = 0; i < n; ++i) {
        if (!mpz_even_p(gram_(i, i).get_mpz_t()))
            throw InputError("Gram matrix must have even diagonal");
        for (std::size_t j = 0; j < i; ++j)
            if (gram_(i, j) != gram_(j, i))
                throw InputError("Gram matrix must be symmetric");
    }
    det_ = magnetic::determinant(gram_);
    if (det_ == 0)
        throw InputError("Gram matrix is singular");
    auto [bp, bm] = signature(gram_);
    if (static_cast<std::size_t>(bp + bm) != n)
        throw InternalError("signature computation lost eigenvalues");
    b_plus_ = bp;
    b_minus_ = bm;
    disc_ = std::make_shared<const DiscriminantGroup>(gram_);
    if (disc_->order() != abs(det_))
        throw InternalError("discriminant group order differs from |det|");
}

RatVector EvenLattice::gram_times(const RatVector& x) const
{
    if (x.size() != rank())
        throw InputError("vector dimension does not match the lattice rank");
    RatVector r(rank());
    for (std::size_t i = 0; i < rank(); ++i)
        for (std::size_t j = 0; j < rank(); ++j)
            if (gram_(i, j) != 0)
                r[i] += Rational(gram_(i, j)) * x[j];
    return r;
}

Rational EvenLattice::inner(const RatVector& x, const RatVector& y) const { return dot(x, gram_times(y)); }

bool EvenLattice::in_dual(const RatVector& x) const
{
    RatVector g = gram_times(x);
    return std::all_of(g.begin(), g.end(), [](const Rational& c) { return is_integer(c); });
}

EvenLattice EvenLattice::scaled(long c) const
{
    IntMatrix g = gram_;
    for (std::size_t i = 0; i < rank(); ++i)
        for (std::size_t j = 0; j < rank(); ++j)
            g(i, j) *= c;
    return EvenLattice(std::move(g), name_.empty() ? std::string() : name_ + "(" + std::to_string(c) + ")");
}

EvenLattice direct_sum(const EvenLattice& a, const EvenLattice& b)
{
    std::size_t n = a.rank(), m = b.rank();
    IntMatrix g(n + m, n + m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            g(i, j) = a.gram()(i, j);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            g(n + i, n + j) = b.gram()(i, j);
    std::string name;
    if (!a.name().empty() && !b.name().empty())
        name = a.name() + "+" + b.name();
    return EvenLattice(std::move(g), name);
}

// ---------------------------------------------------------------------------
// named lattices

namespace {

IntMatrix cartan(std::size_t n, const std::vector<std::pair<int, int>>& edges)
{
    IntMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        g(i, i) = 2;
    for (auto [a, b] : edges) {
        g(static_cast<std::size_t>(a), static_cast<std::size_t>(b)) = -1;
        g(static_cast<std::size_t>(b), static_cast<std::size_t>(a)) = -1;
    }
    return g;
}

IntMatrix named_gram(std::string_view name)
{
    if (name == "U")
        return IntMatrix{{0, 1}, {1, 0}};
    if (name == "A1")
        return IntMatrix{{2}};
    if (name == "A2")
        return cartan(2, {{0, 1}});
    if (name == "D4")
        return cartan(4, {{0, 1}, {1, 2}, {1, 3}});
    if (name == "E8")
        return cartan(8, {{0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {1, 3}});
    throw InputError("unknown lattice name '" + std::string(name) + "'");
}

}  // namespace

const std::vector<std::string>& builtin_lattice_names()
{
    static const std::vector<std::string> names{"U", "A1", "A2", "D4", "E8"};
    return names;
}

EvenLattice builtin_lattice(std::string_view spec)
{
    std::string s;
    for (char c : spec)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s += c;
    if (s.empty())
        throw InputError("empty lattice description");

    std::vector<IntMatrix> blocks;
    std::size_t i = 0;
    auto read_int = [&](std::string_view what) {
        std::size_t start = i;
        if (i < s.size() && (s[i] == '-' || s[i] == '+'))
            ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
            ++i;
        if (start == i || (i == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
            throw InputError("expected " + std::string(what) + " in lattice description '" + s + "'");
        return std::stol(s.substr(start, i - start));
    };
    while (i < s.size()) {
        std::size_t start = i;
        while (i < s.size() && std::isalnum(static_cast<unsigned char>(s[i])))
            ++i;
        IntMatrix g = named_gram(std::string_view(s).substr(start, i - start));
        if (i < s.size() && s[i] == '(') {
            ++i;
            long c = read_int("a scale factor");
            if (i >= s.size() || s[i] != ')')
                throw InputError("missing ')' in lattice description '" + s + "'");
            ++i;
            if (c == 0)
                throw InputError("scale factor must be nonzero");
            for (std::size_t r = 0; r < g.rows(); ++r)
                for (std::size_t col = 0; col < g.cols(); ++col)
                    g(r, col) *= c;
        }
        long reps = 1;
        if (i < s.size() && s[i] == '^') {
            ++i;
            reps = read_int("a repetition count");
            if (reps < 1)
                throw InputError("repetition count must be positive");
        }
        for (long r = 0; r < reps; ++r)
            blocks.push_back(g);
        if (i < s.size()) {
            if (s[i] != '+')
                throw InputError("expected '+' in lattice description '" + s + "'");
            ++i;
            if (i == s.size())
                throw InputError("trailing '+' in lattice description '" + s + "'");
        }
    }
    std::size_t n = 0;
    for (const auto& b : blocks)
        n += b.rows();
    IntMatrix g(n, n);
    std::size_t off = 0;
    for (const auto& b : blocks) {
        for (std::size_t r = 0; r < b.rows(); ++r)
            for (std::size_t c = 0; c < b.cols(); ++c)
                g(off + r, off + c) = b(r, c);
        off += b.rows();
    }
    return EvenLattice(std::move(g), s);
}

// ---------------------------------------------------------------------------
// cusp data

namespace {

// x with row . x = gcd(row), by successive extended gcds
IntVector bezout_vector(const IntVector& row)
{
    IntVector x(row.size());
    Integer g = 0;
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (row[i] == 0)
            continue;
        Integer ng, s, t;
        mpz_gcdext(ng.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), g.get_mpz_t(), row[i].get_mpz_t());
        for (auto& v : x)
            v *= s;
        x[i] += t;
        g = ng;
    }
    return x;
}

Integer norm2(const IntVector& v)
{
    Integer s = 0;
    for (const auto& c : v)
        s += c * c;
    return s;
}

// Greedy size reduction of x against the columns of a kernel basis.
void shorten(IntVector& x, const IntMatrix& kernel)
{
    bool improved = true;
    while (improved) {
        improved = false;
        for (std::size_t j = 0; j < kernel.cols(); ++j) {
            IntVector k = kernel.col(j);
            Integer kk = norm2(k);
            if (kk == 0)
                continue;
            Integer xk = 0;
            for (std::size_t i = 0; i < x.size(); ++i)
                xk += x[i] * k[i];
            // nearest integer to xk / kk
            Integer t;
            Integer twice = 2 * xk + kk;
            Integer denom = 2 * kk;
            mpz_fdiv_q(t.get_mpz_t(), twice.get_mpz_t(), denom.get_mpz_t());
            if (t == 0)
                continue;
            IntVector y = x;
            for (std::size_t i = 0; i < y.size(); ++i)
                y[i] -= t * k[i];
            if (norm2(y) < norm2(x)) {
                x = std::move(y);
                improved = true;
            }
        }
    }
}

}  // namespace

CuspData cusp_data(const EvenLattice& lattice, const IntVector& e, const RatVector& eprime)
{
    std::size_t n = lattice.rank();
    if (e.size() != n || eprime.size() != n)
        throw InputError("cusp vectors must have the lattice rank as dimension");
    if (content(e) != 1)
        throw InputError("e must be a primitive lattice vector");
    RatVector e_rat = to_rational(e);
    if (lattice.q(e_rat) != 0)
        throw InputError("e must be isotropic");
    if (!lattice.in_dual(eprime))
        throw InputError("e' must lie in the dual lattice");
    if (lattice.inner(e_rat, eprime) != 1)
        throw InputError("(e, e') must equal 1");

    RatVector ge = lattice.gram_times(e_rat);
    RatVector gep = lattice.gram_times(eprime);
    IntVector row(n), row_p(n);
    for (std::size_t i = 0; i < n; ++i) {
        row[i] = ge[i].get_num();
        row_p[i] = gep[i].get_num();
    }
    Integer ne = content(row);
    IntVector reduced(n);
    for (std::size_t i = 0; i < n; ++i)
        reduced[i] = row[i] / ne;

    IntVector zeta = bezout_vector(reduced);
    IntMatrix single(1, n);
    for (std::size_t i = 0; i < n; ++i)
        single(0, i) = reduced[i];
    shorten(zeta, integer_kernel(single));

    IntMatrix both(2, n);
    for (std::size_t i = 0; i < n; ++i) {
        both(0, i) = row[i];
        both(1, i) = row_p[i];
    }
    IntMatrix basis = integer_kernel(both);
    if (basis.cols() + 2 != n)
        throw InternalError("e and e' span less than a plane");
    IntMatrix k_gram = basis.transpose() * lattice.gram() * basis;
    EvenLattice k(std::move(k_gram));
    if (k.b_plus() != lattice.b_plus() - 1 || k.b_minus() != lattice.b_minus() - 1)
        throw InternalError("K has the wrong signature");
    RatMatrix k_inv = k.rank() == 0 ? RatMatrix() : inverse(to_rational(k.gram()));

    Integer check = 0;
    for (std::size_t i = 0; i < n; ++i)
        check += row[i] * zeta[i];
    if (check != ne)
        throw InternalError("zeta does not satisfy (e, zeta) = N_e");

    Integer den = 1;
    for (std::size_t i = 0; i < k_inv.rows(); ++i)
        for (std::size_t j = 0; j < k_inv.cols(); ++j)
            den = lcm(den, Integer(k_inv(i, j).get_den()));
    IntMatrix k_inv_num(k_inv.rows(), k_inv.cols());
    for (std::size_t i = 0; i < k_inv.rows(); ++i)
        for (std::size_t j = 0; j < k_inv.cols(); ++j)
            k_inv_num(i, j) = Integer(k_inv(i, j) * Rational(den));
    IntMatrix to_ambient = basis * k_inv_num;

    return CuspData{e,
                    eprime,
                    std::move(zeta),
                    ne.get_si(),
                    std::move(basis),
                    std::move(k),
                    std::move(k_inv),
                    std::move(k_inv_num),
                    den,
                    std::move(to_ambient)};
}

bool divisibility_in_dual(const IntVector& u, const Integer& m)
{
    if (m <= 0)
        throw InputError("divisor must be positive");
    return std::all_of(u.begin(), u.end(),
                       [&](const Integer& c) { return mpz_divisible_p(c.get_mpz_t(), m.get_mpz_t()) != 0; });
}

std::vector<Integer> dual_divisors(const IntVector& u)
{
    Integer g = content(u);
    std::vector<Integer> out;
    if (g == 0)
        throw InputError("the zero vector has no finite set of divisors");
    for (Integer d = 1; d * d <= g; ++d)
        if (mpz_divisible_p(g.get_mpz_t(), d.get_mpz_t())) {
            out.push_back(d);
            if (d * d != g)
                out.push_back(g / d);
        }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

RatVector scaled_product(const IntMatrix& m, const IntVector& u, const Integer& den)
{
    RatVector out(m.rows());
    Integer acc;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        acc = 0;
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (sgn(u[j]) != 0)
                acc += m(i, j) * u[j];
        out[i] = make_rational(acc, den);
    }
    return out;
}

}  // namespace

RatVector k_coordinates(const CuspData& cusp, const IntVector& u)
{
    if (u.size() != cusp.k.rank())
        throw InputError("K' vector has the wrong dimension");
    return scaled_product(cusp.k_inverse_num, u, cusp.k_inverse_den);
}

RatVector ambient_coordinates(const CuspData& cusp, const IntVector& u)
{
    if (u.size() != cusp.k.rank())
        throw InputError("K' vector has the wrong dimension");
    return scaled_product(cusp.to_ambient_num, u, cusp.k_inverse_den);
}

Rational dual_norm(const CuspData& cusp, const IntVector& u)
{
    if (u.size() != cusp.k.rank())
        throw InputError("K' vector has the wrong dimension");
    const IntMatrix& m = cusp.k_inverse_num;
    Integer total = 0, row;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (sgn(u[i]) == 0)
            continue;
        row = 0;
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (sgn(u[j]) != 0)
                row += m(i, j) * u[j];
        total += u[i] * row;
    }
    return make_rational(total, 2 * cusp.k_inverse_den);
}

}  // namespace magnetic
