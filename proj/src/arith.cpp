#include "magnetic/arith.hpp"

#include "magnetic/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

namespace magnetic {

Rational make_rational(const Integer& num, const Integer& den)
{
    if (den == 0)
        throw InputError("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational parse_rational(std::string_view text)
{
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
            s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
            s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    auto parse_int = [&](std::string_view s) {
        s = trim(s);
        Integer v;
        std::string str(s);
        if (!str.empty() && str.front() == '+')
            str.erase(0, 1);
        if (str.empty() || v.set_str(str, 10) != 0)
            throw InputError("not a rational number: '" + std::string(text) + "'");
        return v;
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rational(parse_int(text));
    return make_rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

std::string to_string(const Integer& x) { return x.get_str(); }
std::string to_string(const Rational& x) { return x.get_str(); }

bool is_integer(const Rational& x) { return x.get_den() == 1; }

Integer floor(const Rational& x)
{
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

Integer ceil(const Rational& x)
{
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

Rational frac(const Rational& x) { return x - Rational(floor(x)); }

Integer lcm(const Integer& a, const Integer& b)
{
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

Integer binomial(unsigned long n, unsigned long k)
{
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Integer power(const Integer& base, unsigned long exp)
{
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

Rational power(const Rational& base, long exp)
{
    if (exp < 0) {
        if (base == 0)
            throw InputError("zero to a negative power");
        return power(Rational(1) / base, -exp);
    }
    auto e = static_cast<unsigned long>(exp);
    Rational r(power(Integer(base.get_num()), e), power(Integer(base.get_den()), e));
    r.canonicalize();
    return r;
}

long gcd_long(long a, long b)
{
    a = std::abs(a);
    b = std::abs(b);
    while (b != 0) {
        long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

long lcm_long(long a, long b)
{
    if (a == 0 || b == 0)
        return 0;
    return std::abs(a / gcd_long(a, b) * b);
}

long euler_phi(long m)
{
    long result = m;
    for (long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            while (m % p == 0)
                m /= p;
            result -= result / p;
        }
    }
    if (m > 1)
        result -= result / m;
    return result;
}

std::string_view to_string(Divisibility d)
{
    switch (d) {
    case Divisibility::yes: return "pass";
    case Divisibility::no: return "fail";
    case Divisibility::indeterminate: return "indeterminate";
    }
    return "?";
}

Divisibility integer_divisibility(const Rational& a, const Integer& t)
{
    if (t == 0)
        throw InputError("divisibility by zero");
    if (!is_integer(a))
        return Divisibility::indeterminate;
    return mpz_divisible_p(a.get_num_mpz_t(), t.get_mpz_t()) ? Divisibility::yes
                                                            : Divisibility::no;
}

// ---------------------------------------------------------------------------
// cyclotomic polynomials

namespace {

std::mutex cyclo_mutex;
std::map<long, std::shared_ptr<const std::vector<Integer>>> cyclo_cache;

// exact division of a by the monic polynomial b (both constant term first)
std::vector<Integer> divide_monic(std::vector<Integer> a, const std::vector<Integer>& b)
{
    std::size_t db = b.size() - 1;
    std::vector<Integer> q(a.size() - db);
    for (std::size_t i = a.size(); i-- > db;) {
        Integer c = a[i];
        q[i - db] = c;
        if (c != 0)
            for (std::size_t j = 0; j <= db; ++j)
                a[i - db + j] -= c * b[j];
    }
    return q;
}

std::shared_ptr<const std::vector<Integer>> compute_cyclotomic(long m)
{
    // x^m - 1 divided by Phi_d for all proper divisors d of m
    std::vector<Integer> p(static_cast<std::size_t>(m) + 1);
    p[0] = -1;
    p[static_cast<std::size_t>(m)] = 1;
    for (long d = 1; d < m; ++d)
        if (m % d == 0)
            p = divide_monic(std::move(p), cyclotomic_polynomial(d));
    return std::make_shared<const std::vector<Integer>>(std::move(p));
}

}  // namespace

const std::vector<Integer>& cyclotomic_polynomial(long m)
{
    if (m < 1)
        throw InputError("cyclotomic order must be positive");
    {
        std::lock_guard lock(cyclo_mutex);
        auto it = cyclo_cache.find(m);
        if (it != cyclo_cache.end())
            return *it->second;
    }
    auto poly = compute_cyclotomic(m);
    std::lock_guard lock(cyclo_mutex);
    auto [it, inserted] = cyclo_cache.emplace(m, std::move(poly));
    return *it->second;
}

// ---------------------------------------------------------------------------
// Cyclotomic

Cyclotomic::Cyclotomic() : coeffs_(1) {}

Cyclotomic::Cyclotomic(long value) : coeffs_{Rational(value)} {}

Cyclotomic::Cyclotomic(const Rational& value) : coeffs_{value} {}

Cyclotomic::Cyclotomic(long order, std::vector<Rational> coeffs) : order_(order)
{
    if (order < 1)
        throw InputError("cyclotomic order must be positive");
    reduce(std::move(coeffs));
}

void Cyclotomic::reduce(std::vector<Rational> poly)
{
    const auto& phi = cyclotomic_polynomial(order_);
    std::size_t deg = phi.size() - 1;
    // zeta^M = 1 first, which keeps long divisions short
    if (poly.size() > static_cast<std::size_t>(order_)) {
        for (std::size_t i = static_cast<std::size_t>(order_); i < poly.size(); ++i)
            poly[i % static_cast<std::size_t>(order_)] += poly[i];
        poly.resize(static_cast<std::size_t>(order_));
    }
    for (std::size_t i = poly.size(); i-- > deg;) {
        if (sgn(poly[i]) == 0)
            continue;
        Rational c = poly[i];
        for (std::size_t j = 0; j < deg; ++j)
            if (phi[j] != 0)
                poly[i - deg + j] -= c * Rational(phi[j]);
        poly[i] = 0;
    }
    poly.resize(deg);
    coeffs_ = std::move(poly);
}

Cyclotomic Cyclotomic::root_of_unity(long m, long a)
{
    if (m < 1)
        throw InputError("root of unity of non-positive order");
    return e(make_rational(a, m));
}

Cyclotomic Cyclotomic::e(const Rational& x)
{
    Rational f = frac(x);
    long m = f.get_den().get_si();
    long a = f.get_num().get_si();
    std::vector<Rational> poly(static_cast<std::size_t>(a) + 1);
    poly[static_cast<std::size_t>(a)] = 1;
    return Cyclotomic(m, std::move(poly));
}

Cyclotomic Cyclotomic::embed(long new_order) const
{
    if (new_order == order_)
        return *this;
    if (new_order < 1)
        throw InputError("cyclotomic order must be positive");
    if (new_order % order_ != 0)
        return embed(lcm_long(order_, new_order)).descend(new_order);
    long step = new_order / order_;
    std::vector<Rational> poly(coeffs_.size() == 0 ? 1 : (coeffs_.size() - 1) * step + 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        poly[i * static_cast<std::size_t>(step)] = coeffs_[i];
    return Cyclotomic(new_order, std::move(poly));
}

// Inverse of embed for new_order | order_: solve sum x_i embed(zeta_m^i) = *this.
Cyclotomic Cyclotomic::descend(long new_order) const
{
    std::size_t rows = coeffs_.size();
    std::size_t cols = static_cast<std::size_t>(euler_phi(new_order));
    std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols + 1));
    for (std::size_t i = 0; i < cols; ++i) {
        Cyclotomic b = root_of_unity(new_order, static_cast<long>(i)).embed(order_);
        for (std::size_t r = 0; r < rows; ++r)
            a[r][i] = b.coeffs_[r];
    }
    for (std::size_t r = 0; r < rows; ++r)
        a[r][cols] = coeffs_[r];
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t p = rank;
        while (p < rows && sgn(a[p][c]) == 0)
            ++p;
        if (p == rows)
            continue;
        std::swap(a[p], a[rank]);
        Rational inv = 1 / a[rank][c];
        for (auto& v : a[rank])
            v *= inv;
        for (std::size_t r = 0; r < rows; ++r)
            if (r != rank && sgn(a[r][c]) != 0) {
                Rational f = a[r][c];
                for (std::size_t k = c; k <= cols; ++k)
                    a[r][k] -= f * a[rank][k];
            }
        pivots.push_back(c);
        ++rank;
    }
    for (std::size_t r = rank; r < rows; ++r)
        if (sgn(a[r][cols]) != 0)
            throw InputError("element does not lie in the cyclotomic field of order " + std::to_string(new_order));
    std::vector<Rational> x(cols);
    for (std::size_t r = 0; r < rank; ++r)
        x[pivots[r]] = a[r][cols];
    return Cyclotomic(new_order, std::move(x));
}

Cyclotomic Cyclotomic::minimal() const
{
    if (as_rational())
        return Cyclotomic(*as_rational());
    for (long d = 1; d < order_; ++d)
        if (order_ % d == 0) {
            try {
                return descend(d);
            } catch (const InputError&) {
            }
        }
    return *this;
}

bool Cyclotomic::is_zero() const
{
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return sgn(c) == 0; });
}

std::optional<Rational> Cyclotomic::as_rational() const
{
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        if (sgn(coeffs_[i]) != 0)
            return std::nullopt;
    return coeffs_.empty() ? Rational(0) : coeffs_[0];
}

bool Cyclotomic::is_integral() const
{
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return is_integer(c); });
}

Cyclotomic Cyclotomic::conj() const
{
    std::vector<Rational> poly(static_cast<std::size_t>(order_));
    poly[0] = coeffs_[0];
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        poly[static_cast<std::size_t>(order_) - i] = coeffs_[i];
    return Cyclotomic(order_, std::move(poly));
}

std::complex<double> Cyclotomic::to_complex() const
{
    std::complex<double> z = 0;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        double angle = 2 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(order_);
        z += coeffs_[i].get_d() * std::polar(1.0, angle);
    }
    return z;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o)
{
    if (o.order_ != order_) {
        long m = lcm_long(order_, o.order_);
        *this = embed(m);
        return *this += o.embed(m);
    }
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        coeffs_[i] += o.coeffs_[i];
    return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) { return *this += -o; }

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o)
{
    if (o.order_ != order_) {
        long m = lcm_long(order_, o.order_);
        *this = embed(m);
        return *this *= o.embed(m);
    }
    if (order_ <= 2) {
        coeffs_[0] *= o.coeffs_[0];
        return *this;
    }
    std::vector<Rational> prod(coeffs_.size() + o.coeffs_.size() - 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (sgn(coeffs_[i]) == 0)
            continue;
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
            if (sgn(o.coeffs_[j]) != 0)
                prod[i + j] += coeffs_[i] * o.coeffs_[j];
    }
    reduce(std::move(prod));
    return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Rational& r)
{
    for (auto& c : coeffs_)
        c *= r;
    return *this;
}

Cyclotomic& Cyclotomic::operator/=(const Rational& r)
{
    if (sgn(r) == 0)
        throw InputError("division of a cyclotomic number by zero");
    for (auto& c : coeffs_)
        c /= r;
    return *this;
}

Cyclotomic Cyclotomic::operator-() const
{
    Cyclotomic r = *this;
    for (auto& c : r.coeffs_)
        c = -c;
    return r;
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b)
{
    if (a.order_ != b.order_) {
        long m = lcm_long(a.order_, b.order_);
        return a.embed(m).coeffs_ == b.embed(m).coeffs_;
    }
    return a.coeffs_ == b.coeffs_;
}

std::string to_string(const Cyclotomic& x)
{
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i < x.coeffs().size(); ++i) {
        const Rational& c = x.coeffs()[i];
        if (sgn(c) == 0)
            continue;
        if (!first)
            out << (sgn(c) > 0 ? " + " : " - ");
        else if (sgn(c) < 0)
            out << "-";
        first = false;
        Rational a = abs(c);
        if (i == 0)
            out << a.get_str();
        else {
            if (a != 1)
                out << a.get_str() << "*";
            out << "z" << x.order();
            if (i > 1)
                out << "^" << i;
        }
    }
    if (first)
        out << "0";
    return out.str();
}

Divisibility cyclo_divisible_by_int(const Cyclotomic& x, const Integer& t)
{
    if (t == 0)
        throw InputError("divisibility by zero");
    if (!x.is_integral())
        return Divisibility::indeterminate;
    for (const auto& c : x.coeffs())
        if (!mpz_divisible_p(c.get_num_mpz_t(), t.get_mpz_t()))
            return Divisibility::no;
    return Divisibility::yes;
}

// ---------------------------------------------------------------------------
// Bernoulli numbers

namespace {

std::mutex bernoulli_mutex;
// deque-like storage: pointers stay valid while the cache grows
std::vector<std::unique_ptr<const Rational>> bernoulli_cache;

}  // namespace

const Rational& bernoulli_number(unsigned n)
{
    std::lock_guard lock(bernoulli_mutex);
    while (bernoulli_cache.size() <= n) {
        // sum_{j<m} binom(m+1, j) B_j + (m+1) B_m = 0
        std::size_t m = bernoulli_cache.size();
        Rational acc = 0;
        for (std::size_t j = 0; j < m; ++j)
            acc += Rational(binomial(m + 1, j)) * *bernoulli_cache[j];
        Rational b = m == 0 ? Rational(1) : Rational(-acc / Rational(static_cast<long>(m) + 1));
        bernoulli_cache.push_back(std::make_unique<const Rational>(b));
    }
    return *bernoulli_cache[n];
}

Rational bernoulli_polynomial(unsigned k, const Rational& x)
{
    Rational acc = 0;
    Rational xp = 1;  // x^(k-j), built from j = k downwards
    for (unsigned j = k + 1; j-- > 0;) {
        acc += Rational(binomial(k, j)) * bernoulli_number(j) * xp;
        xp *= x;
    }
    return acc;
}

}  // namespace magnetic
