#include "magnetic/qseries.hpp"

#include "magnetic/errors.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <vector>

namespace magnetic {

namespace {

// Exclusive bound on numerators n with n/d < prec.
long numerator_bound(const Rational& prec, long d)
{
    return ceil(prec * Rational(d)).get_si();
}

}  // namespace

FourierSeries::FourierSeries(long denom, Rational prec) : denom_(denom), prec_(std::move(prec))
{
    if (denom < 1)
        throw InputError("series grid denominator must be positive");
}

FourierSeries::FourierSeries(long denom, Rational prec, std::map<long, Rational> coeffs)
    : FourierSeries(denom, std::move(prec))
{
    long bound = numerator_bound(prec_, denom_);
    for (auto& [n, c] : coeffs) {
        if (sgn(c) == 0)
            continue;
        if (n >= bound)
            throw InputError("series term q^(" + std::to_string(n) + "/" + std::to_string(denom_) +
                             ") lies at or beyond the precision " + prec_.get_str());
        coeffs_.emplace(n, std::move(c));
    }
}

FourierSeries FourierSeries::constant(const Rational& c, const Rational& prec)
{
    if (prec <= 0)
        return FourierSeries(1, prec);
    return FourierSeries(1, prec, {{0, c}});
}

FourierSeries FourierSeries::monomial(const Rational& c, const Rational& exponent, const Rational& prec)
{
    long d = exponent.get_den().get_si();
    return FourierSeries(d, prec, {{exponent.get_num().get_si(), c}});
}

Rational FourierSeries::coefficient(const Rational& exponent) const
{
    if (exponent >= prec_)
        throw PrecisionError("coefficient at exponent " + exponent.get_str() +
                                 " requested, series known only below " + prec_.get_str(),
                             Rational(exponent + 1).get_str());
    Rational scaled = exponent * Rational(denom_);
    if (!is_integer(scaled))
        return 0;
    auto it = coeffs_.find(scaled.get_num().get_si());
    return it == coeffs_.end() ? Rational(0) : it->second;
}

Rational FourierSeries::coefficient_at(long numerator) const
{
    return coefficient(make_rational(numerator, denom_));
}

std::optional<Rational> FourierSeries::valuation() const
{
    if (coeffs_.empty())
        return std::nullopt;
    return make_rational(coeffs_.begin()->first, denom_);
}

Rational FourierSeries::known_valuation() const
{
    auto v = valuation();
    return v ? *v : prec_;
}

FourierSeries FourierSeries::with_denom(long new_denom) const
{
    if (new_denom % denom_ != 0)
        throw InputError("grid refinement must use a multiple of the current denominator");
    long step = new_denom / denom_;
    FourierSeries r(new_denom, prec_);
    for (const auto& [n, c] : coeffs_)
        r.coeffs_.emplace_hint(r.coeffs_.end(), n * step, c);
    return r;
}

FourierSeries FourierSeries::truncate(const Rational& prec) const
{
    if (prec >= prec_)
        return *this;
    FourierSeries r(denom_, prec);
    long bound = numerator_bound(prec, denom_);
    for (const auto& [n, c] : coeffs_)
        if (n < bound)
            r.coeffs_.emplace_hint(r.coeffs_.end(), n, c);
    return r;
}

FourierSeries FourierSeries::normalized() const
{
    long g = denom_;
    for (const auto& [n, c] : coeffs_)
        g = gcd_long(g, n);
    if (g <= 1)
        return *this;
    FourierSeries r(denom_ / g, prec_);
    for (const auto& [n, c] : coeffs_)
        r.coeffs_.emplace_hint(r.coeffs_.end(), n / g, c);
    return r;
}

bool FourierSeries::has_integral_coefficients() const
{
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const auto& t) { return is_integer(t.second); });
}

FourierSeries& FourierSeries::operator+=(const FourierSeries& o)
{
    long d = lcm_long(denom_, o.denom_);
    if (d != denom_)
        *this = with_denom(d);
    const FourierSeries& other = o.denom_ == d ? o : o.with_denom(d);
    Rational prec = std::min(prec_, other.prec_);
    for (const auto& [n, c] : other.coeffs_) {
        auto& slot = coeffs_[n];
        slot += c;
        if (sgn(slot) == 0)
            coeffs_.erase(n);
    }
    prec_ = prec;
    coeffs_.erase(coeffs_.lower_bound(numerator_bound(prec, denom_)), coeffs_.end());
    return *this;
}

FourierSeries& FourierSeries::operator-=(const FourierSeries& o) { return *this += -o; }

FourierSeries& FourierSeries::operator*=(const Rational& r)
{
    if (sgn(r) == 0) {
        coeffs_.clear();
        return *this;
    }
    for (auto& [n, c] : coeffs_)
        c *= r;
    return *this;
}

FourierSeries& FourierSeries::operator/=(const Rational& r)
{
    if (sgn(r) == 0)
        throw InputError("division of a series by zero");
    for (auto& [n, c] : coeffs_)
        c /= r;
    return *this;
}

FourierSeries FourierSeries::operator-() const
{
    FourierSeries r = *this;
    for (auto& [n, c] : r.coeffs_)
        c = -c;
    return r;
}

bool operator==(const FourierSeries& a, const FourierSeries& b)
{
    if (a.prec_ != b.prec_)
        return false;
    long d = lcm_long(a.denom_, b.denom_);
    return a.with_denom(d).coeffs_ == b.with_denom(d).coeffs_;
}

// ---------------------------------------------------------------------------

namespace {

// Coefficients scaled to integers: values[i] = scale * c(offset + i).
struct DenseInt {
    long offset = 0;
    std::vector<Integer> values;
    Integer scale = 1;
};

DenseInt to_dense(const FourierSeries& f, long step, long upto)
{
    DenseInt out;
    Integer scale = 1;
    for (const auto& [n, c] : f.terms()) {
        if (n * step >= upto)
            break;
        scale = lcm(scale, Integer(c.get_den()));
    }
    out.scale = scale;
    if (f.is_zero())
        return out;
    out.offset = f.terms().begin()->first * step;
    if (upto <= out.offset)
        return out;
    out.values.resize(static_cast<std::size_t>(upto - out.offset));
    for (const auto& [n, c] : f.terms()) {
        long idx = n * step - out.offset;
        if (n * step >= upto)
            break;
        Integer v = c.get_num() * scale;
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), c.get_den_mpz_t());
        out.values[static_cast<std::size_t>(idx)] = std::move(v);
    }
    return out;
}

}  // namespace

FourierSeries series_mul(const FourierSeries& a, const FourierSeries& b)
{
    long d = lcm_long(a.denom(), b.denom());
    Rational va = a.known_valuation(), vb = b.known_valuation();
    Rational prec = std::min(a.prec() + vb, b.prec() + va);
    if (a.is_zero() || b.is_zero())
        return FourierSeries(d, prec);

    long bound = numerator_bound(prec, d);
    long sa = d / a.denom(), sb = d / b.denom();
    long a_lo = a.terms().begin()->first * sa;
    long b_lo = b.terms().begin()->first * sb;
    DenseInt A = to_dense(a, sa, bound - b_lo);
    DenseInt B = to_dense(b, sb, bound - a_lo);

    long lo = a_lo + b_lo;
    if (bound <= lo)
        return FourierSeries(d, prec);
    std::vector<Integer> acc(static_cast<std::size_t>(bound - lo));
    for (std::size_t i = 0; i < A.values.size(); ++i) {
        const Integer& x = A.values[i];
        if (sgn(x) == 0)
            continue;
        std::size_t jmax = std::min(B.values.size(), acc.size() - i);
        for (std::size_t j = 0; j < jmax; ++j) {
            const Integer& y = B.values[j];
            if (sgn(y) != 0)
                mpz_addmul(acc[i + j].get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
        }
    }
    Integer scale = A.scale * B.scale;
    std::map<long, Rational> coeffs;
    for (std::size_t i = 0; i < acc.size(); ++i)
        if (sgn(acc[i]) != 0)
            coeffs.emplace_hint(coeffs.end(), lo + static_cast<long>(i), make_rational(acc[i], scale));
    return FourierSeries(d, prec, std::move(coeffs)).normalized();
}

FourierSeries series_invert(const FourierSeries& a)
{
    if (a.is_zero())
        throw InputError("cannot invert a series with no known nonzero coefficient");
    long d = a.denom();
    long n0 = a.terms().begin()->first;
    Rational v = make_rational(n0, d);
    Rational prec = a.prec() - 2 * v;
    long count = numerator_bound(a.prec(), d) - n0;  // known shifted coefficients

    DenseInt A = to_dense(a, 1, n0 + count);
    std::map<long, Rational> coeffs;
    const Integer& lead = A.values[0];
    if (lead == 1 || lead == -1) {
        // integral recurrence on the scaled coefficients; 1/A = scale * (1/(scale a))
        std::vector<Integer> inv(static_cast<std::size_t>(count));
        inv[0] = lead;
        for (std::size_t i = 1; i < inv.size(); ++i) {
            Integer s = 0;
            for (std::size_t j = 1; j <= i && j < A.values.size(); ++j)
                if (sgn(A.values[j]) != 0)
                    mpz_addmul(s.get_mpz_t(), A.values[j].get_mpz_t(), inv[i - j].get_mpz_t());
            inv[i] = -lead * s;
        }
        for (std::size_t i = 0; i < inv.size(); ++i)
            if (sgn(inv[i]) != 0)
                coeffs.emplace_hint(coeffs.end(), static_cast<long>(i) - n0, Rational(inv[i] * A.scale));
    } else {
        std::vector<Rational> alpha(static_cast<std::size_t>(count));
        for (std::size_t i = 0; i < alpha.size(); ++i)
            alpha[i] = a.coefficient_at(n0 + static_cast<long>(i));
        std::vector<Rational> inv(alpha.size());
        Rational lead_inv = 1 / alpha[0];
        inv[0] = lead_inv;
        for (std::size_t i = 1; i < inv.size(); ++i) {
            Rational s = 0;
            for (std::size_t j = 1; j <= i; ++j)
                if (sgn(alpha[j]) != 0)
                    s += alpha[j] * inv[i - j];
            inv[i] = -lead_inv * s;
        }
        for (std::size_t i = 0; i < inv.size(); ++i)
            if (sgn(inv[i]) != 0)
                coeffs.emplace_hint(coeffs.end(), static_cast<long>(i) - n0, inv[i]);
    }
    return FourierSeries(d, prec, std::move(coeffs)).normalized();
}

FourierSeries series_pow(const FourierSeries& a, long exponent)
{
    if (exponent < 0)
        return series_pow(series_invert(a), -exponent);
    if (exponent == 0)
        return FourierSeries::constant(1, a.prec() - a.known_valuation());
    std::optional<FourierSeries> result;
    FourierSeries base = a;
    while (exponent > 0) {
        if (exponent & 1)
            result = result ? series_mul(*result, base) : base;
        exponent >>= 1;
        if (exponent > 0)
            base = series_mul(base, base);
    }
    return *result;
}

FourierSeries bol_coefficients(const FourierSeries& f, int k)
{
    if (k < 2)
        throw InputError("the Bol operator needs k >= 2");
    std::map<long, Rational> coeffs;
    for (const auto& [n, c] : f.terms()) {
        if (n == 0)
            continue;
        coeffs.emplace_hint(coeffs.end(), n, c * power(make_rational(n, f.denom()), k - 1));
    }
    return FourierSeries(f.denom(), f.prec(), std::move(coeffs));
}

// ---------------------------------------------------------------------------
// level one generators

ClassicalForm parse_classical_form(std::string_view name)
{
    if (name == "E4")
        return ClassicalForm::E4;
    if (name == "E6")
        return ClassicalForm::E6;
    if (name == "Delta" || name == "D")
        return ClassicalForm::Delta;
    if (name == "j")
        return ClassicalForm::j;
    throw InputError("unknown classical form '" + std::string(name) + "'");
}

std::string_view to_string(ClassicalForm f)
{
    switch (f) {
    case ClassicalForm::E4: return "E4";
    case ClassicalForm::E6: return "E6";
    case ClassicalForm::Delta: return "Delta";
    case ClassicalForm::j: return "j";
    }
    return "?";
}

namespace {

FourierSeries eisenstein(long weight, long prec)
{
    // E_k = 1 - (2k / B_k) sum sigma_{k-1}(n) q^n
    Rational factor = Rational(-2 * weight) / bernoulli_number(static_cast<unsigned>(weight));
    std::vector<Integer> sigma(static_cast<std::size_t>(std::max(prec, 1L)));
    for (long dv = 1; dv < prec; ++dv) {
        Integer p = power(Integer(dv), static_cast<unsigned long>(weight - 1));
        for (long n = dv; n < prec; n += dv)
            sigma[static_cast<std::size_t>(n)] += p;
    }
    std::map<long, Rational> coeffs;
    if (prec > 0)
        coeffs.emplace(0, 1);
    for (long n = 1; n < prec; ++n)
        coeffs.emplace_hint(coeffs.end(), n, factor * Rational(sigma[static_cast<std::size_t>(n)]));
    return FourierSeries(1, prec, std::move(coeffs));
}

FourierSeries delta_at(long prec)
{
    FourierSeries e4 = eisenstein(4, prec);
    FourierSeries e6 = eisenstein(6, prec);
    return (series_pow(e4, 3) - series_mul(e6, e6)) / Rational(1728);
}

}  // namespace

FourierSeries classical_generator(ClassicalForm which, long prec)
{
    if (prec < 1)
        throw InputError("precision must be at least 1");
    switch (which) {
    case ClassicalForm::E4: return eisenstein(4, prec);
    case ClassicalForm::E6: return eisenstein(6, prec);
    case ClassicalForm::Delta: return delta_at(prec);
    case ClassicalForm::j: {
        FourierSeries e4 = eisenstein(4, prec + 2);
        return series_mul(series_pow(e4, 3), series_invert(delta_at(prec + 2))).truncate(prec);
    }
    }
    throw InputError("unknown classical form");
}

long classical_weight(long a, long b, long c) { return 4 * a + 6 * b + 12 * c; }

FourierSeries classical_monomial(long e4, long e6, long delta, long j, long prec)
{
    long pad = 2 * (std::abs(delta) + std::abs(j)) + 2;
    for (int attempt = 0; attempt < 8; ++attempt, pad *= 2) {
        long p = prec + pad;
        FourierSeries r = FourierSeries::constant(1, p);
        auto times = [&](const FourierSeries& base, long e) {
            if (e != 0)
                r = series_mul(r, series_pow(base, e));
        };
        times(eisenstein(4, p), e4);
        times(eisenstein(6, p), e6);
        if (delta != 0 || j != 0) {
            FourierSeries d = delta_at(p);
            times(d, delta);
            if (j != 0) {
                FourierSeries jj = series_mul(series_pow(eisenstein(4, p), 3), series_invert(d));
                times(jj, j);
            }
        }
        if (r.prec() >= prec)
            return r.truncate(Rational(prec));
    }
    throw InternalError("could not reach the requested precision");
}

FourierSeries evaluate_classical_expression(std::string_view expr, long prec, long* weight)
{
    long exps[4] = {0, 0, 0, 0};
    std::size_t i = 0;
    int sign = 1;
    auto skip = [&] {
        while (i < expr.size() && std::isspace(static_cast<unsigned char>(expr[i])))
            ++i;
    };
    bool expect_factor = true;
    while (true) {
        skip();
        if (i >= expr.size())
            break;
        if (!expect_factor) {
            if (expr[i] == '*')
                sign = 1;
            else if (expr[i] == '/')
                sign = -1;
            else
                throw InputError("expected '*' or '/' at position " + std::to_string(i) + " of '" +
                                 std::string(expr) + "'");
            ++i;
            expect_factor = true;
            continue;
        }
        std::size_t start = i;
        while (i < expr.size() && std::isalnum(static_cast<unsigned char>(expr[i])))
            ++i;
        std::string_view name = expr.substr(start, i - start);
        if (name == "1") {
            expect_factor = false;
            continue;
        }
        ClassicalForm f = parse_classical_form(name);
        long e = 1;
        skip();
        if (i < expr.size() && expr[i] == '^') {
            ++i;
            skip();
            std::size_t s = i;
            if (i < expr.size() && expr[i] == '-')
                ++i;
            while (i < expr.size() && std::isdigit(static_cast<unsigned char>(expr[i])))
                ++i;
            if (s == i)
                throw InputError("missing exponent in '" + std::string(expr) + "'");
            e = std::stol(std::string(expr.substr(s, i - s)));
        }
        exps[static_cast<int>(f)] += sign * e;
        expect_factor = false;
    }
    if (expect_factor)
        throw InputError("incomplete expression '" + std::string(expr) + "'");
    if (weight)
        *weight = classical_weight(exps[0], exps[1], exps[2]);
    return classical_monomial(exps[0], exps[1], exps[2], exps[3], prec);
}

FourierSeries scalar_form_with_principal_part(long weight, const std::map<long, Rational>& principal,
                                              long prec)
{
    if (weight % 2 != 0)
        throw InputError("level one forms have even weight");
    for (const auto& [n, c] : principal)
        if (n >= 0)
            throw InputError("principal part exponents must be negative");
    long rem = ((weight % 12) + 12) % 12;
    long base_weight = rem == 2 ? 14 : rem;
    long ord = (weight - base_weight) / 12;
    long a = 0, b = 0;
    switch (base_weight) {
    case 4: a = 1; break;
    case 6: b = 1; break;
    case 8: a = 2; break;
    case 10: a = 1; b = 1; break;
    case 14: a = 2; b = 1; break;
    default: break;
    }
    long poles = principal.empty() ? 0 : -principal.begin()->first;
    long top = ord + poles;  // h * j^i for i = 0..top
    FourierSeries result(1, Rational(prec));
    if (top < 0) {
        if (!principal.empty())
            throw InputError("no form of this weight has that principal part");
        return result;
    }
    FourierSeries h = classical_monomial(a, b, ord, 0, prec + top + 2);
    FourierSeries j = classical_generator(ClassicalForm::j, prec + top + 2);
    std::vector<FourierSeries> basis{h};
    for (long i = 1; i <= top; ++i)
        basis.push_back(series_mul(basis.back(), j));
    FourierSeries acc(1, basis.back().prec());
    for (long n = -poles; n <= ord; ++n) {
        long idx = ord - n;
        auto it = principal.find(n);
        Rational target = it == principal.end() ? Rational(0) : it->second;
        Rational have = acc.coefficient_at(n);
        if (target != have)
            acc += basis[static_cast<std::size_t>(idx)] * Rational(target - have);
    }
    if (acc.prec() < prec)
        throw InternalError("principal part construction lost precision");
    return acc.truncate(Rational(prec));
}

std::string pretty(const FourierSeries& f, std::size_t max_terms)
{
    std::ostringstream out;
    auto exponent = [&](long n) {
        Rational e = make_rational(n, f.denom());
        if (e == 1)
            return std::string("q");
        std::string s = e.get_str();
        if (!is_integer(e) || sgn(e) < 0)
            s = "(" + s + ")";
        return "q^" + s;
    };
    std::size_t shown = 0;
    for (const auto& [n, c] : f.terms()) {
        if (shown == max_terms)
            break;
        bool neg = sgn(c) < 0;
        Rational a = abs(c);
        if (shown == 0)
            out << (neg ? "-" : "");
        else
            out << (neg ? " - " : " + ");
        if (n == 0)
            out << a.get_str();
        else if (a == 1)
            out << exponent(n);
        else
            out << a.get_str() << "*" << exponent(n);
        ++shown;
    }
    if (shown == 0)
        out << "0";
    out << " + O(" << exponent(numerator_bound(f.prec(), f.denom())) << ")";
    return out.str();
}

}  // namespace magnetic
