#include "magnetic/lift.hpp"

#include "magnetic/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace magnetic {

namespace {

std::string vector_text(const IntVector& u)
{
    std::string out = "(";
    for (std::size_t i = 0; i < u.size(); ++i)
        out += (i ? "," : "") + u[i].get_str();
    return out + ")";
}

bool is_zero_vector(const IntVector& u)
{
    return std::all_of(u.begin(), u.end(), [](const Integer& x) { return sgn(x) == 0; });
}

std::size_t resolve_coset(const DiscriminantGroup& d, const RatVector& x)
{
    try {
        return d.coset_of(x);
    } catch (const InputError&) {
        throw InternalError("lift coset argument is not in the dual lattice; cusp data inconsistent");
    }
}

// Sums c * e(phase) grouped by phase mod 1.
class PhaseSum {
public:
    void add(const Rational& phase, const Rational& c)
    {
        if (sgn(c) == 0)
            return;
        terms_[frac(phase)] += c;
    }
    Cyclotomic value() const
    {
        Cyclotomic out;
        for (const auto& [phase, c] : terms_)
            if (sgn(c) != 0)
                out += Cyclotomic::e(phase) * c;
        return out;
    }

private:
    std::map<Rational, Rational> terms_;
};

long to_long_checked(const Integer& x)
{
    if (!x.fits_slong_p())
        throw InputError("enumeration bound too large");
    return x.get_si();
}

}  // namespace

LiftProblem::LiftProblem(EvenLattice lattice, CuspData cusp, VVModularForm f)
    : lattice_(std::move(lattice)), cusp_(std::move(cusp)), f_(std::move(f)), kappa_(0)
{
    if (lattice_.b_plus() != 2)
        throw InputError("lift needs a lattice of signature (2, n)");
    if (f_.rep().is_dual())
        throw InputError("input form must transform with rho_L, not its dual");
    if (!(f_.rep().lattice().gram() == lattice_.gram()))
        throw InputError("input form belongs to a different lattice");
    Rational kappa = Rational(n(), 2) - 1 + f_.weight();
    kappa.canonicalize();
    if (!is_integer(kappa))
        throw InputError("kappa = n/2 - 1 + k must be an integer, got " + kappa.get_str());
    if (kappa <= 1)
        throw InputError("kappa = n/2 - 1 + k must exceed 1, got " + kappa.get_str());
    kappa_ = kappa.get_num().get_si();
    if (cusp_.e.size() != lattice_.rank())
        throw InputError("cusp data does not match the lattice");
    const IntMatrix& g = lattice_.gram();
    const IntMatrix& a = cusp_.to_ambient_num;
    IntVector gz(lattice_.rank(), Integer(0));
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j)
            gz[i] += g(i, j) * cusp_.zeta[j];
    zeta_row_.assign(a.cols(), Integer(0));
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = 0; i < a.rows(); ++i)
            zeta_row_[j] += gz[i] * a(i, j);
}

Cyclotomic constant_term(const LiftProblem& p)
{
    const CuspData& cusp = p.cusp();
    const long ne = cusp.n_e;
    const long kappa = p.kappa();
    const DiscriminantGroup& d = p.lattice().discriminant();
    Rational scale = Rational(power(Integer(ne), static_cast<unsigned long>(kappa - 1))) / (2 * kappa);
    PhaseSum sum;
    for (long m = 1; m <= ne; ++m) {
        RatVector x(cusp.e.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            x[i] = make_rational(Integer(cusp.e[i] * m), ne);
        Rational c = p.form().coefficient(resolve_coset(d, x), 0);
        if (sgn(c) == 0)
            continue;
        for (long mp = 1; mp <= ne; ++mp)
            sum.add(make_rational(m * mp, ne),
                    -scale * c * bernoulli_polynomial(static_cast<unsigned>(kappa), make_rational(mp, ne)));
    }
    return sum.value();
}

Cyclotomic coefficient(const LiftProblem& p, const IntVector& u)
{
    const CuspData& cusp = p.cusp();
    if (u.size() != cusp.k.rank())
        throw InputError("lambda has " + std::to_string(u.size()) + " coordinates, K has rank " +
                         std::to_string(cusp.k.rank()));
    if (is_zero_vector(u))
        return constant_term(p);
    Rational q = dual_norm(cusp, u);
    if (sgn(q) < 0)
        throw InputError("lambda " + vector_text(u) + " has q < 0");

    const long ne = cusp.n_e;
    const DiscriminantGroup& d = p.lattice().discriminant();
    const bool trivial = d.order() == 1;
    RatVector lambda = trivial ? RatVector() : ambient_coordinates(cusp, u);
    Integer lz_num = 0;
    for (std::size_t j = 0; j < u.size(); ++j)
        if (sgn(u[j]) != 0)
            lz_num += p.zeta_row()[j] * u[j];
    Rational lz = make_rational(lz_num, cusp.k_inverse_den);

    PhaseSum sum;
    try {
        for (const Integer& m : dual_divisors(u)) {
            Rational mr(m);
            Rational weight(power(m, static_cast<unsigned long>(p.kappa() - 1)));
            Rational exponent = q / (mr * mr);
            for (long mp = 1; mp <= ne; ++mp) {
                std::size_t coset = 0;
                if (!trivial) {
                    RatVector x(lambda.size());
                    Rational shift = make_rational(mp, ne) - lz / (mr * ne);
                    for (std::size_t i = 0; i < x.size(); ++i)
                        x[i] = lambda[i] / mr + shift * cusp.e[i];
                    coset = resolve_coset(d, x);
                }
                Rational c = p.form().coefficient(coset, exponent);
                sum.add((mr * mp - lz) / ne, weight * c);
            }
        }
    } catch (const PrecisionError& err) {
        throw PrecisionError("coefficient of lambda " + vector_text(u) + " needs the input form beyond exponent " +
                                 q.get_str() + ": " + err.what(),
                             err.required);
    }
    return sum.value();
}

RatVector default_interior_vector(const CuspData& cusp)
{
    const EvenLattice& k = cusp.k;
    const std::size_t r = k.rank();
    std::optional<IntVector> best;
    Rational best_q;
    IntVector v(r);
    // supports of size 1..3 keep the search polynomial in the rank
    auto consider = [&]() {
        RatVector x = to_rational(v);
        Rational q = k.q(x);
        if (sgn(q) <= 0)
            return;
        if (!best || q < best_q || (q == best_q && v < *best)) {
            best = v;
            best_q = q;
        }
    };
    for (std::size_t a = 0; a < r; ++a) {
        v.assign(r, 0);
        v[a] = 1;
        consider();
        for (std::size_t b = a + 1; b < r; ++b)
            for (int sb : {-1, 1}) {
                v.assign(r, 0);
                v[a] = 1;
                v[b] = sb;
                consider();
                for (std::size_t c = b + 1; c < r; ++c)
                    for (int sc : {-1, 1}) {
                        v[c] = sc;
                        consider();
                        v[c] = 0;
                    }
            }
    }
    if (!best)
        throw InputError("no short vector of positive norm in K; pass w0 explicitly");
    return to_rational(*best);
}

std::vector<IntVector> enumerate_cone(const CuspData& cusp, const RatVector& w0, const Rational& height)
{
    const EvenLattice& k = cusp.k;
    const std::size_t r = k.rank();
    if (w0.size() != r)
        throw InputError("w0 must have " + std::to_string(r) + " coordinates");
    if (k.b_plus() != 1)
        throw InputError("K must have signature (1, r - 1)");
    Rational ww = k.inner(w0, w0);
    if (sgn(ww) <= 0)
        throw InputError("w0 must satisfy q(w0) > 0");
    if (sgn(height) <= 0)
        throw InputError("height bound must be positive");

    // In K' coordinates u: (lambda, mu) = u^T G^-1 v and (lambda, w0) = u . w0.
    // The majorant 2 (lambda, w0)^2 / (w0, w0) - (lambda, lambda) is positive
    // definite and at most 2 H^2 / (w0, w0) on the truncated cone.
    const RatMatrix& ginv = cusp.k_gram_inverse;
    std::vector<std::vector<double>> m(r, std::vector<double>(r));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            m[i][j] = Rational(2 * w0[i] * w0[j] / ww - ginv(i, j)).get_d();
    const double bound = Rational(2 * height * height / ww).get_d();

    // m = sum_i d_i (u_i + sum_{j > i} mu[i][j] u_j)^2
    std::vector<double> dg(r);
    std::vector<std::vector<double>> mu(r, std::vector<double>(r, 0.0));
    {
        std::vector<std::vector<double>> a = m;
        for (std::size_t i = 0; i < r; ++i) {
            dg[i] = a[i][i];
            if (!(dg[i] > 0))
                throw InternalError("majorant is not positive definite");
            for (std::size_t j = i + 1; j < r; ++j)
                mu[i][j] = a[i][j] / dg[i];
            for (std::size_t j = i + 1; j < r; ++j)
                for (std::size_t l = i + 1; l < r; ++l)
                    a[j][l] -= dg[i] * mu[i][j] * mu[i][l];
        }
    }

    // exact filter data
    Integer den = 1;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            den = lcm(den, Integer(ginv(i, j).get_den()));
    std::vector<std::vector<long>> a(r, std::vector<long>(r));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            a[i][j] = to_long_checked(Integer(ginv(i, j) * Rational(den)));
    Integer wden = 1;
    for (const auto& x : w0)
        wden = lcm(wden, Integer(x.get_den()));
    std::vector<long> ws(r);
    for (std::size_t i = 0; i < r; ++i)
        ws[i] = to_long_checked(Integer(w0[i] * Rational(wden)));
    const long hmax = to_long_checked(floor(height * Rational(wden)));

    std::vector<IntVector> out;
    out.emplace_back(r, 0);
    std::vector<long> u(r, 0);
    const double slack = 1e-9 * (1.0 + bound);

    auto accept = [&]() {
        __int128 h = 0;
        for (std::size_t i = 0; i < r; ++i)
            h += static_cast<__int128>(ws[i]) * u[i];
        if (h <= 0 || h > hmax)
            return;
        __int128 n2 = 0;
        for (std::size_t i = 0; i < r; ++i) {
            __int128 row = 0;
            for (std::size_t j = 0; j < r; ++j)
                row += static_cast<__int128>(a[i][j]) * u[j];
            n2 += row * u[i];
        }
        if (n2 < 0)
            return;
        out.emplace_back(u.begin(), u.end());
    };

    // depth-first over i = r-1 .. 0
    auto recurse = [&](auto&& self, long i, double remaining) -> void {
        double center = 0;
        for (std::size_t j = i + 1; j < r; ++j)
            center -= mu[i][j] * u[j];
        double radius = std::sqrt(std::max(0.0, (remaining + slack) / dg[i]));
        long lo = static_cast<long>(std::ceil(center - radius - 1e-9));
        long hi = static_cast<long>(std::floor(center + radius + 1e-9));
        for (long x = lo; x <= hi; ++x) {
            u[i] = x;
            double t = x - center;
            double left = remaining - dg[i] * t * t;
            if (left < -slack)
                continue;
            if (i == 0)
                accept();
            else
                self(self, i - 1, left);
        }
        u[i] = 0;
    };
    if (r > 0)
        recurse(recurse, static_cast<long>(r) - 1, bound);
    std::sort(out.begin(), out.end());
    return out;
}

LiftExpansion expand(const LiftProblem& p, const RatVector& w0, const Rational& height)
{
    LiftExpansion out;
    out.w0 = w0;
    out.height = height;
    out.constant_term = constant_term(p);
    for (const IntVector& u : enumerate_cone(p.cusp(), w0, height))
        out.coefficients.emplace(u, is_zero_vector(u) ? out.constant_term : coefficient(p, u));
    return out;
}

bool is_primitive(const IntVector& u) { return content(u) == 1; }

std::vector<Cyclotomic> ray_coefficients(const LiftProblem& p, const IntVector& lambda0, long l_max)
{
    if (!is_primitive(lambda0))
        throw InputError("lambda0 " + vector_text(lambda0) + " is not primitive in K'");
    if (l_max < 1)
        throw InputError("l_max must be at least 1");
    Rational q = dual_norm(p.cusp(), lambda0);
    if (sgn(q) < 0)
        throw InputError("lambda0 " + vector_text(lambda0) + " has q < 0");
    Rational needed = q * l_max * l_max;
    if (p.form().prec() <= needed)
        throw PrecisionError("ray up to l = " + std::to_string(l_max) + " needs the input form beyond exponent " +
                                 needed.get_str() + ", it is known below " + p.form().prec().get_str(),
                             Rational(needed + 1).get_str());
    std::vector<Cyclotomic> out;
    out.reserve(static_cast<std::size_t>(l_max));
    for (long l = 1; l <= l_max; ++l) {
        IntVector u(lambda0);
        for (auto& x : u)
            x *= l;
        out.push_back(coefficient(p, u));
    }
    return out;
}

std::string_view to_string(MagnetVerdict v)
{
    switch (v) {
    case MagnetVerdict::pass:
        return "pass";
    case MagnetVerdict::fail:
        return "fail";
    case MagnetVerdict::indeterminate:
        return "indeterminate";
    case MagnetVerdict::modulus_zero_pass:
        return "modulus-zero:pass";
    case MagnetVerdict::modulus_zero_fail:
        return "modulus-zero:fail";
    }
    return "?";
}

bool MagnetReport::all_pass() const
{
    return std::all_of(entries.begin(), entries.end(), [](const MagnetEntry& e) {
        return e.verdict == MagnetVerdict::pass || e.verdict == MagnetVerdict::modulus_zero_pass;
    });
}

MagnetReport check_magnetic(const LiftProblem& p, const IntVector& lambda0, long l_max, int s,
                            std::optional<bool> cusp_space_trivial)
{
    MagnetReport r;
    r.lambda0 = lambda0;
    r.level = p.lattice().level();
    r.s = s;
    r.q_lambda0 = dual_norm(p.cusp(), lambda0);
    Rational base = r.q_lambda0 * r.level;
    if (!is_integer(base))
        throw InputError("N q(lambda0) = " + base.get_str() + " is not an integer");
    if (s < 2)
        throw InputError("s must be at least 2");
    Rational slack = Rational(p.n(), 2) + p.form().weight() - s - 1;
    if (sgn(slack) < 0)
        throw InputError("n/2 + k - s - 1 = " + slack.get_str() + " is negative; s too large");
    r.modulus_base = base.get_num();
    r.weight_condition = true;
    r.cusp_space_trivial = cusp_space_trivial;
    r.input_divisibility_certified = check_input_divisibility(p.form(), r.level, s).all_pass();

    std::vector<Cyclotomic> values = ray_coefficients(p, lambda0, l_max);
    for (long l = 1; l <= l_max; ++l) {
        MagnetEntry e{l, values[static_cast<std::size_t>(l - 1)], 0, MagnetVerdict::pass};
        if (sgn(r.modulus_base) == 0) {
            e.verdict = e.value.is_zero() ? MagnetVerdict::modulus_zero_pass : MagnetVerdict::modulus_zero_fail;
        } else {
            e.modulus = power(Integer(r.modulus_base * l), static_cast<unsigned long>(s - 1));
            switch (cyclo_divisible_by_int(e.value, e.modulus)) {
            case Divisibility::yes:
                e.verdict = MagnetVerdict::pass;
                break;
            case Divisibility::no:
                e.verdict = MagnetVerdict::fail;
                break;
            case Divisibility::indeterminate:
                e.verdict = MagnetVerdict::indeterminate;
                break;
            }
        }
        r.entries.push_back(std::move(e));
    }
    return r;
}

}  // namespace magnetic
