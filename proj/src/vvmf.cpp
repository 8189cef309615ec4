#include "magnetic/vvmf.hpp"

#include "magnetic/errors.hpp"

#include <cmath>
#include <limits>

namespace magnetic {

int central_symmetry_sign(const WeilRep& rep, const Rational& weight)
{
    if (!is_integer(2 * weight))
        throw InputError("weight must be a half integer");
    // rho(S)^2 e_0 = eps e_0
    const CycloMatrix& s = rep.rho_s();
    Cyclotomic eps;
    for (std::size_t j = 0; j < rep.dimension(); ++j)
        eps += s(0, j) * s(j, 0);
    // rho(Z) f = i^(-2k) f  gives  c(-gamma) = conj(eps) i^(-2k) c(gamma)
    Cyclotomic sign = eps.conj() * Cyclotomic::e(-weight / 2);
    auto r = sign.as_rational();
    if (r && (*r == 1 || *r == -1))
        return r->get_num().get_si();
    return 0;
}

VVModularForm::VVModularForm(std::shared_ptr<const WeilRep> rep, Rational weight, std::vector<FourierSeries> components)
    : rep_(std::move(rep)), weight_(std::move(weight)), components_(std::move(components))
{
    if (!rep_)
        throw InputError("a form needs a representation");
    if (components_.size() != rep_->dimension())
        throw InputError("expected " + std::to_string(rep_->dimension()) + " components, got " +
                         std::to_string(components_.size()));
    for (std::size_t g = 0; g < components_.size(); ++g) {
        const FourierSeries& f = components_[g];
        Rational q = rep_->q_value(g);
        for (const auto& [n, c] : f.terms()) {
            Rational l = make_rational(n, f.denom());
            if (!is_integer(l - q))
                throw InputError("component " + std::to_string(g) + " has exponent " + l.get_str() +
                                 " outside Z + q(gamma) = Z + " + q.get_str());
        }
    }
    symmetry_sign_ = central_symmetry_sign(*rep_, weight_);
    const DiscriminantGroup& d = rep_->disc();
    for (std::size_t g = 0; g < components_.size(); ++g) {
        std::size_t ng = d.negate(g);
        const FourierSeries& a = components_[g];
        const FourierSeries& b = components_[ng];
        Rational prec = std::min(a.prec(), b.prec());
        FourierSeries expected = a.truncate(prec) * Rational(symmetry_sign_);
        if (!(b.truncate(prec) == expected))
            throw InputError("components " + std::to_string(g) + " and " + std::to_string(ng) +
                             " violate c(-gamma, l) = " + std::to_string(symmetry_sign_) + " * c(gamma, l)");
    }
}

Rational VVModularForm::prec() const
{
    Rational p = components_.front().prec();
    for (const auto& c : components_)
        p = std::min(p, c.prec());
    return p;
}

Rational VVModularForm::coefficient(std::size_t coset, const Rational& exponent) const
{
    return component(coset).coefficient(exponent);
}

std::map<std::pair<std::size_t, Rational>, Rational> VVModularForm::principal_part() const
{
    std::map<std::pair<std::size_t, Rational>, Rational> out;
    for (std::size_t g = 0; g < components_.size(); ++g)
        for (const auto& [n, c] : components_[g].terms()) {
            if (n >= 0)
                break;
            out.emplace(std::make_pair(g, make_rational(n, components_[g].denom())), c);
        }
    return out;
}

bool VVModularForm::has_integral_coefficients() const
{
    return std::all_of(components_.begin(), components_.end(),
                       [](const FourierSeries& f) { return f.has_integral_coefficients(); });
}

bool VVModularForm::is_zero() const
{
    return std::all_of(components_.begin(), components_.end(), [](const FourierSeries& f) { return f.is_zero(); });
}

VVModularForm& VVModularForm::operator+=(const VVModularForm& o)
{
    if (o.components_.size() != components_.size() || o.weight_ != weight_ ||
        o.rep_->lattice().gram() != rep_->lattice().gram() || o.rep_->is_dual() != rep_->is_dual())
        throw InputError("adding forms of different weight or representation");
    for (std::size_t g = 0; g < components_.size(); ++g)
        components_[g] += o.components_[g];
    return *this;
}

VVModularForm& VVModularForm::operator*=(const Rational& r)
{
    for (auto& c : components_)
        c *= r;
    return *this;
}

bool operator==(const VVModularForm& a, const VVModularForm& b)
{
    return a.weight_ == b.weight_ && a.rep_->lattice().gram() == b.rep_->lattice().gram() &&
           a.rep_->is_dual() == b.rep_->is_dual() && a.components_ == b.components_;
}

// ---------------------------------------------------------------------------

VVModularForm from_scalar(const FourierSeries& f, std::shared_ptr<const WeilRep> rep, const Rational& weight)
{
    if (!rep || rep->dimension() != 1)
        throw InputError("scalar forms need a representation with trivial discriminant group");
    if (f.normalized().denom() != 1)
        throw InputError("scalar level one forms have integral exponents");
    return VVModularForm(std::move(rep), weight, {f.normalized()});
}

bool is_invariant(const WeilRep& rep, const IntVector& v)
{
    std::size_t n = rep.dimension();
    if (v.size() != n)
        throw InputError("invariant vector has " + std::to_string(v.size()) + " entries, expected " +
                         std::to_string(n));
    std::vector<Cyclotomic> cv(n);
    for (std::size_t i = 0; i < n; ++i)
        cv[i] = Cyclotomic(Rational(v[i]));
    std::vector<Cyclotomic> sv = rep.rho_s() * cv;
    for (std::size_t i = 0; i < n; ++i) {
        if (sv[i] != cv[i])
            return false;
        if (v[i] != 0 && rep.q_value(i) != 0)
            return false;
    }
    return true;
}

VVModularForm tensor_with_invariant(const IntVector& v, const WeilRep& rep2, const VVModularForm& f)
{
    if (rep2.is_dual() || f.rep().is_dual())
        throw InputError("tensor construction expects representations of lattices, not duals");
    if (!is_invariant(rep2, v))
        throw InputError("vector is not invariant under rho(S) and rho(T)");
    const WeilRep& rep1 = f.rep();
    auto rep = std::make_shared<const WeilRep>(direct_sum(rep1.lattice(), rep2.lattice()));
    std::vector<std::size_t> map = direct_sum_index_map(rep1.disc(), rep2.disc(), rep->disc());
    std::vector<FourierSeries> comps(rep->dimension(), FourierSeries(1, f.prec()));
    for (std::size_t g1 = 0; g1 < rep1.dimension(); ++g1)
        for (std::size_t g2 = 0; g2 < rep2.dimension(); ++g2)
            comps[map[g1 * rep2.dimension() + g2]] = f.component(g1) * Rational(v[g2]);
    return VVModularForm(std::move(rep), f.weight(), std::move(comps));
}

VVModularForm bol(const VVModularForm& f, int k)
{
    if (k < 2)
        throw InputError("the Bol operator needs k >= 2");
    if (f.weight() != 2 - k)
        throw InputError("Bol operator D^(k-1) needs weight " + std::to_string(2 - k) + ", form has weight " +
                         f.weight().get_str());
    std::vector<FourierSeries> comps;
    comps.reserve(f.components().size());
    for (const auto& c : f.components())
        comps.push_back(bol_coefficients(c, k));
    return VVModularForm(f.rep_ptr(), Rational(k), std::move(comps));
}

DivisibilityReport check_input_divisibility(const VVModularForm& f, long level, int s)
{
    if (s < 2)
        throw InputError("divisibility exponent s must be at least 2");
    if (level < 1)
        throw InputError("level must be positive");
    DivisibilityReport report{level, s, {}};
    for (std::size_t g = 0; g < f.components().size(); ++g) {
        const FourierSeries& comp = f.component(g);
        for (const auto& [n, c] : comp.terms()) {
            if (n == 0)
                continue;
            Rational l = make_rational(n, comp.denom());
            Rational modulus = power(Rational(level) * l, s - 1);
            Divisibility verdict;
            if (!is_integer(c))
                verdict = Divisibility::indeterminate;
            else
                verdict = is_integer(c / modulus) ? Divisibility::yes : Divisibility::no;
            switch (verdict) {
            case Divisibility::yes: ++report.passed; break;
            case Divisibility::no: ++report.failed; break;
            case Divisibility::indeterminate: ++report.indeterminate; break;
            }
            report.entries.push_back({g, l, c, modulus, verdict});
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// numerics

std::vector<BigComplex> evaluate(const VVModularForm& f, const BigComplex& tau)
{
    std::vector<BigComplex> out;
    out.reserve(f.components().size());
    for (const auto& comp : f.components()) {
        BigComplex sum;
        if (!comp.is_zero()) {
            BigComplex step = e_of(tau * BigFloat(to_bigfloat(make_rational(1, comp.denom()))));
            long current = comp.terms().begin()->first;
            BigComplex power_q = pow(step, current);
            for (const auto& [n, c] : comp.terms()) {
                if (n != current) {
                    power_q *= pow(step, n - current);
                    current = n;
                }
                sum += power_q * to_bigfloat(c);
            }
        }
        out.push_back(std::move(sum));
    }
    return out;
}

namespace {

// sum over l >= p on the grid (1/d)Z of a exp(b sqrt(l) - 2 pi l y)
double tail_estimate(double p, long d, double y, double a, double b)
{
    if (p <= 0)
        return std::numeric_limits<double>::infinity();
    double first = a * std::exp(b * std::sqrt(p) - 2 * M_PI * p * y);
    double rate = 2 * M_PI * y - b / (2 * std::sqrt(p));
    if (rate <= 0)
        return std::numeric_limits<double>::infinity();
    return first / (1 - std::exp(-rate / static_cast<double>(d)));
}

}  // namespace

SpotCheckReport modularity_spot_check(const VVModularForm& f, const std::vector<BigComplex>& samples,
                                      const SpotCheckOptions& options)
{
    PrecisionScope scope(options.bits);
    SpotCheckReport report;
    const WeilRep& rep = f.rep();
    std::size_t n = rep.dimension();

    CycloMatrix s = rep.rho_s();
    std::vector<std::vector<BigComplex>> s_num(n, std::vector<BigComplex>(n));
    std::vector<BigComplex> t_num(n);
    for (std::size_t i = 0; i < n; ++i) {
        t_num[i] = to_bigcomplex(rep.rho_t()(i, i));
        for (std::size_t j = 0; j < n; ++j)
            s_num[i][j] = to_bigcomplex(s(i, j));
    }
    long grid = 1;
    for (const auto& c : f.components())
        grid = lcm_long(grid, c.denom());
    double prec = f.prec().get_d();
    double k = f.weight().get_d();
    BigFloat weight = to_bigfloat(f.weight());

    report.max_deviation = 0;
    report.max_tail_bound = 0;
    for (const auto& tau : samples) {
        if (tau.im <= 0)
            throw InputError("sample points must lie in the upper half plane");
        SpotCheckPoint point{tau, 0, 0, 0};

        BigComplex inv = BigComplex(-1) / tau;
        std::vector<BigComplex> f_tau = evaluate(f, tau);
        std::vector<BigComplex> f_inv = evaluate(f, inv);
        std::vector<BigComplex> f_shift = evaluate(f, tau + BigComplex(1));
        BigComplex automorphy = exp(log(tau) * weight);
        for (std::size_t g = 0; g < n; ++g) {
            BigComplex rhs;
            for (std::size_t b = 0; b < n; ++b)
                rhs += s_num[g][b] * f_tau[b];
            rhs = automorphy * rhs;
            BigFloat dev = abs(f_inv[g] - rhs);
            if (dev > point.deviation_s)
                point.deviation_s = dev;
            BigFloat dev_t = abs(f_shift[g] - t_num[g] * f_tau[g]);
            if (dev_t > point.deviation_t)
                point.deviation_t = dev_t;
        }

        double y = tau.im.convert_to<double>();
        double y_inv = inv.im.convert_to<double>();
        double abs_tau = abs(tau).convert_to<double>();
        double per_component_s = tail_estimate(prec, grid, y_inv, options.growth_a, options.growth_b) +
                                 std::pow(abs_tau, k) * std::sqrt(static_cast<double>(n)) *
                                     tail_estimate(prec, grid, y, options.growth_a, options.growth_b);
        double per_component_t = 2 * tail_estimate(prec, grid, y, options.growth_a, options.growth_b);
        double bound = static_cast<double>(n) * std::max(per_component_s, per_component_t);
        point.tail_bound = BigFloat(bound);

        BigFloat worst = point.deviation_s > point.deviation_t ? point.deviation_s : point.deviation_t;
        if (worst > report.max_deviation)
            report.max_deviation = worst;
        if (point.tail_bound > report.max_tail_bound)
            report.max_tail_bound = point.tail_bound;
        report.points.push_back(std::move(point));
    }
    if (report.max_tail_bound > BigFloat(options.tolerance)) {
        report.tail_warning = true;
        report.warnings.push_back("truncation bound " + to_decimal(report.max_tail_bound, 6) +
                                  " exceeds the tolerance; raise the series precision or Im(tau)");
    }
    report.passed = report.max_deviation < BigFloat(options.tolerance);
    return report;
}

}  // namespace magnetic
