#pragma once

// Builders shared by the lift tests and the acceptance runner.

#include "magnetic/lift.hpp"
#include "support/oracles.hpp"

#include <random>

namespace fixtures {

using namespace magnetic;

inline std::vector<long> to_longs(const IntVector& v)
{
    std::vector<long> out;
    for (const auto& x : v)
        out.push_back(x.get_si());
    return out;
}

inline oracle::LiftInput oracle_input(const LiftProblem& p)
{
    oracle::LiftInput in;
    const IntMatrix& g = p.lattice().gram();
    in.gram.assign(g.rows(), std::vector<long>(g.cols()));
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j)
            in.gram[i][j] = g(i, j).get_si();
    const IntMatrix& b = p.cusp().k_basis;
    for (std::size_t j = 0; j < b.cols(); ++j) {
        std::vector<long> col;
        for (std::size_t i = 0; i < b.rows(); ++i)
            col.push_back(b(i, j).get_si());
        in.k_basis.push_back(col);
    }
    in.e = to_longs(p.cusp().e);
    in.zeta = to_longs(p.cusp().zeta);
    in.n_e = p.cusp().n_e;
    in.kappa = p.kappa();
    const DiscriminantGroup& d = p.lattice().discriminant();
    for (std::size_t i = 0; i < d.order(); ++i)
        in.coset_reps.push_back(d.representative(i));
    const VVModularForm* f = &p.form();
    in.c = [f](std::size_t coset, const mpq_class& x) { return f->coefficient(coset, x); };
    return in;
}

inline Cyclotomic from_phases(const std::map<mpq_class, mpq_class>& terms)
{
    Cyclotomic out;
    for (const auto& [phase, c] : terms)
        out += Cyclotomic::e(phase) * c;
    return out;
}

/// Integral coefficients on the right grids with the forced symmetry; not
/// modular, which the coefficient formula never needs.
inline VVModularForm synthetic_form(std::shared_ptr<const WeilRep> rep, const Rational& weight, long prec,
                                    std::mt19937& rng, long lo = -1, long hi = 5)
{
    const DiscriminantGroup& d = rep->disc();
    int sign = central_symmetry_sign(*rep, weight);
    std::uniform_int_distribution<long> dist(lo, hi);
    std::vector<std::map<long, Rational>> terms(d.order());
    std::vector<long> denoms(d.order());
    for (std::size_t g = 0; g < d.order(); ++g)
        denoms[g] = Integer(rep->q_value(g).get_den()).get_si();
    for (std::size_t g = 0; g < d.order(); ++g) {
        std::size_t ng = d.negate(g);
        if (ng < g)
            continue;
        if (sign == 0 || (ng == g && sign != 1))
            continue;
        Rational qg = rep->q_value(g);
        for (long n = -1; Rational(n) + qg < prec; ++n) {
            Rational x = Rational(n) + qg;
            long c = dist(rng);
            long key = Integer(x * denoms[g]).get_si();
            terms[g][key] = c;
            if (ng != g)
                terms[ng][key] = sign * c;
        }
    }
    std::vector<FourierSeries> comps;
    for (std::size_t g = 0; g < d.order(); ++g)
        comps.emplace_back(denoms[g], prec, terms[g]);
    return VVModularForm(std::move(rep), weight, std::move(comps));
}

}  // namespace fixtures
