#pragma once

// Vector valued weakly holomorphic modular forms for the Weil representation:
// one Fourier series per coset of L'/L.

#include "magnetic/bigfloat.hpp"
#include "magnetic/qseries.hpp"
#include "magnetic/weil.hpp"

#include <map>
#include <memory>
#include <utility>
#include <vector>

namespace magnetic {

class VVModularForm {
public:
    /// components[gamma] is the series of e_gamma. Checks that every exponent
    /// lies in Z + q(gamma) and that c(-gamma, l) = sign * c(gamma, l) for the
    /// sign forced by rho(S)^2 and the weight.
    VVModularForm(std::shared_ptr<const WeilRep> rep, Rational weight, std::vector<FourierSeries> components);

    const WeilRep& rep() const { return *rep_; }
    const std::shared_ptr<const WeilRep>& rep_ptr() const { return rep_; }
    const Rational& weight() const { return weight_; }
    const std::vector<FourierSeries>& components() const { return components_; }
    const FourierSeries& component(std::size_t coset) const { return components_.at(coset); }
    /// Smallest precision among the components.
    Rational prec() const;

    Rational coefficient(std::size_t coset, const Rational& exponent) const;
    /// Terms with negative exponent, keyed by (coset, exponent).
    std::map<std::pair<std::size_t, Rational>, Rational> principal_part() const;
    bool has_integral_coefficients() const;
    bool is_zero() const;

    /// +1 or -1 with c(-gamma, l) = symmetry_sign() c(gamma, l).
    int symmetry_sign() const { return symmetry_sign_; }

    VVModularForm& operator+=(const VVModularForm& o);
    VVModularForm& operator*=(const Rational& r);
    friend VVModularForm operator+(VVModularForm a, const VVModularForm& b) { return a += b; }
    friend VVModularForm operator*(VVModularForm a, const Rational& r) { return a *= r; }
    friend VVModularForm operator*(const Rational& r, VVModularForm a) { return a *= r; }
    friend bool operator==(const VVModularForm& a, const VVModularForm& b);

private:
    std::shared_ptr<const WeilRep> rep_;
    Rational weight_;
    std::vector<FourierSeries> components_;
    int symmetry_sign_ = 1;
};

/// Sign s with c(-gamma, l) = s c(gamma, l) for forms of this weight.
int central_symmetry_sign(const WeilRep& rep, const Rational& weight);

/// A level one scalar form as a form for a representation with trivial
/// discriminant group.
VVModularForm from_scalar(const FourierSeries& f, std::shared_ptr<const WeilRep> rep, const Rational& weight);

/// True when rho(S) v = v and rho(T) v = v exactly.
bool is_invariant(const WeilRep& rep, const IntVector& v);

/// v (x) f over L1 + L2 for f over L1 and an invariant v of rho_{L2}. The
/// result's coset (g1, g2) carries v[g2] * f_{g1}.
VVModularForm tensor_with_invariant(const IntVector& v, const WeilRep& rep2, const VVModularForm& f);

/// Coefficientwise Bol operator D^(k-1) taking weight 2-k to weight k.
VVModularForm bol(const VVModularForm& f, int k);

struct DivisibilityEntry {
    std::size_t coset;
    Rational exponent;
    Rational coefficient;
    Rational modulus;
    Divisibility verdict;
};

struct DivisibilityReport {
    long level;
    int s;
    std::vector<DivisibilityEntry> entries;
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::size_t indeterminate = 0;
    bool all_pass() const { return failed == 0 && indeterminate == 0; }
};

/// Tests (N l)^(s-1) | b(gamma, l) for every stored coefficient with l != 0,
/// via integrality of the quotient.
DivisibilityReport check_input_divisibility(const VVModularForm& f, long level, int s);

struct SpotCheckOptions {
    unsigned bits = 256;
    double tolerance = 1e-10;
    /// |c(gamma, l)| <= growth_a * exp(growth_b * sqrt(l)) for l >= prec,
    /// used for the truncation estimate.
    double growth_a = 1.0;
    double growth_b = 4.0 * 3.14159265358979323846;
};

struct SpotCheckPoint {
    BigComplex tau;
    BigFloat deviation_s;
    BigFloat deviation_t;
    BigFloat tail_bound;
};

struct SpotCheckReport {
    std::vector<SpotCheckPoint> points;
    BigFloat max_deviation;
    BigFloat max_tail_bound;
    bool tail_warning = false;
    bool passed = false;
    std::vector<std::string> warnings;
};

/// Evaluates the truncated series numerically and compares
/// f(-1/tau) with sqrt(tau)^(2k) rho(S) f(tau) and f(tau + 1) with rho(T) f(tau).
SpotCheckReport modularity_spot_check(const VVModularForm& f, const std::vector<BigComplex>& samples,
                                      const SpotCheckOptions& options = {});

/// Value of each component at tau from the truncated expansions.
std::vector<BigComplex> evaluate(const VVModularForm& f, const BigComplex& tau);

}  // namespace magnetic
