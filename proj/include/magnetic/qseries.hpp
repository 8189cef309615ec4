#pragma once

// Truncated q-expansions sum_n c(n/d) q^(n/d) with exact rational
// coefficients, known for every exponent strictly below a rational
// precision bound.

#include "magnetic/arith.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace magnetic {

class FourierSeries {
public:
    /// The zero series on the grid (1/denom)Z, known below prec.
    FourierSeries(long denom, Rational prec);
    /// Keys are exponent numerators over denom. Zero values are dropped;
    /// any key with exponent >= prec is rejected.
    FourierSeries(long denom, Rational prec, std::map<long, Rational> coeffs);

    static FourierSeries constant(const Rational& c, const Rational& prec);
    /// c * q^exponent on the coarsest grid containing exponent.
    static FourierSeries monomial(const Rational& c, const Rational& exponent, const Rational& prec);

    long denom() const { return denom_; }
    const Rational& prec() const { return prec_; }
    const std::map<long, Rational>& terms() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    /// Coefficient of q^exponent; zero off the grid. Throws PrecisionError
    /// when exponent >= prec.
    Rational coefficient(const Rational& exponent) const;
    Rational coefficient_at(long numerator) const;

    /// Smallest exponent with nonzero coefficient.
    std::optional<Rational> valuation() const;
    /// valuation(), or prec when no nonzero term is known.
    Rational known_valuation() const;

    /// Same series on the finer grid (1/new_denom)Z.
    FourierSeries with_denom(long new_denom) const;
    FourierSeries truncate(const Rational& prec) const;
    /// Coarsest grid carrying the stored terms (denominator divides denom()).
    FourierSeries normalized() const;

    bool has_integral_coefficients() const;

    FourierSeries& operator+=(const FourierSeries& o);
    FourierSeries& operator-=(const FourierSeries& o);
    FourierSeries& operator*=(const Rational& r);
    FourierSeries& operator/=(const Rational& r);
    FourierSeries operator-() const;

    friend FourierSeries operator+(FourierSeries a, const FourierSeries& b) { return a += b; }
    friend FourierSeries operator-(FourierSeries a, const FourierSeries& b) { return a -= b; }
    friend FourierSeries operator*(FourierSeries a, const Rational& r) { return a *= r; }
    friend FourierSeries operator*(const Rational& r, FourierSeries a) { return a *= r; }
    friend FourierSeries operator/(FourierSeries a, const Rational& r) { return a /= r; }

    /// Equal grids after refinement, equal precision and equal terms.
    friend bool operator==(const FourierSeries& a, const FourierSeries& b);

private:
    long denom_;
    Rational prec_;
    std::map<long, Rational> coeffs_;
};

/// Product; output precision min(P_a + v_b, P_b + v_a) with v the
/// known valuations.
FourierSeries series_mul(const FourierSeries& a, const FourierSeries& b);
inline FourierSeries operator*(const FourierSeries& a, const FourierSeries& b) { return series_mul(a, b); }

/// Multiplicative inverse; for a = c q^v (1 + ...) known below P the result
/// is known below P - 2v. Throws InputError on the zero series.
FourierSeries series_invert(const FourierSeries& a);
FourierSeries series_pow(const FourierSeries& a, long exponent);

/// Coefficient at exponent l multiplied by l^(k-1); kills the constant term.
FourierSeries bol_coefficients(const FourierSeries& f, int k);

enum class ClassicalForm { E4, E6, Delta, j };

ClassicalForm parse_classical_form(std::string_view name);
std::string_view to_string(ClassicalForm f);

/// E4, E6, Delta = (E4^3 - E6^2)/1728 or j = E4^3/Delta, known below prec.
FourierSeries classical_generator(ClassicalForm which, long prec);

/// Weight of a product expression E4^a E6^b Delta^c j^d.
long classical_weight(long a, long b, long c);

/// E4^a * E6^b * Delta^c * j^d (exponents may be negative), known below prec.
FourierSeries classical_monomial(long e4, long e6, long delta, long j, long prec);

/// Parses products/quotients of E4, E6, Delta, j with integer powers, e.g.
/// "E4^2/Delta" or "j*E4^2/Delta", and evaluates them below prec. Stores the
/// weight in *weight when given.
FourierSeries evaluate_classical_expression(std::string_view expr, long prec, long* weight = nullptr);

/// The level-one weakly holomorphic form of the given even weight whose
/// coefficients at exponents < 0 are principal[n], and which vanishes at the
/// exponents 0..ord(h) of the weight's lowest-order generator h (the
/// Duke-Jenkins normalization). Found by elimination on leading terms.
FourierSeries scalar_form_with_principal_part(long weight, const std::map<long, Rational>& principal,
                                              long prec);

/// "q^-1 + 744 + 196884*q + ... + O(q^P)".
std::string pretty(const FourierSeries& f, std::size_t max_terms = 12);

}  // namespace magnetic
