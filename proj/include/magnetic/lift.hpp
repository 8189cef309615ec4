#pragma once

// Fourier coefficients of the additive theta lift of a vector valued form
// for a lattice of signature (2, n), at the cusp given by (e, e').

#include "magnetic/lattice.hpp"
#include "magnetic/vvmf.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace magnetic {

class LiftProblem {
public:
    /// f must be a form for rho_L (not its dual) of weight k with
    /// kappa = n/2 - 1 + k an integer greater than 1.
    LiftProblem(EvenLattice lattice, CuspData cusp, VVModularForm f);

    const EvenLattice& lattice() const { return lattice_; }
    const CuspData& cusp() const { return cusp_; }
    const VVModularForm& form() const { return f_; }
    long kappa() const { return kappa_; }
    /// n in the signature (2, n).
    long n() const { return static_cast<long>(lattice_.b_minus()); }
    /// (lambda, zeta) = zeta_row() . u / cusp().k_inverse_den.
    const IntVector& zeta_row() const { return zeta_row_; }

private:
    EvenLattice lattice_;
    CuspData cusp_;
    VVModularForm f_;
    long kappa_;
    IntVector zeta_row_;
};

/// The constant term of the expansion:
/// -sum_{m, m'} N_e^(kappa-1) c(m e / N_e, 0) e(m m' / N_e) B_kappa(m' / N_e) / (2 kappa).
Cyclotomic constant_term(const LiftProblem& p);

/// Coefficient of index lambda, given by its K' coordinates u (see
/// lattice.hpp). Requires q(lambda) >= 0.
Cyclotomic coefficient(const LiftProblem& p, const IntVector& u);

struct LiftExpansion {
    Cyclotomic constant_term;
    /// Keyed by K' coordinates.
    std::map<IntVector, Cyclotomic> coefficients;
    /// Interior vector in K coordinates and the height bound (lambda, w0) <= H.
    RatVector w0;
    Rational height;
};

/// A vector with q > 0 in K coordinates: the smallest q among coordinate
/// vectors with entries in {-1, 0, 1} whose first nonzero entry is positive,
/// lexicographically first among ties.
RatVector default_interior_vector(const CuspData& cusp);

/// All lambda in K' with q(lambda) >= 0 and 0 < (lambda, w0) <= H, plus lambda = 0.
std::vector<IntVector> enumerate_cone(const CuspData& cusp, const RatVector& w0, const Rational& height);

LiftExpansion expand(const LiftProblem& p, const RatVector& w0, const Rational& height);

bool is_primitive(const IntVector& u);

/// a(l lambda0) for l = 1..l_max.
std::vector<Cyclotomic> ray_coefficients(const LiftProblem& p, const IntVector& lambda0, long l_max);

enum class MagnetVerdict { pass, fail, indeterminate, modulus_zero_pass, modulus_zero_fail };

std::string_view to_string(MagnetVerdict v);

struct MagnetEntry {
    long l;
    Cyclotomic value;
    Integer modulus;
    MagnetVerdict verdict;
};

struct MagnetReport {
    IntVector lambda0;
    Rational q_lambda0;
    long level;
    int s;
    /// N q(lambda0).
    Integer modulus_base;
    std::vector<MagnetEntry> entries;
    /// (N l)^(s-1) | c(gamma, l) verified on every stored input coefficient.
    bool input_divisibility_certified = false;
    /// n/2 + k - s - 1 >= 0 (always true in a produced report).
    bool weight_condition = true;
    /// Triviality of the cusp form space is asserted by the caller, never computed.
    std::optional<bool> cusp_space_trivial;
    bool all_pass() const;
};

/// Checks (N l q(lambda0))^(s-1) | a(l lambda0) for l = 1..l_max.
MagnetReport check_magnetic(const LiftProblem& p, const IntVector& lambda0, long l_max, int s,
                            std::optional<bool> cusp_space_trivial = std::nullopt);

}  // namespace magnetic
