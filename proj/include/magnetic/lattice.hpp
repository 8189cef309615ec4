#pragma once

// Even lattices given by Gram matrices, their discriminant groups L'/L and
// the isotropic cusp data (e, e', zeta, N_e, K) used by the lift.

#include "magnetic/matrix.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace magnetic {

/// The finite quadratic module L'/L. Cosets are numbered 0..order()-1 by
/// mixed radix over the elementary divisors; coset 0 is L itself.
class DiscriminantGroup {
public:
    explicit DiscriminantGroup(const IntMatrix& gram);

    std::size_t order() const { return order_; }
    /// Nontrivial elementary divisors d_1 | d_2 | ...
    const std::vector<long>& divisors() const { return divisors_; }
    /// Generator i has order divisors()[i]; lattice coordinates.
    const std::vector<RatVector>& generators() const { return generators_; }

    /// Digits t_i in [0, d_i) with coset = sum t_i g_i.
    std::vector<long> digits(std::size_t coset) const;
    std::size_t from_digits(const std::vector<long>& t) const;

    /// Index of x + L; throws InputError when x is not in L'.
    std::size_t coset_of(const RatVector& x) const;
    /// Representative with coordinates in [0, 1).
    const RatVector& representative(std::size_t coset) const { return reps_[coset]; }

    /// q(gamma) mod 1, in [0, 1).
    const Rational& q_value(std::size_t coset) const { return q_values_[coset]; }
    /// (beta, gamma) mod 1, in [0, 1).
    Rational bilinear(std::size_t a, std::size_t b) const;

    std::size_t add(std::size_t a, std::size_t b) const;
    std::size_t negate(std::size_t a) const;

    /// Smallest N with N q(gamma) integral on all of L'.
    long level() const { return level_; }

private:
    IntMatrix gram_;
    IntMatrix u_;  // from the Smith form, rows restricted to nontrivial divisors
    std::vector<long> divisors_;
    std::vector<RatVector> generators_;
    std::vector<RatVector> reps_;
    std::vector<Rational> q_values_;
    std::size_t order_ = 1;
    long level_ = 1;
};

class EvenLattice {
public:
    /// Validates symmetry, even diagonal and nondegeneracy; computes the
    /// signature exactly from the characteristic polynomial.
    explicit EvenLattice(IntMatrix gram, std::string name = {});

    const IntMatrix& gram() const { return gram_; }
    std::size_t rank() const { return gram_.rows(); }
    int b_plus() const { return b_plus_; }
    int b_minus() const { return b_minus_; }
    const std::string& name() const { return name_; }
    const Integer& determinant() const { return det_; }

    Rational inner(const RatVector& x, const RatVector& y) const;
    Rational q(const RatVector& x) const { return inner(x, x) / 2; }
    /// G x for lattice coordinates x.
    RatVector gram_times(const RatVector& x) const;
    bool in_dual(const RatVector& x) const;

    const DiscriminantGroup& discriminant() const { return *disc_; }
    long level() const { return disc_->level(); }

    /// L(c): Gram multiplied by c.
    EvenLattice scaled(long c) const;

private:
    IntMatrix gram_;
    std::string name_;
    Integer det_;
    int b_plus_ = 0;
    int b_minus_ = 0;
    std::shared_ptr<const DiscriminantGroup> disc_;
};

EvenLattice direct_sum(const EvenLattice& a, const EvenLattice& b);

/// Number of positive and negative eigenvalues of a nondegenerate symmetric
/// rational matrix.
std::pair<int, int> signature(const IntMatrix& gram);

/// Parses sums of named lattices: U, A1, A2, D4, E8, each optionally scaled
/// "(c)" and repeated "^k", e.g. "U+U+E8(-1)" or "U(2)+A1(-1)^2".
EvenLattice builtin_lattice(std::string_view spec);
/// Names accepted by builtin_lattice, in a fixed order.
const std::vector<std::string>& builtin_lattice_names();

/// Isotropic data at the cusp given by e: N_e generates (e, L), zeta has
/// (e, zeta) = N_e, and K = L cap e^perp cap e'^perp with basis in Hermite
/// normal form (columns of k_basis in L coordinates).
struct CuspData {
    IntVector e;
    RatVector eprime;
    IntVector zeta;
    long n_e = 1;
    IntMatrix k_basis;
    EvenLattice k;
    RatMatrix k_gram_inverse;
    /// G_K^-1 = k_inverse_num / k_inverse_den, and k_basis * k_inverse_num.
    IntMatrix k_inverse_num;
    Integer k_inverse_den = 1;
    IntMatrix to_ambient_num;
};

CuspData cusp_data(const EvenLattice& lattice, const IntVector& e, const RatVector& eprime);

/// Elements of K' are stored by their coordinates u in the basis dual to the
/// K basis (u = G_K * K-coordinates), so u ranges over Z^rank.
bool divisibility_in_dual(const IntVector& u, const Integer& m);
/// All m > 0 with u/m in K'.
std::vector<Integer> dual_divisors(const IntVector& u);

/// Coordinates of u in the K basis (G_K^-1 u).
RatVector k_coordinates(const CuspData& cusp, const IntVector& u);
/// The same vector in L coordinates.
RatVector ambient_coordinates(const CuspData& cusp, const IntVector& u);
/// q(lambda) for lambda with dual coordinates u.
Rational dual_norm(const CuspData& cusp, const IntVector& u);

}  // namespace magnetic
