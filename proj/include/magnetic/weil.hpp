#pragma once

// The Weil representation of Mp2(Z) on C[L'/L], with exact cyclotomic
// matrices for the generators S and T.

#include "magnetic/lattice.hpp"

#include <array>
#include <string_view>

namespace magnetic {

using CycloMatrix = Matrix<Cyclotomic>;

class WeilRep {
public:
    explicit WeilRep(EvenLattice lattice);

    /// The lattice the cosets refer to. For a dual representation this is
    /// still the original lattice; q and the signature enter negated.
    const EvenLattice& lattice() const { return *lattice_; }
    const DiscriminantGroup& disc() const { return lattice_->discriminant(); }
    std::size_t dimension() const { return disc().order(); }
    bool is_dual() const { return negated_; }
    int b_plus() const { return negated_ ? lattice_->b_minus() : lattice_->b_plus(); }
    int b_minus() const { return negated_ ? lattice_->b_plus() : lattice_->b_minus(); }

    /// q(gamma) mod 1 for this representation (negated for the dual).
    Rational q_value(std::size_t coset) const;

    /// lcm(8, level, 4r) where |L'/L| = s^2 r with r squarefree; every matrix
    /// entry lies in Q(zeta_M).
    long cyclo_order() const { return order_; }

    const CycloMatrix& rho_t() const { return t_; }
    const CycloMatrix& rho_t_inverse() const { return t_inv_; }
    const CycloMatrix& rho_s() const { return s_; }

    /// The representation of L^- = (L, -q).
    WeilRep dual() const;

private:
    WeilRep(std::shared_ptr<const EvenLattice> lattice, bool negated);
    void build();

    std::shared_ptr<const EvenLattice> lattice_;
    bool negated_ = false;
    long order_ = 8;
    CycloMatrix t_, t_inv_, s_;
};

enum class Generator { S, T, T_inverse };

/// Parses whitespace or comma separated tokens S, T, T^-1 (also "Ti").
std::vector<Generator> parse_word(std::string_view text);
std::string to_string(const std::vector<Generator>& word);

/// Ordered product rho(g_1) rho(g_2) ... ; the empty word gives I.
CycloMatrix rho_word(const WeilRep& w, const std::vector<Generator>& word);

/// A word in S, T, T^-1 whose product in SL2(Z) is [[a, b], [c, d]], using
/// S = [[0, -1], [1, 0]] and S^2 = -I.
std::vector<Generator> sl2_word(long a, long b, long c, long d);
std::array<long, 4> sl2_product(const std::vector<Generator>& word);

CycloMatrix identity_matrix(std::size_t n);
CycloMatrix conjugate_transpose(const CycloMatrix& m);
CycloMatrix kronecker(const CycloMatrix& a, const CycloMatrix& b);

/// sqrt(n) for n >= 1 as a cyclotomic number, via the quadratic Gauss sum.
Cyclotomic cyclotomic_sqrt(long n);

/// For L = L1 + L2: the coset of L'/L matching (gamma1, gamma2), stored at
/// position gamma1 * |D2| + gamma2.
std::vector<std::size_t> direct_sum_index_map(const DiscriminantGroup& d1, const DiscriminantGroup& d2,
                                              const DiscriminantGroup& sum);

}  // namespace magnetic
