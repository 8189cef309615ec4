#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the library's series or lattice code.

#include <gmpxx.h>

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

namespace oracle {

// Akiyama-Tanigawa; returns B_n with B_1 = -1/2.
inline mpq_class bernoulli(unsigned n)
{
    std::vector<mpq_class> a(n + 1);
    for (unsigned m = 0; m <= n; ++m) {
        a[m] = mpq_class(1, m + 1);
        for (unsigned j = m; j >= 1; --j) {
            a[j - 1] = j * (a[j - 1] - a[j]);
            a[j - 1].canonicalize();
        }
    }
    return n == 1 ? mpq_class(-1, 2) : a[0];
}

inline mpz_class sigma(long k, long n)
{
    mpz_class s = 0;
    for (long d = 1; d <= n; ++d)
        if (n % d == 0) {
            mpz_class p;
            mpz_ui_pow_ui(p.get_mpz_t(), d, k);
            s += p;
        }
    return s;
}

// q prod (1 - q^n)^24, coefficients of q^1 .. q^count.
inline std::vector<mpz_class> delta_product(long count)
{
    std::vector<mpz_class> p(count, 0);  // p[i] = coefficient of q^i in prod
    p[0] = 1;
    for (long n = 1; n < count; ++n)
        for (int rep = 0; rep < 24; ++rep)
            for (long i = count - 1; i >= n; --i)
                p[i] -= p[i - n];
    return p;  // index i <-> q^(i+1)
}

// Coefficients of a power series inverse by long division, dense from index 0.
inline std::vector<mpq_class> long_division_inverse(const std::vector<mpq_class>& a, long count)
{
    std::vector<mpq_class> r(count);
    std::vector<mpq_class> rem(count);
    rem[0] = 1;
    for (long i = 0; i < count; ++i) {
        r[i] = rem[i] / a[0];
        for (long j = 0; j + i < count && j < static_cast<long>(a.size()); ++j)
            rem[i + j] -= r[i] * a[j];
    }
    return r;
}

}  // namespace oracle

namespace oracle {

// Lift coefficient from scratch: Gaussian elimination for the K coordinates,
// naive divisor scan and coset lookup by integrality against given
// representatives. Returns phase in [0, 1) -> rational weight.
struct LiftInput {
    std::vector<std::vector<long>> gram;
    std::vector<std::vector<long>> k_basis;  // k_basis[j] = j-th basis vector of K in L coordinates
    std::vector<long> e;
    std::vector<long> zeta;
    long n_e = 1;
    long kappa = 2;
    std::vector<std::vector<mpq_class>> coset_reps;
    std::function<mpq_class(std::size_t, const mpq_class&)> c;
};

inline mpq_class frac_part(const mpq_class& x)
{
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return x - f;
}

inline std::map<mpq_class, mpq_class> lift_coefficient(const LiftInput& in, const std::vector<long>& u)
{
    const std::size_t n = in.gram.size(), r = in.k_basis.size();
    auto bil = [&](const std::vector<mpq_class>& x, const std::vector<mpq_class>& y) {
        mpq_class s = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                s += x[i] * in.gram[i][j] * y[j];
        return s;
    };
    std::vector<std::vector<mpq_class>> basis(r, std::vector<mpq_class>(n));
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t i = 0; i < n; ++i)
            basis[j][i] = in.k_basis[j][i];
    // [G_K | u] row reduction
    std::vector<std::vector<mpq_class>> a(r, std::vector<mpq_class>(r + 1));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j)
            a[i][j] = bil(basis[i], basis[j]);
        a[i][r] = u[i];
    }
    for (std::size_t col = 0; col < r; ++col) {
        std::size_t piv = col;
        while (a[piv][col] == 0)
            ++piv;
        std::swap(a[piv], a[col]);
        for (std::size_t i = 0; i < r; ++i) {
            if (i == col || a[i][col] == 0)
                continue;
            mpq_class f = a[i][col] / a[col][col];
            for (std::size_t j = col; j <= r; ++j)
                a[i][j] -= f * a[col][j];
        }
    }
    std::vector<mpq_class> lam(n, 0);
    for (std::size_t j = 0; j < r; ++j) {
        mpq_class coord = a[j][r] / a[j][j];
        for (std::size_t i = 0; i < n; ++i)
            lam[i] += coord * basis[j][i];
    }
    mpq_class q = bil(lam, lam) / 2;
    std::vector<mpq_class> z(in.zeta.begin(), in.zeta.end());
    mpq_class lz = bil(lam, z);

    long biggest = 0;
    for (long x : u)
        biggest = std::max(biggest, std::labs(x));
    std::map<mpq_class, mpq_class> out;
    for (long m = 1; m <= biggest; ++m) {
        bool divides = true;
        for (long x : u)
            divides = divides && x % m == 0;
        if (!divides)
            continue;
        mpz_class mk;
        mpz_ui_pow_ui(mk.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(in.kappa - 1));
        for (long mp = 1; mp <= in.n_e; ++mp) {
            std::vector<mpq_class> x(n);
            for (std::size_t i = 0; i < n; ++i)
                x[i] = lam[i] / m - lz * in.e[i] / (m * in.n_e) + mpq_class(mp * in.e[i], in.n_e);
            std::size_t found = in.coset_reps.size();
            for (std::size_t g = 0; g < in.coset_reps.size() && found == in.coset_reps.size(); ++g) {
                bool integral = true;
                for (std::size_t i = 0; i < n; ++i) {
                    mpq_class d = x[i] - in.coset_reps[g][i];
                    d.canonicalize();
                    integral = integral && d.get_den() == 1;
                }
                if (integral)
                    found = g;
            }
            if (found == in.coset_reps.size())
                throw std::runtime_error("oracle: coset argument outside L'");
            mpq_class exponent = q / (m * m);
            mpq_class val = in.c(found, exponent) * mk;
            if (val == 0)
                continue;
            mpq_class phase = frac_part((mpq_class(m * mp) - lz) / in.n_e);
            out[phase] += val;
        }
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

}  // namespace oracle
