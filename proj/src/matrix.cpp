#include "magnetic/matrix.hpp"

#include <utility>

namespace magnetic {

RatMatrix to_rational(const IntMatrix& m)
{
    RatMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            r(i, j) = Rational(m(i, j));
    return r;
}

RatVector to_rational(const IntVector& v)
{
    RatVector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        r[i] = Rational(v[i]);
    return r;
}

Rational dot(const RatVector& a, const RatVector& b)
{
    if (a.size() != b.size())
        throw InputError("vector dimension mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

Integer content(const IntVector& v)
{
    Integer g = 0;
    for (const auto& x : v)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    return g;
}

namespace {

void swap_rows(IntMatrix& a, std::size_t i, std::size_t j)
{
    if (i == j)
        return;
    for (std::size_t c = 0; c < a.cols(); ++c)
        std::swap(a(i, c), a(j, c));
}

void swap_cols(IntMatrix& a, std::size_t i, std::size_t j)
{
    if (i == j)
        return;
    for (std::size_t r = 0; r < a.rows(); ++r)
        std::swap(a(r, i), a(r, j));
}

// row_i += f * row_j
void add_row(IntMatrix& a, std::size_t i, std::size_t j, const Integer& f)
{
    for (std::size_t c = 0; c < a.cols(); ++c)
        a(i, c) += f * a(j, c);
}

void add_col(IntMatrix& a, std::size_t i, std::size_t j, const Integer& f)
{
    for (std::size_t r = 0; r < a.rows(); ++r)
        a(r, i) += f * a(r, j);
}

Integer floor_div(const Integer& a, const Integer& b)
{
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& input)
{
    IntMatrix a = input;
    std::size_t m = a.rows(), n = a.cols();
    IntMatrix U = IntMatrix::identity(m);
    IntMatrix V = IntMatrix::identity(n);

    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        // pivot: smallest nonzero entry of the remaining block
        bool found = false;
        std::size_t pi = t, pj = t;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j)
                if (a(i, j) != 0 && (!found || abs(a(i, j)) < abs(a(pi, pj)))) {
                    found = true;
                    pi = i;
                    pj = j;
                }
        if (!found)
            break;
        swap_rows(a, t, pi);
        swap_rows(U, t, pi);
        swap_cols(a, t, pj);
        swap_cols(V, t, pj);

        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (a(i, t) == 0)
                    continue;
                Integer q = floor_div(a(i, t), a(t, t));
                add_row(a, i, t, -q);
                add_row(U, i, t, -q);
                if (a(i, t) != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (a(t, j) == 0)
                    continue;
                Integer q = floor_div(a(t, j), a(t, t));
                add_col(a, j, t, -q);
                add_col(V, j, t, -q);
                if (a(t, j) != 0)
                    clean = false;
            }
            if (!clean) {
                // a smaller remainder now sits in row or column t
                std::size_t bi = t, bj = t;
                for (std::size_t i = t + 1; i < m; ++i)
                    if (a(i, t) != 0 && abs(a(i, t)) < abs(a(bi, bj))) {
                        bi = i;
                        bj = t;
                    }
                for (std::size_t j = t + 1; j < n; ++j)
                    if (a(t, j) != 0 && abs(a(t, j)) < abs(a(bi, bj))) {
                        bi = t;
                        bj = j;
                    }
                swap_rows(a, t, bi);
                swap_rows(U, t, bi);
                swap_cols(a, t, bj);
                swap_cols(V, t, bj);
                continue;
            }
            // divisibility condition d_t | remaining block
            bool divides = true;
            for (std::size_t i = t + 1; i < m && divides; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
                        add_row(a, t, i, 1);
                        add_row(U, t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides)
                break;
        }
        if (a(t, t) < 0) {
            for (std::size_t c = 0; c < n; ++c)
                a(t, c) = -a(t, c);
            for (std::size_t c = 0; c < m; ++c)
                U(t, c) = -U(t, c);
        }
    }

    SmithForm out{std::move(U), std::move(V), IntVector(std::min(m, n))};
    for (std::size_t i = 0; i < out.diagonal.size(); ++i)
        out.diagonal[i] = a(i, i);
    return out;
}

namespace {

// Unimodular row reduction of the leading `ncols` columns to echelon form.
// Returns the number of pivot rows.
std::size_t echelonize(IntMatrix& a, std::size_t ncols)
{
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < a.rows(); ++c) {
        for (;;) {
            std::size_t best = a.rows();
            for (std::size_t i = r; i < a.rows(); ++i)
                if (a(i, c) != 0 && (best == a.rows() || abs(a(i, c)) < abs(a(best, c))))
                    best = i;
            if (best == a.rows())
                break;
            swap_rows(a, r, best);
            bool clean = true;
            for (std::size_t i = r + 1; i < a.rows(); ++i) {
                if (a(i, c) == 0)
                    continue;
                add_row(a, i, r, -floor_div(a(i, c), a(r, c)));
                if (a(i, c) != 0)
                    clean = false;
            }
            if (clean)
                break;
        }
        if (r < a.rows() && a(r, c) != 0) {
            if (a(r, c) < 0)
                for (std::size_t k = 0; k < a.cols(); ++k)
                    a(r, k) = -a(r, k);
            for (std::size_t i = 0; i < r; ++i)
                if (a(i, c) != 0)
                    add_row(a, i, r, -floor_div(a(i, c), a(r, c)));
            ++r;
        }
    }
    return r;
}

}  // namespace

IntMatrix hermite_normal_form(const IntMatrix& input)
{
    IntMatrix a = input;
    std::size_t rank = echelonize(a, a.cols());
    IntMatrix h(rank, a.cols());
    for (std::size_t i = 0; i < rank; ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            h(i, j) = a(i, j);
    return h;
}

IntMatrix integer_kernel(const IntMatrix& a)
{
    std::size_t m = a.rows(), n = a.cols();
    // [a^T | I_n], reduce the a^T part; rows that vanish there carry the kernel
    IntMatrix aug(n, m + n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j)
            aug(i, j) = a(j, i);
        aug(i, m + i) = 1;
    }
    std::size_t rank = echelonize(aug, m);
    IntMatrix kernel_rows(n - rank, n);
    for (std::size_t i = rank; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            kernel_rows(i - rank, j) = aug(i, m + j);
    return hermite_normal_form(kernel_rows).transpose();
}

Integer determinant(const IntMatrix& input)
{
    if (input.rows() != input.cols())
        throw InputError("determinant of a non-square matrix");
    IntMatrix a = input;
    std::size_t n = a.rows();
    if (n == 0)
        return 1;
    Integer prev = 1;
    int sign = 1;
    // Bareiss fraction-free elimination
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0)
                ++p;
            if (p == n)
                return 0;
            swap_rows(a, k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                a(i, j) = v;
            }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

RatMatrix inverse(const RatMatrix& input)
{
    if (input.rows() != input.cols())
        throw InputError("inverse of a non-square matrix");
    std::size_t n = input.rows();
    RatMatrix a = input;
    RatMatrix inv = RatMatrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && sgn(a(p, c)) == 0)
            ++p;
        if (p == n)
            throw InputError("singular matrix");
        if (p != c)
            for (std::size_t k = 0; k < n; ++k) {
                std::swap(a(p, k), a(c, k));
                std::swap(inv(p, k), inv(c, k));
            }
        Rational piv = a(c, c);
        for (std::size_t k = 0; k < n; ++k) {
            a(c, k) /= piv;
            inv(c, k) /= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || sgn(a(i, c)) == 0)
                continue;
            Rational f = a(i, c);
            for (std::size_t k = 0; k < n; ++k) {
                a(i, k) -= f * a(c, k);
                inv(i, k) -= f * inv(c, k);
            }
        }
    }
    return inv;
}

RatVector characteristic_polynomial(const RatMatrix& a)
{
    // Faddeev-LeVerrier
    std::size_t n = a.rows();
    RatVector c(n + 1);
    c[n] = 1;
    RatMatrix m(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        RatMatrix next = a * m;
        for (std::size_t i = 0; i < n; ++i)
            next(i, i) += c[n - k + 1];
        m = std::move(next);
        RatMatrix am = a * m;
        Rational trace = 0;
        for (std::size_t i = 0; i < n; ++i)
            trace += am(i, i);
        c[n - k] = -trace / Rational(static_cast<long>(k));
    }
    return c;
}

}  // namespace magnetic
