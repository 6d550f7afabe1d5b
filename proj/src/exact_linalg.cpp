#include "kummer/exact_linalg.hpp"

#include <algorithm>
#include <ostream>
#include <utility>

#include "kummer/errors.hpp"

namespace kummer::linalg {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
{
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto & r : rows) {
        if (r.size() != cols_)
            throw KummerError(ErrorCode::DimensionMismatch, "ragged matrix literal");
        for (long x : r)
            data_.emplace_back(x);
    }
}

IntMatrix IntMatrix::identity(std::size_t n)
{
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Integer>> & rows)
{
    const std::size_t c = rows.empty() ? 0 : rows.front().size();
    IntMatrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != c)
            throw KummerError(ErrorCode::DimensionMismatch, "ragged row list");
        for (std::size_t j = 0; j < c; ++j)
            m(i, j) = rows[i][j];
    }
    return m;
}

std::vector<Integer> IntMatrix::row(std::size_t i) const
{
    return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

IntMatrix IntMatrix::transpose() const
{
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

bool IntMatrix::is_symmetric() const
{
    if (!is_square())
        return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != (*this)(j, i))
                return false;
    return true;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j)
{
    if (i == j)
        return;
    for (std::size_t k = 0; k < cols_; ++k)
        std::swap((*this)(i, k), (*this)(j, k));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j)
{
    if (i == j)
        return;
    for (std::size_t k = 0; k < rows_; ++k)
        std::swap((*this)(k, i), (*this)(k, j));
}

void IntMatrix::add_row_multiple(std::size_t i, std::size_t j, const Integer & k)
{
    if (k == 0)
        return;
    for (std::size_t c = 0; c < cols_; ++c)
        (*this)(i, c) += k * (*this)(j, c);
}

void IntMatrix::add_col_multiple(std::size_t i, std::size_t j, const Integer & k)
{
    if (k == 0)
        return;
    for (std::size_t r = 0; r < rows_; ++r)
        (*this)(r, i) += k * (*this)(r, j);
}

void IntMatrix::negate_row(std::size_t i)
{
    for (std::size_t c = 0; c < cols_; ++c)
        (*this)(i, c) = -(*this)(i, c);
}

void IntMatrix::negate_col(std::size_t i)
{
    for (std::size_t r = 0; r < rows_; ++r)
        (*this)(r, i) = -(*this)(r, i);
}

IntMatrix IntMatrix::scaled(const Integer & k) const
{
    IntMatrix r = *this;
    for (auto & x : r.data_)
        x *= k;
    return r;
}

IntMatrix operator*(const IntMatrix & a, const IntMatrix & b)
{
    if (a.cols() != b.rows())
        throw KummerError(ErrorCode::DimensionMismatch, "matrix product");
    IntMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0)
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

IntMatrix operator+(const IntMatrix & a, const IntMatrix & b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw KummerError(ErrorCode::DimensionMismatch, "matrix sum");
    IntMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            c(i, j) = a(i, j) + b(i, j);
    return c;
}

IntMatrix operator-(const IntMatrix & a)
{
    return a.scaled(-1);
}

std::ostream & operator<<(std::ostream & os, const IntMatrix & m)
{
    os << '[';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < m.cols(); ++j)
            os << (j ? ", " : "") << m(i, j);
        os << ']';
    }
    return os << ']';
}

IntMatrix direct_sum(const IntMatrix & a, const IntMatrix & b)
{
    IntMatrix s(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            s(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            s(a.rows() + i, a.cols() + j) = b(i, j);
    return s;
}

IntMatrix row_block(const IntMatrix & m, std::size_t first, std::size_t count)
{
    IntMatrix r(count, m.cols());
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            r(i, j) = m(first + i, j);
    return r;
}

std::size_t SnfDecomposition::rank() const
{
    return static_cast<std::size_t>(std::count_if(d.begin(), d.end(), [](const Integer & x) { return x != 0; }));
}

IntMatrix SnfDecomposition::diagonal(std::size_t rows, std::size_t cols) const
{
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < d.size(); ++i)
        m(i, i) = d[i];
    return m;
}

SnfDecomposition smith_normal_form(const IntMatrix & m)
{
    const std::size_t r = m.rows();
    const std::size_t c = m.cols();
    IntMatrix a = m;
    IntMatrix u = IntMatrix::identity(r);
    IntMatrix v = IntMatrix::identity(c);
    const std::size_t n = std::min(r, c);

    for (std::size_t t = 0; t < n; ++t) {
        for (;;) {
            // pivot on the smallest nonzero entry of the trailing block
            bool found = false;
            std::size_t pi = t, pj = t;
            Integer best;
            for (std::size_t i = t; i < r; ++i)
                for (std::size_t j = t; j < c; ++j) {
                    if (a(i, j) == 0)
                        continue;
                    if (!found || abs(a(i, j)) < best) {
                        best = abs(a(i, j));
                        pi = i;
                        pj = j;
                        found = true;
                    }
                }
            if (!found)
                break;
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < r; ++i) {
                if (a(i, t) == 0)
                    continue;
                Integer q = a(i, t) / a(t, t);
                a.add_row_multiple(i, t, -q);
                u.add_row_multiple(i, t, -q);
                if (a(i, t) != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < c; ++j) {
                if (a(t, j) == 0)
                    continue;
                Integer q = a(t, j) / a(t, t);
                a.add_col_multiple(j, t, -q);
                v.add_col_multiple(j, t, -q);
                if (a(t, j) != 0)
                    clean = false;
            }
            if (!clean)
                continue;

            bool divides = true;
            for (std::size_t i = t + 1; i < r && divides; ++i)
                for (std::size_t j = t + 1; j < c; ++j)
                    if (a(i, j) % a(t, t) != 0) {
                        a.add_row_multiple(t, i, 1);
                        u.add_row_multiple(t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides)
                break;
        }
        if (a(t, t) < 0) {
            a.negate_row(t);
            u.negate_row(t);
        }
    }

    SnfDecomposition out;
    out.d.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        out.d[i] = a(i, i);
    out.u = std::move(u);
    out.v = std::move(v);
    return out;
}

Integer det(const IntMatrix & m)
{
    if (!m.is_square())
        throw KummerError(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0)
        return 1;
    IntMatrix a = m;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0)
                ++p;
            if (p == n)
                return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a(i, j) = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                a(i, j) /= prev; // exact by Sylvester's identity
            }
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

std::size_t rank(const IntMatrix & m)
{
    return smith_normal_form(m).rank();
}

Signature signature(const IntMatrix & m)
{
    if (!m.is_symmetric())
        throw KummerError(ErrorCode::InvalidInput, "signature of non-symmetric matrix");
    if (det(m) == 0)
        throw KummerError(ErrorCode::SingularMatrix, "signature requires a nondegenerate matrix");

    const std::size_t n = m.rows();
    RatMatrix a(m);
    auto swap_sym = [&](std::size_t i, std::size_t j) {
        for (std::size_t k = 0; k < n; ++k)
            std::swap(a(i, k), a(j, k));
        for (std::size_t k = 0; k < n; ++k)
            std::swap(a(k, i), a(k, j));
    };
    // x_k <- x_k + x_j, applied as a congruence
    auto add_sym = [&](std::size_t k, std::size_t j) {
        for (std::size_t c = 0; c < n; ++c)
            a(k, c) += a(j, c);
        for (std::size_t r = 0; r < n; ++r)
            a(r, k) += a(r, j);
    };

    for (std::size_t k = 0; k < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t j = k + 1;
            while (j < n && a(j, j) == 0)
                ++j;
            if (j < n) {
                swap_sym(k, j);
            } else {
                j = k + 1;
                while (j < n && a(k, j) == 0)
                    ++j;
                if (j == n)
                    throw KummerError(ErrorCode::SingularMatrix, "zero row during diagonalization");
                add_sym(k, j);
            }
        }
        const Rational p = a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a(i, k) == 0)
                continue;
            const Rational f = a(i, k) / p;
            for (std::size_t c = k; c < n; ++c)
                a(i, c) -= f * a(k, c);
            for (std::size_t r = k; r < n; ++r)
                a(r, i) -= f * a(r, k);
        }
    }

    Signature s;
    for (std::size_t k = 0; k < n; ++k)
        (sgn(a(k, k)) > 0 ? s.pos : s.neg) += 1;
    return s;
}

namespace {

/* Replace rows (i, j) by the unimodular combination that puts gcd in row i. */
void gcd_rows(IntMatrix & h, std::size_t i, std::size_t j, std::size_t col)
{
    const Integer a = h(i, col);
    const Integer b = h(j, col);
    Integer g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    const Integer ag = a / g;
    const Integer bg = b / g;
    for (std::size_t c = 0; c < h.cols(); ++c) {
        const Integer x = h(i, c);
        const Integer y = h(j, c);
        h(i, c) = s * x + t * y;
        h(j, c) = -bg * x + ag * y;
    }
}

} // namespace

IntMatrix hermite_normal_form(const IntMatrix & m)
{
    IntMatrix h = m;
    const std::size_t k = h.rows();
    std::size_t pr = 0;
    for (std::size_t col = 0; col < h.cols() && pr < k; ++col) {
        for (std::size_t i = pr + 1; i < k; ++i)
            if (h(i, col) != 0)
                gcd_rows(h, pr, i, col);
        if (h(pr, col) == 0)
            continue;
        if (h(pr, col) < 0)
            h.negate_row(pr);
        for (std::size_t i = 0; i < pr; ++i)
            h.add_row_multiple(i, pr, -floor_div(h(i, col), h(pr, col)));
        ++pr;
    }
    return row_block(h, 0, pr);
}

IntMatrix kernel_saturation(const IntMatrix & m)
{
    const auto snf = smith_normal_form(m);
    const std::size_t r = snf.rank();
    const std::size_t n = m.rows();
    if (r == n)
        return IntMatrix(0, n);
    return hermite_normal_form(row_block(snf.u, r, n - r));
}

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

RatMatrix::RatMatrix(const IntMatrix & m) : RatMatrix(m.rows(), m.cols())
{
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(i, j) = Rational(m(i, j));
}

RatMatrix inverse(const IntMatrix & m)
{
    if (!m.is_square())
        throw KummerError(ErrorCode::DimensionMismatch, "inverse of non-square matrix");
    const std::size_t n = m.rows();
    RatMatrix a(m);
    RatMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        inv(i, i) = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a(p, k) == 0)
            ++p;
        if (p == n)
            throw KummerError(ErrorCode::SingularMatrix, "matrix is not invertible");
        if (p != k)
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(a(k, c), a(p, c));
                std::swap(inv(k, c), inv(p, c));
            }
        const Rational piv = a(k, k);
        for (std::size_t c = 0; c < n; ++c) {
            a(k, c) /= piv;
            inv(k, c) /= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || a(i, k) == 0)
                continue;
            const Rational f = a(i, k);
            for (std::size_t c = 0; c < n; ++c) {
                a(i, c) -= f * a(k, c);
                inv(i, c) -= f * inv(k, c);
            }
        }
    }
    return inv;
}

IntMatrix unimodular_inverse(const IntMatrix & m)
{
    if (abs(det(m)) != 1)
        throw KummerError(ErrorCode::SingularMatrix, "matrix is not unimodular");
    const RatMatrix r = inverse(m);
    IntMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(i, j) = r(i, j).get_num();
    return out;
}

Integer floor_div(const Integer & a, const Integer & b)
{
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Integer mod_floor(const Integer & a, const Integer & m)
{
    Integer r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

bool is_perfect_square(const Integer & n)
{
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

} // namespace kummer::linalg
