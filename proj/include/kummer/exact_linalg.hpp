#ifndef KUMMER_EXACT_LINALG_HPP
#define KUMMER_EXACT_LINALG_HPP

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <vector>

#include <gmpxx.h>

namespace kummer {

using Integer = mpz_class;
using Rational = mpq_class;

namespace linalg {

/*
 * Dense integer matrix, row-major. Entries are arbitrary precision; nothing in
 * this module touches floating point.
 */
class IntMatrix
{
  public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<std::vector<Integer>> & rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Integer & operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Integer & operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<Integer> row(std::size_t i) const;
    IntMatrix transpose() const;
    bool is_symmetric() const;

    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);
    /* row i += k * row j */
    void add_row_multiple(std::size_t i, std::size_t j, const Integer & k);
    /* col i += k * col j */
    void add_col_multiple(std::size_t i, std::size_t j, const Integer & k);
    void negate_row(std::size_t i);
    void negate_col(std::size_t i);

    IntMatrix scaled(const Integer & k) const;

    friend bool operator==(const IntMatrix & a, const IntMatrix & b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const IntMatrix & a, const IntMatrix & b) { return !(a == b); }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

IntMatrix operator*(const IntMatrix & a, const IntMatrix & b);
IntMatrix operator+(const IntMatrix & a, const IntMatrix & b);
IntMatrix operator-(const IntMatrix & a);
std::ostream & operator<<(std::ostream & os, const IntMatrix & m);

/* Block diagonal sum. */
IntMatrix direct_sum(const IntMatrix & a, const IntMatrix & b);

/* Rows [first, first + count). */
IntMatrix row_block(const IntMatrix & m, std::size_t first, std::size_t count);

/*
 * Result of smith_normal_form: u * m * v is the rectangular diagonal matrix
 * with entries d, every d_i >= 0 and d_i | d_{i+1}. Trailing zeros in d mark
 * the rank deficiency.
 */
struct SnfDecomposition
{
    std::vector<Integer> d;
    IntMatrix u;
    IntMatrix v;

    std::size_t rank() const;
    IntMatrix diagonal(std::size_t rows, std::size_t cols) const;
};

SnfDecomposition smith_normal_form(const IntMatrix & m);

/* Fraction-free (Bareiss) determinant. */
Integer det(const IntMatrix & m);

std::size_t rank(const IntMatrix & m);

struct Signature
{
    std::size_t pos = 0;
    std::size_t neg = 0;

    friend bool operator==(const Signature &, const Signature &) = default;
};

/*
 * Inertia of a nondegenerate symmetric matrix, by rational diagonalization
 * under congruence. Throws SingularMatrix when det = 0.
 */
Signature signature(const IntMatrix & m);

/*
 * Row basis of {x : x * m = 0} over the integers. The basis is saturated
 * (spans the full integer kernel) and is returned in row Hermite normal form.
 */
IntMatrix kernel_saturation(const IntMatrix & m);

/* Row-style Hermite normal form; zero rows are dropped. */
IntMatrix hermite_normal_form(const IntMatrix & m);

/* Inverse of a matrix with det = +-1. Throws SingularMatrix otherwise. */
IntMatrix unimodular_inverse(const IntMatrix & m);

class RatMatrix
{
  public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols);
    explicit RatMatrix(const IntMatrix & m);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational & operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational & operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

RatMatrix inverse(const IntMatrix & m);

/* Integer helpers shared by the number-theoretic modules. */
Integer floor_div(const Integer & a, const Integer & b);
/* Representative of a mod |m| in [0, |m|). */
Integer mod_floor(const Integer & a, const Integer & m);
bool is_perfect_square(const Integer & n);

} // namespace linalg
} // namespace kummer

#endif
