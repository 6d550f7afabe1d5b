#ifndef KUMMER_LATTICE_HPP
#define KUMMER_LATTICE_HPP

#include <cstddef>
#include <vector>

#include "kummer/exact_linalg.hpp"

namespace kummer::lattice {

using linalg::IntMatrix;

/*
 * An even nondegenerate integral lattice, given by its Gram matrix in a fixed
 * basis. The constructor enforces symmetry, even diagonal and det != 0.
 */
class EvenLattice
{
  public:
    explicit EvenLattice(IntMatrix gram);

    const IntMatrix & gram() const { return gram_; }
    std::size_t rank() const { return gram_.rows(); }
    Integer det() const { return linalg::det(gram_); }
    linalg::Signature signature() const { return linalg::signature(gram_); }
    bool is_indefinite() const;

    friend bool operator==(const EvenLattice & a, const EvenLattice & b) { return a.gram_ == b.gram_; }

  private:
    IntMatrix gram_;
};

/*
 * Finite abelian group  Z/m_1 + ... + Z/m_k  (m_i >= 2, m_i | m_{i+1}) with a
 * Q/2Z-valued quadratic form. Values are stored as numerators over the common
 * denominator `denominator` = 2 * exponent:
 *   q(g_i)      = values(i, i) / denominator   mod 2Z
 *   b(g_i, g_j) = values(i, j) / denominator   mod Z   (i != j)
 * Diagonal numerators are kept in [0, 2 * denominator), off-diagonal ones in
 * [0, denominator).
 */
class FiniteQuadraticForm
{
  public:
    FiniteQuadraticForm() = default;
    FiniteQuadraticForm(std::vector<Integer> orders, Integer denominator, IntMatrix values);

    static FiniteQuadraticForm trivial() { return {}; }

    const std::vector<Integer> & orders() const { return orders_; }
    const Integer & denominator() const { return denominator_; }
    const IntMatrix & values() const { return values_; }

    std::size_t num_generators() const { return orders_.size(); }
    Integer group_order() const;

    /* q(x) for x given in generator coordinates, as a rational in [0, 2). */
    Rational q(const std::vector<Integer> & x) const;
    /* b(x, y) as a rational in [0, 1). */
    Rational b(const std::vector<Integer> & x, const std::vector<Integer> & y) const;

    friend bool operator==(const FiniteQuadraticForm &, const FiniteQuadraticForm &) = default;

  private:
    void normalize();

    std::vector<Integer> orders_;
    Integer denominator_ = 2;
    IntMatrix values_;
};

EvenLattice rescale(const EvenLattice & l, const Integer & m);

/* U + U + U in the basis e1, f1, e2, f2, e3, f3 with (e_j, f_j) = 1. */
EvenLattice hyperbolic_U3();
EvenLattice hyperbolic_U();

/*
 * Discriminant form L^* / L computed from the Smith form of the Gram matrix.
 * Generator g_i is the class of the dual vector gram^{-1} * u^{-1} e_i.
 */
FiniteQuadraticForm discriminant_form(const EvenLattice & l);

FiniteQuadraticForm negate_form(const FiniteQuadraticForm & f);

/* l(A): number of nontrivial invariant factors. */
std::size_t min_generators(const FiniteQuadraticForm & f);

/*
 * Isomorphism of finite quadratic forms by exhaustive search over images of
 * the generators. Intended for the small groups met here; cyclic forms should
 * go through discform::isomorphic_forms instead.
 */
bool isomorphic(const FiniteQuadraticForm & f, const FiniteQuadraticForm & g);

/*
 * Saturated orthogonal complement of span(image_basis rows) inside `ambient`.
 * The returned basis (rows, ambient coordinates) is in Hermite normal form.
 */
struct Complement
{
    IntMatrix basis;
    EvenLattice lattice;
};

Complement orthogonal_complement(const EvenLattice & ambient, const IntMatrix & image_basis);

bool is_primitive_embedding(const EvenLattice & ambient, const IntMatrix & image_basis);

} // namespace kummer::lattice

#endif
