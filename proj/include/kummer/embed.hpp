#ifndef KUMMER_EMBED_HPP
#define KUMMER_EMBED_HPP

#include "kummer/bqf.hpp"
#include "kummer/lattice.hpp"

namespace kummer::embed {

using linalg::IntMatrix;

/*
 * A 2x6 integer matrix whose rows are the images of the two basis vectors of
 * a rank-2 lattice in U+U+U, basis order e1, f1, e2, f2, e3, f3.
 */
class EmbeddingMatrix
{
  public:
    explicit EmbeddingMatrix(IntMatrix rows);

    const IntMatrix & rows() const { return rows_; }
    /* rows * gram(U^3) * rows^T */
    IntMatrix pullback_gram() const;
    bool is_primitive() const;

    friend bool operator==(const EmbeddingMatrix &, const EmbeddingMatrix &) = default;

  private:
    IntMatrix rows_;
};

/* v1 -> e1 + a f1,  v2 -> b f1 + e2 + c f2. */
EmbeddingMatrix standard_embedding(const bqf::BinaryForm & f);

/* Saturated orthogonal complement in U^3; throws NonPrimitive for imprimitive input. */
lattice::Complement complement_lattice(const EmbeddingMatrix & e);

/* Indefinite and rank >= 2 + l(A_L). */
bool nikulin_unique_genus(const lattice::EvenLattice & l);

} // namespace kummer::embed

#endif
