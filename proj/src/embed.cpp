#include "kummer/embed.hpp"

#include <utility>

#include "kummer/errors.hpp"

namespace kummer::embed {

EmbeddingMatrix::EmbeddingMatrix(IntMatrix rows) : rows_(std::move(rows))
{
    if (rows_.rows() != 2 || rows_.cols() != 6)
        throw KummerError(ErrorCode::DimensionMismatch, "embedding matrix must be 2x6");
}

IntMatrix EmbeddingMatrix::pullback_gram() const
{
    return rows_ * lattice::hyperbolic_U3().gram() * rows_.transpose();
}

bool EmbeddingMatrix::is_primitive() const
{
    return lattice::is_primitive_embedding(lattice::hyperbolic_U3(), rows_);
}

EmbeddingMatrix standard_embedding(const bqf::BinaryForm & f)
{
    IntMatrix rows(2, 6);
    rows(0, 0) = 1;   // e1
    rows(0, 1) = f.a; // a f1
    rows(1, 1) = f.b; // b f1
    rows(1, 2) = 1;   // e2
    rows(1, 3) = f.c; // c f2
    return EmbeddingMatrix(std::move(rows));
}

lattice::Complement complement_lattice(const EmbeddingMatrix & e)
{
    if (!e.is_primitive())
        throw KummerError(ErrorCode::NonPrimitive, "embedding is not primitive");
    return lattice::orthogonal_complement(lattice::hyperbolic_U3(), e.rows());
}

bool nikulin_unique_genus(const lattice::EvenLattice & l)
{
    if (!l.is_indefinite())
        return false;
    return l.rank() >= 2 + lattice::min_generators(lattice::discriminant_form(l));
}

} // namespace kummer::embed
