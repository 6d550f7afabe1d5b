#ifndef KUMMER_DISCFORM_HPP
#define KUMMER_DISCFORM_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "kummer/bqf.hpp"
#include "kummer/lattice.hpp"

namespace kummer::discform {

/*
 * Quadratic form on Z/m, q(x) = q_gen * x^2 mod 2Z, with
 * q_gen = numerator / (2m) and numerator kept in [0, 4m).
 */
struct CyclicForm
{
    Integer m = 1;
    Integer numerator = 0;

    CyclicForm() = default;
    CyclicForm(Integer m_, Integer numerator_);

    Rational q_gen() const;

    friend bool operator==(const CyclicForm &, const CyclicForm &) = default;
};

/*
 * Units of Z/m, each stored as its representative in [1, m] (so the trivial
 * group mod 1 is {1}). Elements are sorted.
 */
struct SubgroupOfUnits
{
    Integer modulus = 1;
    std::vector<Integer> elements{Integer(1)};

    std::size_t size() const { return elements.size(); }
    bool contains(const Integer & u) const;

    friend bool operator==(const SubgroupOfUnits &, const SubgroupOfUnits &) = default;
};

/* Canonical representative of u mod m in [1, m]. */
Integer unit_rep(const Integer & u, const Integer & m);

CyclicForm cyclic_from_form(const lattice::FiniteQuadraticForm & f);
CyclicForm cyclic_from_lattice(const lattice::EvenLattice & l);
CyclicForm negate(const CyclicForm & f);

/* A unit u with g.q_gen = u^2 f.q_gen mod 2Z, if one exists. */
std::optional<Integer> isomorphism_unit(const CyclicForm & f, const CyclicForm & g);
bool isomorphic_forms(const CyclicForm & f, const CyclicForm & g);

SubgroupOfUnits orthogonal_group(const CyclicForm & f);

/* Closure of `generators` under multiplication mod m. */
SubgroupOfUnits generated_subgroup(const Integer & m, const std::vector<Integer> & generators);

/* Action of a lattice isometry (m^T gram m = gram) on the cyclic discriminant group. */
Integer unit_of_isometry(const linalg::IntMatrix & gram, const linalg::IntMatrix & isometry);

SubgroupOfUnits image_of_lattice_isometries(const bqf::BinaryForm & f);

/* |left \ full / right| by orbit enumeration. */
std::size_t double_coset_count(const SubgroupOfUnits & left, const SubgroupOfUnits & full,
                               const SubgroupOfUnits & right);

SubgroupOfUnits product(const SubgroupOfUnits & a, const SubgroupOfUnits & b);

} // namespace kummer::discform

#endif
