#ifndef KUMMER_BQF_HPP
#define KUMMER_BQF_HPP

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kummer/exact_linalg.hpp"

namespace kummer::bqf {

using linalg::IntMatrix;

/*
 * The form a x^2 + b xy + c y^2. Its even lattice has Gram ((2a, b), (b, 2c))
 * and determinant -D where D = b^2 - 4ac.
 */
struct BinaryForm
{
    Integer a;
    Integer b;
    Integer c;

    BinaryForm() = default;
    BinaryForm(Integer a_, Integer b_, Integer c_) : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)) {}

    Integer discriminant() const { return b * b - 4 * a * c; }
    IntMatrix gram() const;
    /* (a, -b, c): the GL2 mirror image, and the inverse class under composition. */
    BinaryForm opposite() const { return {a, -b, c}; }
    Integer operator()(const Integer & x, const Integer & y) const { return a * x * x + b * x * y + c * y * y; }
    bool is_primitive() const;

    static BinaryForm from_gram(const IntMatrix & gram);
    static BinaryForm principal(const Integer & d);

    friend bool operator==(const BinaryForm & f, const BinaryForm & g)
    {
        return f.a == g.a && f.b == g.b && f.c == g.c;
    }
    friend bool operator!=(const BinaryForm & f, const BinaryForm & g) { return !(f == g); }
    friend bool operator<(const BinaryForm & f, const BinaryForm & g)
    {
        if (f.a != g.a)
            return f.a < g.a;
        if (f.b != g.b)
            return f.b < g.b;
        return f.c < g.c;
    }
};

std::string to_string(const BinaryForm & f);

/* x -> f(m x): the form with Gram m^T * gram(f) * m. */
BinaryForm transform(const BinaryForm & f, const IntMatrix & m);

/* Throws NotIndefinite for D <= 0 and SquareDiscriminant for square D. */
void require_indefinite(const Integer & d);

bool is_reduced(const BinaryForm & f);

/* One reduction step; `step` receives the matrix m with transform(f, m) = result. */
BinaryForm rho(const BinaryForm & f, IntMatrix * step = nullptr);

struct Reduction
{
    BinaryForm form;
    IntMatrix transform; // transform(original, this->transform) == form
};

Reduction reduce_with_transform(const BinaryForm & f);
BinaryForm reduce(const BinaryForm & f);

/* Reduced forms properly equivalent to f, in rho order starting at reduce(f). */
std::vector<BinaryForm> cycle(const BinaryForm & f);

bool equivalent_sl2(const BinaryForm & f, const BinaryForm & g);
bool equivalent_gl2(const BinaryForm & f, const BinaryForm & g);

/*
 * An SL2 matrix m with transform(f, m) == g, or an empty matrix when f and g
 * are not properly equivalent.
 */
IntMatrix sl2_transform_between(const BinaryForm & f, const BinaryForm & g);

/* Dirichlet composition; the result is reduced. */
BinaryForm compose(const BinaryForm & f, const BinaryForm & g);

bool is_fundamental_discriminant(const Integer & d);

/*
 * Narrow class group of a fundamental discriminant D > 0, realized on cycles
 * of reduced forms. Each class is represented by the lexicographically
 * smallest reduced form with a > 0 in its cycle, and classes are indexed in
 * lexicographic order of these representatives.
 */
struct ClassGroup
{
    Integer discriminant;
    std::vector<BinaryForm> reps;
    std::vector<std::vector<BinaryForm>> cycles;
    std::vector<std::vector<std::size_t>> table;
    std::size_t identity = 0;

    std::size_t h_plus() const { return reps.size(); }
    /* Class index of any form of this discriminant. */
    std::size_t class_of(const BinaryForm & f) const;
    std::size_t inverse(std::size_t i) const;

    std::map<BinaryForm, std::size_t> index; // reduced form -> class
};

/* Every reduced form of discriminant D, in lexicographic order. */
std::vector<BinaryForm> reduced_forms(const Integer & d);

ClassGroup class_group(const Integer & d);

/*
 * Partition of the classes by genus characters (m / p) for the odd primes p
 * dividing D, m a value represented by the class and prime to D. Genera are
 * ordered by their smallest class index.
 */
std::vector<std::vector<std::size_t>> genus_split(const ClassGroup & cg);

/* Number of GL2 classes (class and inverse merged) in each genus. */
std::vector<std::size_t> gl2_classes_per_genus(const ClassGroup & cg,
                                               const std::vector<std::vector<std::size_t>> & genera);

/* epsilon = (t + u sqrt(D)) / 2, the smallest unit > 1 of the order of discriminant D. */
struct UnitData
{
    Integer t;
    Integer u;
    int norm_sign = 1;
    std::string epsilon_approx; // 50 significant digits
};

UnitData fundamental_unit(const Integer & d);

/* Smallest positive (t, u) with t^2 - D u^2 = 4. */
std::pair<Integer, Integer> pell_plus4(const UnitData & unit, const Integer & d);

/*
 * Generators of O(S) for the lattice of f: -1, the proper automorph from the
 * norm-(+1) unit, and one improper isometry when f ~ opposite(f).
 */
std::vector<IntMatrix> automorph_generators(const BinaryForm & f);

} // namespace kummer::bqf

#endif
