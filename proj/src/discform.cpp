#include "kummer/discform.hpp"

#include <algorithm>
#include <cstdint>
#include <set>

#include "kummer/errors.hpp"
#include "kummer/primes.hpp"

namespace kummer::discform {

using linalg::IntMatrix;
using linalg::mod_floor;

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

/* Modulus usable in the 128-bit unit searches below. */
u64 search_modulus(const Integer & m)
{
    const u64 v = primes::to_u64(m);
    if (v >= (u64{1} << 61))
        throw KummerError(ErrorCode::OverflowScope, "modulus too large for unit search");
    return v;
}

u64 gcd_u64(u64 a, u64 b)
{
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

Integer to_integer(u64 v)
{
    return Integer(static_cast<unsigned long>(v));
}

} // namespace

CyclicForm::CyclicForm(Integer m_, Integer numerator_) : m(std::move(m_)), numerator(std::move(numerator_))
{
    if (m < 1)
        throw KummerError(ErrorCode::InvalidInput, "cyclic group order must be positive");
    numerator = mod_floor(numerator, 4 * m);
    // q(m g) = m * numerator / 2 must vanish mod 2
    if (numerator % 2 != 0 || (m * numerator) % 4 != 0)
        throw KummerError(ErrorCode::InvalidInput, "q_gen = " + numerator.get_str() + "/" + Integer(2 * m).get_str() +
                                                       " is not well defined on Z/" + m.get_str());
}

Rational CyclicForm::q_gen() const
{
    Rational r(numerator, 2 * m);
    r.canonicalize();
    return r;
}

bool SubgroupOfUnits::contains(const Integer & u) const
{
    return std::binary_search(elements.begin(), elements.end(), unit_rep(u, modulus));
}

Integer unit_rep(const Integer & u, const Integer & m)
{
    return mod_floor(u - 1, m) + 1;
}

CyclicForm cyclic_from_form(const lattice::FiniteQuadraticForm & f)
{
    if (f.num_generators() > 1)
        throw KummerError(ErrorCode::NotCyclic, "discriminant group needs " + std::to_string(f.num_generators()) +
                                                    " generators");
    if (f.num_generators() == 0)
        return {};
    // denominator is 2 * exponent = 2m, exactly the scale used by CyclicForm
    return {f.orders()[0], f.values()(0, 0)};
}

CyclicForm cyclic_from_lattice(const lattice::EvenLattice & l)
{
    return cyclic_from_form(lattice::discriminant_form(l));
}

CyclicForm negate(const CyclicForm & f)
{
    return {f.m, -f.numerator};
}

std::optional<Integer> isomorphism_unit(const CyclicForm & f, const CyclicForm & g)
{
    if (f.m != g.m)
        return std::nullopt;
    const u64 m = search_modulus(f.m);
    const u64 mod4 = 4 * m;
    const u64 kf = primes::to_u64(f.numerator);
    const u64 kg = primes::to_u64(g.numerator);
    if (m == 1)
        return kf == kg ? std::optional<Integer>(Integer(1)) : std::nullopt;
    for (u64 u = 1; u < m; ++u) {
        if (gcd_u64(u, m) != 1)
            continue;
        const u64 u2 = static_cast<u64>(static_cast<u128>(u) * u % mod4);
        if (static_cast<u64>(static_cast<u128>(u2) * kf % mod4) == kg)
            return to_integer(u);
    }
    return std::nullopt;
}

bool isomorphic_forms(const CyclicForm & f, const CyclicForm & g)
{
    return isomorphism_unit(f, g).has_value();
}

SubgroupOfUnits orthogonal_group(const CyclicForm & f)
{
    SubgroupOfUnits out;
    out.modulus = f.m;
    const u64 m = search_modulus(f.m);
    if (m == 1)
        return out;
    const u64 mod4 = 4 * m;
    const u64 k = primes::to_u64(f.numerator);
    out.elements.clear();
    for (u64 u = 1; u < m; ++u) {
        if (gcd_u64(u, m) != 1)
            continue;
        const u64 u2 = static_cast<u64>(static_cast<u128>(u) * u % mod4);
        if (static_cast<u64>(static_cast<u128>(u2) * k % mod4) == k)
            out.elements.push_back(to_integer(u));
    }
    return out;
}

SubgroupOfUnits generated_subgroup(const Integer & m, const std::vector<Integer> & generators)
{
    std::set<Integer> seen{unit_rep(1, m)};
    std::vector<Integer> frontier{unit_rep(1, m)};
    while (!frontier.empty()) {
        const Integer x = frontier.back();
        frontier.pop_back();
        for (const auto & g : generators) {
            Integer gcd;
            mpz_gcd(gcd.get_mpz_t(), g.get_mpz_t(), m.get_mpz_t());
            if (gcd != 1)
                throw KummerError(ErrorCode::NotSubgroup, g.get_str() + " is not a unit mod " + m.get_str());
            const Integer y = unit_rep(x * g, m);
            if (seen.insert(y).second)
                frontier.push_back(y);
        }
    }
    SubgroupOfUnits out;
    out.modulus = m;
    out.elements.assign(seen.begin(), seen.end());
    return out;
}

Integer unit_of_isometry(const IntMatrix & gram, const IntMatrix & isometry)
{
    if (isometry.transpose() * gram * isometry != gram)
        throw KummerError(ErrorCode::InvalidInput, "matrix is not an isometry of the lattice");
    const auto snf = linalg::smith_normal_form(gram);
    const std::size_t n = gram.rows();
    std::size_t k = n;
    for (std::size_t i = 0; i < n; ++i)
        if (snf.d[i] > 1) {
            if (k != n)
                throw KummerError(ErrorCode::NotCyclic, "discriminant group is not cyclic");
            k = i;
        }
    if (k == n)
        return 1;

    // dual classes live in Z^n / gram Z^n, where the isometry acts by its inverse transpose
    const IntMatrix u_inv = linalg::unimodular_inverse(snf.u);
    IntMatrix gen(n, 1);
    for (std::size_t i = 0; i < n; ++i)
        gen(i, 0) = u_inv(i, k);
    const IntMatrix image = snf.u * linalg::unimodular_inverse(isometry).transpose() * gen;
    for (std::size_t i = 0; i < n; ++i)
        if (i != k && image(i, 0) % snf.d[i] != 0)
            throw KummerError(ErrorCode::InvalidInput, "isometry does not preserve the generator's cyclic span");
    return unit_rep(image(k, 0), snf.d[k]);
}

SubgroupOfUnits image_of_lattice_isometries(const bqf::BinaryForm & f)
{
    const IntMatrix gram = f.gram();
    const auto fqf = lattice::discriminant_form(lattice::EvenLattice(gram));
    const CyclicForm cf = cyclic_from_form(fqf);
    if (cf.m == 1)
        return {};
    std::vector<Integer> units;
    for (const auto & g : bqf::automorph_generators(f))
        units.push_back(unit_of_isometry(gram, g));
    return generated_subgroup(cf.m, units);
}

namespace {

void require_subgroup(const SubgroupOfUnits & h, const SubgroupOfUnits & full, const char * name)
{
    if (h.modulus != full.modulus)
        throw KummerError(ErrorCode::NotSubgroup, std::string(name) + " has a different modulus");
    if (!h.contains(1))
        throw KummerError(ErrorCode::NotSubgroup, std::string(name) + " does not contain 1");
    for (const auto & x : h.elements) {
        if (!full.contains(x))
            throw KummerError(ErrorCode::NotSubgroup, std::string(name) + " is not contained in the full group");
        for (const auto & y : h.elements)
            if (!h.contains(x * y))
                throw KummerError(ErrorCode::NotSubgroup, std::string(name) + " is not closed under multiplication");
    }
}

} // namespace

std::size_t double_coset_count(const SubgroupOfUnits & left, const SubgroupOfUnits & full,
                               const SubgroupOfUnits & right)
{
    require_subgroup(full, full, "full");
    require_subgroup(left, full, "left");
    require_subgroup(right, full, "right");
    std::set<Integer> visited;
    std::size_t orbits = 0;
    for (const auto & x : full.elements) {
        if (visited.count(x))
            continue;
        ++orbits;
        for (const auto & l : left.elements)
            for (const auto & r : right.elements)
                visited.insert(unit_rep(l * x * r, full.modulus));
    }
    return orbits;
}

SubgroupOfUnits product(const SubgroupOfUnits & a, const SubgroupOfUnits & b)
{
    if (a.modulus != b.modulus)
        throw KummerError(ErrorCode::NotSubgroup, "subgroups of different moduli");
    std::set<Integer> prod;
    for (const auto & x : a.elements)
        for (const auto & y : b.elements)
            prod.insert(unit_rep(x * y, a.modulus));
    SubgroupOfUnits out;
    out.modulus = a.modulus;
    out.elements.assign(prod.begin(), prod.end());
    return out;
}

} // namespace kummer::discform
