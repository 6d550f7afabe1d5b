#include "kummer/fm_count.hpp"

#include "kummer/embed.hpp"
#include "kummer/errors.hpp"
#include "kummer/primes.hpp"

namespace kummer::fm {

namespace {

discform::SubgroupOfUnits hodge_subgroup(const Integer & m, const std::optional<std::vector<Integer>> & g_units)
{
    if (g_units)
        return discform::generated_subgroup(m, *g_units);
    return discform::generated_subgroup(m, {Integer(-1)});
}

void require_hyperbolic(const lattice::EvenLattice & ns)
{
    const auto sig = ns.signature();
    if (sig.pos != 1 || sig.neg + 1 != ns.rank())
        throw KummerError(ErrorCode::NotHyperbolic, "Neron-Severi lattice must have signature (1, rank - 1)");
}

FmCountReport count_rank2(const lattice::EvenLattice & ns, const std::optional<std::vector<Integer>> & g_units)
{
    FmCountReport report;
    report.ns_gram = ns.gram();
    report.path = CountPath::Rank2Genus;

    const bqf::BinaryForm form = bqf::BinaryForm::from_gram(ns.gram());
    const Integer d = form.discriminant();
    if (!primes::is_squarefree(primes::to_u64(d)))
        throw KummerError(ErrorCode::UnsupportedLattice, "rank-2 determinant " + d.get_str() + " is not squarefree");

    const discform::CyclicForm target = discform::cyclic_from_lattice(ns);
    report.g_subgroup = hodge_subgroup(target.m, g_units);

    if (d == 1) {
        // U is alone in its genus and A_U is trivial
        report.genus_reps.push_back(form);
        report.per_class_cosets.push_back(1);
    } else {
        const auto cg = bqf::class_group(d);
        for (std::size_t i = 0; i < cg.h_plus(); ++i) {
            if (cg.inverse(i) < i)
                continue; // GL2 class already seen through its opposite
            const bqf::BinaryForm & rep = cg.reps[i];
            const auto cf = discform::cyclic_from_lattice(lattice::EvenLattice(rep.gram()));
            if (!discform::isomorphic_forms(target, cf))
                continue;
            const auto full = discform::orthogonal_group(cf);
            const auto image = discform::image_of_lattice_isometries(rep);
            report.genus_reps.push_back(rep);
            report.per_class_cosets.push_back(discform::double_coset_count(image, full, report.g_subgroup));
        }
        report.assumptions.push_back(
            "O(S_j) is taken to be generated by -1, the proper automorph of the fundamental unit and, for ambiguous "
            "classes, one improper isometry; its image in O(A_S_j) is treated as exact");
    }

    for (std::size_t c : report.per_class_cosets)
        report.p_count += c;
    return report;
}

} // namespace

const char * to_string(CountPath path)
{
    switch (path) {
    case CountPath::Rank2Genus: return "rank2-genus-enumeration";
    case CountPath::NikulinUniqueGenus: return "nikulin-unique-genus";
    }
    return "unknown";
}

FmCountReport count_embedding_classes(const lattice::EvenLattice & ns, const std::optional<std::vector<Integer>> & g_units)
{
    require_hyperbolic(ns);
    FmCountReport report;
    if (ns.rank() == 2) {
        report = count_rank2(ns, g_units);
    } else if (ns.rank() == 3 || ns.rank() == 4) {
        if (!embed::nikulin_unique_genus(ns))
            throw KummerError(ErrorCode::UnsupportedLattice, "rank " + std::to_string(ns.rank()) +
                                                                 " lattice fails rank >= 2 + l(A)");
        report.ns_gram = ns.gram();
        report.path = CountPath::NikulinUniqueGenus;
        report.per_class_cosets.push_back(1);
        report.p_count = 1;
        const Integer m = lattice::discriminant_form(ns).group_order();
        // G only matters through the quotient, which is a single point here
        if (lattice::min_generators(lattice::discriminant_form(ns)) <= 1)
            report.g_subgroup = hodge_subgroup(m, g_units);
        report.assumptions.push_back("single-class genus and surjective O(NS) -> O(A_NS) by the rank >= 2 + l(A) criterion");
    } else {
        throw KummerError(ErrorCode::UnsupportedLattice, "rank " + std::to_string(ns.rank()) + " is outside 2..4");
    }
    report.assumptions.push_back("G defaults to {+1, -1}, the image of the Hodge isometries of a generic transcendental lattice");
    report.fm_bound_low = report.p_count;
    report.fm_bound_high = 2 * report.p_count;
    return report;
}

FmCountReport kummer_structure_count(const lattice::EvenLattice & ns, const std::optional<std::vector<Integer>> & g_units)
{
    FmCountReport report = count_embedding_classes(ns, g_units);
    if (report.p_count == 1) {
        report.kummer_note = "K(X) = {A, A^}; further collapses to {A} iff A = A^";
        if (ns.rank() == 4)
            report.kummer_note += ". Picard number 4 forces A = E x F, so A^ = A and K(X) = {A}";
    } else {
        report.kummer_note = "|K(X)| = |FM(A)| lies in [" + std::to_string(report.fm_bound_low) + ", " +
                             std::to_string(report.fm_bound_high) + "]; the fibre over each embedding class is {B, B^}";
    }
    return report;
}

} // namespace kummer::fm
