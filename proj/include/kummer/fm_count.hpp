#ifndef KUMMER_FM_COUNT_HPP
#define KUMMER_FM_COUNT_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "kummer/bqf.hpp"
#include "kummer/discform.hpp"
#include "kummer/lattice.hpp"

namespace kummer::fm {

enum class CountPath { Rank2Genus, NikulinUniqueGenus };

/*
 * Number of G-equivalence classes of primitive embeddings T(A) -> U^3, as the
 * sum over the genus of NS(A) of |O(S_j) \ O(A_{S_j}) / G|.
 */
struct FmCountReport
{
    linalg::IntMatrix ns_gram;
    CountPath path = CountPath::Rank2Genus;
    std::vector<bqf::BinaryForm> genus_reps;
    std::vector<std::size_t> per_class_cosets;
    std::size_t p_count = 0;
    /* |FM(A)| = |K(Km A)| lies in [p_count, 2 p_count]. */
    std::size_t fm_bound_low = 0;
    std::size_t fm_bound_high = 0;
    discform::SubgroupOfUnits g_subgroup;
    std::string kummer_note;
    std::vector<std::string> assumptions;
};

/*
 * `g_units` generates G inside O(A); by default G = {+1, -1}. Rank 2 requires
 * a squarefree determinant; ranks 3 and 4 require rank >= 2 + l(A_NS).
 */
FmCountReport count_embedding_classes(const lattice::EvenLattice & ns,
                                      const std::optional<std::vector<Integer>> & g_units = std::nullopt);

/* Same count, annotated with what it says about Kummer structures on Km A. */
FmCountReport kummer_structure_count(const lattice::EvenLattice & ns,
                                     const std::optional<std::vector<Integer>> & g_units = std::nullopt);

const char * to_string(CountPath path);

} // namespace kummer::fm

#endif
