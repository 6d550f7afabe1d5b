#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <random>

#include "kummer/errors.hpp"
#include "kummer/fm_count.hpp"
#include "lattice_samples.hpp"

using namespace kummer;
using namespace kummer::fm;
using linalg::IntMatrix;

namespace {

ErrorCode code_of(const std::function<void()> & fn)
{
    try {
        fn();
    } catch (const KummerError & e) {
        return e.code();
    }
    FAIL("no exception");
    return ErrorCode::InvalidInput;
}

} // namespace

TEST_CASE("rank 2, D = 5")
{
    const auto r = kummer_structure_count(lattice::EvenLattice({{2, 1}, {1, -2}}));
    CHECK(r.path == CountPath::Rank2Genus);
    CHECK(r.genus_reps.size() == 1);
    CHECK(r.p_count == 1);
    CHECK(r.fm_bound_low == 1);
    CHECK(r.fm_bound_high == 2);
    CHECK(r.g_subgroup.elements == std::vector<Integer>{1, 4});
    CHECK(r.kummer_note.find("K(X) = {A, A^}") == 0);
    CHECK(r.kummer_note.find("iff A = A^") != std::string::npos);
}

TEST_CASE("rank 2 hyperbolic plane")
{
    const auto r = count_embedding_classes(lattice::hyperbolic_U());
    CHECK(r.p_count == 1);
}

TEST_CASE("rank 2 with larger genera")
{
    // D = 145: two genera with two classes each; each genus is counted separately
    const auto cg = bqf::class_group(145);
    for (const auto & f : cg.reps) {
        const auto r = count_embedding_classes(lattice::EvenLattice(f.gram()));
        std::size_t sum = 0;
        for (auto c : r.per_class_cosets)
            sum += c;
        CHECK(r.p_count == sum);
        CHECK(r.genus_reps.size() >= 1);
        CHECK(r.fm_bound_high == 2 * r.p_count);
        // a larger G can only merge cosets
        const auto bigger = count_embedding_classes(lattice::EvenLattice(f.gram()),
                                                    std::vector<Integer>{Integer(-1), Integer(59)});
        CHECK(bigger.p_count <= r.p_count);
        CHECK(bigger.g_subgroup.size() == 4);
    }
}

TEST_CASE("rank 3 and 4 through the unique-genus criterion")
{
    std::mt19937_64 rng(53);
    for (int i = 0; i < 10; ++i) {
        const auto l3 = samples::random_rank3(rng);
        const auto r3 = kummer_structure_count(l3);
        CHECK(r3.path == CountPath::NikulinUniqueGenus);
        CHECK(r3.p_count == 1);
        CHECK(r3.kummer_note.find("K(X) = {A, A^}") == 0);

        const auto l4 = samples::random_rank4(rng);
        const auto r4 = kummer_structure_count(l4);
        CHECK(r4.p_count == 1);
        CHECK(r4.kummer_note.find("K(X) = {A}") != std::string::npos);
    }
}

TEST_CASE("rejected inputs")
{
    // not hyperbolic
    CHECK(code_of([] { count_embedding_classes(lattice::EvenLattice({{-2, 1}, {1, -2}})); }) ==
          ErrorCode::NotHyperbolic);
    // rank 2 with a square factor: D = 45
    CHECK(code_of([] { count_embedding_classes(lattice::EvenLattice({{2, 1}, {1, -22}})); }) ==
          ErrorCode::UnsupportedLattice);
    // rank 4 with l = 4
    CHECK(code_of([] {
              count_embedding_classes(lattice::EvenLattice({{0, 2, 0, 0}, {2, 0, 0, 0}, {0, 0, -2, 0}, {0, 0, 0, -2}}));
          }) == ErrorCode::UnsupportedLattice);
    // rank 5
    CHECK(code_of([] {
              count_embedding_classes(lattice::EvenLattice(linalg::direct_sum(
                  lattice::hyperbolic_U().gram(), IntMatrix{{-2, 0, 0}, {0, -2, 0}, {0, 0, -2}})));
          }) == ErrorCode::UnsupportedLattice);
    // G generated by a non-unit
    CHECK(code_of([] {
              count_embedding_classes(lattice::EvenLattice({{2, 1}, {1, -2}}), std::vector<Integer>{Integer(5)});
          }) == ErrorCode::NotSubgroup);
}
