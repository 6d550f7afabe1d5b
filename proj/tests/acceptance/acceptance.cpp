/*
 * Acceptance suite: one PASS/FAIL line per criterion, details indented below.
 * Usage: acceptance <path-to-kummer-cli> <scratch-dir>
 */

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "kummer/discform.hpp"
#include "kummer/embed.hpp"
#include "kummer/fm_count.hpp"
#include "kummer/pipeline.hpp"
#include "kummer/primes.hpp"
#include "../lattice_samples.hpp"
#include "../oracles.hpp"

using namespace kummer;
using linalg::IntMatrix;

namespace {

struct Outcome
{
    bool pass = true;
    std::vector<std::string> notes;

    void fail(const std::string & why)
    {
        if (notes.size() < 20)
            notes.push_back("failure: " + why);
        pass = false;
    }
    void note(const std::string & text) { notes.push_back(text); }
};

using Clock = std::chrono::steady_clock;

bool run_criterion(int id, const std::string & title, double budget_seconds, const std::function<void(Outcome &)> & body)
{
    Outcome out;
    const auto start = Clock::now();
    try {
        body(out);
    } catch (const std::exception & e) {
        out.fail(std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (budget_seconds > 0 && seconds > budget_seconds)
        out.fail("took " + std::to_string(seconds) + " s, budget " + std::to_string(budget_seconds) + " s");
    std::ostringstream time;
    time.precision(2);
    time << std::fixed << seconds;
    std::cout << (out.pass ? "PASS" : "FAIL") << " [" << id << "] " << title << " (" << time.str() << " s)\n";
    for (const auto & n : out.notes)
        std::cout << "    " << n << '\n';
    std::cout.flush();
    return out.pass;
}

oracle::Mat to_oracle(const IntMatrix & m)
{
    oracle::Mat out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        out[i] = m.row(i);
    return out;
}

std::string quote(const std::filesystem::path & p)
{
    return "'" + p.string() + "'";
}

/* For odd squarefree m, cyclic forms 2k/m and 2k'/m are isomorphic iff k k' is a square mod every p | m. */
bool same_cyclic_class(const discform::CyclicForm & f, const discform::CyclicForm & g)
{
    if (f.m != g.m)
        return false;
    const auto m = primes::to_u64(f.m);
    const std::int64_t k = linalg::mod_floor(f.numerator / 4, f.m).get_si();
    const std::int64_t kk = linalg::mod_floor(g.numerator / 4, g.m).get_si();
    for (const auto & [p, e] : primes::factor(m)) {
        const auto ip = static_cast<std::int64_t>(p);
        if (oracle::legendre((k % ip) * (kk % ip) % ip, ip) != 1)
            return false;
    }
    return true;
}

} // namespace

int main(int argc, char ** argv)
{
    if (argc != 3) {
        std::cerr << "usage: acceptance <kummer-cli> <scratch-dir>\n";
        return 2;
    }
    const std::filesystem::path cli = argv[1];
    const std::filesystem::path work = argv[2];
    std::filesystem::remove_all(work);
    std::filesystem::create_directories(work);
    ::setenv("KUMMER_CACHE", (work / "cache.json").c_str(), 1);

    bool all = true;

    all &= run_criterion(1, "construct N=2 and N=3 within n_max=500, verify exits 0", 60, [&](Outcome & out) {
        for (int n : {2, 3}) {
            const auto file = work / ("construct_" + std::to_string(n) + ".json");
            const std::string construct =
                quote(cli) + " construct --n " + std::to_string(n) + " --n-max 500 --out " + quote(file);
            const int c = std::system(construct.c_str());
            if (c != 0) {
                out.fail("construct --n " + std::to_string(n) + " exited with status " + std::to_string(c));
                continue;
            }
            const std::string verify = quote(cli) + " verify --in " + quote(file) + " > " + quote(work / "verify.out");
            const int v = std::system(verify.c_str());
            if (v != 0)
                out.fail("verify for N=" + std::to_string(n) + " exited with status " + std::to_string(v));
            const auto r = pipeline::construct_examples(n, 500, {});
            std::string forms;
            for (const auto & f : r.forms)
                forms += " " + bqf::to_string(f);
            out.note("N=" + std::to_string(n) + ": n=" + std::to_string(r.n) + ", D=" + r.d.get_str() + " =" +
                     (r.p == 1 ? "" : " " + r.p.get_str() + " *") + " " + r.q.get_str() + ", forms" + forms);
        }
    });

    all &= run_criterion(2, "counting formula: D=5 rank 2, 25 rank-3 and 25 rank-4 lattices give p_count = 1", 10,
                         [&](Outcome & out) {
                             const auto r5 = fm::count_embedding_classes(lattice::EvenLattice({{2, 1}, {1, -2}}));
                             if (r5.p_count != 1)
                                 out.fail("D=5 gives p_count " + std::to_string(r5.p_count));
                             std::mt19937_64 rng(2024);
                             std::size_t rank3 = 0, rank4 = 0;
                             for (int i = 0; i < 25; ++i) {
                                 const auto l3 = samples::random_rank3(rng);
                                 const Integer det3 = abs(l3.det());
                                 if (!primes::is_squarefree(primes::to_u64(det3)) ||
                                     l3.signature() != linalg::Signature{1, 2})
                                     out.fail("rank-3 sample outside the hypothesis");
                                 rank3 += fm::count_embedding_classes(l3).p_count == 1;
                                 const auto l4 = samples::random_rank4(rng);
                                 if (lattice::min_generators(lattice::discriminant_form(l4)) > 2 ||
                                     l4.signature() != linalg::Signature{1, 3})
                                     out.fail("rank-4 sample outside the hypothesis");
                                 rank4 += fm::count_embedding_classes(l4).p_count == 1;
                             }
                             if (rank3 != 25 || rank4 != 25)
                                 out.fail(std::to_string(rank3) + "/25 rank-3 and " + std::to_string(rank4) +
                                          "/25 rank-4 samples give p_count = 1");
                             out.note("D=5: p_count=1, bounds [1, 2]; rank 3: " + std::to_string(rank3) +
                                      "/25; rank 4: " + std::to_string(rank4) + "/25");
                         });

    all &= run_criterion(3, "record invariants for every n <= 200", 30, [&](Outcome & out) {
        const auto scan = pipeline::scan_sequence(200, {});
        std::size_t checked = 0;
        for (const auto & r : scan.records) {
            ++checked;
            const std::string tag = "n=" + std::to_string(r.n) + " D=" + r.d.get_str() + ": ";
            for (const auto & v : pipeline::record_violations(r))
                out.fail(tag + v);
            // independent unit: least solution of t^2 - D u^2 = +-4
            const auto [t, u, sign] = oracle::brute_pell(r.d.get_si(), 10);
            if (t != r.unit.t || u != r.unit.u || sign != -1)
                out.fail(tag + "unit disagrees with the brute-force Pell search");
            // independent genus check: classes of one genus have isomorphic discriminant forms, genera differ
            const auto cg = bqf::class_group(r.d);
            const auto genera = bqf::genus_split(cg);
            std::vector<discform::CyclicForm> forms;
            for (const auto & f : cg.reps)
                forms.push_back(discform::cyclic_from_lattice(lattice::EvenLattice(f.gram())));
            for (std::size_t g = 0; g < genera.size(); ++g) {
                for (std::size_t i : genera[g])
                    if (!same_cyclic_class(forms[genera[g].front()], forms[i]))
                        out.fail(tag + "genus members with different discriminant forms");
                for (std::size_t h = g + 1; h < genera.size(); ++h)
                    if (same_cyclic_class(forms[genera[g].front()], forms[genera[h].front()]))
                        out.fail(tag + "two genera share a discriminant form");
                std::size_t gl2 = 0;
                for (std::size_t i : genera[g]) {
                    bool first = true;
                    for (std::size_t j : genera[g])
                        if (j < i && bqf::equivalent_gl2(cg.reps[i], cg.reps[j]))
                            first = false;
                    gl2 += first;
                }
                if (gl2 != r.gl2_per_genus[g])
                    out.fail(tag + "GL2 count per genus disagrees with pairwise equivalence tests");
            }
            if (r.h_plus != oracle::zagier_class_number(r.d.get_si()))
                out.fail(tag + "h+ disagrees with the Zagier cycle count");
        }
        out.note(std::to_string(checked) + " records checked, " + std::to_string(scan.skipped.size()) +
                 " n skipped (4n^2+1 not of the form pq)");
    });

    all &= run_criterion(4, "embedding/complement suite on 100 random (a,b,c), |a|,|b|,|c| <= 50", 10, [&](Outcome & out) {
        std::mt19937_64 rng(4096);
        std::uniform_int_distribution<long> coef(-50, 50);
        std::size_t tested = 0, cyclic = 0;
        while (tested < 100) {
            const bqf::BinaryForm f(coef(rng), coef(rng), coef(rng));
            const Integer d = f.discriminant();
            if (d <= 0) // signature (2,2) of the complement needs an indefinite source
                continue;
            ++tested;
            const std::string tag = bqf::to_string(f) + ": ";
            const auto e = embed::standard_embedding(f);
            if (e.pullback_gram() != f.gram())
                out.fail(tag + "pullback");
            if (!e.is_primitive() || oracle::maximal_minor_gcd(to_oracle(e.rows())) != 1)
                out.fail(tag + "primitivity");
            const auto t = embed::complement_lattice(e);
            if (t.lattice.signature() != linalg::Signature{2, 2})
                out.fail(tag + "complement signature");
            if (abs(t.lattice.det()) != abs(4 * f.a * f.c - f.b * f.b))
                out.fail(tag + "|det T| != |4ac - b^2|");
            const lattice::EvenLattice s(f.gram());
            const auto a_s = lattice::discriminant_form(s);
            const auto a_t = lattice::discriminant_form(t.lattice);
            if (!lattice::isomorphic(a_t, lattice::negate_form(a_s)))
                out.fail(tag + "A_T is not isomorphic to (A_S, -q_S)");
            if (oracle::discriminant_value_counts(to_oracle(t.lattice.gram())) !=
                oracle::negate_counts(oracle::discriminant_value_counts(to_oracle(f.gram()))))
                out.fail(tag + "q-value distributions of A_T and -A_S differ");
            if (lattice::min_generators(a_s) <= 1) {
                ++cyclic;
                if (!discform::isomorphic_forms(discform::cyclic_from_lattice(t.lattice),
                                                discform::negate(discform::cyclic_from_lattice(s))))
                    out.fail(tag + "cyclic forms not anti-isometric");
            }
        }
        out.note(std::to_string(tested) + " forms with D > 0, " + std::to_string(cyclic) + " with cyclic A_S");
    });

    all &= run_criterion(5, "class-group algebra and h+ oracle for every pipeline D <= 10^5", 0, [&](Outcome & out) {
        std::size_t discriminants = 0, max_h = 0;
        for (std::int64_t n = 1; 4 * n * n + 1 <= 100000; ++n) {
            const Integer d = 4 * Integer(static_cast<long>(n)) * n + 1;
            if (!pipeline::split_pq(d))
                continue;
            ++discriminants;
            const std::string tag = "D=" + d.get_str() + ": ";
            const auto cg = bqf::class_group(d);
            const std::size_t h = cg.h_plus();
            max_h = std::max(max_h, h);
            if (h != oracle::zagier_class_number(d.get_si()))
                out.fail(tag + "h+ " + std::to_string(h) + " disagrees with the Zagier cycle count");
            if (bqf::reduced_forms(d).size() != oracle::brute_reduced_forms(d.get_si()).size())
                out.fail(tag + "reduced-form count disagrees with direct enumeration");
            if (!bqf::equivalent_sl2(cg.reps[cg.identity], bqf::BinaryForm::principal(d)))
                out.fail(tag + "identity is not the principal class");
            for (std::size_t i = 0; i < h; ++i) {
                if (cg.table[i][cg.identity] != i)
                    out.fail(tag + "identity law");
                if (cg.table[i][cg.inverse(i)] != cg.identity)
                    out.fail(tag + "inverse law");
                for (std::size_t j = 0; j < h; ++j) {
                    if (cg.table[i][j] != cg.table[j][i])
                        out.fail(tag + "commutativity");
                    // the table is recomputed from members other than the representatives
                    if (cg.class_of(bqf::compose(cg.cycles[i].back(), cg.cycles[j][cg.cycles[j].size() / 2])) !=
                        cg.table[i][j])
                        out.fail(tag + "composition is not well defined on classes");
                    for (std::size_t k = 0; k < h; ++k)
                        if (cg.table[cg.table[i][j]][k] != cg.table[i][cg.table[j][k]])
                            out.fail(tag + "associativity");
                }
            }
        }
        out.note(std::to_string(discriminants) + " discriminants, largest h+ " + std::to_string(max_h));
    });

    all &= run_criterion(6, "strictly increasing record h+ chain of length >= 3 up to n=500", 0, [&](Outcome & out) {
        const auto scan = pipeline::scan_sequence(500, {work / "cache.json"});
        std::vector<pipeline::SearchRecord> chain;
        for (const auto & r : scan.records)
            if (chain.empty() || r.h_plus > chain.back().h_plus)
                chain.push_back(r);
        if (chain.size() < 3)
            out.fail("record chain has length " + std::to_string(chain.size()));
        std::string hs;
        for (const auto & r : chain)
            hs += (hs.empty() ? "" : " < ") + std::to_string(r.h_plus);
        out.note("record chain (" + std::to_string(chain.size()) + "): " + hs);
        out.note("log(h log eps)/log D at the records (informational):");
        for (const auto & row : pipeline::siegel_brauer_table(chain))
            out.note("  n=" + std::to_string(row.n) + " D=" + row.d.get_str() + " h+=" + std::to_string(row.h_plus) +
                     " ratio=" + pipeline::format_decimal(row.ratio, 6));
        auto largest = scan.records;
        std::sort(largest.begin(), largest.end(), [](const auto & a, const auto & b) { return a.d > b.d; });
        largest.resize(std::min<std::size_t>(20, largest.size()));
        out.note("ratios for the 20 largest D (informational):");
        for (const auto & row : pipeline::siegel_brauer_table(largest))
            out.note("  D=" + row.d.get_str() + " h+=" + std::to_string(row.h_plus) +
                     " ratio=" + pipeline::format_decimal(row.ratio, 6));
    });

    std::cout << (all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL") << '\n';
    return all ? 0 : 1;
}
