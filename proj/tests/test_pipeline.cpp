#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <functional>

#include <unistd.h>

#include "kummer/errors.hpp"
#include "kummer/json_io.hpp"
#include "kummer/pipeline.hpp"
#include "oracles.hpp"

using namespace kummer;
using namespace kummer::pipeline;
using bqf::BinaryForm;

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

std::filesystem::path scratch(const std::string & name)
{
    const auto dir = std::filesystem::temp_directory_path() / ("kummer_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    return dir / name;
}

const ConstructionResult & construction2()
{
    static const ConstructionResult r = construct_examples(2, 500);
    return r;
}

const ConstructionResult & construction3()
{
    static const ConstructionResult r = construct_examples(3, 500);
    return r;
}

} // namespace

TEST_CASE("split into pq")
{
    CHECK(split_pq(5) == std::make_pair(Integer(1), Integer(5)));
    CHECK(split_pq(65) == std::make_pair(Integer(5), Integer(13)));
    CHECK_FALSE(split_pq(325));
    CHECK_FALSE(split_pq(5 * 13 * 17));
}

TEST_CASE("scan examples")
{
    const auto scan = scan_sequence(12);
    REQUIRE_FALSE(scan.records.empty());
    CHECK(scan.records[0].n == 1);
    CHECK(scan.records[0].d == 5);
    CHECK(scan.records[0].p == 1);
    CHECK(scan.records[0].q == 5);
    const auto it = std::find_if(scan.records.begin(), scan.records.end(), [](const auto & r) { return r.n == 4; });
    REQUIRE(it != scan.records.end());
    CHECK(it->d == 65);
    CHECK(it->p == 5);
    CHECK(it->q == 13);
    REQUIRE(scan.skipped.size() == 1);
    CHECK(scan.skipped[0].n == 9);
    CHECK(scan.skipped[0].d == 325);
    CHECK(scan.records.size() + scan.skipped.size() == 12);

    CHECK(code_of([] { scan_sequence(0); }) == ErrorCode::InvalidInput);
    CHECK(code_of([] { scan_sequence(std::int64_t{1} << 31); }) == ErrorCode::OverflowScope);
}

TEST_CASE("scanned records satisfy their invariants")
{
    for (const auto & r : scan_sequence(60).records) {
        CHECK(record_violations(r).empty());
        CHECK(r.h_plus == oracle::zagier_class_number(r.d.get_si()));
        const auto [t, u, sign] = oracle::brute_pell(r.d.get_si());
        CHECK(r.unit.t == t);
        CHECK(r.unit.u == u);
    }
}

TEST_CASE("violations are detected")
{
    SearchRecord r = scan_sequence(6).records.back();
    REQUIRE(r.n == 6);
    CHECK(record_violations(r).empty());
    SearchRecord bad = r;
    bad.unit.t = 4 * 6 + 2; // not a unit any more and beyond 2n + sqrt(D)
    const auto v = record_violations(bad);
    CHECK(std::find(v.begin(), v.end(), "unit norm -1") != v.end());
    CHECK(std::find(v.begin(), v.end(), "eps <= 2n + sqrt(D)") != v.end());
    bad = r;
    bad.genus_sizes = {1, 3};
    CHECK(record_violations(bad) == std::vector<std::string>{"equal genus sizes"});
    bad = r;
    bad.h_plus = 100;
    CHECK(record_violations(bad) == std::vector<std::string>{"max GL2 per genus >= h/4"});
}

TEST_CASE("construction for N = 1")
{
    const auto r = construct_examples(1, 10);
    CHECK(r.d == 5);
    REQUIRE(r.lattices.size() == 1);
    CHECK(r.lattices[0] == linalg::IntMatrix{{2, 1}, {1, -2}});
    CHECK(verify_construction(r).ok);
}

TEST_CASE("constructions for N = 2, 3 verify")
{
    for (const auto * r : {&construction2(), &construction3()}) {
        const auto report = verify_construction(*r);
        CHECK(report.ok);
        CHECK(report.failed_check.empty());
        CHECK(report.passed.size() == 12);
        // the genus really holds N classes: independent GL2 check on the forms
        for (std::size_t i = 0; i < r->forms.size(); ++i)
            for (std::size_t j = i + 1; j < r->forms.size(); ++j)
                CHECK_FALSE(bqf::equivalent_gl2(r->forms[i], r->forms[j]));
    }
    // smallest qualifying D: no earlier record has a genus with two GL2 classes
    for (const auto & rec : scan_sequence(construction2().n - 1).records)
        for (auto c : rec.gl2_per_genus)
            CHECK(c < 2);
}

TEST_CASE("construction is deterministic and round-trips through JSON")
{
    const auto a = io::to_json(construct_examples(2, 500)).dump(2);
    const auto b = io::to_json(construct_examples(2, 500, {scratch("det_cache.json")})).dump(2);
    const auto c = io::to_json(construct_examples(2, 500, {scratch("det_cache.json")})).dump(2);
    CHECK(a == b);
    CHECK(a == c);
    const auto back = io::construction_from_json(io::json::parse(a));
    CHECK(io::to_json(back).dump(2) == a);
    CHECK(verify_construction(back).ok);
}

TEST_CASE("tampered constructions are rejected with a named check")
{
    SUBCASE("changed Gram entry")
    {
        auto r = construction2();
        r.lattices[1](0, 1) += 1;
        r.lattices[1](1, 0) += 1;
        const auto report = verify_construction(r);
        CHECK_FALSE(report.ok);
        CHECK(report.failed_check == "gram_form_consistency");
    }
    SUBCASE("SL2-equivalent form injected")
    {
        auto r = construction3();
        // replace the last form by another member of the first form's cycle, with consistent data
        const BinaryForm g = bqf::rho(bqf::rho(r.forms[0]));
        r.forms[2] = g;
        r.lattices[2] = g.gram();
        r.embeddings[2] = embed::standard_embedding(g);
        r.certificates.cycles[2] = bqf::cycle(g);
        r.certificates.opposite_cycles[2] = bqf::cycle(g.opposite());
        const auto report = verify_construction(r);
        CHECK_FALSE(report.ok);
        CHECK(report.failed_check == "pairwise_inequivalent");
    }
    SUBCASE("forged cycle certificate")
    {
        auto r = construction2();
        r.certificates.cycles[0].pop_back();
        CHECK(verify_construction(r).failed_check == "cycle_certificate");
    }
    SUBCASE("embedding that does not pull back the Gram matrix")
    {
        auto r = construction2();
        linalg::IntMatrix rows = r.embeddings[0].rows();
        rows(0, 4) = 1;
        rows(0, 5) = 1; // adds e3 + f3, of norm 2
        r.embeddings[0] = embed::EmbeddingMatrix(rows);
        CHECK(verify_construction(r).failed_check == "embedding_pullback");
    }
    SUBCASE("wrong complement")
    {
        auto r = construction2();
        r.complement(0, 0) += 2;
        CHECK(verify_construction(r).failed_check == "complement");
    }
    SUBCASE("wrong genus unit")
    {
        auto r = construction2();
        r.certificates.genus_units[1] = r.d; // not a unit
        CHECK(verify_construction(r).failed_check == "same_genus");
    }
    SUBCASE("wrong count")
    {
        auto r = construction2();
        r.n_requested = 3;
        CHECK(verify_construction(r).failed_check == "shape");
    }
    SUBCASE("wrong discriminant")
    {
        auto r = construction2();
        r.n += 1;
        CHECK(verify_construction(r).failed_check == "discriminant");
    }
}

TEST_CASE("search exhaustion reports the best record")
{
    try {
        construct_examples(3, 6);
        FAIL("expected SearchExhausted");
    } catch (const SearchExhausted & e) {
        CHECK(e.code() == ErrorCode::SearchExhausted);
        REQUIRE(e.best());
        CHECK(e.best()->d == 145);
    }
    CHECK(code_of([] { construct_examples(0, 10); }) == ErrorCode::InvalidInput);
}

TEST_CASE("cache is an accelerator only")
{
    const auto path = scratch("scan_cache.json");
    std::filesystem::remove(path);
    const auto fresh = scan_sequence(80);
    const auto first = scan_sequence(80, {path});
    REQUIRE(std::filesystem::exists(path));
    const auto second = scan_sequence(80, {path});
    REQUIRE(fresh.records.size() == second.records.size());
    for (std::size_t i = 0; i < fresh.records.size(); ++i) {
        CHECK(io::to_json(fresh.records[i]) == io::to_json(first.records[i]));
        CHECK(io::to_json(fresh.records[i]) == io::to_json(second.records[i]));
    }
    // a corrupt cache is ignored and rewritten
    {
        std::ofstream out(path);
        out << "{ not json";
    }
    const auto third = scan_sequence(80, {path});
    CHECK(io::to_json(third.records.back()) == io::to_json(fresh.records.back()));
    CHECK_NOTHROW(io::json::parse(std::ifstream(path)));
}

TEST_CASE("Siegel-Brauer table")
{
    const auto rows = siegel_brauer_table(scan_sequence(30).records);
    REQUIRE_FALSE(rows.empty());
    CHECK(rows[0].d == 5);
    CHECK(rows[0].h_plus == 1);
    CHECK(rows[0].epsilon.substr(0, 20) == "1.618033988749894848");
    CHECK(rows[0].ratio.front() == '-');
    // log(log((1 + sqrt 5) / 2)) / log 5 = -0.45447...
    CHECK(format_decimal(rows[0].ratio, 6) == "-0.454474");
    CHECK(code_of([] { siegel_brauer_table({}); }) == ErrorCode::InvalidInput);
    CHECK(format_decimal("0.1234567", 3) == "0.123");
}

TEST_CASE("default cache path honours the environment")
{
    ::setenv("KUMMER_CACHE", "/tmp/x.json", 1);
    CHECK(default_cache_path() == "/tmp/x.json");
    ::unsetenv("KUMMER_CACHE");
    ::setenv("XDG_CACHE_HOME", "/tmp/xdg", 1);
    CHECK(default_cache_path() == std::filesystem::path("/tmp/xdg/kummer/classgroups.json"));
}
