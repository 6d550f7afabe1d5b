#ifndef KUMMER_PIPELINE_HPP
#define KUMMER_PIPELINE_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "kummer/bqf.hpp"
#include "kummer/discform.hpp"
#include "kummer/embed.hpp"
#include "kummer/errors.hpp"

namespace kummer::pipeline {

using linalg::IntMatrix;

/* One n with 4n^2 + 1 = pq (p, q distinct primes, or p = 1 and q prime). */
struct SearchRecord
{
    std::int64_t n = 0;
    Integer d;
    Integer p;
    Integer q;
    std::size_t h_plus = 0;
    std::vector<std::size_t> genus_sizes;
    std::vector<std::size_t> gl2_per_genus;
    bqf::UnitData unit;
    std::string sb_ratio; // log(h log eps) / log D
};

struct SkippedEntry
{
    std::int64_t n = 0;
    Integer d;
    std::string reason;
};

struct ScanResult
{
    std::vector<SearchRecord> records;
    std::vector<SkippedEntry> skipped;
};

/*
 * Class-group summaries keyed by D. Purely an accelerator for scan and
 * construct; verification never reads it.
 */
struct ScanOptions
{
    std::optional<std::filesystem::path> cache_path;
};

/* Default cache location: $KUMMER_CACHE, else $XDG_CACHE_HOME or ~/.cache. */
std::filesystem::path default_cache_path();

/* Factor 4n^2 + 1; returns (p, q) when it has the required shape. */
std::optional<std::pair<Integer, Integer>> split_pq(const Integer & d);

SearchRecord make_record(std::int64_t n, const bqf::ClassGroup & cg, const Integer & p, const Integer & q);

ScanResult scan_sequence(std::int64_t n_max, const ScanOptions & options = {});

/* Names of the violated record invariants; empty when all hold. */
std::vector<std::string> record_violations(const SearchRecord & r);

struct Certificates
{
    std::vector<std::vector<bqf::BinaryForm>> cycles;          // reduced cycle of each form
    std::vector<std::vector<bqf::BinaryForm>> opposite_cycles; // reduced cycle of each opposite form
    std::vector<discform::CyclicForm> discriminant_forms;
    std::vector<Integer> genus_units; // q_i = u_i^2 q_1
    discform::CyclicForm complement_form;
};

struct ConstructionResult
{
    std::size_t n_requested = 0;
    std::int64_t n = 0;
    Integer d;
    Integer p;
    Integer q;
    std::vector<bqf::BinaryForm> forms;
    std::vector<IntMatrix> lattices;
    std::vector<embed::EmbeddingMatrix> embeddings;
    IntMatrix complement;
    IntMatrix complement_basis;
    Certificates certificates;
    std::vector<std::string> notes;
};

class SearchExhausted : public KummerError
{
  public:
    SearchExhausted(std::int64_t n_max, std::optional<SearchRecord> best);
    const std::optional<SearchRecord> & best() const { return best_; }

  private:
    std::optional<SearchRecord> best_;
};

/*
 * Smallest D of the sequence with a genus holding at least N GL2 classes; the
 * first N classes in lexicographic order of their reduced representatives.
 */
ConstructionResult construct_examples(std::size_t count, std::int64_t n_max, const ScanOptions & options = {});

struct VerificationReport
{
    bool ok = true;
    std::string failed_check;
    std::string detail;
    std::vector<std::string> passed;
};

/* Recomputes every certificate from the forms and embeddings alone. */
VerificationReport verify_construction(const ConstructionResult & r);

struct SiegelBrauerRow
{
    std::int64_t n = 0;
    Integer d;
    std::size_t h_plus = 0;
    std::string epsilon;
    std::string ratio;
};

std::vector<SiegelBrauerRow> siegel_brauer_table(const std::vector<SearchRecord> & records);

/* ratio printed with a fixed number of decimals */
std::string format_decimal(const std::string & value, int decimals);

} // namespace kummer::pipeline

#endif
