#include "kummer/pipeline.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <set>

#include <unistd.h>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "kummer/json_io.hpp"
#include "kummer/lattice.hpp"
#include "kummer/primes.hpp"

namespace kummer::pipeline {

using bqf::BinaryForm;
using Dec = boost::multiprecision::cpp_dec_float_50;

namespace {

Integer discriminant_of(std::int64_t n)
{
    if (n < 1)
        throw KummerError(ErrorCode::InvalidInput, "n must be positive");
    const Integer in = Integer(static_cast<long>(n));
    const Integer d = 4 * in * in + 1;
    // class-group enumeration runs in signed 64-bit arithmetic below 2^62
    if (mpz_sizeinbase(d.get_mpz_t(), 2) > 62)
        throw KummerError(ErrorCode::OverflowScope, "4n^2 + 1 exceeds the 64-bit desk-scale bound for n = " +
                                                        std::to_string(n));
    return d;
}

struct ClassSummary
{
    std::size_t h_plus = 0;
    std::vector<std::vector<std::size_t>> genera;
    std::vector<std::size_t> gl2_per_genus;
};

ClassSummary summarize(const bqf::ClassGroup & cg)
{
    ClassSummary s;
    s.h_plus = cg.h_plus();
    s.genera = bqf::genus_split(cg);
    s.gl2_per_genus = bqf::gl2_classes_per_genus(cg, s.genera);
    return s;
}

/* JSON cache of class summaries; written atomically through a temporary file. */
class SummaryCache
{
  public:
    explicit SummaryCache(std::optional<std::filesystem::path> path) : path_(std::move(path))
    {
        if (!path_ || !std::filesystem::exists(*path_))
            return;
        try {
            std::ifstream in(*path_);
            const auto j = io::json::parse(in);
            for (const auto & [key, value] : j.at("entries").items())
                entries_[key] = value;
        } catch (const std::exception & e) {
            std::clog << "warning: ignoring unreadable cache " << path_->string() << ": " << e.what() << '\n';
            entries_.clear();
        }
    }

    std::optional<ClassSummary> find(const Integer & d) const
    {
        const auto it = entries_.find(d.get_str());
        if (it == entries_.end())
            return std::nullopt;
        try {
            ClassSummary s;
            s.h_plus = it->second.at("h_plus").get<std::size_t>();
            s.genera = it->second.at("genera").get<std::vector<std::vector<std::size_t>>>();
            s.gl2_per_genus = it->second.at("gl2_per_genus").get<std::vector<std::size_t>>();
            return s;
        } catch (const std::exception &) {
            return std::nullopt;
        }
    }

    void store(const bqf::ClassGroup & cg, const ClassSummary & s)
    {
        if (!path_)
            return;
        io::json entry = io::to_json(cg, s.genera);
        entry["gl2_per_genus"] = s.gl2_per_genus;
        entries_[cg.discriminant.get_str()] = std::move(entry);
        dirty_ = true;
    }

    void flush()
    {
        if (!path_ || !dirty_)
            return;
        try {
            if (path_->has_parent_path())
                std::filesystem::create_directories(path_->parent_path());
            io::json j;
            j["version"] = 1;
            j["entries"] = io::json::object();
            for (const auto & [key, value] : entries_)
                j["entries"][key] = value;
            auto tmp = *path_;
            tmp += ".tmp." + std::to_string(::getpid());
            {
                std::ofstream out(tmp);
                out << j.dump() << '\n';
            }
            std::filesystem::rename(tmp, *path_);
            dirty_ = false;
        } catch (const std::exception & e) {
            std::clog << "warning: could not write cache " << path_->string() << ": " << e.what() << '\n';
        }
    }

  private:
    std::optional<std::filesystem::path> path_;
    std::map<std::string, io::json> entries_;
    bool dirty_ = false;
};

std::string sb_ratio(const bqf::UnitData & unit, const Integer & d, std::size_t h_plus)
{
    const Dec eps = (Dec(unit.t.get_str()) + Dec(unit.u.get_str()) * boost::multiprecision::sqrt(Dec(d.get_str()))) / 2;
    const Dec ratio = boost::multiprecision::log(Dec(h_plus) * boost::multiprecision::log(eps)) /
                      boost::multiprecision::log(Dec(d.get_str()));
    return ratio.str(50);
}

SearchRecord record_from_summary(std::int64_t n, const Integer & d, const Integer & p, const Integer & q,
                                 const ClassSummary & s)
{
    SearchRecord r;
    r.n = n;
    r.d = d;
    r.p = p;
    r.q = q;
    r.h_plus = s.h_plus;
    for (const auto & g : s.genera)
        r.genus_sizes.push_back(g.size());
    r.gl2_per_genus = s.gl2_per_genus;
    r.unit = bqf::fundamental_unit(d);
    r.sb_ratio = sb_ratio(r.unit, d, r.h_plus);
    return r;
}

/* sign of (x + y sqrt(D)) for integers x, y */
int sign_of(const Integer & x, const Integer & y, const Integer & d)
{
    const int sx = sgn(x), sy = sgn(y);
    if (sx >= 0 && sy >= 0)
        return (sx || sy) ? 1 : 0;
    if (sx <= 0 && sy <= 0)
        return -1;
    const Integer lhs = x * x, rhs = y * y * d;
    if (lhs == rhs)
        return 0;
    return (lhs > rhs) == (sx > 0) ? 1 : -1;
}

std::size_t max_gl2(const SearchRecord & r)
{
    return r.gl2_per_genus.empty() ? 0 : *std::max_element(r.gl2_per_genus.begin(), r.gl2_per_genus.end());
}

template <class T>
std::vector<T> sorted(std::vector<T> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

} // namespace

std::filesystem::path default_cache_path()
{
    if (const char * env = std::getenv("KUMMER_CACHE"); env && *env)
        return env;
    if (const char * xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
        return std::filesystem::path(xdg) / "kummer" / "classgroups.json";
    if (const char * home = std::getenv("HOME"); home && *home)
        return std::filesystem::path(home) / ".cache" / "kummer" / "classgroups.json";
    return ".kummer_classgroups.json";
}

std::optional<std::pair<Integer, Integer>> split_pq(const Integer & d)
{
    const auto fac = primes::factor(primes::to_u64(d));
    if (fac.size() == 1 && fac[0].second == 1)
        return std::make_pair(Integer(1), d);
    if (fac.size() == 2 && fac[0].second == 1 && fac[1].second == 1)
        return std::make_pair(Integer(static_cast<unsigned long>(fac[0].first)),
                              Integer(static_cast<unsigned long>(fac[1].first)));
    return std::nullopt;
}

SearchRecord make_record(std::int64_t n, const bqf::ClassGroup & cg, const Integer & p, const Integer & q)
{
    return record_from_summary(n, cg.discriminant, p, q, summarize(cg));
}

ScanResult scan_sequence(std::int64_t n_max, const ScanOptions & options)
{
    if (n_max < 1)
        throw KummerError(ErrorCode::InvalidInput, "n_max must be at least 1");
    discriminant_of(n_max); // reject out-of-scope ranges before any work
    SummaryCache cache(options.cache_path);
    ScanResult out;
    for (std::int64_t n = 1; n <= n_max; ++n) {
        const Integer d = discriminant_of(n);
        const auto pq = split_pq(d);
        if (!pq) {
            std::string reason = d.get_str() + " =";
            for (const auto & [prime, e] : primes::factor(primes::to_u64(d)))
                reason += " " + std::to_string(prime) + (e > 1 ? "^" + std::to_string(e) : "");
            out.skipped.push_back({n, d, reason + " is not of the form pq"});
            continue;
        }
        if (auto cached = cache.find(d)) {
            out.records.push_back(record_from_summary(n, d, pq->first, pq->second, *cached));
            continue;
        }
        const auto cg = bqf::class_group(d);
        const auto summary = summarize(cg);
        cache.store(cg, summary);
        out.records.push_back(record_from_summary(n, d, pq->first, pq->second, summary));
    }
    cache.flush();
    return out;
}

std::vector<std::string> record_violations(const SearchRecord & r)
{
    std::vector<std::string> bad;
    const Integer in = Integer(static_cast<long>(r.n));
    if (4 * in * in + 1 != r.d || r.p * r.q != r.d)
        bad.push_back("4n^2+1 = pq");
    if (r.unit.norm_sign != -1 || r.unit.t * r.unit.t - r.d * r.unit.u * r.unit.u != -4)
        bad.push_back("unit norm -1");
    // eps <= 2n + sqrt(D):  (t - 4n) + (u - 2) sqrt(D) <= 0
    if (sign_of(r.unit.t - 4 * in, r.unit.u - 2, r.d) > 0)
        bad.push_back("eps <= 2n + sqrt(D)");
    // 1 < eps < D:  t + u sqrt(D) > 2  and  (t - 2D) + u sqrt(D) < 0
    if (sign_of(r.unit.t - 2, r.unit.u, r.d) <= 0 || sign_of(r.unit.t - 2 * r.d, r.unit.u, r.d) >= 0)
        bad.push_back("1 < eps < pq");
    if (!r.genus_sizes.empty() &&
        std::adjacent_find(r.genus_sizes.begin(), r.genus_sizes.end(), std::not_equal_to<>()) != r.genus_sizes.end())
        bad.push_back("equal genus sizes");
    if (4 * max_gl2(r) < r.h_plus)
        bad.push_back("max GL2 per genus >= h/4");
    return bad;
}

SearchExhausted::SearchExhausted(std::int64_t n_max, std::optional<SearchRecord> best)
    : KummerError(ErrorCode::SearchExhausted,
                  "no qualifying discriminant for n <= " + std::to_string(n_max) +
                      (best ? "; best found D = " + best->d.get_str() + " with " + std::to_string(max_gl2(*best)) +
                                  " GL2 classes in one genus"
                            : std::string())),
      best_(std::move(best))
{
}

ConstructionResult construct_examples(std::size_t count, std::int64_t n_max, const ScanOptions & options)
{
    if (count < 1)
        throw KummerError(ErrorCode::InvalidInput, "N must be at least 1");
    if (n_max < 1)
        throw KummerError(ErrorCode::InvalidInput, "n_max must be at least 1");

    SummaryCache cache(options.cache_path);
    std::optional<SearchRecord> best;
    auto consider = [&](const SearchRecord & r) {
        if (!best || max_gl2(r) > max_gl2(*best))
            best = r;
    };

    for (std::int64_t n = 1; n <= n_max; ++n) {
        const Integer d = discriminant_of(n);
        const auto pq = split_pq(d);
        if (!pq)
            continue;
        if (auto cached = cache.find(d)) {
            const auto & g = cached->gl2_per_genus;
            if (std::none_of(g.begin(), g.end(), [&](std::size_t c) { return c >= count; })) {
                consider(record_from_summary(n, d, pq->first, pq->second, *cached));
                continue;
            }
        }
        const auto cg = bqf::class_group(d);
        const auto summary = summarize(cg);
        cache.store(cg, summary);
        consider(record_from_summary(n, d, pq->first, pq->second, summary));

        for (std::size_t gi = 0; gi < summary.genera.size(); ++gi) {
            if (summary.gl2_per_genus[gi] < count)
                continue;
            cache.flush();

            ConstructionResult r;
            r.n_requested = count;
            r.n = n;
            r.d = d;
            r.p = pq->first;
            r.q = pq->second;
            // genus members are in ascending class order, i.e. lexicographic order of representatives
            for (std::size_t i : summary.genera[gi]) {
                if (r.forms.size() == count)
                    break;
                const std::size_t inv = cg.inverse(i);
                if (inv < i)
                    continue;
                r.forms.push_back(cg.reps[i]);
                r.certificates.cycles.push_back(sorted(cg.cycles[i]));
                r.certificates.opposite_cycles.push_back(sorted(cg.cycles[inv]));
            }
            for (const auto & f : r.forms) {
                r.lattices.push_back(f.gram());
                r.embeddings.push_back(embed::standard_embedding(f));
                r.certificates.discriminant_forms.push_back(
                    discform::cyclic_from_lattice(lattice::EvenLattice(f.gram())));
            }
            for (const auto & cf : r.certificates.discriminant_forms) {
                const auto u = discform::isomorphism_unit(r.certificates.discriminant_forms.front(), cf);
                if (!u)
                    throw KummerError(ErrorCode::InvalidInput, "genus members with non-isomorphic discriminant forms");
                r.certificates.genus_units.push_back(*u);
            }
            const auto t = embed::complement_lattice(r.embeddings.front());
            r.complement = t.lattice.gram();
            r.complement_basis = t.basis;
            r.certificates.complement_form = discform::cyclic_from_lattice(t.lattice);
            r.notes = {
                "lattices and embeddings only: the abelian surfaces A_i come from a maximal Hodge structure on T "
                "transported by isometries T = T_i, whose existence is cited rather than constructed",
                "every complement T_i is indefinite of rank 4 with cyclic discriminant group, hence alone in its "
                "genus; the isometries T = T_i are not produced explicitly",
            };
            return r;
        }
    }
    cache.flush();
    throw SearchExhausted(n_max, best);
}

VerificationReport verify_construction(const ConstructionResult & r)
{
    VerificationReport report;
    auto fail = [&](const std::string & check, const std::string & detail) {
        report.ok = false;
        report.failed_check = check;
        report.detail = detail;
        return report;
    };
    auto pass = [&](const std::string & check) { report.passed.push_back(check); };

    const std::size_t count = r.forms.size();
    try {
        if (count == 0 || count != r.n_requested || r.lattices.size() != count || r.embeddings.size() != count ||
            r.certificates.cycles.size() != count || r.certificates.opposite_cycles.size() != count ||
            r.certificates.discriminant_forms.size() != count || r.certificates.genus_units.size() != count)
            return fail("shape", "list lengths disagree with the requested count");
        pass("shape");

        const Integer in = Integer(static_cast<long>(r.n));
        if (r.n < 1 || 4 * in * in + 1 != r.d || r.p * r.q != r.d || r.p == r.q ||
            !(r.p == 1 || primes::is_prime(primes::to_u64(r.p))) || !primes::is_prime(primes::to_u64(r.q)))
            return fail("discriminant", "D is not 4n^2 + 1 = pq with p, q distinct primes (p = 1 allowed)");
        for (const auto & f : r.forms)
            if (f.discriminant() != r.d)
                return fail("discriminant", bqf::to_string(f) + " has discriminant " + f.discriminant().get_str());
        pass("discriminant");

        for (std::size_t i = 0; i < count; ++i) {
            if (r.lattices[i] != r.forms[i].gram())
                return fail("gram_form_consistency", "lattice " + std::to_string(i) + " is not the Gram matrix of its form");
            const lattice::EvenLattice s(r.lattices[i]);
            if (s.det() != -r.d || s.signature() != linalg::Signature{1, 1})
                return fail("gram_form_consistency", "lattice " + std::to_string(i) + " is not hyperbolic of det -D");
        }
        pass("gram_form_consistency");

        for (std::size_t i = 0; i < count; ++i)
            if (r.embeddings[i].pullback_gram() != r.lattices[i])
                return fail("embedding_pullback", "embedding " + std::to_string(i) + " does not pull back the Gram matrix");
        pass("embedding_pullback");

        for (std::size_t i = 0; i < count; ++i)
            if (!r.embeddings[i].is_primitive())
                return fail("embedding_primitive", "embedding " + std::to_string(i) + " is not primitive");
        pass("embedding_primitive");

        std::vector<std::set<BinaryForm>> cycles, opposite;
        for (std::size_t i = 0; i < count; ++i) {
            const auto c = bqf::cycle(r.forms[i]);
            const auto o = bqf::cycle(r.forms[i].opposite());
            if (sorted(c) != sorted(r.certificates.cycles[i]) || sorted(o) != sorted(r.certificates.opposite_cycles[i]))
                return fail("cycle_certificate", "stored cycle of form " + std::to_string(i) + " does not match");
            cycles.emplace_back(c.begin(), c.end());
            opposite.emplace_back(o.begin(), o.end());
        }
        pass("cycle_certificate");

        for (std::size_t i = 0; i < count; ++i)
            for (std::size_t j = i + 1; j < count; ++j) {
                const auto & ci = cycles[i];
                auto meets = [&](const std::set<BinaryForm> & other) {
                    return std::any_of(other.begin(), other.end(), [&](const BinaryForm & f) { return ci.count(f) > 0; });
                };
                if (meets(cycles[j]) || meets(opposite[j]))
                    return fail("pairwise_inequivalent", "forms " + std::to_string(i) + " and " + std::to_string(j) +
                                                             " are GL2-equivalent");
            }
        pass("pairwise_inequivalent");

        std::vector<discform::CyclicForm> forms_s;
        for (std::size_t i = 0; i < count; ++i) {
            forms_s.push_back(discform::cyclic_from_lattice(lattice::EvenLattice(r.lattices[i])));
            if (forms_s[i] != r.certificates.discriminant_forms[i])
                return fail("same_genus", "stored discriminant form " + std::to_string(i) + " does not match");
            const auto & u = r.certificates.genus_units[i];
            const Integer m = forms_s[0].m;
            Integer g;
            mpz_gcd(g.get_mpz_t(), u.get_mpz_t(), m.get_mpz_t());
            if (g != 1 || linalg::mod_floor(u * u * forms_s[0].numerator - forms_s[i].numerator, 4 * m) != 0)
                return fail("same_genus", "unit certificate " + std::to_string(i) + " is invalid");
            if (!discform::isomorphic_forms(forms_s[0], forms_s[i]))
                return fail("same_genus", "discriminant forms 0 and " + std::to_string(i) + " are not isomorphic");
        }
        pass("same_genus");

        const auto t = embed::complement_lattice(r.embeddings[0]);
        if (t.lattice.gram() != r.complement || t.basis != r.complement_basis)
            return fail("complement", "stored complement differs from the recomputed one");
        if (t.lattice.rank() != 4 || t.lattice.signature() != linalg::Signature{2, 2} || abs(t.lattice.det()) != r.d)
            return fail("complement", "complement is not rank 4, signature (2,2), |det| = D");
        const auto form_t = discform::cyclic_from_lattice(t.lattice);
        if (form_t != r.certificates.complement_form)
            return fail("complement", "stored complement discriminant form does not match");
        pass("complement");

        std::vector<lattice::EvenLattice> complements;
        for (std::size_t i = 0; i < count; ++i) {
            const auto ti = embed::complement_lattice(r.embeddings[i]).lattice;
            if (abs(ti.det()) != abs(lattice::EvenLattice(r.lattices[i]).det()))
                return fail("det_relation", "|det T_" + std::to_string(i) + "| != |det S_" + std::to_string(i) + "|");
            complements.push_back(ti);
        }
        pass("det_relation");

        for (std::size_t i = 0; i < count; ++i) {
            const auto fi = discform::cyclic_from_lattice(complements[i]);
            if (!discform::isomorphic_forms(fi, discform::negate(forms_s[i])))
                return fail("complement_discriminant_form", "A_T is not anti-isometric to A_S for lattice " +
                                                                std::to_string(i));
            if (complements[i].signature() != linalg::Signature{2, 2} || !discform::isomorphic_forms(fi, form_t))
                return fail("complement_discriminant_form", "T_" + std::to_string(i) + " is not in the genus of T");
        }
        pass("complement_discriminant_form");

        for (std::size_t i = 0; i < count; ++i)
            if (!embed::nikulin_unique_genus(complements[i]))
                return fail("nikulin_unique_genus", "rank >= 2 + l(A) fails for T_" + std::to_string(i));
        pass("nikulin_unique_genus");
    } catch (const std::exception & e) {
        return fail(report.passed.empty() ? "shape" : "exception", e.what());
    }
    return report;
}

std::vector<SiegelBrauerRow> siegel_brauer_table(const std::vector<SearchRecord> & records)
{
    if (records.empty())
        throw KummerError(ErrorCode::InvalidInput, "Siegel-Brauer table needs at least one record");
    std::vector<SiegelBrauerRow> rows;
    for (const auto & r : records)
        rows.push_back({r.n, r.d, r.h_plus, r.unit.epsilon_approx, r.sb_ratio});
    return rows;
}

std::string format_decimal(const std::string & value, int decimals)
{
    return Dec(value).str(decimals, std::ios_base::fixed);
}

} // namespace kummer::pipeline
