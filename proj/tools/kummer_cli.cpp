#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "kummer/fm_count.hpp"
#include "kummer/json_io.hpp"
#include "kummer/pipeline.hpp"

using namespace kummer;
using io::json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_verify_failed = 1;
constexpr int exit_input_error = 2;
constexpr int exit_search_exhausted = 3;

json read_json_file(const std::string & path)
{
    std::ifstream in(path);
    if (!in)
        throw KummerError(ErrorCode::InvalidInput, "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error & e) {
        throw KummerError(ErrorCode::InvalidInput, path + ": " + e.what());
    }
}

std::vector<Integer> parse_units(const std::string & list)
{
    std::vector<Integer> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.emplace_back(item);
        } catch (const std::invalid_argument &) {
            throw KummerError(ErrorCode::InvalidInput, "bad unit '" + item + "' in --g-units");
        }
    }
    if (out.empty())
        throw KummerError(ErrorCode::InvalidInput, "--g-units is empty");
    return out;
}

pipeline::ScanOptions scan_options(bool no_cache)
{
    pipeline::ScanOptions options;
    if (!no_cache)
        options.cache_path = pipeline::default_cache_path();
    return options;
}

std::string join(const std::vector<std::size_t> & v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? ";" : "") + std::to_string(v[i]);
    return s;
}

void print_scan_csv(const pipeline::ScanResult & scan)
{
    std::cout << "n,D,p,q,h_plus,genus_sizes,gl2_per_genus,t,u,norm_sign,epsilon,sb_ratio\n";
    for (const auto & r : scan.records)
        std::cout << r.n << ',' << r.d << ',' << r.p << ',' << r.q << ',' << r.h_plus << ',' << join(r.genus_sizes)
                  << ',' << join(r.gl2_per_genus) << ',' << r.unit.t << ',' << r.unit.u << ',' << r.unit.norm_sign
                  << ',' << r.unit.epsilon_approx << ',' << pipeline::format_decimal(r.sb_ratio, 6) << '\n';
}

} // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"Exact class-group, lattice and Fourier-Mukai counting tools"};
    app.require_subcommand(1);
    bool no_cache = false;
    app.add_flag("--no-cache", no_cache, "Do not read or write the class-group cache");

    auto * scan = app.add_subcommand("scan", "Scan n = 1..K for 4n^2 + 1 = pq");
    std::int64_t scan_n_max = 0;
    bool scan_json = false, scan_csv = false;
    scan->add_option("--n-max", scan_n_max, "Largest n")->required();
    auto * json_flag = scan->add_flag("--json", scan_json, "JSON output");
    scan->add_flag("--csv", scan_csv, "CSV output (default)")->excludes(json_flag);

    auto * classgroup = app.add_subcommand("classgroup", "Narrow class group of a fundamental discriminant");
    std::string disc;
    classgroup->add_option("--disc", disc, "Discriminant D")->required();

    auto * fmcount = app.add_subcommand("fmcount", "Count embedding classes for a Neron-Severi lattice");
    std::string gram_file, g_units;
    fmcount->add_option("--gram", gram_file, "JSON Gram matrix file")->required();
    fmcount->add_option("--g-units", g_units, "Comma-separated generators of G");

    auto * construct = app.add_subcommand("construct", "Build N lattices in one genus with a common complement");
    std::size_t construct_count = 0;
    std::int64_t construct_n_max = 500;
    std::string out_file;
    construct->add_option("--n", construct_count, "Number of lattices N")->required();
    construct->add_option("--n-max", construct_n_max, "Largest n to search")->capture_default_str();
    construct->add_option("--out", out_file, "Write JSON here instead of stdout");

    auto * verify = app.add_subcommand("verify", "Re-check a construction");
    std::string in_file;
    verify->add_option("--in", in_file, "Construction JSON")->required();

    auto * sbtable = app.add_subcommand("sbtable", "CSV of h, epsilon and log(h log eps)/log D");
    std::int64_t sb_n_max = 0;
    sbtable->add_option("--n-max", sb_n_max, "Largest n")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError & e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_input_error;
    }

    try {
        if (scan->parsed()) {
            const auto result = pipeline::scan_sequence(scan_n_max, scan_options(no_cache));
            for (const auto & s : result.skipped)
                std::clog << "skip n=" << s.n << ": " << s.reason << '\n';
            if (scan_json) {
                json j = json::array();
                for (const auto & r : result.records)
                    j.push_back(io::to_json(r));
                std::cout << j.dump(2) << '\n';
            } else {
                print_scan_csv(result);
            }
        } else if (classgroup->parsed()) {
            Integer d;
            try {
                d = Integer(disc);
            } catch (const std::invalid_argument &) {
                throw KummerError(ErrorCode::InvalidInput, "bad discriminant '" + disc + "'");
            }
            const auto cg = bqf::class_group(d);
            std::cout << io::to_json(cg, bqf::genus_split(cg)).dump(2) << '\n';
        } else if (fmcount->parsed()) {
            const lattice::EvenLattice ns(io::matrix_from_json(read_json_file(gram_file)));
            std::optional<std::vector<Integer>> units;
            if (!g_units.empty())
                units = parse_units(g_units);
            std::cout << io::to_json(fm::kummer_structure_count(ns, units)).dump(2) << '\n';
        } else if (construct->parsed()) {
            const auto r = pipeline::construct_examples(construct_count, construct_n_max, scan_options(no_cache));
            const std::string text = io::to_json(r).dump(2) + "\n";
            if (out_file.empty()) {
                std::cout << text;
            } else {
                std::ofstream out(out_file);
                if (!out)
                    throw KummerError(ErrorCode::InvalidInput, "cannot write " + out_file);
                out << text;
            }
        } else if (verify->parsed()) {
            const auto r = io::construction_from_json(read_json_file(in_file));
            const auto report = pipeline::verify_construction(r);
            std::cout << io::to_json(report).dump(2) << '\n';
            return report.ok ? exit_ok : exit_verify_failed;
        } else if (sbtable->parsed()) {
            const auto result = pipeline::scan_sequence(sb_n_max, scan_options(no_cache));
            std::cout << "n,D,h_plus,epsilon,ratio\n";
            for (const auto & row : pipeline::siegel_brauer_table(result.records))
                std::cout << row.n << ',' << row.d << ',' << row.h_plus << ',' << row.epsilon << ','
                          << pipeline::format_decimal(row.ratio, 6) << '\n';
        }
    } catch (const pipeline::SearchExhausted & e) {
        std::cerr << "error: " << e.what() << '\n';
        if (e.best())
            std::cerr << io::to_json(*e.best()).dump(2) << '\n';
        return exit_search_exhausted;
    } catch (const std::exception & e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input_error;
    }
    return exit_ok;
}
