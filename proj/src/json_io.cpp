#include "kummer/json_io.hpp"

#include <limits>

#include "kummer/errors.hpp"

namespace nlohmann {

void adl_serializer<mpz_class>::to_json(json & j, const mpz_class & v)
{
    if (v.fits_slong_p() && sizeof(long) >= sizeof(std::int64_t))
        j = static_cast<std::int64_t>(v.get_si());
    else
        j = v.get_str();
}

void adl_serializer<mpz_class>::from_json(const json & j, mpz_class & v)
{
    if (j.is_number_integer()) {
        v = mpz_class(std::to_string(j.get<std::int64_t>()));
    } else if (j.is_number_unsigned()) {
        v = mpz_class(std::to_string(j.get<std::uint64_t>()));
    } else if (j.is_string()) {
        try {
            v = mpz_class(j.get<std::string>());
        } catch (const std::invalid_argument &) {
            throw kummer::KummerError(kummer::ErrorCode::InvalidInput, "not an integer: " + j.get<std::string>());
        }
    } else {
        throw kummer::KummerError(kummer::ErrorCode::InvalidInput, "expected an integer, got " + j.dump());
    }
}

} // namespace nlohmann

namespace kummer::io {

using linalg::IntMatrix;

json to_json(const IntMatrix & m)
{
    json j = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        j.push_back(m.row(i));
    return j;
}

IntMatrix matrix_from_json(const json & j)
{
    if (!j.is_array())
        throw KummerError(ErrorCode::InvalidInput, "matrix must be an array of rows");
    std::vector<std::vector<Integer>> rows;
    for (const auto & row : j) {
        if (!row.is_array())
            throw KummerError(ErrorCode::InvalidInput, "matrix row must be an array");
        rows.push_back(row.get<std::vector<Integer>>());
        if (rows.back().size() != rows.front().size())
            throw KummerError(ErrorCode::DimensionMismatch, "matrix rows have different lengths");
    }
    return IntMatrix::from_rows(rows);
}

json to_json(const bqf::BinaryForm & f)
{
    return json::array({f.a, f.b, f.c});
}

bqf::BinaryForm form_from_json(const json & j)
{
    if (!j.is_array() || j.size() != 3)
        throw KummerError(ErrorCode::InvalidInput, "form must be a triple [a, b, c]");
    return {j[0].get<Integer>(), j[1].get<Integer>(), j[2].get<Integer>()};
}

namespace {

json forms_to_json(const std::vector<bqf::BinaryForm> & forms)
{
    json j = json::array();
    for (const auto & f : forms)
        j.push_back(to_json(f));
    return j;
}

std::vector<bqf::BinaryForm> forms_from_json(const json & j)
{
    std::vector<bqf::BinaryForm> out;
    for (const auto & f : j)
        out.push_back(form_from_json(f));
    return out;
}

} // namespace

json to_json(const bqf::ClassGroup & cg, const std::vector<std::vector<std::size_t>> & genera)
{
    json genera_forms = json::array();
    for (const auto & g : genera) {
        json members = json::array();
        for (std::size_t i : g)
            members.push_back(to_json(cg.reps[i]));
        genera_forms.push_back(members);
    }
    return {{"D", cg.discriminant},
            {"h_plus", cg.h_plus()},
            {"reps", forms_to_json(cg.reps)},
            {"genera", genera},
            {"genera_reps", genera_forms}};
}

json to_json(const bqf::UnitData & u)
{
    return {{"t", u.t}, {"u", u.u}, {"norm_sign", u.norm_sign}, {"epsilon", u.epsilon_approx}};
}

json to_json(const discform::CyclicForm & f)
{
    return {{"m", f.m}, {"numerator", f.numerator}, {"q_gen", f.q_gen().get_str()}};
}

discform::CyclicForm cyclic_from_json(const json & j)
{
    return {j.at("m").get<Integer>(), j.at("numerator").get<Integer>()};
}

json to_json(const discform::SubgroupOfUnits & g)
{
    return {{"modulus", g.modulus}, {"elements", g.elements}};
}

json to_json(const fm::FmCountReport & r)
{
    return {{"ns_gram", to_json(r.ns_gram)},
            {"path", fm::to_string(r.path)},
            {"genus_reps", forms_to_json(r.genus_reps)},
            {"per_class_cosets", r.per_class_cosets},
            {"p_count", r.p_count},
            {"fm_bounds", {r.fm_bound_low, r.fm_bound_high}},
            {"G", to_json(r.g_subgroup)},
            {"kummer_note", r.kummer_note},
            {"assumptions", r.assumptions}};
}

json to_json(const pipeline::SearchRecord & r)
{
    return {{"n", r.n},
            {"D", r.d},
            {"p", r.p},
            {"q", r.q},
            {"h_plus", r.h_plus},
            {"genus_sizes", r.genus_sizes},
            {"gl2_per_genus", r.gl2_per_genus},
            {"unit", to_json(r.unit)},
            {"sb_ratio", r.sb_ratio}};
}

json to_json(const pipeline::ConstructionResult & r)
{
    json lattices = json::array(), embeddings = json::array(), cycles = json::array(), opposite = json::array(),
         dforms = json::array();
    for (const auto & l : r.lattices)
        lattices.push_back(to_json(l));
    for (const auto & e : r.embeddings)
        embeddings.push_back(to_json(e.rows()));
    for (const auto & c : r.certificates.cycles)
        cycles.push_back(forms_to_json(c));
    for (const auto & c : r.certificates.opposite_cycles)
        opposite.push_back(forms_to_json(c));
    for (const auto & f : r.certificates.discriminant_forms)
        dforms.push_back(to_json(f));
    return {{"N_requested", r.n_requested},
            {"n", r.n},
            {"D", r.d},
            {"p", r.p},
            {"q", r.q},
            {"forms", forms_to_json(r.forms)},
            {"lattices", lattices},
            {"embeddings", embeddings},
            {"complement", to_json(r.complement)},
            {"complement_basis", to_json(r.complement_basis)},
            {"certificates",
             {{"cycles", cycles},
              {"opposite_cycles", opposite},
              {"discriminant_forms", dforms},
              {"genus_units", r.certificates.genus_units},
              {"complement_form", to_json(r.certificates.complement_form)}}},
            {"notes", r.notes}};
}

pipeline::ConstructionResult construction_from_json(const json & j)
{
    try {
        pipeline::ConstructionResult r;
        r.n_requested = j.at("N_requested").get<std::size_t>();
        r.n = j.at("n").get<std::int64_t>();
        r.d = j.at("D").get<Integer>();
        r.p = j.at("p").get<Integer>();
        r.q = j.at("q").get<Integer>();
        r.forms = forms_from_json(j.at("forms"));
        for (const auto & l : j.at("lattices"))
            r.lattices.push_back(matrix_from_json(l));
        for (const auto & e : j.at("embeddings"))
            r.embeddings.emplace_back(matrix_from_json(e));
        r.complement = matrix_from_json(j.at("complement"));
        r.complement_basis = matrix_from_json(j.at("complement_basis"));
        const auto & c = j.at("certificates");
        for (const auto & cyc : c.at("cycles"))
            r.certificates.cycles.push_back(forms_from_json(cyc));
        for (const auto & cyc : c.at("opposite_cycles"))
            r.certificates.opposite_cycles.push_back(forms_from_json(cyc));
        for (const auto & f : c.at("discriminant_forms"))
            r.certificates.discriminant_forms.push_back(cyclic_from_json(f));
        r.certificates.genus_units = c.at("genus_units").get<std::vector<Integer>>();
        r.certificates.complement_form = cyclic_from_json(c.at("complement_form"));
        if (j.contains("notes"))
            r.notes = j.at("notes").get<std::vector<std::string>>();
        return r;
    } catch (const json::exception & e) {
        throw KummerError(ErrorCode::InvalidInput, std::string("malformed construction: ") + e.what());
    }
}

json to_json(const pipeline::VerificationReport & r)
{
    json j = {{"ok", r.ok}, {"passed", r.passed}};
    if (!r.ok) {
        j["failed_check"] = r.failed_check;
        j["detail"] = r.detail;
    }
    return j;
}

} // namespace kummer::io
