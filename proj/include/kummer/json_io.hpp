#ifndef KUMMER_JSON_IO_HPP
#define KUMMER_JSON_IO_HPP

#include <json.hpp>

#include "kummer/bqf.hpp"
#include "kummer/discform.hpp"
#include "kummer/fm_count.hpp"
#include "kummer/pipeline.hpp"

/*
 * Integers are written as JSON numbers when they fit in 64 bits and as
 * decimal strings otherwise; both spellings are accepted on input.
 */
namespace nlohmann {
template <>
struct adl_serializer<mpz_class>
{
    static void to_json(json & j, const mpz_class & v);
    static void from_json(const json & j, mpz_class & v);
};
} // namespace nlohmann

namespace kummer::io {

using json = nlohmann::json;

json to_json(const linalg::IntMatrix & m);
linalg::IntMatrix matrix_from_json(const json & j);

json to_json(const bqf::BinaryForm & f);
bqf::BinaryForm form_from_json(const json & j);

json to_json(const bqf::ClassGroup & cg, const std::vector<std::vector<std::size_t>> & genera);
json to_json(const bqf::UnitData & u);
json to_json(const discform::CyclicForm & f);
discform::CyclicForm cyclic_from_json(const json & j);
json to_json(const discform::SubgroupOfUnits & g);

json to_json(const fm::FmCountReport & r);
json to_json(const pipeline::SearchRecord & r);
json to_json(const pipeline::ConstructionResult & r);
pipeline::ConstructionResult construction_from_json(const json & j);
json to_json(const pipeline::VerificationReport & r);

} // namespace kummer::io

#endif
