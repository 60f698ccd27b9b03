#pragma once

// JSON views of the library's records. Key order is fixed so that equal
// inputs always serialize to identical bytes.

#include <nlohmann/json.hpp>

#include "qga/algebra.hpp"
#include "qga/group.hpp"
#include "qga/primidem.hpp"
#include "qga/shoda.hpp"
#include "qga/wedderburn.hpp"
#include "qga/zunits.hpp"

namespace qga::json {

using Json = nlohmann::ordered_json;

Json rational(const Rational& r);                 ///< "p/q"
Json element(const AlgElement& a);                ///< {"index": "p/q", ...}
Json subgroup(const Subgroup& s);                 ///< [members...]
Json group_header(const GroupPtr& g);
Json ssp_record(const SSPRecord& rec);
Json descriptor(const ComponentDescriptor& d);
Json case_data(const CaseData& cd);
Json matrix_unit_system(const MatrixUnitSystem& sys, bool with_units);
Json unit(const UnitCertificate& c);
Json generator_suite(const GeneratorSuite& s);

}  // namespace qga::json
