#pragma once

#include <vector>

#include "qga/primidem.hpp"

namespace qga::detail {

/// β_e = b̂_2' · β_2 · ε; x and y are required in case 2.ii only.
AlgElement build_beta(const SSPRecord& rec, const CaseData& cd, const AlgElement* x,
                      const AlgElement* y);
std::vector<Elem> t2_prime(const SSPRecord& rec, const CaseData& cd);
std::vector<Elem> t2(const SSPRecord& rec, const CaseData& cd);

}  // namespace qga::detail
