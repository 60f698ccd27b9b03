#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace qga {

/// Exact rational, always canonical (reduced, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

/// "p/q" (or "p" when the denominator is 1 on input; output always has "/q").
std::string to_string(const Rational& r);
/// Parses "p/q" or "p". Throws SpecError on malformed input or q == 0.
Rational parse_rational(std::string_view text);

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

}  // namespace qga
