#include "qga/rational.hpp"

#include <cctype>

#include "qga/errors.hpp"

namespace qga {

std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  auto valid_int = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
  };
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1")
                                                          : text.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den.front() == '-' || den.front() == '+')
    throw SpecError("malformed rational: " + std::string(text));
  if (num.front() == '+') num.remove_prefix(1);
  const Integer n{std::string(num)}, d{std::string(den)};
  if (d == 0) throw SpecError("zero denominator: " + std::string(text));
  Rational r(n, d);
  r.canonicalize();
  return r;
}

}  // namespace qga
