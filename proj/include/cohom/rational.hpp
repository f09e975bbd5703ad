#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "cohom/error.hpp"

namespace cohom {

/// Arbitrary-precision rational in lowest terms with positive denominator.
using Rational = mpq_class;

inline std::string to_string(const Rational& x) { return x.get_str(); }

/// Parses "p", "-p" or "p/q". Anything else, including q = 0, is MalformedInput.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&] { return Error(ErrorKind::MalformedInput, "not a rational: '" + s + "'"); };
  if (s.empty()) throw bad();
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  bool slash = false;
  bool digit_before = false;
  bool digit_after = false;
  for (std::size_t j = i; j < s.size(); ++j) {
    char c = s[j];
    if (c == '/' && !slash) {
      slash = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      (slash ? digit_after : digit_before) = true;
    } else {
      throw bad();
    }
  }
  if (!digit_before || (slash && !digit_after)) throw bad();
  if (s[0] == '+') s.erase(0, 1);
  Rational q;
  if (q.set_str(s, 10) != 0) throw bad();
  if (q.get_den() == 0) throw bad();
  q.canonicalize();
  return q;
}

}  // namespace cohom
