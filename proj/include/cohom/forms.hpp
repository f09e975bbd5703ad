#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cohom/rational.hpp"

namespace cohom {

/// z^exps dz_{I}, with I strictly increasing and 0-based.
struct FormKey {
  std::vector<int> exps;
  std::vector<int> dI;

  auto operator<=>(const FormKey&) const = default;
  bool operator==(const FormKey&) const = default;
};

namespace detail {

/// Sorts `idx` in place and returns the permutation sign, or 0 on a repeat.
inline int sort_with_sign(std::vector<int>& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i)
    for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return 0;
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  return sign;
}

}  // namespace detail

/// Homogeneous differential q-form with Laurent monomial coefficients in
/// z_1..z_n. Terms are kept in canonical form: no zero coefficients and
/// increasing dz indices, so equality is structural.
class AlgebraicForm {
 public:
  AlgebraicForm() = default;
  AlgebraicForm(int n, int degree) : n_(n), degree_(degree) {}

  /// c z^exps dz_{idx[0]} ^ dz_{idx[1]} ^ ... ; indices 0-based, any order.
  static AlgebraicForm monomial(int n, std::vector<int> exps, std::vector<int> idx, const Rational& c = 1) {
    if (static_cast<int>(exps.size()) != n) throw Error(ErrorKind::VariableCountMismatch, "exponent vector length != n");
    for (int i : idx)
      if (i < 0 || i >= n) throw Error(ErrorKind::VariableCountMismatch, "dz index out of range");
    AlgebraicForm f(n, static_cast<int>(idx.size()));
    int s = detail::sort_with_sign(idx);
    if (s != 0 && c != 0) f.terms_[{std::move(exps), std::move(idx)}] = s * c;
    return f;
  }

  static AlgebraicForm constant(int n, const Rational& c) { return monomial(n, std::vector<int>(n, 0), {}, c); }

  /// dz_i / z_i (0-based i)
  static AlgebraicForm log_generator(int n, int i) {
    std::vector<int> e(n, 0);
    e[i] = -1;
    return monomial(n, e, {i});
  }

  /// ω_I = ω_{i1} ^ ... ^ ω_{ir} for increasing I.
  static AlgebraicForm log_form(int n, const std::vector<int>& I) {
    std::vector<int> e(n, 0);
    for (int i : I) e[i] = -1;
    return monomial(n, e, I);
  }

  int n() const noexcept { return n_; }
  int degree() const noexcept { return degree_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  const std::map<FormKey, Rational>& terms() const noexcept { return terms_; }

  Rational coefficient(const FormKey& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const FormKey& k, const Rational& c) {
    if (c == 0) return;
    if (static_cast<int>(k.dI.size()) != degree_) throw Error(ErrorKind::InvariantViolation, "mixed form degrees");
    auto [it, fresh] = terms_.emplace(k, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  AlgebraicForm& operator+=(const AlgebraicForm& o) {
    check_compatible(o);
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
  }
  AlgebraicForm& operator-=(const AlgebraicForm& o) {
    check_compatible(o);
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
  }
  friend AlgebraicForm operator+(AlgebraicForm a, const AlgebraicForm& b) { return a += b; }
  friend AlgebraicForm operator-(AlgebraicForm a, const AlgebraicForm& b) { return a -= b; }
  friend AlgebraicForm operator*(const Rational& s, const AlgebraicForm& a) {
    AlgebraicForm out(a.n_, a.degree_);
    if (s == 0) return out;
    for (const auto& [k, c] : a.terms_) out.terms_[k] = s * c;
    return out;
  }
  friend AlgebraicForm operator-(const AlgebraicForm& a) { return Rational(-1) * a; }
  friend bool operator==(const AlgebraicForm& a, const AlgebraicForm& b) {
    return a.n_ == b.n_ && (a.degree_ == b.degree_ || (a.is_zero() && b.is_zero())) && a.terms_ == b.terms_;
  }

  std::string to_string() const;

 private:
  void check_compatible(const AlgebraicForm& o) const {
    if (o.n_ != n_) throw Error(ErrorKind::VariableCountMismatch, "forms in different numbers of variables");
    if (o.degree_ != degree_ && !o.is_zero() && !is_zero())
      throw Error(ErrorKind::InvariantViolation, "adding forms of different degree");
  }

  int n_ = 0;
  int degree_ = 0;
  std::map<FormKey, Rational> terms_;

  friend AlgebraicForm with_degree(AlgebraicForm f, int q);
};

/// Zero forms carry a degree; adding a zero form of another degree is allowed.
inline AlgebraicForm with_degree(AlgebraicForm f, int q) {
  if (!f.is_zero() && f.degree() != q) throw Error(ErrorKind::InvariantViolation, "form has a different degree");
  f.degree_ = q;
  return f;
}

/// deg(z^a dz_I) = a + Σ_{i∈I} e_i
inline std::vector<int> multidegree(const FormKey& k) {
  auto m = k.exps;
  for (int i : k.dI) ++m[i];
  return m;
}

inline std::string term_to_string(const FormKey& k, const Rational& c) {
  std::string mono;
  for (std::size_t i = 0; i < k.exps.size(); ++i) {
    if (k.exps[i] == 0) continue;
    if (!mono.empty()) mono += " ";
    mono += "z" + std::to_string(i + 1);
    if (k.exps[i] != 1) mono += "^" + std::to_string(k.exps[i]);
  }
  for (std::size_t j = 0; j < k.dI.size(); ++j) {
    mono += (j == 0 ? (mono.empty() ? "" : " ") : "^");
    mono += "dz" + std::to_string(k.dI[j] + 1);
  }
  if (mono.empty()) return to_string(c);
  if (c == 1) return mono;
  if (c == -1) return "-" + mono;
  return to_string(c) + " * " + mono;
}

inline std::string AlgebraicForm::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [k, c] : terms_) {
    std::string t = term_to_string(k, c);
    if (s.empty()) {
      s = t;
    } else if (t[0] == '-') {
      s += " - " + t.substr(1);
    } else {
      s += " + " + t;
    }
  }
  return s;
}

/// d(z^a dz_I) = Σ_i a_i z^{a-e_i} dz_i ^ dz_I
inline AlgebraicForm exterior_derivative(const AlgebraicForm& w) {
  AlgebraicForm out(w.n(), w.degree() + 1);
  for (const auto& [k, c] : w.terms()) {
    for (int i = 0; i < w.n(); ++i) {
      if (k.exps[i] == 0) continue;
      if (std::binary_search(k.dI.begin(), k.dI.end(), i)) continue;
      FormKey t{k.exps, {}};
      --t.exps[i];
      auto pos = std::lower_bound(k.dI.begin(), k.dI.end(), i) - k.dI.begin();
      t.dI = k.dI;
      t.dI.insert(t.dI.begin() + pos, i);
      Rational coef = c * k.exps[i];
      if (pos % 2 == 1) coef = -coef;
      out.add_term(t, coef);
    }
  }
  return out;
}

inline AlgebraicForm wedge(const AlgebraicForm& a, const AlgebraicForm& b) {
  if (a.n() != b.n()) throw Error(ErrorKind::VariableCountMismatch, "wedge of forms in different numbers of variables");
  AlgebraicForm out(a.n(), a.degree() + b.degree());
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms()) {
      std::vector<int> idx = ka.dI;
      idx.insert(idx.end(), kb.dI.begin(), kb.dI.end());
      int s = detail::sort_with_sign(idx);
      if (s == 0) continue;
      FormKey t{ka.exps, std::move(idx)};
      for (std::size_t i = 0; i < t.exps.size(); ++i) t.exps[i] += kb.exps[i];
      out.add_term(t, s * ca * cb);
    }
  return out;
}

inline bool is_closed(const AlgebraicForm& w) { return exterior_derivative(w).is_zero(); }

/// Parses forms such as "3/2 * z1^-2 z2^1 dz1^dz3 - z2 dz1^dz2" in n variables.
/// Variables are 1-based. All terms must have the same form degree.
inline AlgebraicForm parse_form(std::string_view text, int n) {
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    return Error(ErrorKind::MalformedInput, "form syntax at column " + std::to_string(i + 1) + ": " + why);
  };
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto read_uint = [&]() -> std::string {
    std::size_t st = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (st == i) throw fail("expected a number");
    return std::string(text.substr(st, i - st));
  };
  auto read_var = [&]() -> int {
    int v = std::stoi(read_uint());
    if (v < 1 || v > n) throw fail("variable index " + std::to_string(v) + " outside 1.." + std::to_string(n));
    return v - 1;
  };

  int degree = -1;
  AlgebraicForm out(n, 0);
  bool first = true;
  skip();
  if (i == text.size()) throw fail("empty form");
  while (true) {
    skip();
    if (i == text.size()) break;
    Rational sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      if (text[i] == '-') sign = -1;
      ++i;
      skip();
    } else if (!first) {
      throw fail("expected '+' or '-'");
    }
    first = false;
    Rational coef = 1;
    bool has_number = false, needs_factor = false;
    if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      has_number = true;
      std::string num = read_uint();
      if (i < text.size() && text[i] == '/') {
        ++i;
        num += "/" + read_uint();
      }
      coef = parse_rational(num);
      skip();
      if (i < text.size() && text[i] == '*') {
        ++i;
        skip();
        needs_factor = true;
      }
    }
    std::vector<int> exps(n, 0);
    std::vector<int> idx;
    bool any_factor = false;
    while (true) {
      skip();
      if (i >= text.size() || text[i] == '+' || text[i] == '-') break;
      if (text[i] == '*') {
        ++i;
        needs_factor = true;
        continue;
      }
      if (text.compare(i, 2, "dz") == 0) {
        i += 2;
        idx.push_back(read_var());
        while (true) {
          std::size_t save = i;
          skip();
          if (i < text.size() && text[i] == '^') {
            ++i;
            skip();
            if (text.compare(i, 2, "dz") != 0) throw fail("expected dz after '^'");
            i += 2;
            idx.push_back(read_var());
          } else {
            i = save;
            break;
          }
        }
      } else if (text[i] == 'z') {
        ++i;
        int v = read_var();
        int e = 1;
        if (i < text.size() && text[i] == '^') {
          ++i;
          bool neg = false;
          if (i < text.size() && (text[i] == '-' || text[i] == '+')) neg = text[i++] == '-';
          e = std::stoi(read_uint());
          if (neg) e = -e;
        }
        exps[v] += e;
      } else {
        throw fail(std::string("unexpected character '") + text[i] + "'");
      }
      any_factor = true;
      needs_factor = false;
    }
    if (needs_factor) throw fail("expected a factor after '*'");
    if (!has_number && !any_factor) throw fail("empty term");
    int q = static_cast<int>(idx.size());
    if (degree < 0) {
      degree = q;
      out = with_degree(std::move(out), q);
    } else if (q != degree) {
      throw fail("terms of different form degree");
    }
    out += AlgebraicForm::monomial(n, exps, idx, sign * coef);
  }
  return out;
}

}  // namespace cohom
