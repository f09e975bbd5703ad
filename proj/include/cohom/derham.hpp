#pragma once

#include <map>
#include <string>
#include <vector>

#include "cohom/complex.hpp"
#include "cohom/forms.hpp"

namespace cohom {

/// Algebraic model Q[z_1^{±1}, ..., z_k^{±1}, z_{k+1}, ..., z_n] of the
/// complement of z_1...z_k = 0 in n-space. The window bounds multidegrees:
/// [-W, W] along inverted axes and [0, W] along the others.
struct TorusSpec {
  int n = 1;
  int k = 1;
  int window = 4;

  void validate() const {
    if (n < 0 || k < 0 || k > n)
      throw Error(ErrorKind::ParameterOutOfRange, "need 0 <= k <= n, got k=" + std::to_string(k) + ", n=" + std::to_string(n));
    if (window < 1) throw Error(ErrorKind::ParameterOutOfRange, "window must be >= 1");
  }

  bool inverted(int i) const noexcept { return i < k; }
  int lower(int i) const noexcept { return inverted(i) ? -window : 0; }
  int upper(int) const noexcept { return window; }

  bool in_window(const std::vector<int>& m) const {
    for (int i = 0; i < n; ++i)
      if (m[i] < lower(i) || m[i] > upper(i)) return false;
    return true;
  }

  TorusSpec with_window(int w) const { return {n, k, w}; }
};

using Subset = std::vector<int>;

/// All q-subsets of {0..n-1} in lexicographic order.
inline std::vector<Subset> subsets_of_size(int n, int q) {
  std::vector<Subset> out;
  if (q < 0 || q > n) return out;
  Subset cur(q);
  for (int i = 0; i < q; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    int i = q - 1;
    while (i >= 0 && cur[i] == n - q + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < q; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

inline std::string subset_name(const Subset& s) {
  std::string t = "{";
  for (std::size_t i = 0; i < s.size(); ++i) t += (i ? "," : "") + std::to_string(s[i] + 1);
  return t + "}";
}

/// Rejects negative exponents on non-inverted axes.
inline void check_poles(const AlgebraicForm& f, const TorusSpec& spec) {
  if (f.n() != spec.n) throw Error(ErrorKind::VariableCountMismatch, "form has " + std::to_string(f.n()) + " variables, spec has " + std::to_string(spec.n));
  for (const auto& [key, c] : f.terms())
    for (int i = spec.k; i < spec.n; ++i)
      if (key.exps[i] < 0)
        throw Error(ErrorKind::PoleOnNonInvertedAxis, "term " + term_to_string(key, c) + " has a pole along z" + std::to_string(i + 1));
}

namespace detail {

/// Basis z^{m - e_I} dz_I of q-forms of multidegree m, I in lexicographic order.
inline std::vector<FormKey> multidegree_basis(const TorusSpec& spec, const std::vector<int>& m, int q) {
  std::vector<FormKey> out;
  for (const auto& I : subsets_of_size(spec.n, q)) {
    FormKey key{m, I};
    bool ok = true;
    for (int i : I) --key.exps[i];
    for (int i = spec.k; i < spec.n; ++i)
      if (key.exps[i] < 0) ok = false;
    if (ok) out.push_back(std::move(key));
  }
  return out;
}

/// Matrix of d from degree-q to degree-(q+1) multidegree bases.
inline Mat derivative_matrix(int n, const std::vector<FormKey>& from, const std::vector<FormKey>& to) {
  Mat m(to.size(), from.size());
  std::map<FormKey, std::size_t> row;
  for (std::size_t i = 0; i < to.size(); ++i) row[to[i]] = i;
  for (std::size_t j = 0; j < from.size(); ++j) {
    auto dw = exterior_derivative(AlgebraicForm::monomial(n, from[j].exps, from[j].dI));
    for (const auto& [key, c] : dw.terms()) m(row.at(key), j) = c;
  }
  return m;
}

inline void for_each_multidegree(const TorusSpec& spec, const auto& fn) {
  std::vector<int> m(spec.n);
  for (int i = 0; i < spec.n; ++i) m[i] = spec.lower(i);
  while (true) {
    fn(m);
    int i = spec.n - 1;
    while (i >= 0 && m[i] == spec.upper(i)) {
      m[i] = spec.lower(i);
      --i;
    }
    if (i < 0) break;
    ++m[i];
  }
}

inline bool is_zero_vector(const std::vector<int>& m) {
  for (int x : m)
    if (x != 0) return false;
  return true;
}

}  // namespace detail

/// The finite complex of all forms of multidegree m, in degrees 0..n.
inline CochainComplex multidegree_complex(const TorusSpec& spec, const std::vector<int>& m) {
  std::vector<std::vector<FormKey>> bases;
  std::vector<LabeledSpace> spaces;
  std::vector<Mat> diffs;
  for (int q = 0; q <= spec.n; ++q) {
    bases.push_back(detail::multidegree_basis(spec, m, q));
    std::vector<Label> ls;
    for (const auto& key : bases.back()) {
      std::vector<int> lk = key.exps;
      lk.insert(lk.end(), key.dI.begin(), key.dI.end());
      ls.push_back({std::move(lk), term_to_string(key, 1)});
    }
    spaces.emplace_back(std::move(ls));
  }
  for (int q = 0; q < spec.n; ++q) diffs.push_back(detail::derivative_matrix(spec.n, bases[q], bases[q + 1]));
  return {0, std::move(spaces), std::move(diffs)};
}

/// One finite complex per multidegree in the window; the truncated de Rham
/// complex is their direct sum.
inline std::map<std::vector<int>, CochainComplex> multidegree_split(const TorusSpec& spec) {
  spec.validate();
  std::map<std::vector<int>, CochainComplex> out;
  detail::for_each_multidegree(spec, [&](const std::vector<int>& m) { out.emplace(m, multidegree_complex(spec, m)); });
  return out;
}

/// Coefficients on the classes [ω_I], |I| = q, I ⊆ {0..k-1} in lexicographic order.
struct LogClassVector {
  int k = 0;
  int q = 0;
  std::vector<Subset> subsets;
  std::vector<Rational> coeffs;

  static LogClassVector zero(int k, int q) {
    LogClassVector v{k, q, subsets_of_size(k, q), {}};
    v.coeffs.assign(v.subsets.size(), Rational(0));
    return v;
  }

  Rational coefficient(const Subset& I) const {
    for (std::size_t i = 0; i < subsets.size(); ++i)
      if (subsets[i] == I) return coeffs[i];
    return 0;
  }

  void add(const Subset& I, const Rational& c) {
    for (std::size_t i = 0; i < subsets.size(); ++i)
      if (subsets[i] == I) {
        coeffs[i] += c;
        return;
      }
    throw Error(ErrorKind::InvariantViolation, "subset " + subset_name(I) + " not of size " + std::to_string(q));
  }

  bool is_zero() const {
    for (const auto& c : coeffs)
      if (c != 0) return false;
    return true;
  }

  /// Σ c_I ω_I
  AlgebraicForm to_form(int n) const {
    AlgebraicForm f(n, q);
    for (std::size_t i = 0; i < subsets.size(); ++i) f += coeffs[i] * AlgebraicForm::log_form(n, subsets[i]);
    return f;
  }

  friend bool operator==(const LogClassVector&, const LogClassVector&) = default;
};

struct DeRhamCohomology {
  std::vector<std::size_t> dims;               // per form degree q = 0..n
  std::vector<std::vector<Subset>> log_basis;  // ω_I representing a basis of h^q
  std::size_t multidegrees_checked = 0;
  std::vector<std::vector<int>> contributing;  // multidegrees with nonzero cohomology
};

/// Cohomology of the truncated algebraic de Rham complex. Every multidegree
/// other than 0 must be acyclic; the log forms ω_I must give a basis at 0.
inline DeRhamCohomology derham_cohomology(const TorusSpec& spec) {
  spec.validate();
  DeRhamCohomology out;
  out.dims.assign(spec.n + 1, 0);
  CohomologyReport at_zero;
  detail::for_each_multidegree(spec, [&](const std::vector<int>& m) {
    auto rep = cohomology(multidegree_complex(spec, m));
    ++out.multidegrees_checked;
    bool nonzero = false;
    for (int q = 0; q <= spec.n; ++q) {
      out.dims[q] += rep.dim(q);
      nonzero = nonzero || rep.dim(q) > 0;
    }
    if (nonzero) out.contributing.push_back(m);
    if (detail::is_zero_vector(m)) {
      at_zero = std::move(rep);
    } else if (nonzero) {
      std::string s;
      for (int x : m) s += (s.empty() ? "" : ",") + std::to_string(x);
      throw Error(ErrorKind::WindowExhausted, "multidegree (" + s + ") carries cohomology");
    }
  });
  const std::vector<int> zero(spec.n, 0);
  for (int q = 0; q <= spec.n; ++q) {
    auto basis = detail::multidegree_basis(spec, zero, q);
    auto subs = subsets_of_size(spec.k, q);
    Mat coords(basis.size(), subs.size());
    for (std::size_t j = 0; j < subs.size(); ++j) {
      auto w = AlgebraicForm::log_form(spec.n, subs[j]);
      for (std::size_t i = 0; i < basis.size(); ++i) coords(i, j) = w.coefficient(basis[i]);
    }
    const auto& deg = at_zero.degrees[q];
    if (!(multidegree_complex(spec, zero).diff(q).matrix * coords).is_zero())
      throw Error(ErrorKind::InvariantViolation, "log form of degree " + std::to_string(q) + " is not closed");
    if (matrix_rank(deg.classify.matrix * coords) != deg.dim || subs.size() != deg.dim)
      throw Error(ErrorKind::InvariantViolation, "log forms of degree " + std::to_string(q) + " do not form a basis of h^" + std::to_string(q));
    out.log_basis.push_back(std::move(subs));
  }
  return out;
}

struct PoleReduction {
  AlgebraicForm phi0;    // closed, no negative powers of z_axis
  AlgebraicForm alpha1;  // closed, free of z_axis and dz_axis
  AlgebraicForm theta;   // φ = φ0 + (dz_axis/z_axis) ^ α1 + dθ
};

/// One step of pole reduction along an inverted axis. Splits
/// φ = dz ^ α + β, expands α = Σ α_j z^{-j}, β = Σ β_j z^{-j} in z = z_axis
/// and sets θ = -Σ_{j>=2} α_j z^{1-j} / (j-1).
inline PoleReduction pole_reduce(const AlgebraicForm& phi, const TorusSpec& spec, int axis) {
  spec.validate();
  check_poles(phi, spec);
  if (axis < 0 || axis >= spec.k)
    throw Error(ErrorKind::PoleOnNonInvertedAxis, "axis z" + std::to_string(axis + 1) + " is not inverted");
  if (!is_closed(phi)) throw Error(ErrorKind::NotClosed, "form " + phi.to_string() + " is not closed");
  const int n = phi.n();
  const int q = phi.degree();

  PoleReduction out{AlgebraicForm(n, q), AlgebraicForm(n, q - 1), AlgebraicForm(n, q - 1)};
  std::map<int, AlgebraicForm> alpha, beta;  // Laurent coefficients by pole order j >= 1
  for (const auto& [key, c] : phi.terms()) {
    const int a = key.exps[axis];
    if (a >= 0) {
      out.phi0.add_term(key, c);
      continue;
    }
    const int j = -a;
    FormKey stripped = key;
    stripped.exps[axis] = 0;
    auto pos = std::find(key.dI.begin(), key.dI.end(), axis);
    if (pos == key.dI.end()) {
      beta.try_emplace(j, n, q).first->second.add_term(stripped, c);
    } else {
      // dz_I = (-1)^{position} dz_axis ^ dz_{I \ axis}
      auto offset = pos - key.dI.begin();
      stripped.dI.erase(stripped.dI.begin() + offset);
      alpha.try_emplace(j, n, q - 1).first->second.add_term(stripped, offset % 2 == 0 ? c : Rational(-c));
    }
  }
  if (alpha.count(1)) out.alpha1 = alpha.at(1);
  std::vector<int> e(n, 0);
  for (const auto& [j, aj] : alpha) {
    if (j < 2) continue;
    e[axis] = 1 - j;
    out.theta -= Rational(1, j - 1) * wedge(AlgebraicForm::monomial(n, e, {}), aj);
  }

  // closedness relations: dα_1 = 0, dα_{j+1} + j β_j = 0, dβ_j = 0
  auto get = [n](const std::map<int, AlgebraicForm>& m, int j, int deg) {
    auto it = m.find(j);
    return it == m.end() ? AlgebraicForm(n, deg) : it->second;
  };
  int r = 0;
  for (const auto& [j, _] : alpha) r = std::max(r, j);
  for (const auto& [j, _] : beta) r = std::max(r, j);
  if (!is_closed(out.alpha1))
    throw Error(ErrorKind::InvariantViolation, "pole reduction: dα_1 != 0");
  for (int j = 1; j <= r; ++j) {
    auto bj = get(beta, j, q);
    auto rel = exterior_derivative(get(alpha, j + 1, q - 1)) + Rational(j) * bj;
    if (!rel.is_zero())
      throw Error(ErrorKind::InvariantViolation, "pole reduction: dα_" + std::to_string(j + 1) + " + " + std::to_string(j) + "β_" + std::to_string(j) + " != 0");
    if (!is_closed(bj)) throw Error(ErrorKind::InvariantViolation, "pole reduction: dβ_" + std::to_string(j) + " != 0");
  }
  if (!is_closed(out.phi0)) throw Error(ErrorKind::InvariantViolation, "pole reduction: φ0 is not closed");
  auto rebuilt = out.phi0 + wedge(AlgebraicForm::log_generator(n, axis), out.alpha1) + exterior_derivative(out.theta);
  if (!(rebuilt == phi)) throw Error(ErrorKind::InvariantViolation, "pole reduction identity fails");
  return out;
}

struct LogRepresentative {
  LogClassVector classes;
  AlgebraicForm witness;  // ξ with φ - Σ c_I ω_I = dξ
  int window_used = 0;
};

namespace detail {

/// Finds ξ with dξ = rho, one multidegree at a time. Returns nullopt when a
/// multidegree of rho lies outside the window.
inline std::optional<AlgebraicForm> exactness_witness(const AlgebraicForm& rho, const TorusSpec& spec) {
  const int n = spec.n;
  const int q = rho.degree();
  AlgebraicForm xi(n, q - 1);
  if (rho.is_zero()) return xi;
  if (q == 0) throw Error(ErrorKind::NotExact, "nonzero 0-form " + rho.to_string() + " is not exact");
  std::map<std::vector<int>, std::vector<std::pair<FormKey, Rational>>> parts;
  for (const auto& [key, c] : rho.terms()) parts[multidegree(key)].push_back({key, c});
  for (const auto& [m, _] : parts)
    if (!spec.in_window(m)) return std::nullopt;
  for (const auto& [m, terms] : parts) {
    auto from = multidegree_basis(spec, m, q - 1);
    auto to = multidegree_basis(spec, m, q);
    Vec target(to.size(), Rational(0));
    for (const auto& [key, c] : terms) {
      auto it = std::find(to.begin(), to.end(), key);
      if (it == to.end()) throw Error(ErrorKind::InvariantViolation, "term outside its multidegree basis");
      target[it - to.begin()] = c;
    }
    auto x = solve_linear(derivative_matrix(n, from, to), target);
    if (!x) throw Error(ErrorKind::NotExact, "residual is not exact in its multidegree component");
    for (std::size_t i = 0; i < from.size(); ++i) xi.add_term(from[i], (*x)[i]);
  }
  return xi;
}

}  // namespace detail

/// Expresses the class of a closed form in the log basis by reducing poles
/// axis by axis, then certifies the remainder exact by a linear solve. The
/// window is enlarged by 2 up to three times before giving up.
inline LogRepresentative log_representative(const AlgebraicForm& phi, const TorusSpec& spec) {
  spec.validate();
  check_poles(phi, spec);
  if (!is_closed(phi)) throw Error(ErrorKind::NotClosed, "form " + phi.to_string() + " is not closed");
  const int n = spec.n;
  const int q = phi.degree();

  // phi ~ Σ_I ω_I ^ parts[I]
  std::map<Subset, AlgebraicForm> parts{{Subset{}, phi}};
  for (int axis = 0; axis < spec.k; ++axis) {
    std::map<Subset, AlgebraicForm> next;
    for (const auto& [I, psi] : parts) {
      if (psi.is_zero()) continue;
      auto red = pole_reduce(psi, spec, axis);
      next.try_emplace(I, n, psi.degree()).first->second += red.phi0;
      if (!red.alpha1.is_zero()) {
        Subset J = I;
        J.push_back(axis);
        next.try_emplace(J, n, psi.degree() - 1).first->second += red.alpha1;
      }
    }
    parts = std::move(next);
  }
  LogRepresentative out{LogClassVector::zero(spec.k, q), AlgebraicForm(n, q - 1), spec.window};
  const std::vector<int> origin(n, 0);
  for (const auto& [I, psi] : parts) {
    if (static_cast<int>(I.size()) != q || psi.is_zero()) continue;
    // a closed polynomial 0-form is a constant
    out.classes.add(I, psi.coefficient(FormKey{origin, {}}));
  }
  auto rho = phi - out.classes.to_form(n);
  for (int attempt = 0; attempt <= 3; ++attempt) {
    auto s = spec.with_window(spec.window + 2 * attempt);
    if (auto xi = detail::exactness_witness(rho, s)) {
      out.witness = std::move(*xi);
      out.window_used = s.window;
      if (!(exterior_derivative(out.witness) == rho))
        throw Error(ErrorKind::InvariantViolation, "exactness witness does not differentiate to the residual");
      return out;
    }
  }
  throw Error(ErrorKind::WindowExhausted,
              "residual does not fit in window " + std::to_string(spec.window + 6) + " after enlargement");
}

struct CupTable {
  std::vector<Subset> basis;                         // all subsets of {0..k-1}, by size then lex
  std::vector<std::vector<LogClassVector>> product;  // product[i][j] = [ω_Bi]·[ω_Bj]
};

inline CupTable cup_table(const TorusSpec& spec) {
  spec.validate();
  CupTable t;
  for (int q = 0; q <= spec.k; ++q)
    for (auto& s : subsets_of_size(spec.k, q)) t.basis.push_back(std::move(s));
  for (const auto& I : t.basis) {
    std::vector<LogClassVector> row;
    for (const auto& J : t.basis) {
      auto w = wedge(AlgebraicForm::log_form(spec.n, I), AlgebraicForm::log_form(spec.n, J));
      w = with_degree(std::move(w), static_cast<int>(I.size() + J.size()));
      row.push_back(log_representative(w, spec).classes);
    }
    t.product.push_back(std::move(row));
  }
  return t;
}

struct PoleFiltration {
  std::vector<std::vector<std::size_t>> dims;  // per level n = 0..n_max, per form degree
  int stabilization_level = 0;
  std::vector<std::size_t> limit;  // dims of the whole window
};

namespace detail {

/// Cohomology dims of the largest subcomplex of c lying in the coordinate
/// subspace `allowed` (allowed[q][i] says whether basis vector i of degree q
/// may occur).
inline std::vector<std::size_t> largest_subcomplex_dims(const CochainComplex& c,
                                                        const std::vector<std::vector<bool>>& allowed) {
  const int top = c.hi();
  std::vector<Mat> sub;  // basis of T^q in ambient coordinates
  for (int q = 0; q <= top; ++q) {
    std::vector<std::size_t> cols, bad_rows;
    for (std::size_t i = 0; i < c.dim(q); ++i)
      if (allowed[q][i]) cols.push_back(i);
    for (std::size_t i = 0; i < c.dim(q + 1); ++i)
      if (q + 1 > top || !allowed[q + 1][i]) bad_rows.push_back(i);
    Mat d = c.diff(q).matrix;
    Mat ker = null_space(d.select_rows(bad_rows).select_columns(cols));
    Mat emb(c.dim(q), ker.cols());
    for (std::size_t j = 0; j < ker.cols(); ++j)
      for (std::size_t i = 0; i < cols.size(); ++i) emb(cols[i], j) = ker(i, j);
    sub.push_back(std::move(emb));
  }
  std::vector<std::size_t> ranks(top + 1, 0), dims(top + 1, 0);
  for (int q = 0; q <= top; ++q) ranks[q] = matrix_rank(c.diff(q).matrix * sub[q]);
  for (int q = 0; q <= top; ++q) dims[q] = sub[q].cols() - ranks[q] - (q > 0 ? ranks[q - 1] : 0);
  return dims;
}

}  // namespace detail

/// Level n is the largest subcomplex of forms whose coefficients have pole
/// order at most n along every inverted axis.
inline PoleFiltration pole_filtration_dims(const TorusSpec& spec, int n_max) {
  spec.validate();
  if (n_max < 0) throw Error(ErrorKind::ParameterOutOfRange, "n_max must be >= 0");
  PoleFiltration out;
  out.dims.assign(n_max + 1, std::vector<std::size_t>(spec.n + 1, 0));
  out.limit.assign(spec.n + 1, 0);
  detail::for_each_multidegree(spec, [&](const std::vector<int>& m) {
    auto c = multidegree_complex(spec, m);
    auto full = cohomology(c).dims();
    for (int q = 0; q <= spec.n; ++q) out.limit[q] += full[q];
    for (int level = 0; level <= n_max; ++level) {
      std::vector<std::vector<bool>> allowed;
      for (int q = 0; q <= spec.n; ++q) {
        std::vector<bool> a;
        for (const auto& key : detail::multidegree_basis(spec, m, q)) {
          bool ok = true;
          for (int i = 0; i < spec.k; ++i)
            if (key.exps[i] < -level) ok = false;
          a.push_back(ok);
        }
        allowed.push_back(std::move(a));
      }
      auto d = detail::largest_subcomplex_dims(c, allowed);
      for (int q = 0; q <= spec.n; ++q) out.dims[level][q] += d[q];
    }
  });
  out.stabilization_level = n_max;
  for (int level = n_max; level >= 0; --level) {
    if (out.dims[level] != out.dims[n_max]) break;
    out.stabilization_level = level;
  }
  return out;
}

}  // namespace cohom
