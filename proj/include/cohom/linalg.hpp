#pragma once

#include <algorithm>
#include <compare>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cohom/matrix.hpp"
#include "cohom/rational.hpp"

namespace cohom {

using Mat = Matrix<Rational>;
using Vec = std::vector<Rational>;

/// Basis-element label. `key` orders labels canonically; `text` is for display.
struct Label {
  std::vector<int> key;
  std::string text;

  auto operator<=>(const Label&) const = default;
  bool operator==(const Label&) const = default;
};

class LabeledSpace {
 public:
  LabeledSpace() = default;

  explicit LabeledSpace(std::vector<Label> labels) : labels_(std::move(labels)) {
    std::set<Label> seen(labels_.begin(), labels_.end());
    if (seen.size() != labels_.size())
      throw Error(ErrorKind::InvariantViolation, "duplicate basis label in space");
  }

  /// Space spanned by `dim` labels "<name>[i]" with key prefix + {i}.
  static LabeledSpace indexed(const std::string& name, std::vector<int> key_prefix, std::size_t dim) {
    std::vector<Label> ls;
    ls.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      auto key = key_prefix;
      key.push_back(static_cast<int>(i));
      ls.push_back({std::move(key), name + "[" + std::to_string(i) + "]"});
    }
    return LabeledSpace(std::move(ls));
  }

  std::size_t dim() const noexcept { return labels_.size(); }
  const std::vector<Label>& labels() const noexcept { return labels_; }
  const Label& label(std::size_t i) const { return labels_.at(i); }

  friend bool operator==(const LabeledSpace&, const LabeledSpace&) = default;

  /// Concatenation of bases; labels must stay distinct.
  friend LabeledSpace operator+(const LabeledSpace& a, const LabeledSpace& b) {
    auto ls = a.labels_;
    ls.insert(ls.end(), b.labels_.begin(), b.labels_.end());
    return LabeledSpace(std::move(ls));
  }

 private:
  std::vector<Label> labels_;
};

struct LinearMap {
  LabeledSpace domain;
  LabeledSpace codomain;
  Mat matrix;  // codomain.dim() x domain.dim()

  LinearMap() = default;
  LinearMap(LabeledSpace dom, LabeledSpace cod, Mat m)
      : domain(std::move(dom)), codomain(std::move(cod)), matrix(std::move(m)) {
    if (matrix.rows() != codomain.dim() || matrix.cols() != domain.dim())
      throw Error(ErrorKind::MalformedInput,
                  "map shape " + std::to_string(matrix.rows()) + "x" + std::to_string(matrix.cols()) +
                      " does not match codomain x domain = " + std::to_string(codomain.dim()) + "x" +
                      std::to_string(domain.dim()));
  }

  static LinearMap zero(LabeledSpace dom, LabeledSpace cod) {
    Mat m(cod.dim(), dom.dim());
    return {std::move(dom), std::move(cod), std::move(m)};
  }

  static LinearMap identity(const LabeledSpace& s) { return {s, s, Mat::identity(s.dim())}; }
};

/// Composition a∘b (apply b first).
inline LinearMap compose(const LinearMap& a, const LinearMap& b) {
  if (a.domain.dim() != b.codomain.dim()) throw Error(ErrorKind::InvariantViolation, "composition shape mismatch");
  return {b.domain, a.codomain, a.matrix * b.matrix};
}

/// A subspace of `ambient`, given by linearly independent basis columns.
struct Subspace {
  LabeledSpace ambient;
  Mat basis;  // ambient.dim() x dim()

  std::size_t dim() const noexcept { return basis.cols(); }

  static Subspace zero(const LabeledSpace& amb) { return {amb, Mat(amb.dim(), 0)}; }
  static Subspace full(const LabeledSpace& amb) { return {amb, Mat::identity(amb.dim())}; }

  /// Span of arbitrary columns, reduced to an independent subset.
  static Subspace span(const LabeledSpace& amb, const Mat& columns) {
    if (columns.rows() != amb.dim()) throw Error(ErrorKind::AmbientMismatch, "span: column length mismatch");
    return {amb, column_space(columns)};
  }
};

inline std::size_t rank(const LinearMap& m) { return matrix_rank(m.matrix); }

inline Subspace kernel_basis(const LinearMap& m) { return {m.domain, null_space(m.matrix)}; }

inline Subspace image_basis(const LinearMap& m) { return {m.codomain, column_space(m.matrix)}; }

inline bool contains(const Subspace& z, const Subspace& b) {
  if (!(z.ambient == b.ambient)) throw Error(ErrorKind::AmbientMismatch, "subspaces live in different spaces");
  if (b.dim() == 0) return true;
  return matrix_rank(hstack(z.basis, b.basis)) == z.dim();
}

inline Subspace sum(const Subspace& a, const Subspace& b) {
  if (!(a.ambient == b.ambient)) throw Error(ErrorKind::AmbientMismatch, "subspaces live in different spaces");
  return Subspace::span(a.ambient, hstack(a.basis, b.basis));
}

/// z / b with explicit projection and section.
struct Subquotient {
  LabeledSpace space;
  /// space.dim() x ambient.dim(); exact on vectors of z, kills b.
  LinearMap projection;
  /// ambient.dim() x space.dim(); each column is a representative in z.
  LinearMap section;
};

/// Realizes z/b. The complement of b in z consists of the columns of z that
/// raise the rank when appended, scanned left to right.
inline Subquotient subquotient(const Subspace& z, const Subspace& b, const std::string& name = "class") {
  if (!(z.ambient == b.ambient)) throw Error(ErrorKind::AmbientMismatch, "subquotient: different ambient spaces");
  if (!contains(z, b)) throw Error(ErrorKind::ContainmentViolated, "subquotient: b is not contained in z");
  const std::size_t nb = b.dim();
  auto e = row_reduce(hstack(b.basis, z.basis));
  std::vector<std::size_t> extra;
  for (auto p : e.pivots)
    if (p >= nb) extra.push_back(p - nb);
  Mat reps = z.basis.select_columns(extra);
  auto q = LabeledSpace::indexed(name, {}, extra.size());

  // Left inverse of [b | reps] via an invertible square row selection.
  Mat full = hstack(b.basis, reps);
  auto rows = row_reduce(full.transpose()).pivots;
  auto inv = inverse(full.select_rows(rows));
  if (!inv) throw Error(ErrorKind::InvariantViolation, "subquotient: basis not independent");
  Mat proj(extra.size(), z.ambient.dim());
  for (std::size_t i = 0; i < extra.size(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j) proj(i, rows[j]) = (*inv)(nb + i, j);
  return {q, LinearMap(z.ambient, q, std::move(proj)), LinearMap(q, z.ambient, std::move(reps))};
}

/// x with m x = target, or nullopt. Free variables are zero.
inline std::optional<Vec> solve(const LinearMap& m, const Vec& target) { return solve_linear(m.matrix, target); }

}  // namespace cohom
