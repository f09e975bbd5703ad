#pragma once

#include <string>
#include <vector>

#include "cohom/linalg.hpp"

namespace cohom {

/// Bounded cochain complex K^lo -> ... -> K^hi. Spaces outside [lo, hi] are zero.
class CochainComplex {
 public:
  CochainComplex() = default;

  /// diffs[i] is d_{lo+i}: K^{lo+i} -> K^{lo+i+1}; there are hi - lo of them.
  CochainComplex(int lo, std::vector<LabeledSpace> spaces, std::vector<Mat> diffs)
      : lo_(lo), spaces_(std::move(spaces)), diffs_(std::move(diffs)) {
    if (spaces_.empty()) throw Error(ErrorKind::MalformedInput, "complex needs at least one degree");
    if (diffs_.size() + 1 != spaces_.size())
      throw Error(ErrorKind::MalformedInput, "complex with " + std::to_string(spaces_.size()) + " degrees needs " +
                                                 std::to_string(spaces_.size() - 1) + " differentials");
    for (std::size_t i = 0; i < diffs_.size(); ++i)
      if (diffs_[i].rows() != spaces_[i + 1].dim() || diffs_[i].cols() != spaces_[i].dim())
        throw Error(ErrorKind::MalformedInput, "d_" + std::to_string(lo_ + static_cast<int>(i)) +
                                                   " has shape " + std::to_string(diffs_[i].rows()) + "x" +
                                                   std::to_string(diffs_[i].cols()) + ", expected " +
                                                   std::to_string(spaces_[i + 1].dim()) + "x" +
                                                   std::to_string(spaces_[i].dim()));
  }

  /// Complex with indexed labels "K^k[i]".
  static CochainComplex from_dims(int lo, const std::vector<std::size_t>& dims, std::vector<Mat> diffs) {
    std::vector<LabeledSpace> sp;
    for (std::size_t i = 0; i < dims.size(); ++i) {
      int k = lo + static_cast<int>(i);
      sp.push_back(LabeledSpace::indexed("K^" + std::to_string(k), {k}, dims[i]));
    }
    return {lo, std::move(sp), std::move(diffs)};
  }

  int lo() const noexcept { return lo_; }
  int hi() const noexcept { return lo_ + static_cast<int>(spaces_.size()) - 1; }

  bool in_range(int k) const noexcept { return k >= lo() && k <= hi(); }

  LabeledSpace space(int k) const { return in_range(k) ? spaces_[k - lo_] : LabeledSpace{}; }

  std::size_t dim(int k) const { return in_range(k) ? spaces_[k - lo_].dim() : 0; }

  /// d_k: K^k -> K^{k+1}, the zero map outside the stored range.
  LinearMap diff(int k) const {
    if (k >= lo() && k < hi()) return {spaces_[k - lo_], spaces_[k - lo_ + 1], diffs_[k - lo_]};
    return LinearMap::zero(space(k), space(k + 1));
  }

 private:
  int lo_ = 0;
  std::vector<LabeledSpace> spaces_;
  std::vector<Mat> diffs_;
};

/// Throws NotAComplex naming the first degree k with d_{k+1} d_k != 0.
inline void validate(const CochainComplex& c) {
  for (int k = c.lo(); k + 1 < c.hi(); ++k) {
    if (!(c.diff(k + 1).matrix * c.diff(k).matrix).is_zero())
      throw Error(ErrorKind::NotAComplex, "d_" + std::to_string(k + 1) + " o d_" + std::to_string(k) +
                                               " != 0 (degree " + std::to_string(k) + ")");
  }
}

struct CohomologyDegree {
  int degree = 0;
  std::size_t dim = 0;
  /// Cocycles in K^k whose classes form a basis of h^k.
  Subspace representatives;
  /// Coordinates of a cocycle's class with respect to `representatives`.
  LinearMap classify;
};

struct CohomologyReport {
  int lo = 0;
  std::vector<CohomologyDegree> degrees;

  std::size_t dim(int k) const {
    int i = k - lo;
    return (i >= 0 && i < static_cast<int>(degrees.size())) ? degrees[i].dim : 0;
  }

  std::vector<std::size_t> dims() const {
    std::vector<std::size_t> d;
    for (const auto& x : degrees) d.push_back(x.dim);
    return d;
  }
};

inline CohomologyDegree cohomology_at(const CochainComplex& c, int k) {
  auto z = kernel_basis(c.diff(k));
  auto bd = image_basis(c.diff(k - 1));
  auto sq = subquotient(z, bd, "h^" + std::to_string(k));
  return {k, sq.space.dim(), Subspace{c.space(k), sq.section.matrix}, sq.projection};
}

inline CohomologyReport cohomology(const CochainComplex& c) {
  validate(c);
  CohomologyReport r;
  r.lo = c.lo();
  for (int k = c.lo(); k <= c.hi(); ++k) r.degrees.push_back(cohomology_at(c, k));
  return r;
}

/// Degreewise direct sum with block-diagonal differentials over the union of ranges.
inline CochainComplex direct_sum(const CochainComplex& a, const CochainComplex& b) {
  const int lo = std::min(a.lo(), b.lo());
  const int hi = std::max(a.hi(), b.hi());
  std::vector<LabeledSpace> spaces;
  std::vector<Mat> diffs;
  auto tag = [](const LabeledSpace& s, int which) {
    std::vector<Label> ls;
    for (const auto& l : s.labels()) {
      auto key = l.key;
      key.insert(key.begin(), which);
      ls.push_back({std::move(key), (which == 0 ? "a:" : "b:") + l.text});
    }
    return LabeledSpace(std::move(ls));
  };
  for (int k = lo; k <= hi; ++k) {
    spaces.push_back(tag(a.space(k), 0) + tag(b.space(k), 1));
    if (k < hi) diffs.push_back(block_diagonal(a.diff(k).matrix, b.diff(k).matrix));
  }
  return {lo, std::move(spaces), std::move(diffs)};
}

/// Σ (-1)^k dim K^k.
inline long euler_characteristic(const CochainComplex& c) {
  long chi = 0;
  for (int k = c.lo(); k <= c.hi(); ++k) chi += ((k % 2 == 0) ? 1 : -1) * static_cast<long>(c.dim(k));
  return chi;
}

}  // namespace cohom
