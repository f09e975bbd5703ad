#pragma once

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "cohom/complex.hpp"

namespace cohom {

inline constexpr int kMaxGridBound = 16;

inline int sign_pow(int e) { return (e % 2 == 0) ? 1 : -1; }

/// Bounded first-quadrant double complex with commuting differentials.
/// p indexes columns (horizontal differential δ), q indexes rows (vertical d).
class DoubleComplex {
 public:
  DoubleComplex() = default;

  /// cells[p][q]; horiz[p][q]: K^{p,q} -> K^{p+1,q} for p < P;
  /// vert[p][q]: K^{p,q} -> K^{p,q+1} for q < Q.
  DoubleComplex(std::vector<std::vector<LabeledSpace>> cells, std::vector<std::vector<Mat>> horiz,
                std::vector<std::vector<Mat>> vert)
      : cells_(std::move(cells)), horiz_(std::move(horiz)), vert_(std::move(vert)) {
    if (cells_.empty() || cells_[0].empty()) throw Error(ErrorKind::MalformedInput, "double complex has no cells");
    P_ = static_cast<int>(cells_.size()) - 1;
    Q_ = static_cast<int>(cells_[0].size()) - 1;
    if (P_ > kMaxGridBound || Q_ > kMaxGridBound)
      throw Error(ErrorKind::GridTooLarge, "bounds P=" + std::to_string(P_) + ", Q=" + std::to_string(Q_) +
                                               " exceed " + std::to_string(kMaxGridBound));
    for (const auto& col : cells_)
      if (static_cast<int>(col.size()) != Q_ + 1) throw Error(ErrorKind::MalformedInput, "ragged cell grid");
    if (static_cast<int>(horiz_.size()) != P_) throw Error(ErrorKind::MalformedInput, "need P columns of horiz maps");
    if (static_cast<int>(vert_.size()) != P_ + 1) throw Error(ErrorKind::MalformedInput, "need P+1 columns of vert maps");
    for (int p = 0; p < P_; ++p) {
      if (static_cast<int>(horiz_[p].size()) != Q_ + 1) throw Error(ErrorKind::MalformedInput, "horiz column size");
      for (int q = 0; q <= Q_; ++q) check_shape(horiz_[p][q], cell(p + 1, q), cell(p, q), "horiz", p, q);
    }
    for (int p = 0; p <= P_; ++p) {
      if (static_cast<int>(vert_[p].size()) != Q_) throw Error(ErrorKind::MalformedInput, "vert column size");
      for (int q = 0; q < Q_; ++q) check_shape(vert_[p][q], cell(p, q + 1), cell(p, q), "vert", p, q);
    }
    validate();
  }

  /// Cells labeled "K^{p,q}[i]" with key {p, q, i}.
  static DoubleComplex from_dims(const std::vector<std::vector<std::size_t>>& dims,
                                 std::vector<std::vector<Mat>> horiz, std::vector<std::vector<Mat>> vert) {
    std::vector<std::vector<LabeledSpace>> cells(dims.size());
    for (std::size_t p = 0; p < dims.size(); ++p)
      for (std::size_t q = 0; q < dims[p].size(); ++q)
        cells[p].push_back(LabeledSpace::indexed("K^{" + std::to_string(p) + "," + std::to_string(q) + "}",
                                                 {static_cast<int>(p), static_cast<int>(q)}, dims[p][q]));
    return {std::move(cells), std::move(horiz), std::move(vert)};
  }

  int P() const noexcept { return P_; }
  int Q() const noexcept { return Q_; }

  bool in_grid(int p, int q) const noexcept { return p >= 0 && p <= P_ && q >= 0 && q <= Q_; }

  LabeledSpace cell(int p, int q) const { return in_grid(p, q) ? cells_[p][q] : LabeledSpace{}; }
  std::size_t dim(int p, int q) const { return in_grid(p, q) ? cells_[p][q].dim() : 0; }

  /// δ^{p,q}; zero off the grid.
  Mat horiz(int p, int q) const {
    if (in_grid(p, q) && p < P_) return horiz_[p][q];
    return Mat(dim(p + 1, q), dim(p, q));
  }

  /// d^{p,q}; zero off the grid.
  Mat vert(int p, int q) const {
    if (in_grid(p, q) && q < Q_) return vert_[p][q];
    return Mat(dim(p, q + 1), dim(p, q));
  }

  /// The column p as a vertical cochain complex (d only).
  CochainComplex column(int p) const {
    std::vector<LabeledSpace> sp;
    std::vector<Mat> ds;
    for (int q = 0; q <= Q_; ++q) {
      sp.push_back(cell(p, q));
      if (q < Q_) ds.push_back(vert(p, q));
    }
    return {0, std::move(sp), std::move(ds)};
  }

  /// The row q as a horizontal cochain complex (δ only).
  CochainComplex row(int q) const {
    std::vector<LabeledSpace> sp;
    std::vector<Mat> ds;
    for (int p = 0; p <= P_; ++p) {
      sp.push_back(cell(p, q));
      if (p < P_) ds.push_back(horiz(p, q));
    }
    return {0, std::move(sp), std::move(ds)};
  }

 private:
  static void check_shape(const Mat& m, const LabeledSpace& to, const LabeledSpace& from, const char* what, int p,
                          int q) {
    if (m.rows() != to.dim() || m.cols() != from.dim())
      throw Error(ErrorKind::MalformedInput, std::string(what) + "[" + std::to_string(p) + "][" +
                                                 std::to_string(q) + "] has wrong shape");
  }

  void validate() const {
    auto where = [](int p, int q) { return " at cell (" + std::to_string(p) + "," + std::to_string(q) + ")"; };
    for (int p = 0; p <= P_; ++p)
      for (int q = 0; q <= Q_; ++q) {
        if (!(horiz(p + 1, q) * horiz(p, q)).is_zero())
          throw Error(ErrorKind::InvariantViolation, "horizontal differential does not square to zero" + where(p, q));
        if (!(vert(p, q + 1) * vert(p, q)).is_zero())
          throw Error(ErrorKind::InvariantViolation, "vertical differential does not square to zero" + where(p, q));
        if (!(vert(p + 1, q) * horiz(p, q) == horiz(p, q + 1) * vert(p, q)))
          throw Error(ErrorKind::InvariantViolation, "d and δ do not commute" + where(p, q));
      }
  }

  int P_ = 0;
  int Q_ = 0;
  std::vector<std::vector<LabeledSpace>> cells_;
  std::vector<std::vector<Mat>> horiz_;
  std::vector<std::vector<Mat>> vert_;
};

/// Position of cell (p, q) inside Tot^{p+q}: cells are stacked by ascending p.
struct TotLayout {
  int P = 0;
  int Q = 0;
  // offsets[n][p] = first coordinate of K^{p,n-p} in Tot^n
  std::vector<std::vector<std::size_t>> offsets;
  std::vector<std::size_t> dims;

  explicit TotLayout(const DoubleComplex& k) : P(k.P()), Q(k.Q()) {
    for (int n = 0; n <= P + Q; ++n) {
      std::vector<std::size_t> off(P + 1, 0);
      std::size_t acc = 0;
      for (int p = 0; p <= P; ++p) {
        off[p] = acc;
        acc += k.dim(p, n - p);
      }
      offsets.push_back(std::move(off));
      dims.push_back(acc);
    }
  }
};

/// Tot^n = ⊕_{p+q=n} K^{p,q} with D = δ + (-1)^p d.
inline CochainComplex total(const DoubleComplex& k) {
  TotLayout lay(k);
  const int N = k.P() + k.Q();
  std::vector<LabeledSpace> spaces;
  for (int n = 0; n <= N; ++n) {
    LabeledSpace s;
    for (int p = 0; p <= k.P(); ++p) s = s + k.cell(p, n - p);
    spaces.push_back(std::move(s));
  }
  std::vector<Mat> diffs;
  for (int n = 0; n < N; ++n) {
    Mat D(lay.dims[n + 1], lay.dims[n]);
    for (int p = 0; p <= k.P(); ++p) {
      int q = n - p;
      if (!k.in_grid(p, q) || k.dim(p, q) == 0) continue;
      if (p + 1 <= k.P()) D.set_block(lay.offsets[n + 1][p + 1], lay.offsets[n][p], k.horiz(p, q));
      if (q + 1 <= k.Q())
        D.set_block(lay.offsets[n + 1][p], lay.offsets[n][p], Rational(sign_pow(p)) * k.vert(p, q));
    }
    diffs.push_back(std::move(D));
  }
  CochainComplex tot(0, std::move(spaces), std::move(diffs));
  validate(tot);
  return tot;
}

/// Bounded triple complex with three pairwise commuting differentials of
/// degrees (1,0,0), (0,1,0), (0,0,1).
class TripleComplex {
 public:
  TripleComplex() = default;

  /// cells[p][q][r]; d1[p][q][r] defined for p < P (others ignored and
  /// treated as zero maps), likewise d2 for q < Q and d3 for r < R.
  TripleComplex(std::vector<std::vector<std::vector<LabeledSpace>>> cells,
                std::vector<std::vector<std::vector<Mat>>> d1, std::vector<std::vector<std::vector<Mat>>> d2,
                std::vector<std::vector<std::vector<Mat>>> d3)
      : cells_(std::move(cells)), d_{std::move(d1), std::move(d2), std::move(d3)} {
    if (cells_.empty() || cells_[0].empty() || cells_[0][0].empty())
      throw Error(ErrorKind::MalformedInput, "triple complex has no cells");
    bounds_ = {static_cast<int>(cells_.size()) - 1, static_cast<int>(cells_[0].size()) - 1,
               static_cast<int>(cells_[0][0].size()) - 1};
    for (int b : bounds_)
      if (b > kMaxGridBound) throw Error(ErrorKind::GridTooLarge, "triple complex bound exceeds 16");
    for (const auto& a : cells_) {
      if (static_cast<int>(a.size()) != bounds_[1] + 1) throw Error(ErrorKind::MalformedInput, "ragged grid");
      for (const auto& b : a)
        if (static_cast<int>(b.size()) != bounds_[2] + 1) throw Error(ErrorKind::MalformedInput, "ragged grid");
    }
    for (int i = 0; i < 3; ++i) {
      if (d_[i].size() != cells_.size()) throw Error(ErrorKind::MalformedInput, "differential grid size");
      for (std::size_t p = 0; p < cells_.size(); ++p) {
        if (d_[i][p].size() != cells_[p].size()) throw Error(ErrorKind::MalformedInput, "differential grid size");
        for (std::size_t q = 0; q < cells_[p].size(); ++q)
          if (d_[i][p][q].size() != cells_[p][q].size())
            throw Error(ErrorKind::MalformedInput, "differential grid size");
      }
    }
    for (int p = 0; p <= bounds_[0]; ++p)
      for (int q = 0; q <= bounds_[1]; ++q)
        for (int r = 0; r <= bounds_[2]; ++r)
          for (int i = 0; i < 3; ++i) {
            auto t = step({p, q, r}, i);
            if (!in_grid(t)) continue;
            const Mat& m = d_[i][p][q][r];
            if (m.rows() != dim(t) || m.cols() != dim({p, q, r}))
              throw Error(ErrorKind::MalformedInput, "d" + std::to_string(i + 1) + " has wrong shape");
          }
    validate();
  }

  using Index = std::array<int, 3>;

  const Index& bounds() const noexcept { return bounds_; }

  bool in_grid(const Index& c) const noexcept {
    for (int i = 0; i < 3; ++i)
      if (c[i] < 0 || c[i] > bounds_[i]) return false;
    return true;
  }

  LabeledSpace cell(const Index& c) const { return in_grid(c) ? cells_[c[0]][c[1]][c[2]] : LabeledSpace{}; }
  std::size_t dim(const Index& c) const { return in_grid(c) ? cells_[c[0]][c[1]][c[2]].dim() : 0; }

  static Index step(Index c, int axis) {
    ++c[axis];
    return c;
  }

  /// d_{axis+1} out of cell c; zero when it leaves the grid.
  Mat diff(int axis, const Index& c) const {
    auto t = step(c, axis);
    if (in_grid(c) && in_grid(t)) return d_[axis][c[0]][c[1]][c[2]];
    return Mat(dim(t), dim(c));
  }

 private:
  void validate() const {
    for (int p = 0; p <= bounds_[0]; ++p)
      for (int q = 0; q <= bounds_[1]; ++q)
        for (int r = 0; r <= bounds_[2]; ++r) {
          Index c{p, q, r};
          auto where = " at cell (" + std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(r) + ")";
          for (int i = 0; i < 3; ++i) {
            if (!(diff(i, step(c, i)) * diff(i, c)).is_zero())
              throw Error(ErrorKind::InvariantViolation, "d" + std::to_string(i + 1) + " does not square to zero" + where);
            for (int j = i + 1; j < 3; ++j)
              if (!(diff(j, step(c, i)) * diff(i, c) == diff(i, step(c, j)) * diff(j, c)))
                throw Error(ErrorKind::InvariantViolation,
                            "d" + std::to_string(i + 1) + " and d" + std::to_string(j + 1) + " do not commute" + where);
          }
        }
  }

  Index bounds_{0, 0, 0};
  std::vector<std::vector<std::vector<LabeledSpace>>> cells_;
  std::array<std::vector<std::vector<std::vector<Mat>>>, 3> d_;
};

namespace detail {

/// Groups two axes of a triple complex into one total axis. `outer` stays a
/// grid axis, `a` and `b` (a < b) are summed with cells ordered by ascending
/// index along `a`. The grouped differential is d_a + (-1)^{i_a} d_b.
/// The output double complex has the grouped index on the axis given by
/// `grouped_is_horizontal`.
inline DoubleComplex flatten(const TripleComplex& n, int a, int b, int outer, bool grouped_is_horizontal) {
  const auto& B = n.bounds();
  const int G = B[a] + B[b];
  const int O = B[outer];
  using Index = TripleComplex::Index;

  auto members = [&](int g, int o) {
    std::vector<Index> out;
    for (int ia = 0; ia <= B[a]; ++ia) {
      int ib = g - ia;
      if (ib < 0 || ib > B[b]) continue;
      Index c{};
      c[a] = ia;
      c[b] = ib;
      c[outer] = o;
      out.push_back(c);
    }
    return out;
  };
  auto offsets = [&](const std::vector<Index>& ms) {
    std::vector<std::size_t> off;
    std::size_t acc = 0;
    for (const auto& c : ms) {
      off.push_back(acc);
      acc += n.dim(c);
    }
    off.push_back(acc);
    return off;
  };
  auto find = [](const std::vector<Index>& ms, const Index& c) -> int {
    for (std::size_t i = 0; i < ms.size(); ++i)
      if (ms[i] == c) return static_cast<int>(i);
    return -1;
  };

  // cells indexed [g][o]
  std::vector<std::vector<LabeledSpace>> gcells(G + 1, std::vector<LabeledSpace>(O + 1));
  for (int g = 0; g <= G; ++g)
    for (int o = 0; o <= O; ++o) {
      LabeledSpace s;
      for (const auto& c : members(g, o)) s = s + n.cell(c);
      gcells[g][o] = std::move(s);
    }

  auto grouped_map = [&](int g, int o) {
    auto src = members(g, o);
    auto dst = members(g + 1, o);
    auto so = offsets(src);
    auto dof = offsets(dst);
    Mat m(dof.back(), so.back());
    for (std::size_t i = 0; i < src.size(); ++i) {
      const Index& c = src[i];
      int ja = find(dst, TripleComplex::step(c, a));
      if (ja >= 0) m.set_block(dof[ja], so[i], n.diff(a, c));
      int jb = find(dst, TripleComplex::step(c, b));
      if (jb >= 0) m.set_block(dof[jb], so[i], Rational(sign_pow(c[a])) * n.diff(b, c));
    }
    return m;
  };
  auto outer_map = [&](int g, int o) {
    auto src = members(g, o);
    auto dst = members(g, o + 1);
    auto so = offsets(src);
    auto dof = offsets(dst);
    Mat m(dof.back(), so.back());
    for (std::size_t i = 0; i < src.size(); ++i) m.set_block(dof[i], so[i], n.diff(outer, src[i]));
    return m;
  };

  const int Ph = grouped_is_horizontal ? G : O;
  const int Qv = grouped_is_horizontal ? O : G;
  if (Ph > kMaxGridBound || Qv > kMaxGridBound)
    throw Error(ErrorKind::GridTooLarge, "flattened grid exceeds bound 16");
  std::vector<std::vector<LabeledSpace>> cells(Ph + 1, std::vector<LabeledSpace>(Qv + 1));
  std::vector<std::vector<Mat>> horiz(Ph, std::vector<Mat>(Qv + 1));
  std::vector<std::vector<Mat>> vert(Ph + 1, std::vector<Mat>(Qv));
  for (int p = 0; p <= Ph; ++p)
    for (int q = 0; q <= Qv; ++q) {
      int g = grouped_is_horizontal ? p : q;
      int o = grouped_is_horizontal ? q : p;
      cells[p][q] = gcells[g][o];
      if (p < Ph) horiz[p][q] = grouped_is_horizontal ? grouped_map(g, o) : outer_map(g, o);
      if (q < Qv) vert[p][q] = grouped_is_horizontal ? outer_map(g, o) : grouped_map(g, o);
    }
  return {std::move(cells), std::move(horiz), std::move(vert)};
}

}  // namespace detail

/// N^{k,r} = ⊕_{p+q=k} N^{p,q,r}; horizontal d1 + (-1)^p d2, vertical d3.
inline DoubleComplex flatten_fix_r(const TripleComplex& n) { return detail::flatten(n, 0, 1, 2, true); }

/// N'^{p,l} = ⊕_{q+r=l} N^{p,q,r}; horizontal d1, vertical d2 + (-1)^q d3.
inline DoubleComplex flatten_fix_p(const TripleComplex& n) { return detail::flatten(n, 1, 2, 0, false); }

struct TotalsComparison {
  bool agree = true;
  std::optional<int> first_mismatch;  // total degree
  explicit operator bool() const noexcept { return agree; }
};

namespace detail {

/// Permutation sorting a space's labels by key.
inline std::vector<std::size_t> canonical_order(const LabeledSpace& s) {
  std::vector<std::size_t> idx(s.dim());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](auto i, auto j) { return s.label(i) < s.label(j); });
  return idx;
}

}  // namespace detail

/// Compares the two total complexes of a triple complex after sorting both
/// bases by cell label. Both must equal D = d1 + (-1)^p d2 + (-1)^{p+q} d3.
inline TotalsComparison totals_agree(const TripleComplex& n) {
  auto a = total(flatten_fix_r(n));
  auto b = total(flatten_fix_p(n));
  if (a.hi() != b.hi()) return {false, std::min(a.hi(), b.hi()) + 1};
  for (int k = 0; k <= a.hi(); ++k) {
    auto oa = detail::canonical_order(a.space(k));
    auto ob = detail::canonical_order(b.space(k));
    std::vector<Label> la, lb;
    for (auto i : oa) la.push_back(a.space(k).label(i));
    for (auto i : ob) lb.push_back(b.space(k).label(i));
    if (la != lb) return {false, k};
    if (k == a.hi()) break;
    auto ta = detail::canonical_order(a.space(k + 1));
    auto tb = detail::canonical_order(b.space(k + 1));
    Mat ma = a.diff(k).matrix.select_rows(ta).select_columns(oa);
    Mat mb = b.diff(k).matrix.select_rows(tb).select_columns(ob);
    if (!(ma == mb)) return {false, k};
  }
  return {};
}

}  // namespace cohom
