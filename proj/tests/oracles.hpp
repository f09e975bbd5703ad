#pragma once

// Brute-force reference computations used by the tests. Nothing here calls
// the library's elimination code.

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using Q = mpq_class;
using Rows = std::vector<std::vector<Q>>;

/// Rank by plain Gaussian elimination with partial search for a nonzero pivot.
inline std::size_t rank(Rows a) {
  std::size_t r = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t piv = r;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[r]);
    for (std::size_t i = r + 1; i < a.size(); ++i) {
      if (a[i][c] == 0) continue;
      Q f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

inline Rows multiply(const Rows& a, const Rows& b, std::size_t bcols) {
  Rows out(a.size(), std::vector<Q>(bcols, 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < a[i].size(); ++k)
      if (a[i][k] != 0)
        for (std::size_t j = 0; j < bcols; ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

/// Columns spanning the null space of a (rows x cols).
inline Rows null_space_columns(Rows a, std::size_t cols) {
  std::vector<int> pivot_of_col(cols, -1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t piv = r;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[r]);
    Q inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      Q f = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivot_of_col[c] = static_cast<int>(r++);
  }
  // as a cols x nullity matrix
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < cols; ++c)
    if (pivot_of_col[c] < 0) free.push_back(c);
  Rows out(cols, std::vector<Q>(free.size(), 0));
  for (std::size_t f = 0; f < free.size(); ++f) {
    out[free[f]][f] = 1;
    for (std::size_t c = 0; c < cols; ++c)
      if (pivot_of_col[c] >= 0) out[c][f] = -a[pivot_of_col[c]][free[f]];
  }
  return out;
}

inline Rows hconcat(const Rows& a, const Rows& b) {
  Rows out = a;
  if (out.empty()) out.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i].insert(out[i].end(), b[i].begin(), b[i].end());
  return out;
}

using Simplex = std::vector<int>;

/// Cohomology dims of a finite simplicial complex given by its face list
/// (all faces, strictly increasing vertex tuples), degrees 0..max.
inline std::vector<std::size_t> simplicial_cohomology(const std::set<Simplex>& faces) {
  int top = -1;
  for (const auto& f : faces) top = std::max(top, static_cast<int>(f.size()) - 1);
  if (top < 0) return {};
  std::vector<std::vector<Simplex>> by_dim(top + 1);
  for (const auto& f : faces) by_dim[f.size() - 1].push_back(f);
  std::vector<std::size_t> ranks(top + 1, 0);
  for (int p = 0; p < top; ++p) {
    // coboundary C^p -> C^{p+1}
    std::map<Simplex, std::size_t> col;
    for (std::size_t i = 0; i < by_dim[p].size(); ++i) col[by_dim[p][i]] = i;
    Rows m(by_dim[p + 1].size(), std::vector<Q>(by_dim[p].size(), 0));
    for (std::size_t r = 0; r < by_dim[p + 1].size(); ++r) {
      const auto& s = by_dim[p + 1][r];
      for (std::size_t i = 0; i < s.size(); ++i) {
        Simplex t = s;
        t.erase(t.begin() + static_cast<long>(i));
        m[r][col.at(t)] += (i % 2 == 0) ? 1 : -1;
      }
    }
    ranks[p] = rank(m);
  }
  std::vector<std::size_t> h(top + 1);
  for (int p = 0; p <= top; ++p) h[p] = by_dim[p].size() - ranks[p] - (p > 0 ? ranks[p - 1] : 0);
  return h;
}

/// Per-point decomposition of the Čech cohomology of functions on point sets:
/// sums, over points x, the simplicial cohomology of the full nerve of the
/// opens containing x (enumerated over all index subsets).
inline std::vector<std::size_t> per_point_cech_dims(const std::vector<std::set<int>>& points, std::size_t len) {
  std::vector<std::size_t> total(len, 0);
  std::set<int> universe;
  for (const auto& s : points) universe.insert(s.begin(), s.end());
  const int N = static_cast<int>(points.size());
  for (int x : universe) {
    std::set<Simplex> faces;
    for (unsigned mask = 1; mask < (1u << N); ++mask) {
      Simplex f;
      bool ok = true;
      for (int i = 0; i < N && ok; ++i)
        if (mask & (1u << i)) {
          ok = points[i].count(x) > 0;
          f.push_back(i);
        }
      if (ok) faces.insert(f);
    }
    auto h = simplicial_cohomology(faces);
    for (std::size_t k = 0; k < h.size() && k < len; ++k) total[k] += h[k];
  }
  return total;
}

/// dim h^n(A ⊗ B) over a field.
inline std::vector<std::size_t> kunneth(const std::vector<std::size_t>& ha, const std::vector<std::size_t>& hb) {
  if (ha.empty() || hb.empty()) return {};
  std::vector<std::size_t> out(ha.size() + hb.size() - 1, 0);
  for (std::size_t p = 0; p < ha.size(); ++p)
    for (std::size_t q = 0; q < hb.size(); ++q) out[p + q] += ha[p] * hb[q];
  return out;
}

/// Cohomology dims of 0 -> V_0 -> V_1 -> ... from dims and differential ranks.
inline std::vector<std::size_t> dims_from_ranks(const std::vector<std::size_t>& dims, const std::vector<std::size_t>& ranks) {
  std::vector<std::size_t> h(dims.size());
  for (std::size_t k = 0; k < dims.size(); ++k)
    h[k] = dims[k] - (k < ranks.size() ? ranks[k] : 0) - (k > 0 && k - 1 < ranks.size() ? ranks[k - 1] : 0);
  return h;
}

/// A bounded double complex as plain arrays: cell dims, horizontal maps
/// h[p][q] : (p,q) -> (p+1,q), vertical maps v[p][q] : (p,q) -> (p,q+1).
struct Grid {
  std::vector<std::vector<std::size_t>> dims;
  std::vector<std::vector<Rows>> h, v;
  int P() const { return static_cast<int>(dims.size()) - 1; }
  int Q() const { return static_cast<int>(dims[0].size()) - 1; }
  std::size_t dim(int p, int q) const { return (p < 0 || q < 0 || p > P() || q > Q()) ? 0 : dims[p][q]; }
  Rows horiz(int p, int q) const {
    if (p < 0 || p >= P() || q < 0 || q > Q()) return Rows(dim(p + 1, q), std::vector<oracle::Q>(dim(p, q), 0));
    return h[p][q];
  }
  Rows vert(int p, int q) const {
    if (q < 0 || q >= Q() || p < 0 || p > P()) return Rows(dim(p, q + 1), std::vector<oracle::Q>(dim(p, q), 0));
    return v[p][q];
  }
};

inline Rows zero_rows(std::size_t r, std::size_t c) { return Rows(r, std::vector<Q>(c, 0)); }

/// E_2 of the column filtration, as H_δ(H_d), computed cell by cell:
/// dim = dim{x ∈ ker d : δx ∈ im d} − dim(im d + δ ker d).
inline std::vector<std::vector<std::size_t>> e2_first(const Grid& g) {
  std::vector<std::vector<std::size_t>> out(g.P() + 1, std::vector<std::size_t>(g.Q() + 1, 0));
  for (int p = 0; p <= g.P(); ++p)
    for (int q = 0; q <= g.Q(); ++q) {
      auto z = null_space_columns(g.vert(p, q), g.dim(p, q));  // ker d at (p,q)
      auto d_in_next = g.vert(p + 1, q - 1);  // (p+1,q-1) -> (p+1,q)
      auto d_in_here = g.vert(p, q - 1);      // (p,q-1) -> (p,q)
      const std::size_t zc = z.empty() ? 0 : z[0].size();
      // numerator: x = z·y with δ z y ∈ im d_in_next
      auto dz = multiply(g.horiz(p, q), z, zc);
      std::size_t rb = rank(d_in_next);
      std::size_t num = zc - (rank(hconcat(d_in_next, dz)) - rb);
      // denominator: im d_in_here + δ(ker d at (p-1,q))
      auto zprev = null_space_columns(g.vert(p - 1, q), g.dim(p - 1, q));
      const std::size_t zpc = zprev.empty() ? 0 : zprev[0].size();
      auto dzprev = multiply(g.horiz(p - 1, q), zprev, zpc);
      std::size_t den = rank(hconcat(d_in_here, dzprev));
      out[p][q] = num - den;
    }
  return out;
}

/// Transposed grid (rows become columns), for the row filtration.
inline Grid transpose(const Grid& g) {
  Grid t;
  t.dims.assign(g.Q() + 1, std::vector<std::size_t>(g.P() + 1));
  t.h.assign(g.Q(), std::vector<Rows>(g.P() + 1));
  t.v.assign(g.Q() + 1, std::vector<Rows>(g.P()));
  for (int p = 0; p <= g.P(); ++p)
    for (int q = 0; q <= g.Q(); ++q) {
      t.dims[q][p] = g.dims[p][q];
      if (q < g.Q()) t.h[q][p] = g.v[p][q];
      if (p < g.P()) t.v[q][p] = g.h[p][q];
    }
  return t;
}

/// Cohomology dims of Tot with D = δ + (−1)^p d, cells ordered by ascending p.
inline std::vector<std::size_t> total_cohomology(const Grid& g) {
  const int N = g.P() + g.Q();
  std::vector<std::size_t> dims(N + 1, 0), ranks(N, 0);
  auto cells = [&](int n) {
    std::vector<std::pair<int, int>> c;
    for (int p = 0; p <= g.P(); ++p)
      if (n - p >= 0 && n - p <= g.Q()) c.push_back({p, n - p});
    return c;
  };
  for (int n = 0; n <= N; ++n)
    for (auto [p, q] : cells(n)) dims[n] += g.dim(p, q);
  for (int n = 0; n < N; ++n) {
    Rows D = zero_rows(dims[n + 1], dims[n]);
    std::size_t col = 0;
    for (auto [p, q] : cells(n)) {
      std::size_t row = 0;
      for (auto [p2, q2] : cells(n + 1)) {
        Rows m;
        if (p2 == p + 1 && q2 == q) m = g.horiz(p, q);
        if (p2 == p && q2 == q + 1) {
          m = g.vert(p, q);
          if (p % 2) for (auto& r : m) for (auto& x : r) x = -x;
        }
        for (std::size_t i = 0; i < m.size(); ++i)
          for (std::size_t j = 0; j < m[i].size(); ++j) D[row + i][col + j] = m[i][j];
        row += g.dim(p2, q2);
      }
      col += g.dim(p, q);
    }
    ranks[n] = rank(D);
  }
  return dims_from_ranks(dims, ranks);
}

/// Sign of the shuffle putting I ∪ J in increasing order; 0 when they meet.
inline int shuffle_sign(const std::vector<int>& I, const std::vector<int>& J) {
  int inversions = 0;
  for (int i : I)
    for (int j : J) {
      if (i == j) return 0;
      if (i > j) ++inversions;
    }
  return inversions % 2 ? -1 : 1;
}

inline std::size_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

}  // namespace oracle
