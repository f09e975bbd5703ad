#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cohom/grid.hpp"

namespace cohom {

enum class Filtration {
  First,   // columns: F_p Tot = ⊕_{p' >= p}, E_1 = H_d
  Second,  // rows:    F_q Tot = ⊕_{q' >= q}, E_1 = H_δ
};

inline const char* filtration_name(Filtration f) { return f == Filtration::First ? "first" : "second"; }

struct PageEntry {
  int p = 0;
  int q = 0;
  std::size_t dim = 0;
  /// Cycles in Tot^{p+q} whose classes form a basis of E_r^{p,q}.
  Subspace representatives;
};

struct PageDifferential {
  int p = 0, q = 0;    // source bidegree
  int tp = 0, tq = 0;  // target bidegree
  Mat matrix;          // E_r^{tp,tq}.dim x E_r^{p,q}.dim
  std::size_t rank = 0;
};

struct SpectralPage {
  int r = 1;
  Filtration filtration = Filtration::First;
  std::map<std::pair<int, int>, PageEntry> entries;  // keyed by (p, q)
  std::vector<PageDifferential> differentials;       // only those with nonzero source and target

  std::size_t dim(int p, int q) const {
    auto it = entries.find({p, q});
    return it == entries.end() ? 0 : it->second.dim;
  }

  bool all_differentials_zero() const {
    for (const auto& d : differentials)
      if (d.rank != 0) return false;
    return true;
  }

  std::size_t rank_of(int p, int q) const {
    for (const auto& d : differentials)
      if (d.p == p && d.q == q) return d.rank;
    return 0;
  }
};

namespace detail {

/// Tot together with the filtration degree of every basis coordinate.
class FilteredTotal {
 public:
  FilteredTotal(const DoubleComplex& k, Filtration f) : k_(k), f_(f), tot_(total(k)) {
    TotLayout lay(k);
    for (int n = 0; n <= tot_.hi(); ++n) {
      std::vector<int> lv(tot_.dim(n));
      for (int p = 0; p <= k.P(); ++p) {
        int q = n - p;
        for (std::size_t i = 0; i < k.dim(p, q); ++i) lv[lay.offsets[n][p] + i] = (f == Filtration::First) ? p : q;
      }
      level_.push_back(std::move(lv));
    }
    top_ = (f == Filtration::First) ? k.P() : k.Q();
  }

  const CochainComplex& tot() const noexcept { return tot_; }
  int top_level() const noexcept { return top_; }
  int grid_bound() const noexcept { return std::max(k_.P(), k_.Q()); }

  std::pair<int, int> bidegree(int s, int n) const {
    return f_ == Filtration::First ? std::pair{s, n - s} : std::pair{n - s, s};
  }

  bool on_grid(int s, int n) const {
    auto [p, q] = bidegree(s, n);
    return k_.in_grid(p, q);
  }

  /// Z_r^s in degree n: x ∈ F_s Tot^n with D x ∈ F_{s+r} Tot^{n+1}.
  const Subspace& cycles(int s, int n, int r) {
    auto key = std::tuple{s, n, r};
    auto it = z_cache_.find(key);
    if (it != z_cache_.end()) return it->second;
    const auto amb = tot_.space(n);
    std::vector<std::size_t> cols, rows;
    for (std::size_t j = 0; j < amb.dim(); ++j)
      if (level(n, j) >= s) cols.push_back(j);
    if (n + 1 <= tot_.hi())
      for (std::size_t i = 0; i < tot_.dim(n + 1); ++i)
        if (level(n + 1, i) < s + r) rows.push_back(i);
    Mat D = tot_.diff(n).matrix;
    Mat sub = D.select_rows(rows).select_columns(cols);
    Mat ker = null_space(sub);
    Mat emb(amb.dim(), ker.cols());
    for (std::size_t c = 0; c < ker.cols(); ++c)
      for (std::size_t i = 0; i < cols.size(); ++i) emb(cols[i], c) = ker(i, c);
    return z_cache_.emplace(key, Subspace{amb, std::move(emb)}).first->second;
  }

  /// B_r^s in degree n: Z_{r-1}^{s+1} + D Z_{r-1}^{s-r+1}.
  Subspace boundaries(int s, int n, int r) {
    const auto amb = tot_.space(n);
    Subspace acc = cycles(s + 1, n, r - 1);
    if (n >= 1) {
      const auto& src = cycles(s - r + 1, n - 1, r - 1);
      Mat img = tot_.diff(n - 1).matrix * src.basis;
      acc = sum(acc, Subspace::span(amb, img));
    }
    return acc;
  }

 private:
  int level(int n, std::size_t j) const { return level_[n][j]; }

  const DoubleComplex& k_;
  Filtration f_;
  CochainComplex tot_;
  std::vector<std::vector<int>> level_;
  int top_ = 0;
  std::map<std::tuple<int, int, int>, Subspace> z_cache_;
};

inline std::vector<SpectralPage> compute_pages(const DoubleComplex& k, Filtration f, int r_max) {
  FilteredTotal ft(k, f);
  const int N = ft.tot().hi();
  std::vector<SpectralPage> pages;
  std::map<std::pair<int, int>, Subquotient> prev_sq;  // keyed by (s, n) for consistency checks
  for (int r = 1; r <= r_max; ++r) {
    SpectralPage page;
    page.r = r;
    page.filtration = f;
    std::map<std::pair<int, int>, Subquotient> sqs;
    for (int n = 0; n <= N; ++n)
      for (int s = 0; s <= ft.top_level(); ++s) {
        if (!ft.on_grid(s, n)) continue;
        const auto& z = ft.cycles(s, n, r);
        auto b = ft.boundaries(s, n, r);
        auto sq = subquotient(z, b, "E" + std::to_string(r));
        auto [p, q] = ft.bidegree(s, n);
        page.entries[{p, q}] = PageEntry{p, q, sq.space.dim(), Subspace{z.ambient, sq.section.matrix}};
        sqs.emplace(std::pair{s, n}, std::move(sq));
      }
    for (const auto& [key, src] : sqs) {
      auto [s, n] = key;
      auto it = sqs.find({s + r, n + 1});
      if (it == sqs.end() || src.space.dim() == 0 || it->second.space.dim() == 0) continue;
      Mat m = it->second.projection.matrix * (ft.tot().diff(n).matrix * src.section.matrix);
      auto [p, q] = ft.bidegree(s, n);
      auto [tp, tq] = ft.bidegree(s + r, n + 1);
      std::size_t rk = matrix_rank(m);
      page.differentials.push_back({p, q, tp, tq, std::move(m), rk});
    }
    // d_r o d_r = 0
    for (const auto& d1 : page.differentials)
      for (const auto& d2 : page.differentials)
        if (d2.p == d1.tp && d2.q == d1.tq && !(d2.matrix * d1.matrix).is_zero())
          throw Error(ErrorKind::ConvergenceFailure, "d_" + std::to_string(r) + " does not square to zero");
    // E_r = H(E_{r-1}, d_{r-1})
    if (!pages.empty()) {
      const auto& last = pages.back();
      for (const auto& [pq, e] : page.entries) {
        auto [p, q] = pq;
        int rp = r - 1;
        // incoming d_{r-1} starts at bidegree shifted back by (r-1, 2-r) (first) or (2-r, r-1) (second)
        int sp = (f == Filtration::First) ? p - rp : p + rp - 1;
        int sq = (f == Filtration::First) ? q + rp - 1 : q - rp;
        std::size_t expect = last.dim(p, q) - last.rank_of(p, q) - last.rank_of(sp, sq);
        if (e.dim != expect)
          throw Error(ErrorKind::ConvergenceFailure, "page " + std::to_string(r) + " entry (" + std::to_string(p) +
                                                         "," + std::to_string(q) + ") is not the cohomology of page " +
                                                         std::to_string(r - 1));
      }
    }
    pages.push_back(std::move(page));
  }
  return pages;
}

inline void check_r_max(const DoubleComplex& k, int r_max) {
  if (r_max < 1 || r_max > k.P() + k.Q() + 2)
    throw Error(ErrorKind::ParameterOutOfRange,
                "r_max must lie in [1, P+Q+2] = [1, " + std::to_string(k.P() + k.Q() + 2) + "]");
}

}  // namespace detail

/// Pages E_1..E_{r_max} of the column filtration (E_1 = H_d, E_2 = H_δ H_d).
inline std::vector<SpectralPage> first_pages(const DoubleComplex& k, int r_max) {
  detail::check_r_max(k, r_max);
  return detail::compute_pages(k, Filtration::First, r_max);
}

/// Pages E_1..E_{r_max} of the row filtration (E_1 = H_δ, E_2 = H_d H_δ).
inline std::vector<SpectralPage> second_pages(const DoubleComplex& k, int r_max) {
  detail::check_r_max(k, r_max);
  return detail::compute_pages(k, Filtration::Second, r_max);
}

inline std::vector<SpectralPage> pages(const DoubleComplex& k, Filtration f, int r_max) {
  return f == Filtration::First ? first_pages(k, r_max) : second_pages(k, r_max);
}

/// Pages are constant from this index on, for either filtration.
inline int stable_page(const DoubleComplex& k) { return std::max(k.P(), k.Q()) + 2; }

struct FiltrationCertificate {
  Filtration filtration = Filtration::First;
  /// Smallest r with d_{r'} = 0 for all r <= r' <= stable_page.
  int degeneration_page = 1;
  /// e_infinity[n] lists dim E_∞^{p, n-p} for p = 0..n (zero off the grid).
  std::vector<std::vector<std::size_t>> e_infinity;
};

struct ConvergenceCertificate {
  std::vector<std::size_t> total_dims;  // dim H^n(Tot)
  FiltrationCertificate first;
  FiltrationCertificate second;
};

inline FiltrationCertificate filtration_certificate(const DoubleComplex& k, Filtration f,
                                                    const std::vector<std::size_t>& total_dims) {
  const int R = stable_page(k);
  auto ps = detail::compute_pages(k, f, R);
  FiltrationCertificate c;
  c.filtration = f;
  c.degeneration_page = R;
  for (int r = R; r >= 1; --r) {
    if (!ps[r - 1].all_differentials_zero()) break;
    c.degeneration_page = r;
  }
  const auto& inf = ps.back();
  for (int n = 0; n <= k.P() + k.Q(); ++n) {
    std::vector<std::size_t> row;
    std::size_t sum = 0;
    for (int p = 0; p <= n; ++p) {
      row.push_back(inf.dim(p, n - p));
      sum += row.back();
    }
    if (sum != total_dims[n])
      throw Error(ErrorKind::ConvergenceFailure, std::string(filtration_name(f)) + " filtration: Σ dim E_∞ in degree " +
                                                     std::to_string(n) + " is " + std::to_string(sum) +
                                                     ", total cohomology has " + std::to_string(total_dims[n]));
    c.e_infinity.push_back(std::move(row));
  }
  return c;
}

/// Checks that both spectral sequences abut to the total cohomology dims.
inline ConvergenceCertificate certify_convergence(const DoubleComplex& k) {
  ConvergenceCertificate cert;
  cert.total_dims = cohomology(total(k)).dims();
  cert.first = filtration_certificate(k, Filtration::First, cert.total_dims);
  cert.second = filtration_certificate(k, Filtration::Second, cert.total_dims);
  return cert;
}

}  // namespace cohom
