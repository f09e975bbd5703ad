#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cohom/spectral.hpp"

namespace cohom {

/// Strictly increasing tuple of open-set indices.
using Face = std::vector<int>;

inline std::string face_name(const Face& f) {
  std::string s = "U";
  for (std::size_t i = 0; i < f.size(); ++i) s += (i ? "," : "") + std::to_string(f[i]);
  return s;
}

inline Face drop(const Face& f, std::size_t i) {
  Face g = f;
  g.erase(g.begin() + static_cast<std::ptrdiff_t>(i));
  return g;
}

/// Nerve of a finite cover {U_0, ..., U_{N-1}}: the nonempty intersections.
class CoverNerve {
 public:
  CoverNerve() = default;

  CoverNerve(int opens, std::set<Face> faces) : opens_(opens), faces_(std::move(faces)) {
    if (opens_ < 1) throw Error(ErrorKind::MalformedInput, "cover needs at least one open set");
    for (int a = 0; a < opens_; ++a) faces_.insert(Face{a});
    for (const auto& f : faces_) {
      if (f.empty()) throw Error(ErrorKind::MalformedInput, "empty face");
      for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] < 0 || f[i] >= opens_)
          throw Error(ErrorKind::MalformedInput, "face " + face_name(f) + " names an unknown open set");
        if (i > 0 && f[i] <= f[i - 1])
          throw Error(ErrorKind::MalformedInput, "face " + face_name(f) + " is not strictly increasing");
      }
      if (f.size() > 1)
        for (std::size_t i = 0; i < f.size(); ++i)
          if (!faces_.count(drop(f, i)))
            throw Error(ErrorKind::InvariantViolation,
                        "nerve not downward closed: " + face_name(f) + " present but " + face_name(drop(f, i)) + " missing");
    }
  }

  int opens() const noexcept { return opens_; }
  const std::set<Face>& faces() const noexcept { return faces_; }
  bool has(const Face& f) const { return faces_.count(f) > 0; }

  /// Faces with p+1 indices, lexicographically ordered.
  std::vector<Face> faces_of_dim(int p) const {
    std::vector<Face> out;
    for (const auto& f : faces_)
      if (static_cast<int>(f.size()) == p + 1) out.push_back(f);
    return out;
  }

  int max_dim() const {
    std::size_t m = 1;
    for (const auto& f : faces_) m = std::max(m, f.size());
    return static_cast<int>(m) - 1;
  }

 private:
  int opens_ = 0;
  std::set<Face> faces_;
};

/// Section spaces on faces and restrictions along single-index drops.
struct SheafOnCover {
  std::map<Face, LabeledSpace> spaces;
  /// restrict[{from, to}] : F(U_from) -> F(U_to), where from = to minus one index.
  std::map<std::pair<Face, Face>, Mat> restrict;

  const LabeledSpace& space(const Face& f) const {
    auto it = spaces.find(f);
    if (it == spaces.end()) throw Error(ErrorKind::MissingFaceSpace, "no section space on " + face_name(f));
    return it->second;
  }

  const Mat& restriction(const Face& from, const Face& to) const {
    auto it = restrict.find({from, to});
    if (it == restrict.end())
      throw Error(ErrorKind::MissingFaceSpace, "no restriction " + face_name(from) + " -> " + face_name(to));
    return it->second;
  }
};

/// Checks face spaces, restriction shapes, and that the two ways of dropping
/// two indices agree.
inline void check_sheaf(const CoverNerve& nerve, const SheafOnCover& sheaf) {
  for (const auto& f : nerve.faces()) {
    const auto& target = sheaf.space(f);
    if (f.size() < 2) continue;
    for (std::size_t i = 0; i < f.size(); ++i) {
      const auto& m = sheaf.restriction(drop(f, i), f);
      if (m.rows() != target.dim() || m.cols() != sheaf.space(drop(f, i)).dim())
        throw Error(ErrorKind::IncompatibleRestrictions,
                    "restriction " + face_name(drop(f, i)) + " -> " + face_name(f) + " has wrong shape");
    }
    if (f.size() < 3) continue;
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t j = i + 1; j < f.size(); ++j) {
        Face fi = drop(f, i), fj = drop(f, j), fij = drop(fi, j - 1);
        Mat via_i = sheaf.restriction(fi, f) * sheaf.restriction(fij, fi);
        Mat via_j = sheaf.restriction(fj, f) * sheaf.restriction(fij, fj);
        if (!(via_i == via_j))
          throw Error(ErrorKind::IncompatibleRestrictions,
                      "restrictions " + face_name(fij) + " -> " + face_name(f) + " depend on the path");
      }
  }
}

namespace detail {

inline Label face_label(const Face& f, const Label& inner, std::vector<int> prefix = {}) {
  auto key = std::move(prefix);
  key.push_back(static_cast<int>(f.size()));
  key.insert(key.end(), f.begin(), f.end());
  key.insert(key.end(), inner.key.begin(), inner.key.end());
  return {std::move(key), face_name(f) + ":" + inner.text};
}

struct CechLayout {
  std::vector<std::vector<Face>> faces;                // per degree
  std::vector<std::map<Face, std::size_t>> offsets;     // per degree
  std::vector<LabeledSpace> spaces;

  CechLayout(const CoverNerve& nerve, const SheafOnCover& sheaf, std::vector<int> prefix = {}) {
    for (int p = 0; p <= nerve.max_dim(); ++p) {
      faces.push_back(nerve.faces_of_dim(p));
      std::map<Face, std::size_t> off;
      std::vector<Label> ls;
      for (const auto& f : faces.back()) {
        off[f] = ls.size();
        for (const auto& l : sheaf.space(f).labels()) ls.push_back(face_label(f, l, prefix));
      }
      offsets.push_back(std::move(off));
      spaces.emplace_back(std::move(ls));
    }
  }
};

/// δ^p : Č^p -> Č^{p+1}.
inline Mat cech_coboundary(const CechLayout& lay, const SheafOnCover& sheaf, int p) {
  Mat m(lay.spaces[p + 1].dim(), lay.spaces[p].dim());
  for (const auto& tau : lay.faces[p + 1])
    for (std::size_t i = 0; i < tau.size(); ++i) {
      Face sigma = drop(tau, i);
      Rational sign = (i % 2 == 0) ? 1 : -1;
      m.set_block(lay.offsets[p + 1].at(tau), lay.offsets[p].at(sigma), sign * sheaf.restriction(sigma, tau));
    }
  return m;
}

}  // namespace detail

/// Č^p = ⊕_{p-faces} F(U_face), (δω)_{α0..α_{p+1}} = Σ_i (-1)^i ω_{..α̂_i..}|.
inline CochainComplex cech_complex(const CoverNerve& nerve, const SheafOnCover& sheaf) {
  check_sheaf(nerve, sheaf);
  detail::CechLayout lay(nerve, sheaf);
  std::vector<Mat> diffs;
  for (int p = 0; p < nerve.max_dim(); ++p) diffs.push_back(detail::cech_coboundary(lay, sheaf, p));
  CochainComplex c(0, lay.spaces, std::move(diffs));
  validate(c);
  return c;
}

inline CohomologyReport cech_cohomology(const CoverNerve& nerve, const SheafOnCover& sheaf) {
  return cohomology(cech_complex(nerve, sheaf));
}

struct CoverData {
  CoverNerve nerve;
  SheafOnCover sheaf;
};

/// ℚ-valued functions on finite point sets: F(U_I) = functions on ∩_{i∈I} points[i].
/// Faces of dimension >= 1 exist iff the intersection is nonempty.
inline CoverData function_sheaf(const std::vector<std::set<int>>& points) {
  const int N = static_cast<int>(points.size());
  std::map<Face, std::set<int>> support;
  // enumerate by increasing size; a face is kept iff its intersection is nonempty
  std::vector<Face> frontier;
  for (int a = 0; a < N; ++a) {
    support[{a}] = points[a];
    frontier.push_back({a});
  }
  while (!frontier.empty()) {
    std::vector<Face> next;
    for (const auto& f : frontier)
      for (int b = f.back() + 1; b < N; ++b) {
        std::set<int> s;
        const auto& sf = support.at(f);
        std::set_intersection(sf.begin(), sf.end(), points[b].begin(), points[b].end(), std::inserter(s, s.begin()));
        if (s.empty()) continue;
        Face g = f;
        g.push_back(b);
        support[g] = std::move(s);
        next.push_back(std::move(g));
      }
    frontier = std::move(next);
  }
  std::set<Face> faces;
  SheafOnCover sheaf;
  for (const auto& [f, s] : support) {
    faces.insert(f);
    std::vector<Label> ls;
    for (int x : s) ls.push_back({{x}, "pt" + std::to_string(x)});
    sheaf.spaces[f] = LabeledSpace(std::move(ls));
  }
  for (const auto& [f, s] : support) {
    if (f.size() < 2) continue;
    for (std::size_t i = 0; i < f.size(); ++i) {
      Face g = drop(f, i);
      const auto& sg = support.at(g);
      Mat m(s.size(), sg.size());
      std::size_t row = 0;
      for (int x : s) {
        auto col = static_cast<std::size_t>(std::distance(sg.begin(), sg.find(x)));
        m(row++, col) = 1;
      }
      sheaf.restrict[{g, f}] = std::move(m);
    }
  }
  return {CoverNerve(N, std::move(faces)), std::move(sheaf)};
}

/// Relabels open set a as perm[a]. Section spaces and restrictions move with their faces.
inline CoverData permute_opens(const CoverNerve& nerve, const SheafOnCover& sheaf, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != nerve.opens())
    throw Error(ErrorKind::MalformedInput, "permutation length differs from number of opens");
  auto image = [&](const Face& f) {
    Face g;
    for (int a : f) g.push_back(perm.at(a));
    std::sort(g.begin(), g.end());
    return g;
  };
  std::set<Face> faces;
  SheafOnCover out;
  for (const auto& f : nerve.faces()) {
    faces.insert(image(f));
    out.spaces[image(f)] = sheaf.space(f);
  }
  for (const auto& [key, m] : sheaf.restrict) out.restrict[{image(key.first), image(key.second)}] = m;
  return {CoverNerve(nerve.opens(), std::move(faces)), std::move(out)};
}

struct HyperResult {
  DoubleComplex grid;
  CohomologyReport total;
  std::vector<SpectralPage> first;
  std::vector<SpectralPage> second;
};

/// Single-face level maps: level_maps[q][face] : L^q(U_face) -> L^{q+1}(U_face).
using LevelMaps = std::vector<std::map<Face, Mat>>;

/// Čech-sheaf double complex K^{p,q} = Č^p(U, L^q) with δ horizontal and
/// the level maps vertical; total differential δ + (-1)^p d.
inline DoubleComplex cech_double_complex(const CoverNerve& nerve, const std::vector<SheafOnCover>& levels,
                                         const LevelMaps& maps) {
  if (levels.empty()) throw Error(ErrorKind::LevelMapMismatch, "no sheaf levels");
  const int L = static_cast<int>(levels.size());
  if (static_cast<int>(maps.size()) != L - 1)
    throw Error(ErrorKind::LevelMapMismatch,
                std::to_string(L) + " levels need " + std::to_string(L - 1) + " level maps, got " + std::to_string(maps.size()));
  for (const auto& s : levels) check_sheaf(nerve, s);
  for (int q = 0; q + 1 < L; ++q) {
    for (const auto& f : nerve.faces()) {
      auto it = maps[q].find(f);
      if (it == maps[q].end())
        throw Error(ErrorKind::LevelMapMismatch, "missing level map " + std::to_string(q) + " on " + face_name(f));
      if (it->second.rows() != levels[q + 1].space(f).dim() || it->second.cols() != levels[q].space(f).dim())
        throw Error(ErrorKind::LevelMapMismatch, "level map " + std::to_string(q) + " on " + face_name(f) + " has wrong shape");
      if (q + 2 < L && !(maps[q + 1].at(f) * it->second).is_zero())
        throw Error(ErrorKind::LevelMapMismatch,
                    "level maps " + std::to_string(q) + "," + std::to_string(q + 1) + " on " + face_name(f) + " compose to nonzero");
      if (f.size() < 2) continue;
      for (std::size_t i = 0; i < f.size(); ++i) {
        Face g = drop(f, i);
        const auto& mg = maps[q].find(g);
        if (mg == maps[q].end()) continue;  // reported when g is visited
        if (!(it->second * levels[q].restriction(g, f) == levels[q + 1].restriction(g, f) * mg->second))
          throw Error(ErrorKind::IncompatibleRestrictions, "level map " + std::to_string(q) +
                                                               " does not commute with restriction " + face_name(g) +
                                                               " -> " + face_name(f));
      }
    }
  }
  const int P = nerve.max_dim();
  std::vector<detail::CechLayout> lays;
  for (int q = 0; q < L; ++q) lays.emplace_back(nerve, levels[q], std::vector<int>{q});
  std::vector<std::vector<LabeledSpace>> cells(P + 1, std::vector<LabeledSpace>(L));
  std::vector<std::vector<Mat>> horiz(P, std::vector<Mat>(L));
  std::vector<std::vector<Mat>> vert(P + 1, std::vector<Mat>(L - 1));
  for (int p = 0; p <= P; ++p)
    for (int q = 0; q < L; ++q) {
      cells[p][q] = lays[q].spaces[p];
      if (p < P) horiz[p][q] = detail::cech_coboundary(lays[q], levels[q], p);
      if (q + 1 < L) {
        Mat m(lays[q + 1].spaces[p].dim(), lays[q].spaces[p].dim());
        for (const auto& f : lays[q].faces[p])
          m.set_block(lays[q + 1].offsets[p].at(f), lays[q].offsets[p].at(f), maps[q].at(f));
        vert[p][q] = std::move(m);
      }
    }
  return {std::move(cells), std::move(horiz), std::move(vert)};
}

/// Čech hypercohomology Ȟ*(U, L•) with both spectral sequences up to the stable page.
inline HyperResult cech_hyper(const CoverNerve& nerve, const std::vector<SheafOnCover>& levels, const LevelMaps& maps) {
  HyperResult r;
  r.grid = cech_double_complex(nerve, levels, maps);
  r.total = cohomology(total(r.grid));
  int R = stable_page(r.grid);
  r.first = first_pages(r.grid, R);
  r.second = second_pages(r.grid, R);
  return r;
}

}  // namespace cohom
