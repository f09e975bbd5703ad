#pragma once

#include <map>
#include <string>
#include <vector>

#include "cohom/cech.hpp"
#include "cohom/derham.hpp"

namespace cohom {

struct Preset {
  std::string name;                  // "circle", "torus", "p1"
  std::vector<int> params;           // torus: {k, n}
  std::map<std::string, int> weights;  // grading weight per generator

  std::string display() const {
    if (name == "torus") return "torus:" + std::to_string(params.at(0)) + "," + std::to_string(params.at(1));
    return name;
  }
};

/// "circle" | "torus:k,n" | "p1"
inline Preset parse_preset(const std::string& s) {
  if (s == "circle") return {"circle", {}, {}};
  if (s == "p1") return {"p1", {}, {{"z", 1}, {"dz", 1}, {"w", -1}, {"dw", -1}}};
  if (s.rfind("torus:", 0) == 0) {
    auto rest = s.substr(6);
    auto comma = rest.find(',');
    if (comma == std::string::npos) throw Error(ErrorKind::MalformedInput, "torus preset needs the form torus:k,n");
    int k = 0, n = 0;
    try {
      std::size_t used = 0;
      k = std::stoi(rest.substr(0, comma), &used);
      if (used != comma) throw std::invalid_argument("k");
      auto tail = rest.substr(comma + 1);
      n = std::stoi(tail, &used);
      if (used != tail.size()) throw std::invalid_argument("n");
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::MalformedInput, "torus preset needs integers: torus:k,n");
    }
    Preset p{"torus", {k, n}, {}};
    for (int i = 1; i <= n; ++i) {
      p.weights["z" + std::to_string(i)] = 1;
      p.weights["dz" + std::to_string(i)] = 1;
    }
    return p;
  }
  throw Error(ErrorKind::MalformedInput, "unknown preset '" + s + "' (expected circle | torus:k,n | p1)");
}

/// Three arcs covering a circle: pairwise overlaps, no triple overlap, constant ℚ.
inline CoverData build_circle() {
  std::set<Face> faces{{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}};
  CoverNerve nerve(3, faces);
  SheafOnCover sheaf;
  for (const auto& f : faces) sheaf.spaces[f] = LabeledSpace(std::vector<Label>{Label{{0}, "1"}});
  for (const auto& f : faces)
    if (f.size() == 2)
      for (std::size_t i = 0; i < 2; ++i) sheaf.restrict[{drop(f, i), f}] = Mat::identity(1);
  return {std::move(nerve), std::move(sheaf)};
}

/// Affine torus-type variety with window 4.
inline TorusSpec build_torus(int k, int n) {
  if (!(0 <= k && k <= n && n <= 3))
    throw Error(ErrorKind::ParameterOutOfRange, "torus preset needs 0 <= k <= n <= 3, got k=" + std::to_string(k) +
                                                    ", n=" + std::to_string(n));
  return {n, k, 4};
}

/// Input for cech_hyper together with the weight of every basis element.
struct HyperInput {
  CoverNerve nerve;
  std::vector<SheafOnCover> levels;
  LevelMaps maps;
  /// weights[q][face][i]: grading weight of basis element i of L^q(U_face)
  std::vector<std::map<Face, std::vector<int>>> weights;
};

/// ℙ¹ with the affine cover U0 = Spec ℚ[z], U1 = Spec ℚ[w], U01 = Spec ℚ[z, z⁻¹],
/// w = z⁻¹. Levels Ω⁰, Ω¹ with d between them. Section spaces keep the basis
/// elements of weight in [-W, W] for wt(z) = wt(dz) = 1, wt(w) = wt(dw) = -1.
inline HyperInput build_p1(int W) {
  if (W < 3) throw Error(ErrorKind::ParameterOutOfRange, "p1 weight window must be >= 3");
  const Face u0{0}, u1{1}, u01{0, 1};
  HyperInput in{CoverNerve(2, {u0, u1, u01}), std::vector<SheafOnCover>(2), LevelMaps(1), std::vector<std::map<Face, std::vector<int>>>(2)};

  // exponent ranges per (face, level)
  struct Basis {
    std::vector<int> exps;
    std::vector<Label> labels;
    std::vector<int> weights;
  };
  auto make = [&](const Face& f, int level, int lo, int hi, const std::string& var, int sign) {
    Basis b;
    for (int a = lo; a <= hi; ++a) {
      b.exps.push_back(a);
      std::string t = var + "^" + std::to_string(a) + (level == 1 ? " d" + var : "");
      b.labels.push_back({{level, a}, t});
      b.weights.push_back(sign * (a + level));
    }
    in.levels[level].spaces[f] = LabeledSpace(b.labels);
    in.weights[level][f] = b.weights;
    return b;
  };
  auto z0 = make(u0, 0, 0, W, "z", 1);
  auto z1 = make(u0, 1, 0, W - 1, "z", 1);
  auto w0 = make(u1, 0, 0, W, "w", -1);
  auto w1 = make(u1, 1, 0, W - 1, "w", -1);
  auto y0 = make(u01, 0, -W, W, "z", 1);
  auto y1 = make(u01, 1, -W - 1, W - 1, "z", 1);

  auto index_of = [](const Basis& b, int a) -> std::ptrdiff_t {
    for (std::size_t i = 0; i < b.exps.size(); ++i)
      if (b.exps[i] == a) return static_cast<std::ptrdiff_t>(i);
    return -1;
  };
  // restriction to the overlap: z^a -> z^a, w^b -> z^{-b}, w^b dw -> -z^{-b-2} dz
  auto restrict = [&](const Basis& from, const Basis& to, auto image) {
    Mat m(to.exps.size(), from.exps.size());
    for (std::size_t j = 0; j < from.exps.size(); ++j) {
      auto [a, c] = image(from.exps[j]);
      auto i = index_of(to, a);
      if (i < 0) throw Error(ErrorKind::InvariantViolation, "restriction leaves the truncation");
      m(i, j) = c;
    }
    return m;
  };
  auto same = [](int a) { return std::pair{a, Rational(1)}; };
  in.levels[0].restrict[{u0, u01}] = restrict(z0, y0, same);
  in.levels[1].restrict[{u0, u01}] = restrict(z1, y1, same);
  in.levels[0].restrict[{u1, u01}] = restrict(w0, y0, [](int b) { return std::pair{-b, Rational(1)}; });
  in.levels[1].restrict[{u1, u01}] = restrict(w1, y1, [](int b) { return std::pair{-b - 2, Rational(-1)}; });

  // d: x^a -> a x^{a-1} dx
  auto deriv = [&](const Basis& from, const Basis& to) {
    Mat m(to.exps.size(), from.exps.size());
    for (std::size_t j = 0; j < from.exps.size(); ++j) {
      int a = from.exps[j];
      if (a == 0) continue;
      auto i = index_of(to, a - 1);
      if (i < 0) throw Error(ErrorKind::InvariantViolation, "d leaves the truncation");
      m(i, j) = a;
    }
    return m;
  };
  in.maps[0][u0] = deriv(z0, z1);
  in.maps[0][u1] = deriv(w0, w1);
  in.maps[0][u01] = deriv(y0, y1);
  return in;
}

/// The truncated de Rham complex of a torus spec as a complex of sheaves on
/// the single-open cover of the affine variety.
inline HyperInput torus_single_open(const TorusSpec& spec) {
  spec.validate();
  const Face u{0};
  HyperInput in{CoverNerve(1, {u}), std::vector<SheafOnCover>(spec.n + 1), LevelMaps(spec.n),
                std::vector<std::map<Face, std::vector<int>>>(spec.n + 1)};
  std::vector<std::vector<Label>> labels(spec.n + 1);
  std::vector<Mat> d(spec.n);
  for (const auto& [m, c] : multidegree_split(spec)) {
    int wt = 0;
    for (int x : m) wt += x;
    for (int q = 0; q <= spec.n; ++q) {
      auto space = c.space(q);
      for (const auto& l : space.labels()) {
        labels[q].push_back(l);
        in.weights[q][u].push_back(wt);
      }
      if (q < spec.n) d[q] = block_diagonal(d[q], c.diff(q).matrix);
    }
  }
  for (int q = 0; q <= spec.n; ++q) in.levels[q].spaces[u] = LabeledSpace(std::move(labels[q]));
  for (int q = 0; q < spec.n; ++q) in.maps[q][u] = std::move(d[q]);
  return in;
}

/// True when every restriction and level map only connects basis elements of equal weight.
inline bool is_homogeneous(const HyperInput& in) {
  auto check = [](const Mat& m, const std::vector<int>& wr, const std::vector<int>& wc) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (m(i, j) != 0 && wr[i] != wc[j]) return false;
    return true;
  };
  for (std::size_t q = 0; q < in.levels.size(); ++q)
    for (const auto& [key, m] : in.levels[q].restrict)
      if (!check(m, in.weights[q].at(key.second), in.weights[q].at(key.first))) return false;
  for (std::size_t q = 0; q < in.maps.size(); ++q)
    for (const auto& [f, m] : in.maps[q])
      if (!check(m, in.weights[q + 1].at(f), in.weights[q].at(f))) return false;
  return true;
}

struct P1Report {
  int window = 0;
  HyperResult hyper;
  std::vector<std::size_t> dims;          // at window W
  std::vector<std::size_t> dims_enlarged;  // at window W + 2
  /// The 1-cochain z⁻¹dz on U01 generates H²; its label and class coordinates.
  std::string h2_representative;
  Vec h2_class;
};

/// Hypercohomology of ℙ¹ at windows W and W + 2; WindowExhausted if they differ.
inline P1Report p1_report(int W) {
  P1Report r;
  r.window = W;
  auto in = build_p1(W);
  r.hyper = cech_hyper(in.nerve, in.levels, in.maps);
  r.dims = r.hyper.total.dims();
  auto big = build_p1(W + 2);
  r.dims_enlarged = cohomology(total(cech_double_complex(big.nerve, big.levels, big.maps))).dims();
  if (r.dims != r.dims_enlarged)
    throw Error(ErrorKind::WindowExhausted, "p1 hypercohomology changes between windows " + std::to_string(W) +
                                                " and " + std::to_string(W + 2));
  // locate z^{-1} dz on U01 inside Tot^2
  auto tot = total(r.hyper.grid);
  const auto& sp = tot.space(2);
  Vec v(sp.dim(), Rational(0));
  bool found = false;
  for (std::size_t i = 0; i < sp.dim(); ++i) {
    const auto& l = sp.label(i);
    if (l.text == "U0,1:z^-1 dz") {
      v[i] = 1;
      found = true;
      r.h2_representative = l.text;
    }
  }
  if (!found) throw Error(ErrorKind::InvariantViolation, "z^-1 dz missing from the p1 truncation");
  if (r.hyper.total.degrees.size() > 2) r.h2_class = r.hyper.total.degrees[2].classify.matrix * v;
  return r;
}

}  // namespace cohom
