#pragma once

// JSON schemas for complexes, double complexes, covers and forms.
// Rationals are strings "p/q" (or "p"); matrices are row-major arrays.

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cohom/catalog.hpp"
#include "cohom/spectral.hpp"

namespace cohom::io {

using Json = nlohmann::ordered_json;

inline Error field_error(const std::string& path, const std::string& what) {
  return Error(ErrorKind::MalformedInput, "field '" + path + "': " + what);
}

/// Parses text, reporting the line and column of syntax errors.
inline Json parse_json(const std::string& text, const std::string& source = "input") {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorKind::MalformedInput,
                source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": invalid JSON");
  }
}

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::MalformedInput, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path);
}

inline const Json& require(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw field_error(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw field_error(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

inline long long get_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw field_error(path, "expected an integer");
  return j.get<long long>();
}

inline std::size_t get_dim(const Json& j, const std::string& path) {
  auto v = get_int(j, path);
  if (v < 0) throw field_error(path, "dimension must be nonnegative");
  return static_cast<std::size_t>(v);
}

inline Json rational_to_json(const Rational& x) { return to_string(x); }

inline Rational rational_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()));
  if (!j.is_string()) throw field_error(path, "expected a rational string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const Error& e) {
    throw field_error(path, e.what());
  }
}

inline Json matrix_to_json(const Mat& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rational_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Mat matrix_from_json(const Json& j, std::size_t rows, std::size_t cols, const std::string& path) {
  if (!j.is_array()) throw field_error(path, "expected an array of rows");
  if (j.size() != rows)
    throw field_error(path, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
  Mat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto rp = path + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != cols)
      throw field_error(rp, "expected a row of " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = rational_from_json(j[i][c], rp + "[" + std::to_string(c) + "]");
  }
  return m;
}

inline Json vector_to_json(const Vec& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(rational_to_json(x));
  return a;
}

/// "c1*label1 + c2*label2" listing of a vector in a labeled space.
inline std::string describe_vector(const Vec& v, const LabeledSpace& s) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    Rational c = v[i];
    bool neg = c < 0;
    if (neg) c = -c;
    std::string term = (c == 1 ? "" : to_string(c) + "*") + "[" + s.label(i).text + "]";
    if (out.empty()) {
      out = (neg ? "-" : "") + term;
    } else {
      out += (neg ? " - " : " + ") + term;
    }
  }
  return out.empty() ? "0" : out;
}

// ---- cochain complex: {"lo","hi","dims":[...],"diffs":[matrix...]}

inline CochainComplex complex_from_json(const Json& j) {
  int lo = static_cast<int>(get_int(require(j, "lo", ""), "lo"));
  int hi = static_cast<int>(get_int(require(j, "hi", ""), "hi"));
  if (hi < lo) throw field_error("hi", "must be >= lo");
  const auto& dj = require(j, "dims", "");
  if (!dj.is_array() || static_cast<int>(dj.size()) != hi - lo + 1)
    throw field_error("dims", "expected " + std::to_string(hi - lo + 1) + " entries");
  std::vector<std::size_t> dims;
  for (std::size_t i = 0; i < dj.size(); ++i) dims.push_back(get_dim(dj[i], "dims[" + std::to_string(i) + "]"));
  const auto& mj = require(j, "diffs", "");
  if (!mj.is_array() || static_cast<int>(mj.size()) != hi - lo)
    throw field_error("diffs", "expected " + std::to_string(hi - lo) + " matrices");
  std::vector<Mat> diffs;
  for (std::size_t i = 0; i < mj.size(); ++i)
    diffs.push_back(matrix_from_json(mj[i], dims[i + 1], dims[i], "diffs[" + std::to_string(i) + "]"));
  return CochainComplex::from_dims(lo, dims, std::move(diffs));
}

inline Json complex_to_json(const CochainComplex& c) {
  Json j;
  j["lo"] = c.lo();
  j["hi"] = c.hi();
  Json dims = Json::array(), diffs = Json::array();
  for (int k = c.lo(); k <= c.hi(); ++k) dims.push_back(c.dim(k));
  for (int k = c.lo(); k < c.hi(); ++k) diffs.push_back(matrix_to_json(c.diff(k).matrix));
  j["dims"] = std::move(dims);
  j["diffs"] = std::move(diffs);
  return j;
}

// ---- double complex: {"P","Q","dims":[[...]],"horiz":[[matrix]],"vert":[[matrix]]}
// dims[p][q]; horiz[p][q] for p < P; vert[p][q] for q < Q.

inline DoubleComplex double_complex_from_json(const Json& j) {
  int P = static_cast<int>(get_int(require(j, "P", ""), "P"));
  int Q = static_cast<int>(get_int(require(j, "Q", ""), "Q"));
  if (P < 0 || Q < 0) throw field_error("P", "bounds must be nonnegative");
  if (P > kMaxGridBound || Q > kMaxGridBound)
    throw Error(ErrorKind::GridTooLarge, "bounds P=" + std::to_string(P) + ", Q=" + std::to_string(Q) + " exceed 16");
  const auto& dj = require(j, "dims", "");
  if (!dj.is_array() || static_cast<int>(dj.size()) != P + 1) throw field_error("dims", "expected P+1 columns");
  std::vector<std::vector<std::size_t>> dims(P + 1);
  for (int p = 0; p <= P; ++p) {
    auto path = "dims[" + std::to_string(p) + "]";
    if (!dj[p].is_array() || static_cast<int>(dj[p].size()) != Q + 1) throw field_error(path, "expected Q+1 entries");
    for (int q = 0; q <= Q; ++q) dims[p].push_back(get_dim(dj[p][q], path + "[" + std::to_string(q) + "]"));
  }
  auto dim = [&](int p, int q) { return (p <= P && q <= Q) ? dims[p][q] : 0; };
  const auto& hj = require(j, "horiz", "");
  const auto& vj = require(j, "vert", "");
  if (!hj.is_array() || static_cast<int>(hj.size()) != P) throw field_error("horiz", "expected P columns");
  if (!vj.is_array() || static_cast<int>(vj.size()) != P + 1) throw field_error("vert", "expected P+1 columns");
  std::vector<std::vector<Mat>> horiz(P), vert(P + 1);
  for (int p = 0; p < P; ++p) {
    auto path = "horiz[" + std::to_string(p) + "]";
    if (!hj[p].is_array() || static_cast<int>(hj[p].size()) != Q + 1) throw field_error(path, "expected Q+1 matrices");
    for (int q = 0; q <= Q; ++q)
      horiz[p].push_back(matrix_from_json(hj[p][q], dim(p + 1, q), dim(p, q), path + "[" + std::to_string(q) + "]"));
  }
  for (int p = 0; p <= P; ++p) {
    auto path = "vert[" + std::to_string(p) + "]";
    if (!vj[p].is_array() || static_cast<int>(vj[p].size()) != Q) throw field_error(path, "expected Q matrices");
    for (int q = 0; q < Q; ++q)
      vert[p].push_back(matrix_from_json(vj[p][q], dim(p, q + 1), dim(p, q), path + "[" + std::to_string(q) + "]"));
  }
  return DoubleComplex::from_dims(dims, std::move(horiz), std::move(vert));
}

inline Json double_complex_to_json(const DoubleComplex& k) {
  Json j;
  j["P"] = k.P();
  j["Q"] = k.Q();
  Json dims = Json::array(), horiz = Json::array(), vert = Json::array();
  for (int p = 0; p <= k.P(); ++p) {
    Json col = Json::array(), h = Json::array(), v = Json::array();
    for (int q = 0; q <= k.Q(); ++q) {
      col.push_back(k.dim(p, q));
      if (p < k.P()) h.push_back(matrix_to_json(k.horiz(p, q)));
      if (q < k.Q()) v.push_back(matrix_to_json(k.vert(p, q)));
    }
    dims.push_back(std::move(col));
    if (p < k.P()) horiz.push_back(std::move(h));
    vert.push_back(std::move(v));
  }
  j["dims"] = std::move(dims);
  j["horiz"] = std::move(horiz);
  j["vert"] = std::move(vert);
  return j;
}

// ---- covers: {"opens":N,"faces":[{"idx":[...],"dim":d}],
//               "restrict":[{"from":[...],"to":[...],"matrix":[[...]]}]}
// Hyper input: faces carry "dims":[d_0..d_{L-1}], restrict entries carry
// "level", and {"levels":L,"level_maps":[{"level":q,"idx":[...],"matrix":...}]}.

inline Face face_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) throw field_error(path, "expected an index array");
  Face f;
  for (std::size_t i = 0; i < j.size(); ++i) f.push_back(static_cast<int>(get_int(j[i], path + "[" + std::to_string(i) + "]")));
  return f;
}

inline Json face_to_json(const Face& f) {
  Json a = Json::array();
  for (int x : f) a.push_back(x);
  return a;
}

struct FaceSpec {
  Face face;
  std::vector<std::size_t> dims;  // per level
};

namespace detail {

inline std::vector<FaceSpec> read_faces(const Json& j, int levels) {
  const auto& fj = require(j, "faces", "");
  if (!fj.is_array()) throw field_error("faces", "expected an array");
  std::vector<FaceSpec> out;
  for (std::size_t i = 0; i < fj.size(); ++i) {
    auto path = "faces[" + std::to_string(i) + "]";
    FaceSpec fs{face_from_json(require(fj[i], "idx", path), path + ".idx"), {}};
    if (fj[i].contains("dims")) {
      const auto& d = fj[i]["dims"];
      if (!d.is_array() || static_cast<int>(d.size()) != levels)
        throw field_error(path + ".dims", "expected " + std::to_string(levels) + " entries");
      for (std::size_t q = 0; q < d.size(); ++q) fs.dims.push_back(get_dim(d[q], path + ".dims[" + std::to_string(q) + "]"));
    } else {
      if (levels != 1) throw field_error(path + ".dims", "missing");
      fs.dims.push_back(get_dim(require(fj[i], "dim", path), path + ".dim"));
    }
    out.push_back(std::move(fs));
  }
  return out;
}

inline std::vector<SheafOnCover> read_sheaves(const Json& j, const std::vector<FaceSpec>& faces, int levels) {
  std::vector<SheafOnCover> out(levels);
  for (const auto& fs : faces)
    for (int q = 0; q < levels; ++q) {
      std::string name = "s";
      if (levels > 1) name = "L" + std::to_string(q);
      out[q].spaces[fs.face] = LabeledSpace::indexed(name, {}, fs.dims[q]);
    }
  auto dim_of = [&](const Face& f, int q, const std::string& path) -> std::size_t {
    auto it = out[q].spaces.find(f);
    if (it == out[q].spaces.end()) throw field_error(path, "face " + face_name(f) + " is not declared in faces");
    return it->second.dim();
  };
  const auto& rj = require(j, "restrict", "");
  if (!rj.is_array()) throw field_error("restrict", "expected an array");
  for (std::size_t i = 0; i < rj.size(); ++i) {
    auto path = "restrict[" + std::to_string(i) + "]";
    int q = 0;
    if (rj[i].contains("level")) q = static_cast<int>(get_int(rj[i]["level"], path + ".level"));
    if (q < 0 || q >= levels) throw field_error(path + ".level", "out of range");
    Face from = face_from_json(require(rj[i], "from", path), path + ".from");
    Face to = face_from_json(require(rj[i], "to", path), path + ".to");
    out[q].restrict[{from, to}] =
        matrix_from_json(require(rj[i], "matrix", path), dim_of(to, q, path + ".to"), dim_of(from, q, path + ".from"), path + ".matrix");
  }
  return out;
}

}  // namespace detail

struct CoverInput {
  CoverNerve nerve;
  SheafOnCover sheaf;
};

inline CoverInput cover_from_json(const Json& j) {
  int N = static_cast<int>(get_int(require(j, "opens", ""), "opens"));
  auto faces = detail::read_faces(j, 1);
  std::set<Face> fs;
  for (const auto& f : faces) fs.insert(f.face);
  CoverNerve nerve(N, fs);
  auto sheaves = detail::read_sheaves(j, faces, 1);
  return {std::move(nerve), std::move(sheaves[0])};
}

inline Json cover_to_json(const CoverNerve& nerve, const SheafOnCover& sheaf) {
  Json j;
  j["opens"] = nerve.opens();
  Json faces = Json::array(), res = Json::array();
  for (const auto& f : nerve.faces()) faces.push_back(Json{{"idx", face_to_json(f)}, {"dim", sheaf.space(f).dim()}});
  for (const auto& [key, m] : sheaf.restrict)
    res.push_back(Json{{"from", face_to_json(key.first)}, {"to", face_to_json(key.second)}, {"matrix", matrix_to_json(m)}});
  j["faces"] = std::move(faces);
  j["restrict"] = std::move(res);
  return j;
}

inline HyperInput hyper_from_json(const Json& j) {
  int N = static_cast<int>(get_int(require(j, "opens", ""), "opens"));
  int L = static_cast<int>(get_int(require(j, "levels", ""), "levels"));
  if (L < 1) throw field_error("levels", "must be >= 1");
  auto faces = detail::read_faces(j, L);
  std::set<Face> fs;
  for (const auto& f : faces) fs.insert(f.face);
  HyperInput in{CoverNerve(N, fs), detail::read_sheaves(j, faces, L), LevelMaps(L - 1), {}};
  const auto& mj = require(j, "level_maps", "");
  if (!mj.is_array()) throw field_error("level_maps", "expected an array");
  for (std::size_t i = 0; i < mj.size(); ++i) {
    auto path = "level_maps[" + std::to_string(i) + "]";
    int q = static_cast<int>(get_int(require(mj[i], "level", path), path + ".level"));
    if (q < 0 || q + 1 >= L) throw field_error(path + ".level", "must lie in [0, levels-2]");
    Face f = face_from_json(require(mj[i], "idx", path), path + ".idx");
    auto a = in.levels[q].spaces.find(f);
    if (a == in.levels[q].spaces.end()) throw field_error(path + ".idx", "face " + face_name(f) + " is not declared");
    auto b = in.levels[q + 1].spaces.at(f);
    in.maps[q][f] = matrix_from_json(require(mj[i], "matrix", path), b.dim(), a->second.dim(), path + ".matrix");
  }
  return in;
}

inline Json hyper_to_json(const HyperInput& in) {
  const int L = static_cast<int>(in.levels.size());
  Json j;
  j["opens"] = in.nerve.opens();
  j["levels"] = L;
  Json faces = Json::array(), res = Json::array(), maps = Json::array();
  for (const auto& f : in.nerve.faces()) {
    Json dims = Json::array();
    for (int q = 0; q < L; ++q) dims.push_back(in.levels[q].space(f).dim());
    faces.push_back(Json{{"idx", face_to_json(f)}, {"dims", std::move(dims)}});
  }
  for (int q = 0; q < L; ++q)
    for (const auto& [key, m] : in.levels[q].restrict)
      res.push_back(Json{{"level", q}, {"from", face_to_json(key.first)}, {"to", face_to_json(key.second)}, {"matrix", matrix_to_json(m)}});
  for (int q = 0; q + 1 < L; ++q)
    for (const auto& [f, m] : in.maps[q]) maps.push_back(Json{{"level", q}, {"idx", face_to_json(f)}, {"matrix", matrix_to_json(m)}});
  j["faces"] = std::move(faces);
  j["restrict"] = std::move(res);
  j["level_maps"] = std::move(maps);
  return j;
}

// ---- forms: [{"coef":"3/2","exps":[-2,1,0],"dI":[1,3]}], dI 1-based

inline Json form_to_json(const AlgebraicForm& f) {
  Json a = Json::array();
  for (const auto& [key, c] : f.terms()) {
    Json dI = Json::array();
    for (int i : key.dI) dI.push_back(i + 1);
    a.push_back(Json{{"coef", to_string(c)}, {"exps", key.exps}, {"dI", std::move(dI)}});
  }
  return a;
}

inline AlgebraicForm form_from_json(const Json& j, int n) {
  if (!j.is_array() || j.empty()) throw field_error("form", "expected a nonempty array of terms");
  AlgebraicForm out;
  for (std::size_t t = 0; t < j.size(); ++t) {
    auto path = "form[" + std::to_string(t) + "]";
    auto c = rational_from_json(require(j[t], "coef", path), path + ".coef");
    const auto& ej = require(j[t], "exps", path);
    if (!ej.is_array() || static_cast<int>(ej.size()) != n) throw field_error(path + ".exps", "expected n exponents");
    std::vector<int> e;
    for (std::size_t i = 0; i < ej.size(); ++i) e.push_back(static_cast<int>(get_int(ej[i], path + ".exps")));
    std::vector<int> idx;
    for (const auto& x : require(j[t], "dI", path)) {
      auto v = get_int(x, path + ".dI");
      if (v < 1 || v > n) throw field_error(path + ".dI", "index outside 1..n");
      idx.push_back(static_cast<int>(v) - 1);
    }
    auto term = AlgebraicForm::monomial(n, e, idx, c);
    if (t == 0) {
      out = with_degree(AlgebraicForm(n, 0), term.degree());
    } else if (term.degree() != out.degree()) {
      throw field_error(path + ".dI", "terms of different form degree");
    }
    out += term;
  }
  return out;
}

// ---- reports

inline Json dims_to_json(const std::vector<std::size_t>& d) {
  Json a = Json::array();
  for (auto x : d) a.push_back(x);
  return a;
}

/// {"r", "dims":[{"p","q","dim"}], "d_r_ranks":[{"p","q","rank"}]}
inline Json page_to_json(const SpectralPage& page) {
  Json j;
  j["r"] = page.r;
  Json dims = Json::array(), ranks = Json::array();
  for (const auto& [pq, e] : page.entries) dims.push_back(Json{{"p", pq.first}, {"q", pq.second}, {"dim", e.dim}});
  for (const auto& d : page.differentials)
    ranks.push_back(Json{{"p", d.p}, {"q", d.q}, {"to_p", d.tp}, {"to_q", d.tq}, {"rank", d.rank}});
  j["dims"] = std::move(dims);
  j["d_r_ranks"] = std::move(ranks);
  return j;
}

inline Json representatives_to_json(const CohomologyReport& r, const CochainComplex& c) {
  Json a = Json::array();
  for (const auto& d : r.degrees) {
    Json vs = Json::array();
    for (std::size_t j = 0; j < d.representatives.dim(); ++j)
      vs.push_back(describe_vector(d.representatives.basis.column(j), c.space(d.degree)));
    a.push_back(Json{{"degree", d.degree}, {"cocycles", std::move(vs)}});
  }
  return a;
}

}  // namespace cohom::io
