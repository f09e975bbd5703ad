#pragma once

// Seeded generators of valid inputs: complexes, tensor double/triple
// complexes, function-sheaf covers and closed forms.

#include <random>
#include <set>
#include <vector>

#include "cohom/cech.hpp"
#include "cohom/derham.hpp"

namespace cohom::gen {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

/// Small rational a/b with |a| <= 5, 1 <= b <= 3.
inline Rational small_rational(Rng& rng, bool allow_zero = true) {
  while (true) {
    Rational x(uniform(rng, -5, 5), uniform(rng, 1, 3));
    x.canonicalize();
    if (allow_zero || x != 0) return x;
  }
}

/// Product of random unit lower- and upper-triangular integer matrices.
inline Mat random_invertible(Rng& rng, std::size_t n) {
  Mat lower = Mat::identity(n), upper = Mat::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      lower(i, j) = uniform(rng, -2, 2);
      upper(j, i) = uniform(rng, -2, 2);
    }
  return lower * upper;
}

/// Random matrix with small integer entries.
inline Mat random_matrix(Rng& rng, std::size_t rows, std::size_t cols, int bound = 2) {
  Mat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = uniform(rng, -bound, bound);
  return m;
}

/// Complex with the given dims: a direct sum of shifted pieces 0 -> ℚ -> ℚ -> 0
/// and 0 -> ℚ -> 0 with random ranks, conjugated by random invertible matrices.
inline CochainComplex random_complex(Rng& rng, int lo, const std::vector<std::size_t>& dims) {
  const std::size_t L = dims.size();
  std::vector<std::size_t> ranks(L > 0 ? L - 1 : 0, 0);
  std::size_t prev = 0;
  for (std::size_t k = 0; k + 1 < L; ++k) {
    std::size_t cap = std::min(dims[k] - prev, dims[k + 1]);
    ranks[k] = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(cap)));
    prev = ranks[k];
  }
  std::vector<Mat> g, ginv;
  for (auto d : dims) {
    g.push_back(random_invertible(rng, d));
    ginv.push_back(*inverse(g.back()));
  }
  std::vector<Mat> diffs;
  prev = 0;
  for (std::size_t k = 0; k + 1 < L; ++k) {
    Mat e(dims[k + 1], dims[k]);
    for (std::size_t t = 0; t < ranks[k]; ++t) e(t, prev + t) = 1;
    prev = ranks[k];
    diffs.push_back(g[k + 1] * e * ginv[k]);
  }
  return CochainComplex::from_dims(lo, dims, std::move(diffs));
}

inline std::vector<std::size_t> random_dims(Rng& rng, std::size_t len, int max_dim) {
  std::vector<std::size_t> d(len);
  for (auto& x : d) x = static_cast<std::size_t>(uniform(rng, 0, max_dim));
  return d;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      k.set_block(i * b.rows(), j * b.cols(), a(i, j) * b);
    }
  return k;
}

/// K^{p,q} = A^p ⊗ B^q, δ = d_A ⊗ 1, d = 1 ⊗ d_B. Both complexes start in degree 0.
inline DoubleComplex tensor_double(const CochainComplex& a, const CochainComplex& b) {
  const int P = a.hi(), Q = b.hi();
  std::vector<std::vector<std::size_t>> dims(P + 1, std::vector<std::size_t>(Q + 1));
  std::vector<std::vector<Mat>> horiz(P, std::vector<Mat>(Q + 1)), vert(P + 1, std::vector<Mat>(Q));
  for (int p = 0; p <= P; ++p)
    for (int q = 0; q <= Q; ++q) {
      dims[p][q] = a.dim(p) * b.dim(q);
      if (p < P) horiz[p][q] = kron(a.diff(p).matrix, Mat::identity(b.dim(q)));
      if (q < Q) vert[p][q] = kron(Mat::identity(a.dim(p)), b.diff(q).matrix);
    }
  return DoubleComplex::from_dims(dims, std::move(horiz), std::move(vert));
}

struct TensorCase {
  CochainComplex a, b;
  DoubleComplex k;
};

/// Random tensor double complex with P, Q <= max_bound and cell dims <= 3.
inline TensorCase random_tensor_double(Rng& rng, int max_bound = 3) {
  int P = uniform(rng, 0, max_bound), Q = uniform(rng, 0, max_bound);
  bool wide_a = uniform(rng, 0, 1) == 0;
  auto da = random_dims(rng, P + 1, wide_a ? 3 : 1);
  auto db = random_dims(rng, Q + 1, wide_a ? 1 : 3);
  auto a = random_complex(rng, 0, da);
  auto b = random_complex(rng, 0, db);
  auto k = tensor_double(a, b);
  return {std::move(a), std::move(b), std::move(k)};
}

/// N^{p,q,r} = A^p ⊗ B^q ⊗ C^r with d1 = d_A⊗1⊗1, d2 = 1⊗d_B⊗1, d3 = 1⊗1⊗d_C.
inline TripleComplex tensor_triple(const CochainComplex& a, const CochainComplex& b, const CochainComplex& c) {
  const int P = a.hi(), Q = b.hi(), R = c.hi();
  using Grid = std::vector<std::vector<std::vector<Mat>>>;
  auto grid = [&] { return Grid(P + 1, std::vector<std::vector<Mat>>(Q + 1, std::vector<Mat>(R + 1))); };
  Grid d1 = grid(), d2 = grid(), d3 = grid();
  std::vector<std::vector<std::vector<LabeledSpace>>> cells(
      P + 1, std::vector<std::vector<LabeledSpace>>(Q + 1, std::vector<LabeledSpace>(R + 1)));
  for (int p = 0; p <= P; ++p)
    for (int q = 0; q <= Q; ++q)
      for (int r = 0; r <= R; ++r) {
        cells[p][q][r] = LabeledSpace::indexed(
            "N^{" + std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(r) + "}", {p, q, r},
            a.dim(p) * b.dim(q) * c.dim(r));
        const Mat ia = Mat::identity(a.dim(p)), ib = Mat::identity(b.dim(q)), ic = Mat::identity(c.dim(r));
        if (p < P) d1[p][q][r] = kron(kron(a.diff(p).matrix, ib), ic);
        if (q < Q) d2[p][q][r] = kron(kron(ia, b.diff(q).matrix), ic);
        if (r < R) d3[p][q][r] = kron(kron(ia, ib), c.diff(r).matrix);
      }
  return {std::move(cells), std::move(d1), std::move(d2), std::move(d3)};
}

/// Random 2x2x2 (bounds 1,1,1) tensor triple complex with factor dims <= 2.
inline TripleComplex random_tensor_triple(Rng& rng) {
  auto a = random_complex(rng, 0, random_dims(rng, 2, 2));
  auto b = random_complex(rng, 0, random_dims(rng, 2, 2));
  auto c = random_complex(rng, 0, random_dims(rng, 2, 2));
  return tensor_triple(a, b, c);
}

/// Point sets for up to `max_opens` opens over a universe of up to `max_points` points.
inline std::vector<std::set<int>> random_point_sets(Rng& rng, int max_opens = 5, int max_points = 8) {
  int N = uniform(rng, 1, max_opens), S = uniform(rng, 1, max_points);
  std::vector<std::set<int>> pts(N);
  for (auto& s : pts) {
    for (int x = 0; x < S; ++x)
      if (uniform(rng, 0, 2) > 0) s.insert(x);
    if (s.empty()) s.insert(uniform(rng, 0, S - 1));
  }
  return pts;
}

/// Random q-form whose terms have exponents in the spec's window.
inline AlgebraicForm random_form(Rng& rng, const TorusSpec& spec, int q, int max_terms = 4) {
  AlgebraicForm f(spec.n, q);
  if (q < 0 || q > spec.n) return f;
  auto subs = subsets_of_size(spec.n, q);
  int terms = uniform(rng, 1, max_terms);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> e(spec.n);
    for (int i = 0; i < spec.n; ++i) e[i] = uniform(rng, spec.inverted(i) ? -spec.window : 0, spec.window);
    const auto& I = subs[uniform(rng, 0, static_cast<int>(subs.size()) - 1)];
    f += AlgebraicForm::monomial(spec.n, e, I, small_rational(rng, false));
  }
  return f;
}

struct ClosedFormCase {
  AlgebraicForm phi;
  AlgebraicForm eta;
  LogClassVector classes;
};

/// φ = dη + Σ c_I ω_I.
inline ClosedFormCase random_closed_form(Rng& rng, const TorusSpec& spec, int q) {
  ClosedFormCase c{AlgebraicForm(spec.n, q), random_form(rng, spec, q - 1), LogClassVector::zero(spec.k, q)};
  for (auto& x : c.classes.coeffs) x = small_rational(rng);
  c.phi = exterior_derivative(c.eta) + c.classes.to_form(spec.n);
  return c;
}

}  // namespace cohom::gen
