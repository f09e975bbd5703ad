#pragma once

#include "cohom/cohom.hpp"
#include "oracles.hpp"

namespace support {

inline oracle::Rows rows_of(const cohom::Mat& m) {
  oracle::Rows r(m.rows(), std::vector<oracle::Q>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i][j] = m(i, j);
  return r;
}

inline oracle::Grid grid_of(const cohom::DoubleComplex& k) {
  oracle::Grid g;
  g.dims.assign(k.P() + 1, std::vector<std::size_t>(k.Q() + 1));
  g.h.assign(k.P(), std::vector<oracle::Rows>(k.Q() + 1));
  g.v.assign(k.P() + 1, std::vector<oracle::Rows>(k.Q()));
  for (int p = 0; p <= k.P(); ++p)
    for (int q = 0; q <= k.Q(); ++q) {
      g.dims[p][q] = k.dim(p, q);
      if (p < k.P()) g.h[p][q] = rows_of(k.horiz(p, q));
      if (q < k.Q()) g.v[p][q] = rows_of(k.vert(p, q));
    }
  return g;
}

/// Cohomology dims of a complex via the oracle's elimination.
inline std::vector<std::size_t> oracle_dims(const cohom::CochainComplex& c) {
  std::vector<std::size_t> dims, ranks;
  for (int k = c.lo(); k <= c.hi(); ++k) {
    dims.push_back(c.dim(k));
    if (k < c.hi()) ranks.push_back(oracle::rank(rows_of(c.diff(k).matrix)));
  }
  return oracle::dims_from_ranks(dims, ranks);
}

inline cohom::DoubleComplex one_dim_grid(const std::vector<std::vector<std::size_t>>& dims) {
  using cohom::Mat;
  const int P = static_cast<int>(dims.size()) - 1, Q = static_cast<int>(dims[0].size()) - 1;
  std::vector<std::vector<Mat>> h(P, std::vector<Mat>(Q + 1)), v(P + 1, std::vector<Mat>(Q));
  for (int p = 0; p < P; ++p)
    for (int q = 0; q <= Q; ++q) h[p][q] = Mat(dims[p + 1][q], dims[p][q]);
  for (int p = 0; p <= P; ++p)
    for (int q = 0; q < Q; ++q) v[p][q] = Mat(dims[p][q + 1], dims[p][q]);
  return cohom::DoubleComplex::from_dims(dims, std::move(h), std::move(v));
}

/// The 3x3 grid with ℚ at (0,1), (1,1), (1,0), (2,0) and identities
/// δ: (0,1)->(1,1), d: (1,0)->(1,1), δ: (1,0)->(2,0). Its d_2 is nonzero.
inline cohom::DoubleComplex staircase() {
  using cohom::Mat;
  std::vector<std::vector<std::size_t>> dims{{0, 1, 0}, {1, 1, 0}, {1, 0, 0}};
  std::vector<std::vector<Mat>> h(2, std::vector<Mat>(3)), v(3, std::vector<Mat>(2));
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q <= 2; ++q) h[p][q] = Mat(dims[p + 1][q], dims[p][q]);
  for (int p = 0; p <= 2; ++p)
    for (int q = 0; q < 2; ++q) v[p][q] = Mat(dims[p][q + 1], dims[p][q]);
  h[0][1] = Mat::identity(1);
  h[1][0] = Mat::identity(1);
  v[1][0] = Mat::identity(1);
  return cohom::DoubleComplex::from_dims(dims, std::move(h), std::move(v));
}

}  // namespace support
