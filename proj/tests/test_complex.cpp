#include <gtest/gtest.h>

#include "support.hpp"

using namespace cohom;

namespace {

CochainComplex point() { return CochainComplex::from_dims(0, {1}, {}); }

CochainComplex interval_iso() { return CochainComplex::from_dims(0, {1, 1}, {Mat::identity(1)}); }

}  // namespace

TEST(Validate, Examples) {
  EXPECT_NO_THROW(validate(point()));
  EXPECT_NO_THROW(validate(CochainComplex::from_dims(0, {1, 1}, {Mat(1, 1)})));
  try {
    validate(CochainComplex::from_dims(0, {1, 1, 1}, {Mat::identity(1), Mat::identity(1)}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotAComplex);
    EXPECT_NE(std::string(e.what()).find("degree 0"), std::string::npos) << e.what();
  }
}

TEST(Validate, CechComplexIsValid) {
  auto c = build_circle();
  EXPECT_NO_THROW(validate(cech_complex(c.nerve, c.sheaf)));
}

TEST(Cohomology, Examples) {
  EXPECT_EQ(cohomology(point()).dims(), (std::vector<std::size_t>{1}));
  EXPECT_EQ(cohomology(interval_iso()).dims(), (std::vector<std::size_t>{0, 0}));
  auto c = build_circle();
  auto h = cohomology(cech_complex(c.nerve, c.sheaf)).dims();
  EXPECT_EQ(h, (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(h, oracle::simplicial_cohomology({{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}}));
}

TEST(Cohomology, ShiftedDegrees) {
  auto c = CochainComplex::from_dims(-2, {1, 2, 1}, {Mat::from_rows({{1}, {0}}, 1), Mat::from_rows({{0, 1}}, 2)});
  auto r = cohomology(c);
  EXPECT_EQ(r.lo, -2);
  EXPECT_EQ(r.dim(-2), 0u);
  EXPECT_EQ(r.dim(-1), 0u);
  EXPECT_EQ(r.dim(0), 0u);
  EXPECT_EQ(r.dim(5), 0u);
}

TEST(DirectSum, Examples) {
  auto zero = CochainComplex::from_dims(0, {0}, {});
  EXPECT_EQ(cohomology(direct_sum(point(), zero)).dims(), cohomology(point()).dims());
  EXPECT_EQ(cohomology(direct_sum(point(), interval_iso())).dims(), (std::vector<std::size_t>{1, 0}));
}

class ComplexProperty : public ::testing::TestWithParam<int> {};

TEST_P(ComplexProperty, EulerSumAndRepresentatives) {
  gen::Rng rng(3000 + GetParam());
  int lo = gen::uniform(rng, -2, 2);
  auto a = gen::random_complex(rng, lo, gen::random_dims(rng, gen::uniform(rng, 1, 5), 4));
  auto b = gen::random_complex(rng, gen::uniform(rng, -2, 2), gen::random_dims(rng, gen::uniform(rng, 1, 5), 3));
  ASSERT_NO_THROW(validate(a));
  auto ha = cohomology(a);
  EXPECT_EQ(ha.dims(), support::oracle_dims(a));
  long chi = 0;
  for (int k = a.lo(); k <= a.hi(); ++k) chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(ha.dim(k));
  EXPECT_EQ(euler_characteristic(a), chi);
  for (const auto& d : ha.degrees) {
    EXPECT_TRUE((a.diff(d.degree).matrix * d.representatives.basis).is_zero());
    // independent modulo coboundaries
    auto prev = a.diff(d.degree - 1).matrix;
    auto both = hstack(prev, d.representatives.basis);
    EXPECT_EQ(matrix_rank(both), matrix_rank(prev) + d.dim);
  }
  auto aa = cohomology(direct_sum(a, a));
  auto hb = cohomology(b);
  auto ab = cohomology(direct_sum(a, b));
  for (int k = std::min(a.lo(), b.lo()); k <= std::max(a.hi(), b.hi()); ++k) {
    EXPECT_EQ(aa.dim(k), 2 * ha.dim(k));
    EXPECT_EQ(ab.dim(k), ha.dim(k) + hb.dim(k));
  }
}

INSTANTIATE_TEST_SUITE_P(Random, ComplexProperty, ::testing::Range(0, 100));
