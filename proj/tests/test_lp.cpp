#include <gtest/gtest.h>

#include <vector>

#include "delo/error.hpp"
#include "delo/lp.hpp"

namespace delo {
namespace {

TEST(Lp, SimpleMaximum) {
  // max x + y s.t. x <= 2, y <= 3, x + y <= 4, -x <= 0, -y <= 0
  const std::vector<double> G{1, 0, 0, 1, 1, 1, -1, 0, 0, -1};
  const std::vector<double> h{2, 3, 4, 0, 0};
  const std::vector<double> c{1, 1};
  const auto s = lp::maximize(c, G, h);
  ASSERT_EQ(s.status, lp::Status::optimal);
  EXPECT_NEAR(s.objective, 4.0, 1e-12);
  EXPECT_LE(s.x[0], 2.0 + 1e-12);
  EXPECT_LE(s.x[1], 3.0 + 1e-12);
}

TEST(Lp, NegativeRightHandSidesNeedPhaseOne) {
  // x >= 1, y >= 2, x + y <= 10; minimize x + y.
  const std::vector<double> G{-1, 0, 0, -1, 1, 1};
  const std::vector<double> h{-1, -2, 10};
  const std::vector<double> c{-1, -1};
  const auto s = lp::maximize(c, G, h);
  ASSERT_EQ(s.status, lp::Status::optimal);
  EXPECT_NEAR(s.x[0], 1.0, 1e-12);
  EXPECT_NEAR(s.x[1], 2.0, 1e-12);
}

TEST(Lp, FreeVariablesGoNegative) {
  // max -x s.t. x >= -7
  const std::vector<double> G{-1};
  const std::vector<double> h{7};
  const std::vector<double> c{-1};
  const auto s = lp::maximize(c, G, h);
  ASSERT_EQ(s.status, lp::Status::optimal);
  EXPECT_NEAR(s.x[0], -7.0, 1e-12);
}

TEST(Lp, Infeasible) {
  // x <= 1 and x >= 2
  const std::vector<double> G{1, -1};
  const std::vector<double> h{1, -2};
  EXPECT_EQ(lp::find_feasible_point(G, h, 1).status, lp::Status::infeasible);
  const std::vector<double> c{1};
  EXPECT_EQ(lp::maximize(c, G, h).status, lp::Status::infeasible);
}

TEST(Lp, Unbounded) {
  const std::vector<double> G{-1, 0};
  const std::vector<double> h{0};
  const std::vector<double> c{1, 0};
  EXPECT_EQ(lp::maximize(c, G, h).status, lp::Status::unbounded);
}

TEST(Lp, FeasiblePointSatisfiesConstraints) {
  // Triangle x >= 0.5, y >= 0.25, x + y <= 1.
  const std::vector<double> G{-1, 0, 0, -1, 1, 1};
  const std::vector<double> h{-0.5, -0.25, 1};
  const auto s = lp::find_feasible_point(G, h, 2);
  ASSERT_EQ(s.status, lp::Status::optimal);
  for (std::size_t r = 0; r < 3; ++r) EXPECT_LE(G[2 * r] * s.x[0] + G[2 * r + 1] * s.x[1], h[r] + 1e-12);
}

TEST(Lp, DegenerateVertexDoesNotCycle) {
  // Classic Beale-type degenerate system; Bland's rule must terminate.
  const std::vector<double> G{0.25, -60, -0.04, 9,   //
                              0.5,  -90, -0.02, 3,   //
                              0,    0,   1,     0,   //
                              -1,   0,   0,     0,   //
                              0,    -1,  0,     0,   //
                              0,    0,   -1,    0,   //
                              0,    0,   0,     -1};
  const std::vector<double> h{0, 0, 1, 0, 0, 0, 0};
  const std::vector<double> c{0.75, -150, 0.02, -6};
  const auto s = lp::maximize(c, G, h);
  ASSERT_EQ(s.status, lp::Status::optimal);
  EXPECT_NEAR(s.objective, 0.05, 1e-12);
}

TEST(Lp, ShapeErrors) {
  const std::vector<double> G{1, 2, 3};
  const std::vector<double> h{1, 2};
  EXPECT_THROW(lp::find_feasible_point(G, h, 2), InputError);
}

}  // namespace
}  // namespace delo
