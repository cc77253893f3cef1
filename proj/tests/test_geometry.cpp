#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "delo/geometry.hpp"
#include "test_support.hpp"

namespace delo {
namespace {

TEST(Orient, Examples) {
  EXPECT_EQ(orient({Point{0, 0}, Point{1, 0}, Point{0, 1}}), Sign::positive);
  EXPECT_EQ(orient({Point{0, 0}, Point{1, 1}, Point{2, 2}}), Sign::zero);
  EXPECT_EQ(orient({Point{0, 0, 0}, Point{1, 0, 0}, Point{0, 1, 0}, Point{0, 0, 1}}),
            Sign::positive);
  EXPECT_EQ(orient({Point{0, 0}, Point{0, 1}, Point{1, 0}}), Sign::negative);
}

TEST(Orient, StandardSimplexInEveryDimension) {
  for (std::size_t k = 1; k <= kMaxDimension; ++k) {
    std::vector<Point> pts;
    pts.emplace_back(std::vector<double>(k, 0.0));
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<double> e(k, 0.0);
      e[i] = 1.0;
      pts.emplace_back(e);
    }
    std::vector<Coords> s(pts.begin(), pts.end());
    EXPECT_EQ(orient(s), Sign::positive) << "k=" << k;
    std::swap(s[1], s[2 % (k + 1)]);
    if (k >= 2) {
      EXPECT_EQ(orient(s), Sign::negative) << "k=" << k;
    }
  }
}

TEST(Orient, Errors) {
  const Point a{0, 0};
  const Point b{1, 0};
  const Point c{0, 1, 2};
  EXPECT_THROW(orient({a, b}), InputError);
  EXPECT_THROW(orient({a, b, c}), InputError);
  const std::vector<double> bad{0.0, std::numeric_limits<double>::quiet_NaN()};
  EXPECT_THROW(orient({a, b, Coords(bad)}), InputError);
  EXPECT_THROW(Point({1.0, std::numeric_limits<double>::infinity()}), InputError);
}

TEST(Orient, NearlyCollinearIsExact) {
  // Offsets of one ulp from the line y = x must be resolved exactly.
  const double big = std::ldexp(1.0, 60);
  EXPECT_EQ(orient({Point{0, 0}, Point{1, 1}, Point{big, big}}), Sign::zero);
  EXPECT_EQ(orient({Point{0.5, 0.5}, Point{12, 12}, Point{24, 24 + std::ldexp(1.0, -48)}}),
            Sign::positive);
  EXPECT_EQ(orient({Point{0.5, 0.5}, Point{12, 12}, Point{24, 24 - std::ldexp(1.0, -48)}}),
            Sign::negative);
}

TEST(Orient, ExactAgainstRationalOnTinyPerturbations) {
  // Points on the line y = x with an offset of one ulp on the last point; the
  // exact sign is that of the offset.
  for (int e = 1; e <= 40; ++e) {
    const double x = std::ldexp(1.0, e) + 0.125;
    const double up = std::nextafter(x, 2 * x);
    const double down = std::nextafter(x, 0.0);
    EXPECT_EQ(orient({Point{0.125, 0.125}, Point{0.25, 0.25}, Point{x, up}}), Sign::positive);
    EXPECT_EQ(orient({Point{0.125, 0.125}, Point{0.25, 0.25}, Point{x, down}}), Sign::negative);
    EXPECT_EQ(orient({Point{0.125, 0.125}, Point{0.25, 0.25}, Point{x, x}}), Sign::zero);
  }
}

TEST(Orient, FilterAndExactAgreeOnRandomInputs) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::size_t k = 1 + seed % kMaxDimension;
    const PointSet p = testing::random_points(k, k + 2, seed);
    std::vector<predicates::Row> rows;
    for (std::size_t i = 0; i <= k; ++i) rows.push_back(p[i]);
    EXPECT_EQ(predicates::orientation(rows, false), predicates::orientation_exact(rows, false));
    rows.push_back(p[k + 1]);
    EXPECT_EQ(predicates::orientation(rows, true), predicates::orientation_exact(rows, true));
  }
}

TEST(Orient, OutOfFilterRangeFallsBackToExact) {
  const double huge = std::ldexp(1.0, 300);
  const double small = std::ldexp(1.0, -300);
  EXPECT_EQ(orient({Point{0, 0}, Point{huge, 0}, Point{0, huge}}), Sign::positive);
  EXPECT_EQ(orient({Point{0, 0}, Point{small, 0}, Point{0, small}}), Sign::positive);
  EXPECT_EQ(orient({Point{0, 0}, Point{small, small}, Point{2 * small, 2 * small}}), Sign::zero);
}

TEST(InSphere, Examples) {
  const Point a{0, 0};
  const Point b{1, 0};
  const Point c{0, 1};
  EXPECT_EQ(in_sphere({a, b, c}, Point{0.9, 0.9}), Sign::positive);
  EXPECT_EQ(in_sphere({a, b, c}, Point{1, 1}), Sign::zero);
  EXPECT_EQ(in_sphere({a, b, c}, Point{2, 2}), Sign::negative);
}

TEST(InSphere, DegenerateSimplexIsAnError) {
  EXPECT_THROW(in_sphere({Point{0, 0}, Point{1, 1}, Point{2, 2}}, Point{5, 0}),
               GeneralPositionError);
}

TEST(InSphere, PermutationInvariant) {
  const Point a{0.1, -0.3, 0.2};
  const Point b{1.2, 0.4, -0.1};
  const Point c{-0.3, 1.1, 0.5};
  const Point d{0.2, 0.3, 1.4};
  const Point q{0.3, 0.4, 0.5};
  const Sign s = in_sphere({a, b, c, d}, q);
  EXPECT_EQ(s, Sign::positive);
  EXPECT_EQ(in_sphere({b, a, c, d}, q), s);
  EXPECT_EQ(in_sphere({d, c, b, a}, q), s);
  EXPECT_EQ(in_sphere({c, a, d, b}, q), s);
}

TEST(InSphere, TranslationInvariant) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::size_t k = 2 + seed % 3;
    const PointSet p = testing::random_points(k, k + 2, seed);
    std::vector<double> shifted(p.data().begin(), p.data().end());
    for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] += (i % k == 0) ? 8.0 : -4.0;
    const PointSet t(k, shifted);
    std::vector<Coords> s1, s2;
    for (std::size_t i = 0; i <= k; ++i) {
      s1.push_back(p[i]);
      s2.push_back(t[i]);
    }
    EXPECT_EQ(orient(s1), orient(s2));
    EXPECT_EQ(in_sphere(s1, p[k + 1]), in_sphere(s2, t[k + 1]));
  }
}

TEST(InSphere, CocircularRationalPoints) {
  // Points on the circle of radius 5 around (1, 2).
  const Point a{6, 2};
  const Point b{1, 7};
  const Point c{-3, -1};
  EXPECT_EQ(in_sphere({a, b, c}, Point{5, 5}), Sign::zero);
  EXPECT_EQ(in_sphere({a, b, c}, Point{4, -2}), Sign::zero);
  EXPECT_EQ(in_sphere({a, b, c}, Point{5, std::nextafter(5.0, 0.0)}), Sign::positive);
  EXPECT_EQ(in_sphere({a, b, c}, Point{5, std::nextafter(5.0, 6.0)}), Sign::negative);
}

TEST(Lift, Examples) {
  EXPECT_EQ(lift(Point{0, 0}), (Point{0, 0, 0}));
  EXPECT_EQ(lift(Point{3, 4}), (Point{3, 4, 25}));
  EXPECT_EQ(lift(Point{1, 1, 1}), (Point{1, 1, 1, 3}));
  EXPECT_THROW(lift(Point{1e200, 1}), InputError);
}

TEST(Distance, Examples) {
  EXPECT_DOUBLE_EQ(distance(Point{0, 0}, Point{3, 4}), 5.0);
  EXPECT_EQ(distance(Point{1.5, 2}, Point{1.5, 2}), 0.0);
  EXPECT_DOUBLE_EQ(distance(Point{1, 1, 1, 1}, Point{0, 0, 0, 0}), 2.0);
  EXPECT_THROW(distance(Point{0, 0}, Point{0, 0, 0}), InputError);
  EXPECT_DOUBLE_EQ(distance(Point{0, 0}, Point{3e200, 4e200}), 5e200);
}

TEST(PointSet, Validation) {
  EXPECT_THROW(PointSet(0, {1.0}), InputError);
  EXPECT_THROW(PointSet(7, std::vector<double>(7, 0.0)), InputError);
  EXPECT_THROW(PointSet(2, {}), InputError);
  EXPECT_THROW(PointSet(2, {1.0, 2.0, 3.0}), InputError);
  EXPECT_THROW(PointSet(1, {std::numeric_limits<double>::infinity()}), InputError);
  EXPECT_THROW((PointSet{Point{0, 0}, Point{1, 0, 0}}), InputError);
  const PointSet p{Point{0, 0}, Point{1, 2}};
  EXPECT_EQ(p.size(), 2u);
  EXPECT_EQ(p.dim(), 2u);
  EXPECT_EQ(p[1][1], 2.0);
  EXPECT_THROW(p.at(2), InputError);
}

TEST(PointSet, DuplicatesNameThePair) {
  try {
    PointSet p{Point{0, 0}, Point{1, 0}, Point{2, 2}, Point{1, 0}, Point{0, 0}};
    FAIL() << "expected DuplicatePointError";
  } catch (const DuplicatePointError& e) {
    EXPECT_EQ(e.indices(), (std::vector<std::size_t>{1, 3}));
  }
}

TEST(GeneralPosition, Examples) {
  const auto ex = GeneralPositionMode::exhaustive;
  {
    const PointSet p{Point{0, 0}, Point{1, 0}, Point{0, 1}, Point{5, 5}};
    for (auto mode : {GeneralPositionMode::lazy, ex}) EXPECT_TRUE(check_general_position(p, mode).ok());
  }
  {
    const PointSet p{Point{0, 0}, Point{1, 0}, Point{0, 1}, Point{1, 1}};
    for (auto mode : {GeneralPositionMode::lazy, ex}) {
      const auto r = check_general_position(p, mode);
      EXPECT_FALSE(r.ok());
      EXPECT_TRUE(r.spans);
      EXPECT_EQ(r.violation, Degeneracy::cospherical);
      EXPECT_EQ(r.violating_subset, (std::vector<std::size_t>{0, 1, 2, 3}));
    }
  }
  {
    // Three collinear points do not prevent spanning; no four are cocircular.
    const PointSet p{Point{0, 0}, Point{1, 1}, Point{2, 2}, Point{3, 0}};
    for (auto mode : {GeneralPositionMode::lazy, ex}) EXPECT_TRUE(check_general_position(p, mode).ok());
  }
}

TEST(GeneralPosition, NotSpanning) {
  const PointSet p{Point{0, 0, 0}, Point{1, 0, 0}, Point{0, 1, 0}, Point{1, 1, 0}, Point{2, 3, 0}};
  for (auto mode : {GeneralPositionMode::lazy, GeneralPositionMode::exhaustive}) {
    const auto r = check_general_position(p, mode);
    EXPECT_FALSE(r.spans);
    EXPECT_EQ(r.violation, Degeneracy::not_spanning);
  }
}

TEST(GeneralPosition, FourCollinearInThePlaneAreCohyperplanar) {
  const PointSet p{Point{0, 0}, Point{1, 0}, Point{2, 0}, Point{3, 0}, Point{0, 5}, Point{3, 7}};
  const auto r = check_general_position(p, GeneralPositionMode::exhaustive);
  EXPECT_TRUE(r.spans);
  EXPECT_FALSE(r.no_cospherical);
  EXPECT_EQ(r.violation, Degeneracy::cohyperplanar);
  EXPECT_EQ(r.violating_subset, (std::vector<std::size_t>{0, 1, 2, 3}));
}

TEST(GeneralPosition, LazyAndExhaustiveAgreeOnRandomSets) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t k = 2 + seed % 3;
    const PointSet p = testing::random_points(k, 12, seed);
    EXPECT_TRUE(check_general_position(p, GeneralPositionMode::exhaustive).ok());
    EXPECT_TRUE(check_general_position(p).ok());
  }
}

TEST(GeneralPosition, ExhaustiveGuard) {
  const PointSet p = testing::random_points(2, 21, 1);
  EXPECT_THROW(check_general_position(p, GeneralPositionMode::exhaustive), InputError);
}

TEST(Jitter, BreaksCocircularityDeterministically) {
  const std::vector<double> square{0, 0, 1, 0, 0, 1, 1, 1};
  const auto a = jitter(2, square, 11);
  const auto b = jitter(2, square, 11);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, jitter(2, square, 12));
  const double m = kJitterScale * std::sqrt(2.0);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_LE(std::fabs(a[i] - square[i]), m);
  EXPECT_TRUE(check_general_position(PointSet(2, a)).ok());
}

}  // namespace
}  // namespace delo
