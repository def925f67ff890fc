#include <gtest/gtest.h>

#include <cmath>

#include "conegeo/jet.hpp"

using namespace conegeo;

namespace {

void expect_jet(const Jet& j, double d0, double d1, double d2, double d3, double tol = 1e-12) {
  EXPECT_NEAR(j[0], d0, tol);
  EXPECT_NEAR(j[1], d1, tol);
  EXPECT_NEAR(j[2], d2, tol);
  EXPECT_NEAR(j[3], d3, tol);
}

}  // namespace

TEST(Jet, ProductOfSinAndExp) {
  const double x = 0.7;
  const Jet f = sin(Jet::variable(x)) * exp(Jet::variable(x));
  const double e = std::exp(x), s = std::sin(x), c = std::cos(x);
  expect_jet(f, e * s, e * (s + c), 2.0 * e * c, 2.0 * e * (c - s));
}

TEST(Jet, Reciprocal) {
  const double x = 1.3;
  expect_jet(1.0 / Jet::variable(x), 1 / x, -1 / (x * x), 2 / (x * x * x), -6 / (x * x * x * x));
}

TEST(Jet, AtanOfAffine) {
  // d/ds atan(2s+1) = 2 / (1 + (2s+1)^2)
  const double s = 0.3;
  const double x = 2 * s + 1;
  const double q = 1 + x * x;
  const Jet f = atan(2.0 * Jet::variable(s) + 1.0);
  expect_jet(f, std::atan(x), 2 / q, -8 * x / (q * q), 8 * (6 * x * x - 2) / (q * q * q));
}

TEST(Jet, SqrtMatchesPower) {
  const double x = 2.5;
  const Jet f = sqrt(Jet::variable(x));
  expect_jet(f, std::sqrt(x), 0.5 * std::pow(x, -0.5), -0.25 * std::pow(x, -1.5),
             0.375 * std::pow(x, -2.5));
}

TEST(Jet, ComposedPointJetMatchesDirectEvaluation) {
  // p(t) = (cos t, sin t, t) composed with t = s^2 equals (cos s^2, sin s^2, s^2).
  const double s = 0.8;
  const Jet g = Jet::variable(s) * Jet::variable(s);
  const Jet t = Jet::variable(g.value());
  const PointJet p = make_point_jet(cos(t), sin(t), t);
  const PointJet composed = compose(p, g);
  const PointJet direct = make_point_jet(cos(g), sin(g), g);
  for (int k = 0; k < 4; ++k) EXPECT_LT((composed.d[k] - direct.d[k]).norm(), 1e-12);
}

TEST(Jet, NormalizedStaysOnSphere) {
  const Jet x = Jet::variable(0.4);
  const PointJet u = normalized(make_point_jet(1.0 + x, 2.0 * x * x, 3.0 - x));
  EXPECT_NEAR(u.d[0].norm(), 1.0, 1e-15);
  // d/ds |u|^2 = 0 and its derivative: <u,u'> = 0, <u',u'> + <u,u''> = 0.
  EXPECT_NEAR(u.d[0].dot(u.d[1]), 0.0, 1e-14);
  EXPECT_NEAR(u.d[1].squaredNorm() + u.d[0].dot(u.d[2]), 0.0, 1e-13);
}
