#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "conegeo/curve.hpp"

namespace conegeo {

/// Unit-speed curve y(t) on the unit sphere centred at the origin.
///
/// Curves that are not unit-speed are reparametrized by arc length on
/// construction; curves that leave the unit sphere are rejected.
class SphericalBaseCurve {
 public:
  explicit SphericalBaseCurve(const SpaceCurve& curve);

  /// Sampled base read from `t,x,y,z` nodes. Interpolated points are
  /// projected back onto the sphere.
  static SphericalBaseCurve from_samples(std::vector<double> t, std::vector<Vec3> points);

  [[nodiscard]] const SpaceCurve& curve() const { return curve_; }
  [[nodiscard]] Interval domain() const { return curve_.usable_domain(); }
  [[nodiscard]] Vec3 point(double t) const { return curve_.evaluate(t); }
  [[nodiscard]] PointJet jet(double t) const { return curve_.jet(t); }

 private:
  SpaceCurve curve_;
};

/// Base circle of the right circular cone with half-angle psi0:
/// (sin psi0 cos(t/sin psi0), sin psi0 sin(t/sin psi0), cos psi0).
SphericalBaseCurve circular_base(double psi0);

/// The cone u * y(t), u in (0, u_max], vertex at the origin.
class Cone {
 public:
  static Cone circular(double psi0, double u_max = 1e3);
  static Cone general(SphericalBaseCurve base, double u_max = 1e3);

  [[nodiscard]] const SphericalBaseCurve& base() const { return *base_; }
  [[nodiscard]] std::optional<double> half_angle() const { return half_angle_; }
  [[nodiscard]] double u_max() const { return u_max_; }
  /// Chart operations refuse radii below this (the vertex is singular).
  [[nodiscard]] double u_min() const { return 1e-9 * u_max_; }

 private:
  Cone(std::shared_ptr<const SphericalBaseCurve> base, std::optional<double> psi0, double u_max)
      : base_(std::move(base)), half_angle_(psi0), u_max_(u_max) {}

  std::shared_ptr<const SphericalBaseCurve> base_;
  std::optional<double> half_angle_;
  double u_max_;
};

Vec3 cone_point(const Cone& cone, double t, double u);

/// N = (y' x y) / |y' x y|. With this orientation a curve u(s) y(t(s))
/// satisfies alpha x alpha' = -u^2 t'(s) N. Independent of u.
Vec3 surface_normal(const Cone& cone, double t, double u = 1.0);

struct ChartPoint {
  double t = 0.0;
  double u = 0.0;
  double residual = 0.0;  // |u y(t) - point|
};

/// Inverts cone_point. `t_hint` selects the sheet for periodic bases and
/// seeds the Newton search; circular cones use the closed-form azimuth.
/// Throws VertexPoint near the apex and NotOnCone when the residual exceeds
/// tol * u.
ChartPoint chart_coordinates(const Cone& cone, const Vec3& point,
                             std::optional<double> t_hint = {}, double tol = 1e-8);

/// Chart coordinates of consecutive points along a curve with t tracked
/// continuously. When the base covers part of the sphere more than once, each
/// sheet through the first point is tried until one follows the whole
/// sequence without jumping.
std::vector<ChartPoint> track_chart(const Cone& cone, std::span<const Vec3> points,
                                    double tol = 1e-8);

/// <alpha'', N x alpha'> / |alpha'|^3 at s.
double geodesic_curvature(const Cone& cone, const SpaceCurve& curve, double s,
                          std::optional<double> t_hint = {}, double tol = 1e-8);

struct ChartState {
  double t = 0.0;
  double u = 0.0;
  double dt = 0.0;
  double du = 0.0;
};

/// A curve in cone coordinates s -> (t(s), u(s)).
class ChartCurve {
 public:
  using Fn = std::function<ChartState(double)>;

  ChartCurve(Fn fn, Interval domain);

  /// Cubic Hermite interpolation of (t, u) through nodes carrying exact
  /// derivatives.
  static ChartCurve from_samples(std::vector<double> s, std::vector<ChartState> states);

  [[nodiscard]] ChartState at(double s) const;
  [[nodiscard]] const Interval& domain() const { return domain_; }
  [[nodiscard]] std::vector<double> sample_parameters(int count) const;

  /// Nodes of a sampled chart; empty for closed-form charts.
  [[nodiscard]] std::span<const double> node_parameters() const;
  [[nodiscard]] std::span<const ChartState> node_states() const;

 private:
  Fn fn_;
  Interval domain_;
  std::shared_ptr<const std::vector<double>> nodes_;
  std::shared_ptr<const std::vector<ChartState>> states_;
};

/// Chart of a curve lying on the cone, with t unwrapped continuously.
ChartCurve chart_of_curve(const Cone& cone, const SpaceCurve& curve, int samples = 1025,
                          double tol = 1e-8);

/// u(s)^2 t'(s).
double clairaut_invariant(const ChartCurve& chart, double s);

/// |u'^2 + u^2 t'^2 - 1|: deviation of the chart from unit speed.
double chart_speed_defect(const ChartState& state);

struct Development {
  std::vector<double> parameters;
  std::vector<Vec2> points;      // (u cos t, u sin t)
  std::vector<Vec2> velocities;  // d/ds of points
};

/// Isometric unrolling of the cone into the plane in polar coordinates
/// (u, t). Throws NonpositiveRadialCoordinate if u <= 0 anywhere sampled.
Development develop(const ChartCurve& chart, int samples = 256);
Development develop(const ChartCurve& chart, std::span<const double> parameters);

struct LineFit {
  Vec2 centroid = Vec2::Zero();
  Vec2 direction = Vec2::UnitX();
  Vec2 normal = Vec2::UnitY();
  double residual = 0.0;           // max perpendicular distance
  double distance_to_origin = 0.0;
};

/// Total least squares line through planar points.
LineFit fit_line(std::span<const Vec2> points);

/// Polyline length of a development.
double polyline_length(std::span<const Vec2> points);

/// The ruling u -> u y(t0), unit speed in u, over u_range.
SpaceCurve ruling(const Cone& cone, double t0, Interval u_range);

/// The latitude curve s -> u0 y(s / u0) for s / u0 in t_range.
SpaceCurve latitude_circle(const Cone& cone, double u0, Interval t_range);

}  // namespace conegeo
