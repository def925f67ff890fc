#include "conegeo/curve_library.hpp"

#include <cmath>

namespace conegeo::curves {

SpaceCurve circle(double radius, Interval domain, double height) {
  if (!(radius > 0.0)) throw GeometryError(ErrorCode::InvalidParameters, "radius must be positive");
  return SpaceCurve::analytic(
      [radius, height](double s) {
        const Jet angle = Jet::variable(s) / radius;
        return make_point_jet(radius * cos(angle), radius * sin(angle), Jet(height));
      },
      domain);
}

SpaceCurve helix(double radius, double pitch, Interval domain, const Vec3& offset) {
  if (!(radius > 0.0)) throw GeometryError(ErrorCode::InvalidParameters, "radius must be positive");
  const double c = std::hypot(radius, pitch);
  return SpaceCurve::analytic(
      [=](double s) {
        const Jet angle = Jet::variable(s) / c;
        return make_point_jet(radius * cos(angle) + offset.x(), radius * sin(angle) + offset.y(),
                              pitch * angle + offset.z());
      },
      domain);
}

SpaceCurve helix_with_curvatures(double kappa, double tau, Interval domain, const Vec3& offset) {
  if (!(kappa > 0.0))
    throw GeometryError(ErrorCode::InvalidParameters, "curvature must be positive");
  const double c2 = kappa * kappa + tau * tau;
  return helix(kappa / c2, tau / c2, domain, offset);
}

SpaceCurve straight_line(const Vec3& origin, const Vec3& direction, Interval domain) {
  const double n = direction.norm();
  if (!(n > 0.0)) throw GeometryError(ErrorCode::InvalidParameters, "zero direction");
  const Vec3 v = direction / n;
  return SpaceCurve::analytic(
      [origin, v](double s) {
        PointJet j;
        j.d[0] = origin + s * v;
        j.d[1] = v;
        return j;
      },
      domain);
}

}  // namespace conegeo::curves
