#pragma once

#include "conegeo/curve.hpp"

namespace conegeo::curves {

/// Unit-speed circle of the given radius in the plane z = height, centred on
/// the z axis.
SpaceCurve circle(double radius, Interval domain, double height = 0.0);

/// Unit-speed circular helix (R cos(s/c), R sin(s/c), P s/c), c = sqrt(R^2+P^2).
/// Curvature R/c^2, torsion P/c^2.
SpaceCurve helix(double radius, double pitch, Interval domain, const Vec3& offset = Vec3::Zero());

/// Unit-speed helix with prescribed constant curvature and torsion.
SpaceCurve helix_with_curvatures(double kappa, double tau, Interval domain,
                                 const Vec3& offset = Vec3::Zero());

/// origin + s * direction / |direction|.
SpaceCurve straight_line(const Vec3& origin, const Vec3& direction, Interval domain);

}  // namespace conegeo::curves
