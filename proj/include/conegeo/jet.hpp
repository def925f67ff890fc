#pragma once

#include <array>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace conegeo {

using Vec3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;

/// Value and first three derivatives of a scalar function at a point.
///
/// Arithmetic propagates derivatives exactly (Leibniz rule for products,
/// Faa di Bruno for composition), so closed-form curves written in terms of
/// Jet get analytic derivatives up to third order for free.
struct Jet {
  std::array<double, 4> d{};

  constexpr Jet() = default;
  constexpr explicit Jet(double value) : d{value, 0.0, 0.0, 0.0} {}
  constexpr Jet(double v, double d1, double d2, double d3) : d{v, d1, d2, d3} {}

  /// The independent variable x evaluated at x0.
  static constexpr Jet variable(double x0) { return {x0, 1.0, 0.0, 0.0}; }

  [[nodiscard]] constexpr double value() const { return d[0]; }
  constexpr double operator[](int k) const { return d[k]; }
};

Jet operator+(const Jet& a, const Jet& b);
Jet operator-(const Jet& a, const Jet& b);
Jet operator-(const Jet& a);
Jet operator*(const Jet& a, const Jet& b);
Jet operator/(const Jet& a, const Jet& b);
Jet operator+(const Jet& a, double b);
Jet operator+(double a, const Jet& b);
Jet operator-(const Jet& a, double b);
Jet operator-(double a, const Jet& b);
Jet operator*(const Jet& a, double b);
Jet operator*(double a, const Jet& b);
Jet operator/(const Jet& a, double b);
Jet operator/(double a, const Jet& b);

/// Chain rule: f is given by its value and derivatives at g.value().
Jet compose(const std::array<double, 4>& f_at_g, const Jet& g);

Jet sqrt(const Jet& x);
Jet sin(const Jet& x);
Jet cos(const Jet& x);
Jet atan(const Jet& x);
Jet exp(const Jet& x);

/// Position and derivatives of order 1..3 of a space curve.
struct PointJet {
  std::array<Vec3, 4> d{Vec3::Zero(), Vec3::Zero(), Vec3::Zero(), Vec3::Zero()};

  [[nodiscard]] const Vec3& position() const { return d[0]; }
};

PointJet make_point_jet(const Jet& x, const Jet& y, const Jet& z);

/// Scalar jet times vector jet.
PointJet operator*(const Jet& scale, const PointJet& p);
PointJet operator+(const PointJet& a, const PointJet& b);

/// Jet of the composite curve s -> p(g(s)), where p_at_g holds the jet of p
/// at the parameter g.value().
PointJet compose(const PointJet& p_at_g, const Jet& g);

/// Unit vector p/|p| with derivatives.
PointJet normalized(const PointJet& p);

}  // namespace conegeo
