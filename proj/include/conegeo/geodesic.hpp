#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "conegeo/classification.hpp"
#include "conegeo/cone.hpp"
#include "conegeo/curve.hpp"

namespace conegeo {

/// Constants of the rectifying family
/// alpha(s) = (1/a) sqrt(1 + (as+b)^2) y(c + arctan(as+b)).
struct RectifyingParams {
  double a = 1.0;
  double b = 0.0;
  double c = 0.0;

  /// Throws InvalidParameters unless a > 0 and all values are finite.
  void validate() const;

  /// [-5/a - b/a, 5/a - b/a], centred on the point closest to the vertex.
  [[nodiscard]] Interval default_domain() const;
};

/// Unit-speed geodesic of Cone(base) in the rectifying family. Analytic
/// derivatives when the base has them. Throws BaseDomainExceeded when the
/// angle c + arctan(as+b) leaves the base domain.
SpaceCurve generate_rectifying(const RectifyingParams& params, const SphericalBaseCurve& base,
                               std::optional<Interval> s_domain = {});

/// Same family on the right circular cone of half-angle psi0.
SpaceCurve generate_circular_geodesic(const RectifyingParams& params, double psi0,
                                      std::optional<Interval> s_domain = {});

/// Closed-form chart u = sqrt(1+(as+b)^2)/a, t = c + arctan(as+b).
ChartCurve rectifying_chart(const RectifyingParams& params, std::optional<Interval> s_domain = {});

struct GeodesicIVP {
  double t0 = 0.0;
  double u0 = 1.0;
  double dt0 = 0.0;
  double du0 = 1.0;
  double length = 1.0;
  double s0 = 0.0;  // arc-length parameter of the initial point
};

struct IntegrationSettings {
  double step = 1e-3;
  /// Allowed relative drift of u^2 t' per unit arc length.
  double max_clairaut_drift = 1e-9;
};

struct IntegratedGeodesic {
  ChartCurve chart;
  std::vector<double> parameters;
  std::vector<ChartState> states;
  double renormalization = 1.0;    // factor applied to (dt0, du0) for unit speed
  double clairaut_drift = 0.0;     // max |C(s) - C(s0)| / |C(s0)| (absolute if C(s0) = 0)
  double clairaut_drift_per_length = 0.0;
  double speed_drift = 0.0;        // max |u'^2 + u^2 t'^2 - 1|
};

/// Classical RK4 on u'' = u t'^2, t'' = -2 u' t' / u (geodesics of the cone
/// metric u^2 dt^2 + du^2) with a fixed step. Throws VertexApproach when u
/// drops below the cone's u_min, BaseDomainExceeded when t leaves the base
/// domain, and StepTooLarge when Clairaut drift exceeds the configured bound.
IntegratedGeodesic integrate_geodesic(const Cone& cone, const GeodesicIVP& ivp,
                                      const IntegrationSettings& settings = {});

/// Points u y(t) of a chart's nodes (or `samples` uniform parameters for
/// closed-form charts).
std::vector<Vec3> embed(const Cone& cone, const ChartCurve& chart, int samples = 1001);

struct GeodesyThresholds {
  double max_abs_kg = 1e-4;
  double clairaut_relvar = 1e-5;
  double alignment = 1e-5;  // required: min |<n,N>| > 1 - alignment
  double straightness = 1e-6;
  double ruling_curvature = kCurvatureFloor;
  double on_cone = 1e-8;  // relative distance accepted by chart_coordinates

  static GeodesyThresholds defaults_for(DerivativeMode mode);
};

enum class Verdict { Geodesic, NotGeodesic, Ruling };

std::string_view verdict_name(Verdict v) noexcept;

struct GeodesyReport {
  double max_abs_kg = 0.0;
  double clairaut_mean = 0.0;
  double clairaut_relvar = 0.0;
  std::optional<double> normal_alignment_min;  // absent on rulings
  double development_straightness_residual = 0.0;
  double development_line_distance = 0.0;
  double max_curvature = 0.0;
  double max_abs_torsion = 0.0;  // over samples with curvature above the floor
  Verdict verdict = Verdict::NotGeodesic;
};

/// Runs both geodesic oracles (geodesic curvature / normal alignment /
/// Clairaut on the surface, straightness of the development in the plane).
/// Throws NotOnCone if the curve leaves the cone.
GeodesyReport verify_geodesic(const Cone& cone, const SpaceCurve& curve,
                              std::optional<GeodesyThresholds> thresholds = {}, int samples = 256);

struct CrossCheckReport {
  RectifyingParams params;
  double psi0 = 0.0;
  ClassificationReport classification;
  SlantAxisFit slant;
  GeodesyReport geodesy;
  Vec3 random_axis = Vec3::UnitX();
  double identity_residual_axis = 0.0;    // max |identity residual| for U = e3
  double identity_residual_random = 0.0;  // max |identity residual| for random_axis
  double axis_angle_error = 0.0;          // radians between fitted axis and e3
  double slant_cos_error = 0.0;           // ||<n,U>| - sin psi0|
  bool rectifying = false;
  bool slant_helix = false;
  bool geodesic = false;
  bool identity_holds = false;
  bool consistent = false;
  std::vector<std::string> falsifications;
};

/// Generates the circular-cone geodesic for (a, b, c, psi0) and checks that
/// it is simultaneously rectifying, a slant helix about the cone axis and a
/// geodesic, and that the classification identity vanishes for e3 and a
/// seeded random axis. `cone` defaults to the circular cone psi0; passing a
/// different cone propagates NotOnCone.
CrossCheckReport cross_check_circular_geodesic(const RectifyingParams& params, double psi0,
                                      std::optional<Cone> cone = {}, std::uint64_t seed = 7);

}  // namespace conegeo
