#include "conegeo/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace conegeo {

// ---------------------------------------------------------------------------
// Closed-form generators

void RectifyingParams::validate() const {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c))
    throw GeometryError(ErrorCode::InvalidParameters, "rectifying constants must be finite");
  if (!(a > 0.0)) throw GeometryError(ErrorCode::InvalidParameters, "a must be positive");
}

Interval RectifyingParams::default_domain() const {
  return {-5.0 / a - b / a, 5.0 / a - b / a};
}

SpaceCurve generate_rectifying(const RectifyingParams& params, const SphericalBaseCurve& base,
                               std::optional<Interval> s_domain) {
  params.validate();
  const Interval d = s_domain.value_or(params.default_domain());
  const auto [a, b, c] = params;
  // The angle is monotone in s, so the endpoints bound it.
  const double t_lo = c + std::atan(a * d.lo + b);
  const double t_hi = c + std::atan(a * d.hi + b);
  const Interval bd = base.domain();
  if (t_lo < bd.lo || t_hi > bd.hi) {
    std::ostringstream os;
    os << "angle range [" << t_lo << ", " << t_hi << "] exceeds base domain [" << bd.lo << ", "
       << bd.hi << "]";
    throw GeometryError(ErrorCode::BaseDomainExceeded, os.str());
  }

  if (base.curve().mode() == DerivativeMode::Analytic) {
    return SpaceCurve::analytic(
        [base, a, b, c](double s) {
          const Jet x = a * Jet::variable(s) + b;
          const Jet radius = sqrt(1.0 + x * x) / a;
          const Jet angle = c + atan(x);
          return radius * compose(base.jet(angle.value()), angle);
        },
        d);
  }
  return SpaceCurve::finite_difference(
      [base, a, b, c](double s) {
        const double x = a * s + b;
        return Vec3(std::sqrt(1.0 + x * x) / a * base.point(c + std::atan(x)));
      },
      d);
}

SpaceCurve generate_circular_geodesic(const RectifyingParams& params, double psi0,
                                      std::optional<Interval> s_domain) {
  return generate_rectifying(params, circular_base(psi0), s_domain);
}

ChartCurve rectifying_chart(const RectifyingParams& params, std::optional<Interval> s_domain) {
  params.validate();
  const auto [a, b, c] = params;
  return ChartCurve(
      [a, b, c](double s) {
        const double x = a * s + b;
        const double w = std::sqrt(1.0 + x * x);
        return ChartState{c + std::atan(x), w / a, a / (w * w), x / w};
      },
      s_domain.value_or(params.default_domain()));
}

// ---------------------------------------------------------------------------
// Geodesic ODE

namespace {

ChartState rhs(const ChartState& y) {
  return {y.dt, y.du, -2.0 * y.du * y.dt / y.u, y.u * y.dt * y.dt};
}

ChartState axpy(const ChartState& y, double h, const ChartState& k) {
  return {y.t + h * k.t, y.u + h * k.u, y.dt + h * k.dt, y.du + h * k.du};
}

ChartState rk4_step(const ChartState& y, double h) {
  const ChartState k1 = rhs(y);
  const ChartState k2 = rhs(axpy(y, 0.5 * h, k1));
  const ChartState k3 = rhs(axpy(y, 0.5 * h, k2));
  const ChartState k4 = rhs(axpy(y, h, k3));
  return {y.t + h / 6.0 * (k1.t + 2.0 * k2.t + 2.0 * k3.t + k4.t),
          y.u + h / 6.0 * (k1.u + 2.0 * k2.u + 2.0 * k3.u + k4.u),
          y.dt + h / 6.0 * (k1.dt + 2.0 * k2.dt + 2.0 * k3.dt + k4.dt),
          y.du + h / 6.0 * (k1.du + 2.0 * k2.du + 2.0 * k3.du + k4.du)};
}

}  // namespace

IntegratedGeodesic integrate_geodesic(const Cone& cone, const GeodesicIVP& ivp,
                                      const IntegrationSettings& settings) {
  if (!(ivp.u0 > 0.0))
    throw GeometryError(ErrorCode::NonpositiveRadialCoordinate, "initial u must be positive");
  if (!(ivp.length > 0.0) || !std::isfinite(ivp.length))
    throw GeometryError(ErrorCode::InvalidParameters, "integration length must be positive");
  if (!(settings.step > 0.0))
    throw GeometryError(ErrorCode::InvalidParameters, "step must be positive");
  const double speed = std::sqrt(ivp.u0 * ivp.u0 * ivp.dt0 * ivp.dt0 + ivp.du0 * ivp.du0);
  if (!(speed > 0.0) || !std::isfinite(speed))
    throw GeometryError(ErrorCode::InvalidParameters, "initial velocity must be nonzero");
  if (ivp.u0 < cone.u_min())
    throw GeometryError(ErrorCode::VertexApproach, "initial point at the vertex");

  const auto steps =
      static_cast<std::size_t>(std::max(1.0, std::ceil(ivp.length / settings.step - 1e-9)));
  const double h = ivp.length / static_cast<double>(steps);
  const Interval base_domain = cone.base().domain();

  ChartState y{ivp.t0, ivp.u0, ivp.dt0 / speed, ivp.du0 / speed};
  const double c0 = y.u * y.u * y.dt;

  std::vector<double> params;
  std::vector<ChartState> states;
  params.reserve(steps + 1);
  states.reserve(steps + 1);
  params.push_back(ivp.s0);
  states.push_back(y);

  IntegratedGeodesic out{ChartCurve([](double) { return ChartState{}; }, {0.0, 1.0}), {}, {}};
  out.renormalization = 1.0 / speed;
  for (std::size_t i = 1; i <= steps; ++i) {
    y = rk4_step(y, h);
    const double s = ivp.s0 + h * static_cast<double>(i);
    if (!(y.u >= cone.u_min())) {
      std::ostringstream os;
      os << "u=" << y.u << " below u_min=" << cone.u_min() << " at s=" << s;
      throw GeometryError(ErrorCode::VertexApproach, os.str());
    }
    if (y.t < base_domain.lo || y.t > base_domain.hi) {
      std::ostringstream os;
      os << "t=" << y.t << " left the base domain at s=" << s;
      throw GeometryError(ErrorCode::BaseDomainExceeded, os.str());
    }
    const double ci = y.u * y.u * y.dt;
    const double drift = std::abs(c0) > 1e-14 ? std::abs(ci - c0) / std::abs(c0) : std::abs(ci - c0);
    out.clairaut_drift = std::max(out.clairaut_drift, drift);
    out.speed_drift = std::max(out.speed_drift, chart_speed_defect(y));
    params.push_back(s);
    states.push_back(y);
  }
  params.back() = ivp.s0 + ivp.length;
  out.clairaut_drift_per_length = out.clairaut_drift / ivp.length;
  if (out.clairaut_drift_per_length > settings.max_clairaut_drift) {
    std::ostringstream os;
    os << "Clairaut drift " << out.clairaut_drift_per_length << " per unit length exceeds "
       << settings.max_clairaut_drift << "; reduce the step";
    throw GeometryError(ErrorCode::StepTooLarge, os.str());
  }
  out.parameters = params;
  out.states = states;
  out.chart = ChartCurve::from_samples(std::move(params), std::move(states));
  return out;
}

std::vector<Vec3> embed(const Cone& cone, const ChartCurve& chart, int samples) {
  std::vector<Vec3> pts;
  if (!chart.node_parameters().empty()) {
    for (const auto& st : chart.node_states()) pts.push_back(cone_point(cone, st.t, st.u));
    return pts;
  }
  for (double s : chart.sample_parameters(samples)) {
    const ChartState st = chart.at(s);
    pts.push_back(cone_point(cone, st.t, st.u));
  }
  return pts;
}

// ---------------------------------------------------------------------------
// Verification

GeodesyThresholds GeodesyThresholds::defaults_for(DerivativeMode mode) {
  GeodesyThresholds t;
  if (mode == DerivativeMode::FiniteDifference) {
    t.max_abs_kg = 1e-3;
    t.clairaut_relvar = 1e-4;
    t.alignment = 1e-4;
    t.straightness = 1e-5;
    t.ruling_curvature = 1e-6;
    t.on_cone = 1e-6;
  }
  return t;
}

std::string_view verdict_name(Verdict v) noexcept {
  switch (v) {
    case Verdict::Geodesic: return "geodesic";
    case Verdict::NotGeodesic: return "not-geodesic";
    case Verdict::Ruling: return "ruling";
  }
  return "not-geodesic";
}

GeodesyReport verify_geodesic(const Cone& cone, const SpaceCurve& curve,
                              std::optional<GeodesyThresholds> thresholds, int samples) {
  const auto th = thresholds.value_or(GeodesyThresholds::defaults_for(curve.mode()));
  GeodesyReport r;
  std::vector<double> clairaut;
  std::vector<Vec2> developed;
  bool any_curved = false;
  double alignment = 1.0;

  const std::vector<double> params = curve.sample_parameters(samples);
  std::vector<PointJet> jets;
  std::vector<Vec3> points;
  for (double s : params) {
    jets.push_back(curve.jet(s));
    points.push_back(jets.back().d[0]);
  }
  const std::vector<ChartPoint> chart = track_chart(cone, points, th.on_cone);

  for (std::size_t k = 0; k < params.size(); ++k) {
    const PointJet& j = jets[k];
    const ChartPoint& cp = chart[k];
    const PointJet y = cone.base().jet(cp.t);
    const Vec3 surface_n = surface_normal(cone, cp.t, cp.u);
    const double speed = j.d[1].norm();
    const Vec3 tangent = j.d[1] / speed;

    const double kg = j.d[2].dot(surface_n.cross(j.d[1])) / (speed * speed * speed);
    r.max_abs_kg = std::max(r.max_abs_kg, std::abs(kg));

    const double kappa = j.d[1].cross(j.d[2]).norm() / (speed * speed * speed);
    r.max_curvature = std::max(r.max_curvature, kappa);
    if (kappa > th.ruling_curvature && kappa > kCurvatureFloor) {
      const FrenetFrame f = frenet_from_jet(j);
      any_curved = true;
      alignment = std::min(alignment, std::abs(f.normal.dot(surface_n)));
      r.max_abs_torsion = std::max(r.max_abs_torsion, std::abs(f.torsion));
    }

    // u^2 dt/ds with t' = <alpha', y'> / u for unit-speed y.
    clairaut.push_back(cp.u * tangent.dot(y.d[1]));
    developed.emplace_back(cp.u * std::cos(cp.t), cp.u * std::sin(cp.t));
  }

  const auto [lo, hi] = std::minmax_element(clairaut.begin(), clairaut.end());
  double mean = 0.0;
  for (double c : clairaut) mean += c;
  mean /= static_cast<double>(clairaut.size());
  r.clairaut_mean = mean;
  const double spread = *hi - *lo;
  const double scale = std::max(std::abs(*lo), std::abs(*hi));
  r.clairaut_relvar = (scale > 1e-12 && std::abs(mean) > 1e-12 * scale) ? spread / std::abs(mean)
                                                                       : spread;

  const LineFit line = fit_line(developed);
  r.development_straightness_residual = line.residual;
  r.development_line_distance = line.distance_to_origin;

  if (any_curved) r.normal_alignment_min = alignment;

  if (!any_curved) {
    r.verdict = Verdict::Ruling;
  } else if (r.max_abs_kg < th.max_abs_kg && r.clairaut_relvar < th.clairaut_relvar &&
             alignment > 1.0 - th.alignment &&
             r.development_straightness_residual < th.straightness) {
    r.verdict = Verdict::Geodesic;
  } else {
    r.verdict = Verdict::NotGeodesic;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Circular-cone cross check

CrossCheckReport cross_check_circular_geodesic(const RectifyingParams& params, double psi0,
                                               std::optional<Cone> cone, std::uint64_t seed) {
  CrossCheckReport r;
  r.params = params;
  r.psi0 = psi0;
  const SpaceCurve curve = generate_circular_geodesic(params, psi0);
  const Cone target = cone.value_or(Cone::circular(psi0));

  r.geodesy = verify_geodesic(target, curve);
  r.geodesic = r.geodesy.verdict == Verdict::Geodesic;

  r.classification = classify_rectifying_or_spherical(curve);
  r.rectifying = r.classification.label == CurveClass::Rectifying;

  r.slant = fit_slant_axis(curve);
  r.slant_helix = r.slant.is_slant_helix;
  // atan2 keeps precision for nearly parallel axes, where acos does not.
  r.axis_angle_error = std::atan2(r.slant.axis.head<2>().norm(), std::abs(r.slant.axis.z()));
  r.slant_cos_error = std::abs(std::abs(r.slant.cos_angle_mean) - std::sin(psi0));

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Vec3 random_axis;
  do {
    random_axis = Vec3(gauss(rng), gauss(rng), gauss(rng));
  } while (random_axis.norm() < 1e-3);
  r.random_axis = random_axis.normalized();

  constexpr double kIdentityTol = 1e-4;
  if (r.rectifying) {
    r.identity_residual_axis =
        classification_identity_residual(curve, Vec3::UnitZ(), r.classification).max_abs;
    r.identity_residual_random =
        classification_identity_residual(curve, r.random_axis, r.classification).max_abs;
    r.identity_holds =
        r.identity_residual_axis < kIdentityTol && r.identity_residual_random < kIdentityTol;
  }

  if (!r.rectifying)
    r.falsifications.push_back(std::string("classification labelled the curve ") +
                               std::string(class_label(r.classification.label)));
  if (!r.slant_helix) r.falsifications.push_back("principal normals do not keep a constant angle");
  if (!r.geodesic)
    r.falsifications.push_back(std::string("geodesy verdict ") +
                               std::string(verdict_name(r.geodesy.verdict)));
  if (r.rectifying && !r.identity_holds)
    r.falsifications.push_back("classification identity residual above tolerance");
  r.consistent = r.falsifications.empty();
  return r;
}

}  // namespace conegeo
