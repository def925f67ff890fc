#include "conegeo/cone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace conegeo {

namespace {

constexpr double kCircularBaseExtent = 1e3;

bool unit_speed(const SpaceCurve& c, double tol) {
  for (double t : c.sample_parameters(257))
    if (std::abs(c.derivative(t, 1).norm() - 1.0) > tol) return false;
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// Base curves and cones

SphericalBaseCurve::SphericalBaseCurve(const SpaceCurve& curve) : curve_(curve) {
  for (double t : curve.sample_parameters(257)) {
    if (std::abs(curve.evaluate(t).norm() - 1.0) > 1e-10) {
      std::ostringstream os;
      os << "base curve leaves the unit sphere at t=" << t;
      throw GeometryError(ErrorCode::InvalidCurve, os.str());
    }
  }
  const double tol = curve.mode() == DerivativeMode::Analytic ? 1e-9 : 1e-6;
  if (!unit_speed(curve, tol)) curve_ = reparametrize_arclength(curve);
}

SphericalBaseCurve SphericalBaseCurve::from_samples(std::vector<double> t, std::vector<Vec3> points) {
  const SpaceCurve raw = SpaceCurve::sampled(std::move(t), std::move(points));
  const SpaceCurve projected = SpaceCurve::finite_difference(
      [raw](double x) { return Vec3(raw.evaluate(x).normalized()); }, raw.domain(), raw.settings());
  return SphericalBaseCurve(projected);
}

SphericalBaseCurve circular_base(double psi0) {
  if (!(psi0 > 0.0 && psi0 < std::numbers::pi / 2))
    throw GeometryError(ErrorCode::InvalidHalfAngle, "half-angle must lie in (0, pi/2)");
  const double sp = std::sin(psi0);
  const double cp = std::cos(psi0);
  return SphericalBaseCurve(SpaceCurve::analytic(
      [sp, cp](double t) {
        const Jet phi = Jet::variable(t) / sp;
        return make_point_jet(sp * cos(phi), sp * sin(phi), Jet(cp));
      },
      {-kCircularBaseExtent, kCircularBaseExtent}));
}

Cone Cone::circular(double psi0, double u_max) {
  if (!(u_max > 0.0)) throw GeometryError(ErrorCode::InvalidParameters, "u_max must be positive");
  return Cone(std::make_shared<const SphericalBaseCurve>(circular_base(psi0)), psi0, u_max);
}

Cone Cone::general(SphericalBaseCurve base, double u_max) {
  if (!(u_max > 0.0)) throw GeometryError(ErrorCode::InvalidParameters, "u_max must be positive");
  return Cone(std::make_shared<const SphericalBaseCurve>(std::move(base)), std::nullopt, u_max);
}

Vec3 cone_point(const Cone& cone, double t, double u) {
  if (!(u > 0.0))
    throw GeometryError(ErrorCode::NonpositiveRadialCoordinate, "cone points need u > 0");
  return u * cone.base().point(t);
}

Vec3 surface_normal(const Cone& cone, double t, double u) {
  if (!(u > 0.0))
    throw GeometryError(ErrorCode::NonpositiveRadialCoordinate, "cone points need u > 0");
  const PointJet y = cone.base().jet(t);
  const Vec3 n = y.d[1].cross(y.d[0]);
  const double len = n.norm();
  if (len < 1e-8) throw GeometryError(ErrorCode::DegenerateBase, "y' x y vanishes");
  return n / len;
}

// ---------------------------------------------------------------------------
// Chart coordinates

namespace {

// Newton iteration on g(t) = <q - y(t), y'(t)>, the stationarity condition of
// |q - y(t)|^2.
double refine_parameter(const SphericalBaseCurve& base, const Vec3& q, double t) {
  const Interval d = base.domain();
  for (int iter = 0; iter < 16; ++iter) {
    const PointJet y = base.jet(t);
    const Vec3 diff = q - y.d[0];
    const double g = diff.dot(y.d[1]);
    const double dg = -y.d[1].squaredNorm() + diff.dot(y.d[2]);
    if (dg == 0.0) break;
    const double next = std::clamp(t - g / dg, d.lo, d.hi);
    const double step = std::abs(next - t);
    t = next;
    if (step < 1e-12) break;
  }
  return t;
}

ChartPoint finish(const SphericalBaseCurve& base, const Vec3& point, double t, double u) {
  return {t, u, (u * base.point(t) - point).norm()};
}

}  // namespace

ChartPoint chart_coordinates(const Cone& cone, const Vec3& point, std::optional<double> t_hint,
                             double tol) {
  const double u = point.norm();
  if (!(u >= cone.u_min())) throw GeometryError(ErrorCode::VertexPoint, "point at the cone vertex");
  const Vec3 q = point / u;
  const SphericalBaseCurve& base = cone.base();

  ChartPoint best;
  if (const auto psi0 = cone.half_angle()) {
    const double sp = std::sin(*psi0);
    const double period = 2.0 * std::numbers::pi * sp;
    double t = std::atan2(q.y(), q.x()) * sp;
    if (t_hint) t += period * std::round((*t_hint - t) / period);
    best = finish(base, point, t, u);
  } else {
    bool done = false;
    if (t_hint) {
      best = finish(base, point, refine_parameter(base, q, *t_hint), u);
      done = best.residual < tol * u;
    }
    if (!done) {
      const Interval d = base.domain();
      constexpr int kGrid = 1024;
      double t0 = d.lo;
      double dmin = std::numeric_limits<double>::infinity();
      for (int i = 0; i <= kGrid; ++i) {
        const double t = d.lo + d.length() * i / kGrid;
        const double dist = (base.point(t) - q).squaredNorm();
        if (dist < dmin) {
          dmin = dist;
          t0 = t;
        }
      }
      best = finish(base, point, refine_parameter(base, q, t0), u);
    }
  }
  if (!(best.residual < tol * u)) {
    std::ostringstream os;
    os << "distance " << best.residual << " to the cone exceeds " << tol * u;
    throw GeometryError(ErrorCode::NotOnCone, os.str());
  }
  return best;
}

std::vector<ChartPoint> track_chart(const Cone& cone, std::span<const Vec3> points, double tol) {
  if (points.empty()) return {};
  const Vec3& first = points.front();
  const double u0 = first.norm();
  if (!(u0 >= cone.u_min())) throw GeometryError(ErrorCode::VertexPoint, "point at the cone vertex");

  // Candidate sheets for the first point.
  std::vector<double> starts;
  if (cone.half_angle()) {
    starts.push_back(chart_coordinates(cone, first, std::nullopt, tol).t);
  } else {
    const SphericalBaseCurve& base = cone.base();
    const Interval d = base.domain();
    const Vec3 q = first / u0;
    constexpr int kGrid = 1024;
    std::vector<double> dist(kGrid + 1);
    for (int i = 0; i <= kGrid; ++i) dist[i] = (base.point(d.lo + d.length() * i / kGrid) - q).squaredNorm();
    std::vector<std::pair<double, double>> found;  // residual, t
    for (int i = 0; i <= kGrid; ++i) {
      const bool left = i == 0 || dist[i] <= dist[i - 1];
      const bool right = i == kGrid || dist[i] <= dist[i + 1];
      if (!left || !right) continue;
      const ChartPoint c = finish(base, first, refine_parameter(base, q, d.lo + d.length() * i / kGrid), u0);
      if (c.residual < tol * u0) found.emplace_back(c.residual, c.t);
    }
    std::sort(found.begin(), found.end());
    for (const auto& [res, t] : found) starts.push_back(t);
    if (starts.empty()) starts.push_back(chart_coordinates(cone, first, std::nullopt, tol).t);
  }

  std::optional<GeometryError> first_error;
  for (double t0 : starts) {
    std::vector<ChartPoint> out;
    out.reserve(points.size());
    double prev_t = t0;
    try {
      for (std::size_t k = 0; k < points.size(); ++k) {
        const ChartPoint c = chart_coordinates(cone, points[k], prev_t, tol);
        if (k > 0) {
          // |dt| <= |d alpha| / u for the cone metric u^2 dt^2 + du^2.
          const double u = std::min(c.u, out.back().u);
          const double limit = 4.0 * (points[k] - points[k - 1]).norm() / u + 1e-9;
          if (std::abs(c.t - prev_t) > limit) {
            std::ostringstream os;
            os << "chart jumps from t=" << prev_t << " to t=" << c.t << " at sample " << k;
            throw GeometryError(ErrorCode::NotOnCone, os.str());
          }
        }
        out.push_back(c);
        prev_t = c.t;
      }
      return out;
    } catch (const GeometryError& e) {
      if (e.code() != ErrorCode::NotOnCone) throw;
      if (!first_error) first_error = e;
    }
  }
  throw *first_error;
}

double geodesic_curvature(const Cone& cone, const SpaceCurve& curve, double s,
                          std::optional<double> t_hint, double tol) {
  const PointJet j = curve.jet(s);
  const ChartPoint c = chart_coordinates(cone, j.d[0], t_hint, tol);
  const Vec3 n = surface_normal(cone, c.t, c.u);
  const double speed = j.d[1].norm();
  return j.d[2].dot(n.cross(j.d[1])) / (speed * speed * speed);
}

// ---------------------------------------------------------------------------
// Chart curves

ChartCurve::ChartCurve(Fn fn, Interval domain) : fn_(std::move(fn)), domain_(domain) {
  if (!(domain.lo < domain.hi))
    throw GeometryError(ErrorCode::InvalidCurve, "degenerate chart domain");
}

ChartCurve ChartCurve::from_samples(std::vector<double> s, std::vector<ChartState> states) {
  if (s.size() != states.size() || s.size() < 2)
    throw GeometryError(ErrorCode::InvalidCurve, "need at least two matching chart samples");
  for (std::size_t i = 1; i < s.size(); ++i)
    if (!(s[i] > s[i - 1]))
      throw GeometryError(ErrorCode::InvalidCurve, "chart parameters must strictly increase");

  auto xs = std::make_shared<const std::vector<double>>(std::move(s));
  auto st = std::make_shared<const std::vector<ChartState>>(std::move(states));
  auto fn = [xs, st](double x) -> ChartState {
    auto it = std::upper_bound(xs->begin(), xs->end(), x);
    std::size_t i = (it == xs->begin()) ? 0 : static_cast<std::size_t>(it - xs->begin()) - 1;
    i = std::min(i, xs->size() - 2);
    const double h = (*xs)[i + 1] - (*xs)[i];
    const double r = (x - (*xs)[i]) / h;
    const double r2 = r * r;
    const double r3 = r2 * r;
    const double h00 = 2 * r3 - 3 * r2 + 1, h10 = r3 - 2 * r2 + r;
    const double h01 = -2 * r3 + 3 * r2, h11 = r3 - r2;
    const double d00 = (6 * r2 - 6 * r) / h, d10 = 3 * r2 - 4 * r + 1;
    const double d01 = (-6 * r2 + 6 * r) / h, d11 = 3 * r2 - 2 * r;
    const ChartState& a = (*st)[i];
    const ChartState& b = (*st)[i + 1];
    ChartState out;
    out.t = h00 * a.t + h10 * h * a.dt + h01 * b.t + h11 * h * b.dt;
    out.u = h00 * a.u + h10 * h * a.du + h01 * b.u + h11 * h * b.du;
    out.dt = d00 * a.t + d10 * a.dt + d01 * b.t + d11 * b.dt;
    out.du = d00 * a.u + d10 * a.du + d01 * b.u + d11 * b.du;
    return out;
  };
  ChartCurve c(std::move(fn), {xs->front(), xs->back()});
  c.nodes_ = std::move(xs);
  c.states_ = std::move(st);
  return c;
}

ChartState ChartCurve::at(double s) const {
  const double e = 1e-12 * std::max(1.0, domain_.length());
  if (!(s >= domain_.lo - e && s <= domain_.hi + e)) {
    std::ostringstream os;
    os.precision(17);
    os << "s=" << s << " outside chart domain [" << domain_.lo << ", " << domain_.hi << "]";
    throw GeometryError(ErrorCode::ParameterOutOfDomain, os.str());
  }
  return fn_(std::clamp(s, domain_.lo, domain_.hi));
}

std::vector<double> ChartCurve::sample_parameters(int count) const {
  if (count < 2) throw GeometryError(ErrorCode::InsufficientSamples, "need at least 2 samples");
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    out[static_cast<std::size_t>(i)] = domain_.lo + domain_.length() * i / (count - 1);
  out.back() = domain_.hi;
  return out;
}

std::span<const double> ChartCurve::node_parameters() const {
  if (!nodes_) return {};
  return *nodes_;
}

std::span<const ChartState> ChartCurve::node_states() const {
  if (!states_) return {};
  return *states_;
}

ChartCurve chart_of_curve(const Cone& cone, const SpaceCurve& curve, int samples, double tol) {
  std::vector<double> params = curve.sample_parameters(samples);
  std::vector<Vec3> points;
  points.reserve(params.size());
  for (double s : params) points.push_back(curve.evaluate(s));
  const std::vector<ChartPoint> chart = track_chart(cone, points, tol);
  std::vector<ChartState> states;
  states.reserve(params.size());
  for (std::size_t k = 0; k < params.size(); ++k) {
    const ChartPoint& c = chart[k];
    const Vec3 v = curve.derivative(params[k], 1);
    const Vec3 dy = cone.base().jet(c.t).d[1];
    // alpha' = u' y + u t' y' with y, y' orthonormal.
    states.push_back({c.t, c.u, v.dot(dy) / c.u, points[k].dot(v) / c.u});
  }
  return ChartCurve::from_samples(std::move(params), std::move(states));
}

double clairaut_invariant(const ChartCurve& chart, double s) {
  const ChartState st = chart.at(s);
  return st.u * st.u * st.dt;
}

double chart_speed_defect(const ChartState& st) {
  return std::abs(st.du * st.du + st.u * st.u * st.dt * st.dt - 1.0);
}

// ---------------------------------------------------------------------------
// Development

Development develop(const ChartCurve& chart, std::span<const double> parameters) {
  Development dev;
  dev.parameters.assign(parameters.begin(), parameters.end());
  dev.points.reserve(parameters.size());
  dev.velocities.reserve(parameters.size());
  for (double s : parameters) {
    const ChartState st = chart.at(s);
    if (!(st.u > 0.0)) {
      std::ostringstream os;
      os << "u=" << st.u << " at s=" << s;
      throw GeometryError(ErrorCode::NonpositiveRadialCoordinate, os.str());
    }
    const Vec2 radial(std::cos(st.t), std::sin(st.t));
    const Vec2 angular(-radial.y(), radial.x());
    dev.points.push_back(st.u * radial);
    dev.velocities.push_back(st.du * radial + st.u * st.dt * angular);
  }
  return dev;
}

Development develop(const ChartCurve& chart, int samples) {
  const auto params = chart.sample_parameters(samples);
  return develop(chart, params);
}

LineFit fit_line(std::span<const Vec2> points) {
  LineFit fit;
  if (points.empty()) return fit;
  for (const auto& p : points) fit.centroid += p;
  fit.centroid /= static_cast<double>(points.size());
  Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
  for (const auto& p : points) cov += (p - fit.centroid) * (p - fit.centroid).transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(cov);
  fit.normal = eig.eigenvectors().col(0).normalized();
  fit.direction = eig.eigenvectors().col(1).normalized();
  for (const auto& p : points)
    fit.residual = std::max(fit.residual, std::abs((p - fit.centroid).dot(fit.normal)));
  fit.distance_to_origin = std::abs(fit.centroid.dot(fit.normal));
  return fit;
}

double polyline_length(std::span<const Vec2> points) {
  double len = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) len += (points[i] - points[i - 1]).norm();
  return len;
}

// ---------------------------------------------------------------------------
// Special curves on a cone

SpaceCurve ruling(const Cone& cone, double t0, Interval u_range) {
  const Interval d = cone.base().domain();
  if (!(t0 >= d.lo && t0 <= d.hi))
    throw GeometryError(ErrorCode::ParameterOutOfDomain, "ruling angle outside base domain");
  if (!(u_range.lo > 0.0))
    throw GeometryError(ErrorCode::NonpositiveRadialCoordinate, "ruling must stay off the vertex");
  const Vec3 y = cone.base().point(t0);
  return SpaceCurve::analytic(
      [y](double u) {
        PointJet j;
        j.d[0] = u * y;
        j.d[1] = y;
        return j;
      },
      u_range);
}

SpaceCurve latitude_circle(const Cone& cone, double u0, Interval t_range) {
  if (!(u0 > 0.0))
    throw GeometryError(ErrorCode::NonpositiveRadialCoordinate, "latitude radius must be positive");
  const SphericalBaseCurve& base = cone.base();
  const Interval s_range{u0 * t_range.lo, u0 * t_range.hi};
  if (base.curve().mode() == DerivativeMode::Analytic) {
    auto b = cone.base();
    return SpaceCurve::analytic(
        [b, u0](double s) {
          const Jet t = Jet::variable(s) / u0;
          return Jet(u0) * compose(b.jet(t.value()), t);
        },
        s_range);
  }
  auto b = cone.base();
  return SpaceCurve::finite_difference([b, u0](double s) { return Vec3(u0 * b.point(s / u0)); },
                                       s_range);
}

}  // namespace conegeo
