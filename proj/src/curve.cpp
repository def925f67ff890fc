#include "conegeo/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

namespace conegeo {

namespace {

std::string describe(double s, const Interval& d) {
  std::ostringstream os;
  os.precision(17);
  os << "s=" << s << " outside [" << d.lo << ", " << d.hi << "]";
  return os.str();
}

double slop(const Interval& d) { return 1e-12 * std::max(1.0, d.length()); }

// Derivative weights at x[i] of the Lagrange interpolant through x.
std::vector<double> lagrange_derivative_weights(const std::vector<double>& x, std::size_t i) {
  const std::size_t n = x.size();
  std::vector<double> w(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i) {
      double sum = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        if (k != i) sum += 1.0 / (x[i] - x[k]);
      w[j] = sum;
      continue;
    }
    double prod = 1.0 / (x[j] - x[i]);
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i || k == j) continue;
      prod *= (x[i] - x[k]) / (x[j] - x[k]);
    }
    w[j] = prod;
  }
  return w;
}

// Node tangents from five-point (or fewer) nonuniform Lagrange stencils.
std::vector<Vec3> hermite_tangents(const std::vector<double>& s, const std::vector<Vec3>& p) {
  const std::size_t n = s.size();
  const std::size_t width = std::min<std::size_t>(5, n);
  std::vector<Vec3> m(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t first = (i >= width / 2) ? i - width / 2 : 0;
    first = std::min(first, n - width);
    std::vector<double> xs(s.begin() + first, s.begin() + first + width);
    const auto w = lagrange_derivative_weights(xs, i - first);
    Vec3 acc = Vec3::Zero();
    for (std::size_t k = 0; k < width; ++k) acc += w[k] * p[first + k];
    m[i] = acc;
  }
  return m;
}

double simpson_step(const std::function<double(double)>& f, double a, double b, double fa,
                    double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth) {
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

// ---------------------------------------------------------------------------
// DerivativeSettings

DerivativeSettings DerivativeSettings::for_domain(const Interval& domain) {
  return {1e-4 * domain.length(), 4};
}

void DerivativeSettings::validate(const Interval& domain) const {
  if (!(step > 0.0) || step > domain.length() / 100.0)
    throw GeometryError(ErrorCode::InvalidCurve,
                        "finite-difference step must satisfy 0 < h <= |domain|/100");
  if (scheme != 2 && scheme != 4)
    throw GeometryError(ErrorCode::InvalidCurve, "difference scheme must be 2 or 4");
}

double DerivativeSettings::margin() const { return (scheme == 4 ? 3.0 : 2.0) * step; }

// ---------------------------------------------------------------------------
// SpaceCurve

SpaceCurve SpaceCurve::analytic(JetFn fn, Interval domain) {
  if (!(domain.lo < domain.hi))
    throw GeometryError(ErrorCode::InvalidCurve, "degenerate parameter domain");
  SpaceCurve c;
  c.kind_ = CurveKind::ClosedForm;
  c.mode_ = DerivativeMode::Analytic;
  c.domain_ = domain;
  c.settings_ = DerivativeSettings::for_domain(domain);
  c.jet_fn_ = std::move(fn);
  return c;
}

SpaceCurve SpaceCurve::finite_difference(PointFn fn, Interval domain,
                                         std::optional<DerivativeSettings> settings) {
  if (!(domain.lo < domain.hi))
    throw GeometryError(ErrorCode::InvalidCurve, "degenerate parameter domain");
  SpaceCurve c;
  c.kind_ = CurveKind::ClosedForm;
  c.mode_ = DerivativeMode::FiniteDifference;
  c.domain_ = domain;
  c.settings_ = settings.value_or(DerivativeSettings::for_domain(domain));
  c.settings_.validate(domain);
  c.point_fn_ = std::move(fn);
  return c;
}

SpaceCurve SpaceCurve::sampled(std::vector<double> params, std::vector<Vec3> points,
                               std::optional<DerivativeSettings> settings) {
  if (params.size() != points.size() || params.size() < 2)
    throw GeometryError(ErrorCode::InvalidCurve, "need at least two matching samples");
  for (std::size_t i = 1; i < params.size(); ++i)
    if (!(params[i] > params[i - 1]))
      throw GeometryError(ErrorCode::InvalidCurve, "sample parameters must strictly increase");
  for (const auto& p : points)
    if (!p.allFinite()) throw GeometryError(ErrorCode::InvalidCurve, "non-finite sample");

  auto s = std::make_shared<const std::vector<double>>(std::move(params));
  auto p = std::make_shared<const std::vector<Vec3>>(std::move(points));
  auto m = std::make_shared<const std::vector<Vec3>>(hermite_tangents(*s, *p));

  const Interval domain{s->front(), s->back()};
  auto fn = [s, p, m](double t) -> Vec3 {
    const auto& xs = *s;
    auto it = std::upper_bound(xs.begin(), xs.end(), t);
    std::size_t i = (it == xs.begin()) ? 0 : static_cast<std::size_t>(it - xs.begin()) - 1;
    i = std::min(i, xs.size() - 2);
    const double h = xs[i + 1] - xs[i];
    const double x = (t - xs[i]) / h;
    const double x2 = x * x;
    const double x3 = x2 * x;
    const double h00 = 2.0 * x3 - 3.0 * x2 + 1.0;
    const double h10 = x3 - 2.0 * x2 + x;
    const double h01 = -2.0 * x3 + 3.0 * x2;
    const double h11 = x3 - x2;
    return h00 * (*p)[i] + h10 * h * (*m)[i] + h01 * (*p)[i + 1] + h11 * h * (*m)[i + 1];
  };

  SpaceCurve c = finite_difference(std::move(fn), domain, settings);
  c.kind_ = CurveKind::Sampled;
  c.node_params_ = std::move(s);
  c.node_points_ = std::move(p);
  return c;
}

Interval SpaceCurve::usable_domain() const {
  if (mode_ == DerivativeMode::Analytic) return domain_;
  const double m = settings_.margin();
  return {domain_.lo + m, domain_.hi - m};
}

std::vector<double> SpaceCurve::sample_parameters(int count) const {
  if (count < 2) throw GeometryError(ErrorCode::InsufficientSamples, "need at least 2 samples");
  const Interval d = usable_domain();
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    out[static_cast<std::size_t>(i)] = d.lo + d.length() * static_cast<double>(i) / (count - 1);
  out.back() = d.hi;
  return out;
}

double SpaceCurve::check_domain(double s) const {
  const double e = slop(domain_);
  if (!(s >= domain_.lo - e && s <= domain_.hi + e))
    throw GeometryError(ErrorCode::ParameterOutOfDomain, describe(s, domain_));
  return std::clamp(s, domain_.lo, domain_.hi);
}

Vec3 SpaceCurve::evaluate(double s) const {
  s = check_domain(s);
  if (mode_ == DerivativeMode::Analytic) return jet_fn_(s).d[0];
  return point_fn_(s);
}

Vec3 SpaceCurve::difference(double s, int order) const {
  const double h = settings_.step;
  auto f = [this](double x) { return point_fn_(std::clamp(x, domain_.lo, domain_.hi)); };
  if (settings_.scheme == 2) {
    switch (order) {
      case 1: return (f(s + h) - f(s - h)) / (2.0 * h);
      case 2: return (f(s + h) - 2.0 * f(s) + f(s - h)) / (h * h);
      default:
        return (f(s + 2 * h) - 2.0 * f(s + h) + 2.0 * f(s - h) - f(s - 2 * h)) / (2.0 * h * h * h);
    }
  }
  switch (order) {
    case 1: return (-f(s + 2 * h) + 8.0 * f(s + h) - 8.0 * f(s - h) + f(s - 2 * h)) / (12.0 * h);
    case 2:
      return (-f(s + 2 * h) + 16.0 * f(s + h) - 30.0 * f(s) + 16.0 * f(s - h) - f(s - 2 * h)) /
             (12.0 * h * h);
    default:
      return (-f(s + 3 * h) + 8.0 * f(s + 2 * h) - 13.0 * f(s + h) + 13.0 * f(s - h) -
              8.0 * f(s - 2 * h) + f(s - 3 * h)) /
             (8.0 * h * h * h);
  }
}

Vec3 SpaceCurve::derivative(double s, int order) const {
  if (order < 1 || order > 3)
    throw GeometryError(ErrorCode::InvalidParameters, "derivative order must be 1, 2 or 3");
  s = check_domain(s);
  if (mode_ == DerivativeMode::Analytic) return jet_fn_(s).d[static_cast<std::size_t>(order)];

  // Stencil half-widths: order-4 scheme reaches 2h (orders 1, 2) and 3h.
  const double reach =
      settings_.step * (settings_.scheme == 4 ? (order == 3 ? 3.0 : 2.0) : (order == 3 ? 2.0 : 1.0));
  const double e = slop(domain_);
  if (s - reach < domain_.lo - e || s + reach > domain_.hi + e) {
    std::ostringstream os;
    os.precision(17);
    os << "s=" << s << " needs margin " << reach << " inside [" << domain_.lo << ", "
       << domain_.hi << "]";
    throw GeometryError(ErrorCode::InsufficientMargin, os.str());
  }
  return difference(s, order);
}

PointJet SpaceCurve::jet(double s) const {
  if (mode_ == DerivativeMode::Analytic) return jet_fn_(check_domain(s));
  PointJet j;
  j.d[0] = evaluate(s);
  for (int k = 1; k <= 3; ++k) j.d[static_cast<std::size_t>(k)] = derivative(s, k);
  return j;
}

const std::vector<double>& SpaceCurve::node_parameters() const {
  if (!node_params_) throw GeometryError(ErrorCode::InvalidCurve, "curve has no sample nodes");
  return *node_params_;
}

const std::vector<Vec3>& SpaceCurve::node_points() const {
  if (!node_points_) throw GeometryError(ErrorCode::InvalidCurve, "curve has no sample nodes");
  return *node_points_;
}

// ---------------------------------------------------------------------------
// Frenet apparatus

FrenetFrame frenet_from_jet(const PointJet& jet, double kappa_floor) {
  const Vec3& d1 = jet.d[1];
  const Vec3& d2 = jet.d[2];
  const Vec3& d3 = jet.d[3];
  const double speed = d1.norm();
  if (!(speed > 0.0)) throw GeometryError(ErrorCode::SingularSpeed, "zero velocity");
  const Vec3 c = d1.cross(d2);
  const double cn = c.norm();
  const double kappa = cn / (speed * speed * speed);
  if (!(kappa > kappa_floor)) {
    std::ostringstream os;
    os << "curvature " << kappa << " <= floor " << kappa_floor;
    throw GeometryError(ErrorCode::VanishingCurvature, os.str());
  }
  FrenetFrame f;
  f.tangent = d1 / speed;
  f.binormal = c / cn;
  f.normal = f.binormal.cross(f.tangent);
  f.curvature = kappa;
  f.torsion = c.dot(d3) / (cn * cn);
  return f;
}

FrenetFrame frenet_apparatus(const SpaceCurve& curve, double s, double kappa_floor) {
  return frenet_from_jet(curve.jet(s), kappa_floor);
}

double curvature(const SpaceCurve& curve, double s) {
  const Vec3 d1 = curve.derivative(s, 1);
  const Vec3 d2 = curve.derivative(s, 2);
  const double speed = d1.norm();
  if (!(speed > 0.0)) throw GeometryError(ErrorCode::SingularSpeed, "zero velocity");
  return d1.cross(d2).norm() / (speed * speed * speed);
}

double cross_magnitude(const SpaceCurve& curve, double s) {
  return curve.evaluate(s).cross(curve.derivative(s, 1)).norm();
}

// ---------------------------------------------------------------------------
// Arc-length reparametrization

namespace {

class ArcLengthMap {
 public:
  ArcLengthMap(const SpaceCurve& curve, double tolerance) : curve_(curve), tol_(tolerance) {
    const Interval d = curve.usable_domain();
    constexpr int kIntervals = 256;
    constexpr int kProbe = 8;

    double vmax = 0.0;
    double vmin = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= kIntervals * kProbe; ++i) {
      const double t = d.lo + d.length() * i / (kIntervals * kProbe);
      const double v = speed(t);
      vmax = std::max(vmax, v);
      vmin = std::min(vmin, v);
    }
    if (!(vmax > 0.0) || vmin < 1e-12 * vmax)
      throw GeometryError(ErrorCode::SingularSpeed, "speed vanishes on the domain");

    tau_.resize(kIntervals + 1);
    sigma_.resize(kIntervals + 1);
    tau_[0] = d.lo;
    sigma_[0] = 0.0;
    for (int i = 1; i <= kIntervals; ++i) {
      tau_[i] = (i == kIntervals) ? d.hi : d.lo + d.length() * i / kIntervals;
      sigma_[i] = sigma_[i - 1] + integrate(tau_[i - 1], tau_[i]);
    }
  }

  [[nodiscard]] double length() const { return sigma_.back(); }
  [[nodiscard]] double origin() const { return tau_.front(); }

  [[nodiscard]] double speed(double t) const { return curve_.derivative(t, 1).norm(); }

  // Parameter tau at which the arc length from the origin equals sigma.
  [[nodiscard]] double invert(double sigma) const {
    sigma = std::clamp(sigma, 0.0, length());
    auto it = std::upper_bound(sigma_.begin(), sigma_.end(), sigma);
    std::size_t k = (it == sigma_.begin()) ? 0 : static_cast<std::size_t>(it - sigma_.begin()) - 1;
    k = std::min(k, sigma_.size() - 2);
    double lo = tau_[k];
    double hi = tau_[k + 1];
    const double frac = (sigma - sigma_[k]) / (sigma_[k + 1] - sigma_[k]);
    double t = lo + frac * (hi - lo);
    const double target = tol_ * 1e-2 * std::max(1.0, length());
    for (int iter = 0; iter < 50; ++iter) {
      const double f = sigma_[k] + integrate(tau_[k], t) - sigma;
      if (std::abs(f) <= target) break;
      if (f > 0.0) hi = t; else lo = t;
      double next = t - f / speed(t);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      t = next;
    }
    return t;
  }

 private:
  double integrate(double a, double b) const {
    return adaptive_simpson([this](double t) { return speed(t); }, a, b,
                            tol_ * 1e-2 * std::max(std::abs(b - a), 1e-6));
  }

  SpaceCurve curve_;
  double tol_;
  std::vector<double> tau_;
  std::vector<double> sigma_;
};

}  // namespace

SpaceCurve reparametrize_arclength(const SpaceCurve& curve, double tolerance) {
  auto map = std::make_shared<const ArcLengthMap>(curve, tolerance);
  const double origin = map->origin();
  const Interval domain{origin, origin + map->length()};

  if (curve.mode() == DerivativeMode::Analytic) {
    auto fn = [curve, map, origin](double sigma) -> PointJet {
      const double tau = map->invert(sigma - origin);
      const PointJet j = curve.jet(tau);
      const double v = j.d[1].norm();
      const double v1 = j.d[1].dot(j.d[2]) / v;
      const double v2 = (j.d[2].squaredNorm() + j.d[1].dot(j.d[3]) - v1 * v1) / v;
      const double v3 = v * v * v;
      const Jet tau_jet(tau, 1.0 / v, -v1 / v3, (3.0 * v1 * v1 - v * v2) / (v3 * v * v));
      return compose(j, tau_jet);
    };
    return SpaceCurve::analytic(std::move(fn), domain);
  }

  auto fn = [curve, map, origin](double sigma) -> Vec3 {
    return curve.evaluate(map->invert(sigma - origin));
  };
  return SpaceCurve::finite_difference(std::move(fn), domain);
}

}  // namespace conegeo
