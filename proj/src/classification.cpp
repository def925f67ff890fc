#include "conegeo/classification.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace conegeo {

ConstancyStats constancy(std::span<const double> samples, double tol, ConstancyMode mode) {
  if (samples.size() < 8) {
    std::ostringstream os;
    os << "constancy test needs at least 8 samples, got " << samples.size();
    throw GeometryError(ErrorCode::InsufficientSamples, os.str());
  }
  ConstancyStats st;
  const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
  st.min = *lo;
  st.max = *hi;
  st.mean = std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(samples.size());
  const double spread = st.max - st.min;
  if (mode == ConstancyMode::Absolute) {
    st.relvar = spread;
  } else {
    const double scale = std::max(std::abs(st.min), std::abs(st.max));
    if (scale == 0.0 || std::abs(st.mean) <= 1e-12 * scale)
      throw GeometryError(ErrorCode::ZeroMean, "relative constancy undefined for zero-mean series");
    st.relvar = spread / std::abs(st.mean);
  }
  st.constant = st.relvar < tol;
  return st;
}

ClassificationSettings ClassificationSettings::defaults_for(DerivativeMode mode) {
  ClassificationSettings s;
  if (mode == DerivativeMode::FiniteDifference) {
    s.constancy_tol = 1e-4;
    s.component_tol = 1e-3;
    s.slant_tol = 1e-3;
    s.planar_tol = 1e-4;
  }
  return s;
}

std::string_view class_label(CurveClass c) noexcept {
  switch (c) {
    case CurveClass::Rectifying: return "Rectifying";
    case CurveClass::SphericalCentered: return "SphericalCentered";
    case CurveClass::Ambiguous: return "Both-candidates-ambiguous";
    case CurveClass::Neither: return "Neither";
  }
  return "Neither";
}

AffineFit fit_affine(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  AffineFit f;
  f.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  f.intercept = my - f.slope * mx;
  for (std::size_t i = 0; i < x.size(); ++i)
    f.residual = std::max(f.residual, std::abs(y[i] - (f.slope * x[i] + f.intercept)));
  return f;
}

ClassificationReport classify_rectifying_or_spherical(const SpaceCurve& curve,
                                                      std::optional<ClassificationSettings> settings) {
  const auto cfg = settings.value_or(ClassificationSettings::defaults_for(curve.mode()));
  ClassificationReport r;
  r.parameters = curve.sample_parameters(cfg.samples);

  std::vector<double> cross;
  cross.reserve(r.parameters.size());
  r.tangential_profile.reserve(r.parameters.size());
  double orientation = 0.0;
  double radius_max = 0.0;
  for (double s : r.parameters) {
    const PointJet j = curve.jet(s);
    const FrenetFrame f = frenet_from_jet(j);
    const Vec3& p = j.d[0];
    const Vec3 c = p.cross(f.tangent);
    const double radius = std::max(p.norm(), 1e-300);
    cross.push_back(c.norm());
    orientation += c.dot(f.normal);
    radius_max = std::max(radius_max, p.norm());
    const double along = p.dot(f.tangent);
    r.tangential_profile.push_back(along);
    r.normal_component_max = std::max(r.normal_component_max, std::abs(p.dot(f.normal)) / radius);
    r.tangential_component_max = std::max(r.tangential_component_max, std::abs(along) / radius);
  }

  const double mean_abs = std::accumulate(cross.begin(), cross.end(), 0.0) / cross.size();
  r.cross_magnitude_mean = mean_abs;
  r.tangential_slope = fit_affine(r.parameters, r.tangential_profile).slope;

  if (!(mean_abs > cfg.constancy_tol * radius_max)) {
    // |alpha x alpha'| vanishes: the curve runs along rulings.
    r.cross_magnitude_relvar = 0.0;
    r.label = CurveClass::Neither;
    return r;
  }
  const ConstancyStats st = constancy(cross, cfg.constancy_tol);
  r.cross_magnitude_relvar = st.relvar;
  if (!st.constant) {
    r.label = CurveClass::Neither;
    return r;
  }

  if (r.tangential_component_max < cfg.component_tol) {
    r.label = CurveClass::SphericalCentered;
  } else if (r.normal_component_max < cfg.component_tol) {
    r.label = CurveClass::Rectifying;
    const double a = (orientation >= 0.0 ? 1.0 : -1.0) / st.mean;
    // <alpha,t> = s + b/a, so b/a is the mean offset of the profile from s.
    double offset = 0.0;
    for (std::size_t i = 0; i < r.parameters.size(); ++i)
      offset += r.tangential_profile[i] - r.parameters[i];
    offset /= static_cast<double>(r.parameters.size());
    r.fitted_a = a;
    r.fitted_b = a * offset;
  } else {
    r.label = CurveClass::Ambiguous;
  }
  return r;
}

TorsionRatioProfile torsion_ratio_profile(const SpaceCurve& curve, int samples) {
  TorsionRatioProfile p;
  p.parameters = curve.sample_parameters(samples);
  p.ratio.reserve(p.parameters.size());
  for (double s : p.parameters) {
    const FrenetFrame f = frenet_apparatus(curve, s);
    p.ratio.push_back(f.torsion / f.curvature);
  }
  p.fit = fit_affine(p.parameters, p.ratio);
  return p;
}

namespace {

Vec3 canonical_sign(Vec3 u) {
  constexpr double kTie = 1e-12;
  for (int i = 2; i >= 0; --i) {
    if (std::abs(u[i]) > kTie) return u[i] < 0.0 ? Vec3(-u) : u;
  }
  return u;
}

}  // namespace

SlantAxisFit fit_slant_axis(const SpaceCurve& curve, std::optional<ClassificationSettings> settings) {
  const auto cfg = settings.value_or(ClassificationSettings::defaults_for(curve.mode()));
  if (cfg.samples < 16)
    throw GeometryError(ErrorCode::InsufficientSamples, "slant-axis fit needs at least 16 samples");

  std::vector<Vec3> normals;
  normals.reserve(static_cast<std::size_t>(cfg.samples));
  Vec3 mean = Vec3::Zero();
  for (double s : curve.sample_parameters(cfg.samples)) {
    normals.push_back(frenet_apparatus(curve, s).normal);
    mean += normals.back();
  }
  mean /= static_cast<double>(normals.size());

  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (const auto& n : normals) cov += (n - mean) * (n - mean).transpose();
  cov /= static_cast<double>(normals.size());

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
  const Eigen::Vector3d lambda = eig.eigenvalues();  // ascending
  SlantAxisFit fit;
  fit.eigen_gap = lambda[1] - lambda[0];
  if (fit.eigen_gap < 1e-10) {
    std::ostringstream os;
    os << "smallest covariance eigenvalue not isolated (gap " << fit.eigen_gap << ")";
    throw GeometryError(ErrorCode::DegenerateFit, os.str());
  }
  fit.axis = canonical_sign(eig.eigenvectors().col(0).normalized());

  double sum = 0.0;
  double sum2 = 0.0;
  for (const auto& n : normals) {
    const double c = n.dot(fit.axis);
    sum += c;
    sum2 += c * c;
  }
  const auto count = static_cast<double>(normals.size());
  fit.cos_angle_mean = sum / count;
  fit.residual = std::sqrt(std::max(0.0, sum2 / count - fit.cos_angle_mean * fit.cos_angle_mean));
  fit.is_slant_helix = fit.residual < cfg.slant_tol;
  return fit;
}

double max_abs_torsion(const SpaceCurve& curve, int samples) {
  double m = 0.0;
  for (double s : curve.sample_parameters(samples))
    m = std::max(m, std::abs(frenet_apparatus(curve, s).torsion));
  return m;
}

bool is_planar(const SpaceCurve& curve, double tol, int samples) {
  return max_abs_torsion(curve, samples) < tol;
}

IdentityResidual classification_identity_residual(const SpaceCurve& curve, const Vec3& axis,
                                                  double a, double b, int samples) {
  if (a == 0.0) throw GeometryError(ErrorCode::InvalidParameters, "a must be nonzero");
  const Vec3 u = axis.normalized();
  const Interval d = curve.usable_domain();
  const double h = 1e-4 * d.length();
  const Interval inner{d.lo + 2.0 * h, d.hi - 2.0 * h};

  auto base_component = [&](double s) {
    const double w = std::sqrt(1.0 + (a * s + b) * (a * s + b));
    return (a * curve.evaluate(s) / w).dot(u);
  };
  auto normal_component = [&](double s) { return frenet_apparatus(curve, s).normal.dot(u); };
  auto central = [h](const auto& f, double s) {
    return (-f(s + 2 * h) + 8.0 * f(s + h) - 8.0 * f(s - h) + f(s - 2 * h)) / (12.0 * h);
  };

  IdentityResidual out;
  out.parameters.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    const double s = inner.lo + inner.length() * i / (samples - 1);
    const double w2 = 1.0 + (a * s + b) * (a * s + b);
    const double kappa = frenet_apparatus(curve, s).curvature;
    const double value = std::pow(w2, 1.5) / a * central(base_component, s) +
                         central(normal_component, s) / kappa;
    out.parameters.push_back(s);
    out.residual.push_back(value);
    out.max_abs = std::max(out.max_abs, std::abs(value));
  }
  return out;
}

IdentityResidual classification_identity_residual(const SpaceCurve& curve, const Vec3& axis,
                                                  const ClassificationReport& report, int samples) {
  if (report.label != CurveClass::Rectifying || !report.fitted_a || !report.fitted_b)
    throw GeometryError(ErrorCode::NotRectifying,
                        std::string("curve classified as ") + std::string(class_label(report.label)));
  return classification_identity_residual(curve, axis, *report.fitted_a, *report.fitted_b, samples);
}

}  // namespace conegeo
