#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "conegeo/curve.hpp"

namespace conegeo {

enum class ConstancyMode { Relative, Absolute };

struct ConstancyStats {
  bool constant = false;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  /// (max - min) / |mean| in relative mode, (max - min) in absolute mode.
  double relvar = 0.0;
};

/// Decides whether a series is constant to within `tol`.
/// Throws InsufficientSamples below 8 samples and ZeroMean when a relative
/// test is requested on a series averaging to zero.
ConstancyStats constancy(std::span<const double> samples, double tol,
                         ConstancyMode mode = ConstancyMode::Relative);

/// Thresholds shared by the classifiers. Defaults depend on whether the
/// curve carries analytic derivatives.
struct ClassificationSettings {
  int samples = 256;
  double constancy_tol = 1e-6;
  double component_tol = 1e-6;  // |<alpha,n>| / |alpha| and |<alpha,t>| / |alpha|
  double slant_tol = 1e-5;      // standard deviation of <n,U>
  double planar_tol = 1e-6;     // max |tau|

  static ClassificationSettings defaults_for(DerivativeMode mode);
};

enum class CurveClass { Rectifying, SphericalCentered, Ambiguous, Neither };

std::string_view class_label(CurveClass c) noexcept;

struct ClassificationReport {
  CurveClass label = CurveClass::Neither;
  double cross_magnitude_mean = 0.0;
  double cross_magnitude_relvar = 0.0;
  double normal_component_max = 0.0;      // max |<alpha,n>| / |alpha|
  double tangential_component_max = 0.0;  // max |<alpha,t>| / |alpha|
  std::vector<double> parameters;
  std::vector<double> tangential_profile;  // <alpha,t> at each parameter
  double tangential_slope = 0.0;           // affine fit of the profile; 1 for rectifying curves
  std::optional<double> fitted_a;
  std::optional<double> fitted_b;
};

/// Splits curves with constant nonzero |alpha x alpha'| into rectifying
/// curves (<alpha,n> = 0) and curves on an origin-centred sphere
/// (<alpha,t> = 0). Curves failing both component tests while the magnitude
/// is constant are labelled Ambiguous rather than guessed.
ClassificationReport classify_rectifying_or_spherical(
    const SpaceCurve& curve, std::optional<ClassificationSettings> settings = {});

struct AffineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // max |y - (slope x + intercept)|
};

AffineFit fit_affine(std::span<const double> x, std::span<const double> y);

struct TorsionRatioProfile {
  std::vector<double> parameters;
  std::vector<double> ratio;  // tau / kappa
  AffineFit fit;
};

TorsionRatioProfile torsion_ratio_profile(const SpaceCurve& curve, int samples = 256);

struct SlantAxisFit {
  Vec3 axis = Vec3::UnitZ();
  double cos_angle_mean = 0.0;  // mean <n, axis>
  double residual = 0.0;        // standard deviation of <n, axis>
  double eigen_gap = 0.0;       // second smallest minus smallest covariance eigenvalue
  bool is_slant_helix = false;
};

/// Axis U minimising Var<n(s),U>: the eigenvector of the covariance of the
/// principal normals with the smallest eigenvalue. Sign is canonicalised to
/// a nonnegative z component (then y, then x). Throws DegenerateFit if the
/// smallest eigenvalue is not isolated.
SlantAxisFit fit_slant_axis(const SpaceCurve& curve,
                            std::optional<ClassificationSettings> settings = {});

double max_abs_torsion(const SpaceCurve& curve, int samples = 256);

bool is_planar(const SpaceCurve& curve, double tol, int samples = 256);

struct IdentityResidual {
  std::vector<double> parameters;
  std::vector<double> residual;
  double max_abs = 0.0;
};

/// Samples (1+(as+b)^2)^{3/2}/a * d<y,U>/ds + (1/kappa) d<n,U>/ds, where
/// y = a alpha / sqrt(1+(as+b)^2) is the base-curve point. Both derivatives
/// are taken by central differences. Zero for rectifying curves and any U.
IdentityResidual classification_identity_residual(const SpaceCurve& curve, const Vec3& axis,
                                                  double a, double b, int samples = 256);

/// Same, with a and b taken from a report; throws NotRectifying unless the
/// report labels the curve Rectifying.
IdentityResidual classification_identity_residual(const SpaceCurve& curve, const Vec3& axis,
                                                  const ClassificationReport& report,
                                                  int samples = 256);

}  // namespace conegeo
