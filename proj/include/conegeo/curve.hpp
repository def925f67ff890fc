#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "conegeo/errors.hpp"
#include "conegeo/jet.hpp"

namespace conegeo {

/// Curvature below which Frenet frames are refused rather than fabricated.
inline constexpr double kCurvatureFloor = 1e-9;

struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  [[nodiscard]] double length() const { return hi - lo; }
  [[nodiscard]] double mid() const { return 0.5 * (lo + hi); }
};

enum class CurveKind { ClosedForm, Sampled };
enum class DerivativeMode { Analytic, FiniteDifference };

/// Central-difference configuration for curves without analytic derivatives.
struct DerivativeSettings {
  double step = 1e-4;
  int scheme = 4;  // accuracy order of the central stencils: 2 or 4

  /// Order-4 stencils with h = 1e-4 * |domain|.
  static DerivativeSettings for_domain(const Interval& domain);

  /// Throws InvalidCurve unless h > 0, h <= |domain|/100 and scheme is 2 or 4.
  void validate(const Interval& domain) const;

  /// Half-width of the widest stencil (third derivative).
  [[nodiscard]] double margin() const;
};

/// An immutable parametrized curve in R^3.
///
/// Closed-form curves either supply analytic jets (position plus three
/// derivatives) or a plain point evaluator differentiated with central
/// differences. Sampled curves interpolate nodes with cubic Hermite
/// segments and always use central differences. Copies share state.
class SpaceCurve {
 public:
  using JetFn = std::function<PointJet(double)>;
  using PointFn = std::function<Vec3(double)>;

  static SpaceCurve analytic(JetFn fn, Interval domain);
  static SpaceCurve finite_difference(PointFn fn, Interval domain,
                                      std::optional<DerivativeSettings> settings = {});
  /// Nodes must be strictly increasing; at least two are required.
  static SpaceCurve sampled(std::vector<double> params, std::vector<Vec3> points,
                            std::optional<DerivativeSettings> settings = {});

  [[nodiscard]] CurveKind kind() const { return kind_; }
  [[nodiscard]] DerivativeMode mode() const { return mode_; }
  [[nodiscard]] const Interval& domain() const { return domain_; }
  [[nodiscard]] const DerivativeSettings& settings() const { return settings_; }

  /// Domain shrunk by the stencil margin in finite-difference mode; the full
  /// domain otherwise.
  [[nodiscard]] Interval usable_domain() const;

  /// `count` equally spaced parameters covering usable_domain(), endpoints
  /// included.
  [[nodiscard]] std::vector<double> sample_parameters(int count) const;

  [[nodiscard]] Vec3 evaluate(double s) const;
  [[nodiscard]] Vec3 derivative(double s, int order) const;
  [[nodiscard]] PointJet jet(double s) const;

  /// Sampled curves only: the interpolation nodes.
  [[nodiscard]] const std::vector<double>& node_parameters() const;
  [[nodiscard]] const std::vector<Vec3>& node_points() const;

 private:
  SpaceCurve() = default;

  double check_domain(double s) const;
  Vec3 difference(double s, int order) const;

  CurveKind kind_ = CurveKind::ClosedForm;
  DerivativeMode mode_ = DerivativeMode::Analytic;
  Interval domain_;
  DerivativeSettings settings_;
  JetFn jet_fn_;
  PointFn point_fn_;
  std::shared_ptr<const std::vector<double>> node_params_;
  std::shared_ptr<const std::vector<Vec3>> node_points_;
};

struct FrenetFrame {
  Vec3 tangent;
  Vec3 normal;
  Vec3 binormal;
  double curvature = 0.0;
  double torsion = 0.0;
};

/// Frenet apparatus from a jet of any regular parametrization. For unit-speed
/// input this reduces to kappa = |a''| and tau = <a' x a'', a'''> / kappa^2.
/// Throws VanishingCurvature when kappa <= kappa_floor.
FrenetFrame frenet_from_jet(const PointJet& jet, double kappa_floor = kCurvatureFloor);

FrenetFrame frenet_apparatus(const SpaceCurve& curve, double s,
                             double kappa_floor = kCurvatureFloor);

/// Curvature only; never throws on straight segments.
double curvature(const SpaceCurve& curve, double s);

/// |alpha(s) x alpha'(s)|.
double cross_magnitude(const SpaceCurve& curve, double s);

/// Reparametrizes by arc length measured from the start of the usable
/// domain, keeping that start as the origin of the new parameter, so a
/// unit-speed curve maps onto itself. Throws SingularSpeed if the speed
/// collapses anywhere.
SpaceCurve reparametrize_arclength(const SpaceCurve& curve, double tolerance = 1e-10);

/// Adaptive Simpson quadrature of f on [a, b] to absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth = 48);

}  // namespace conegeo
