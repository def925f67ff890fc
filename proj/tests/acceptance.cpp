// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "conegeo/classification.hpp"
#include "conegeo/cone.hpp"
#include "conegeo/curve.hpp"
#include "conegeo/geodesic.hpp"
#include "test_support.hpp"

using namespace conegeo;
using conegeo::testing::kPi;

namespace {

struct Generated {
  RectifyingParams params;
  Cone cone;
  SpaceCurve curve;
  std::string label;
};

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("[%s] %d %s: %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
  if (!ok) ++failures;
}

std::string fmt(const char* f, double v) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Convex wavy bases keep the curvature of the generated curves away from zero.
Cone random_cone(std::mt19937_64& rng, bool circular) {
  if (circular) return Cone::circular(std::uniform_real_distribution<double>(0.2, 1.3)(rng));
  std::uniform_real_distribution<double> h(0.6, 0.9), eps(0.03, 0.06);
  const double k = (rng() % 2) ? 2.0 : 3.0;
  const double hh = h(rng), ee = eps(rng);
  return Cone::general(conegeo::testing::wavy_base(hh, ee, k, conegeo::testing::random_rotation(rng)));
}

std::vector<Generated> rectifying_corpus(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> a(0.5, 4.0), b(-2.0, 2.0), c(-1.0, 1.0);
  std::vector<Generated> out;
  for (int i = 0; i < count; ++i) {
    const bool circular = i % 2 == 0;
    Cone cone = random_cone(rng, circular);
    RectifyingParams p{a(rng), b(rng), c(rng)};
    if (!circular) p.c += cone.base().domain().mid();
    SpaceCurve curve = generate_rectifying(p, cone.base());
    out.push_back({p, std::move(cone), std::move(curve), circular ? "circular" : "wavy"});
  }
  return out;
}

void cross_product_identity(const std::vector<Generated>& corpus) {
  double worst = 0.0;
  for (const auto& g : corpus) {
    for (double s : g.curve.sample_parameters(256)) {
      const FrenetFrame f = frenet_apparatus(g.curve, s);
      const Vec3 lhs = g.curve.evaluate(s).cross(g.curve.derivative(s, 1));
      worst = std::max(worst, (lhs - f.normal / g.params.a).norm());
    }
  }
  report(1, "cross-product identity", worst < 1e-6,
         fmt("max |alpha x alpha' - n/a| = %.3e (< 1e-6) over 20 curves", worst));
}

void dichotomy() {
  int wrong = 0, total = 0;
  std::string first_wrong;
  auto check = [&](const SpaceCurve& c, CurveClass expected, const std::string& what) {
    ++total;
    try {
      if (classify_rectifying_or_spherical(c).label == expected) return;
    } catch (const GeometryError& e) {
      if (first_wrong.empty()) first_wrong = what + " threw " + std::string(e.name());
      ++wrong;
      return;
    }
    if (first_wrong.empty()) first_wrong = what;
    ++wrong;
  };
  for (const auto& g : rectifying_corpus(202, 10)) check(g.curve, CurveClass::Rectifying, "rectifying");
  std::mt19937_64 rng(203);
  std::uniform_real_distribution<double> radius(0.3, 5.0);
  for (int i = 0; i < 10; ++i)
    check(conegeo::testing::random_spherical_curve(rng, radius(rng)), CurveClass::SphericalCentered, "spherical");
  for (int i = 0; i < 10; ++i) check(conegeo::testing::random_generic_curve(rng), CurveClass::Neither, "generic");
  report(2, "rectifying/spherical dichotomy", wrong == 0,
         std::to_string(wrong) + " misclassified of " + std::to_string(total) +
             (first_wrong.empty() ? "" : " (first: " + first_wrong + ")"));
}

std::vector<GeodesyReport> forward_geodesics(const std::vector<Generated>& corpus) {
  std::vector<GeodesyReport> reports;
  bool ok = true;
  double kg = 0.0, align = 1.0, relvar = 0.0, straight = 0.0;
  for (const auto& g : corpus) {
    const auto r = verify_geodesic(g.cone, g.curve);
    reports.push_back(r);
    kg = std::max(kg, r.max_abs_kg);
    align = std::min(align, r.normal_alignment_min.value_or(0.0));
    relvar = std::max(relvar, r.clairaut_relvar);
    straight = std::max(straight, r.development_straightness_residual);
    ok = ok && r.verdict == Verdict::Geodesic;
  }
  ok = ok && kg < 1e-4 && align > 1 - 1e-5 && relvar < 1e-5 && straight < 1e-6;
  report(3, "rectifying curves are geodesics", ok,
         fmt("max|kg| = %.2e", kg) + fmt(", min|<n,N>| = 1 - %.2e", 1 - align) +
             fmt(", Clairaut relvar = %.2e", relvar) + fmt(", straightness = %.2e", straight));
  return reports;
}

void latitude_obstruction() {
  std::mt19937_64 rng(404);
  const std::vector<Cone> cones = {Cone::circular(kPi / 6), random_cone(rng, false)};
  double worst = 0.0;
  bool verdicts = true;
  for (const auto& cone : cones) {
    for (double u0 : {0.5, 1.0, 2.0, 5.0}) {
      const Interval d = cone.base().domain();
      const Interval t_range{d.mid() - std::min(1.0, 0.45 * d.length()), d.mid() + std::min(1.0, 0.45 * d.length())};
      const auto lat = latitude_circle(cone, u0, t_range);
      const auto r = verify_geodesic(cone, lat);
      verdicts = verdicts && r.verdict == Verdict::NotGeodesic;
      worst = std::max(worst, std::abs(r.max_abs_kg * u0 - 1.0));
    }
  }
  report(4, "latitude circles are not geodesics", verdicts && worst < 1e-5,
         fmt("max relative error of max|kg| vs 1/u0 = %.2e (< 1e-5)", worst));
}

void ode_agreement() {
  std::mt19937_64 rng(505);
  std::uniform_real_distribution<double> a(0.5, 4.0), b(-2.0, 2.0), c(-1.0, 1.0);
  double dev = 0.0, drift = 0.0;
  for (int i = 0; i < 8; ++i) {
    const bool circular = i % 2 == 0;
    const Cone cone = i == 0 ? Cone::circular(kPi / 4) : random_cone(rng, circular);
    RectifyingParams p = i == 0 ? RectifyingParams{1.0, 0.0, 0.0} : RectifyingParams{a(rng), b(rng), c(rng)};
    if (!circular) p.c += cone.base().domain().mid();
    // Start far enough back that five units stay inside the base domain.
    const double s0 = i == 0 ? 0.0 : -p.b / p.a - 2.5;
    const auto exact = rectifying_chart(p, Interval{s0, s0 + 5.0});
    const auto st = exact.at(s0);
    const auto g = integrate_geodesic(cone, {st.t, st.u, st.dt, st.du, 5.0, s0}, {1e-3, 1e-9});
    for (std::size_t k = 0; k < g.parameters.size(); ++k) {
      const auto e = exact.at(g.parameters[k]);
      dev = std::max({dev, std::abs(g.states[k].t - e.t), std::abs(g.states[k].u - e.u)});
    }
    drift = std::max(drift, g.clairaut_drift_per_length);
  }
  report(5, "integrator matches closed form", dev < 1e-6 && drift < 1e-9,
         fmt("max chart deviation = %.2e (< 1e-6)", dev) + fmt(", Clairaut drift per length = %.2e (< 1e-9)", drift));
}

void circular_cross_checks() {
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> a(0.5, 4.0), b(-2.0, 2.0), c(-1.0, 1.0), psi(0.2, 1.3);
  bool ok = true;
  double axis = 0.0, cosine = 0.0, id_axis = 0.0, id_random = 0.0;
  std::string note;
  for (int i = 0; i < 10; ++i) {
    const RectifyingParams p{a(rng), b(rng), c(rng)};
    const auto r = cross_check_circular_geodesic(p, psi(rng), std::nullopt, rng());
    ok = ok && r.rectifying && r.slant_helix && r.geodesic;
    if (!r.falsifications.empty() && note.empty()) note = " (" + r.falsifications.front() + ")";
    axis = std::max(axis, r.axis_angle_error);
    cosine = std::max(cosine, r.slant_cos_error);
    id_axis = std::max(id_axis, r.identity_residual_axis);
    id_random = std::max(id_random, r.identity_residual_random);
  }
  ok = ok && axis < 1e-4 && cosine < 1e-5 && id_axis < 1e-4 && id_random < 1e-4;
  report(6, "circular-cone geodesics are rectifying slant helices", ok,
         fmt("axis error = %.2e rad", axis) + fmt(", ||<n,U>| - sin psi0| = %.2e", cosine) +
             fmt(", identity residual e3 = %.2e", id_axis) + fmt(", random U = %.2e", id_random) + note);
}

void rulings_and_torsion(const std::vector<GeodesyReport>& geodesics) {
  std::mt19937_64 rng(707);
  bool ok = true;
  double kappa = 0.0, kg = 0.0, straight = 0.0;
  for (int i = 0; i < 6; ++i) {
    const Cone cone = random_cone(rng, i % 2 == 0);
    const Interval d = cone.base().domain();
    const double t0 = d.lo + d.length() * std::uniform_real_distribution<double>(0.1, 0.9)(rng);
    const auto r = verify_geodesic(cone, ruling(cone, t0, {0.2, 5.0}));
    ok = ok && r.verdict == Verdict::Ruling;
    kappa = std::max(kappa, r.max_curvature);
    kg = std::max(kg, r.max_abs_kg);
    straight = std::max(straight, r.development_straightness_residual);
  }
  ok = ok && kappa < 1e-9 && kg < 1e-4 && straight < 1e-6;
  double min_torsion = 1e300;
  for (const auto& r : geodesics)
    if (r.verdict == Verdict::Geodesic) min_torsion = std::min(min_torsion, r.max_abs_torsion);
  const ClassificationSettings defaults;
  ok = ok && min_torsion > defaults.planar_tol;
  report(7, "rulings and non-planar geodesics", ok,
         fmt("ruling max kappa = %.2e", kappa) + fmt(", max|kg| = %.2e", kg) +
             fmt(", straightness = %.2e", straight) + fmt("; smallest geodesic max|tau| = %.3f", min_torsion));
}

void torsion_ratio(const std::vector<Generated>& corpus) {
  double slope = 0.0, intercept = 0.0, residual = 0.0;
  for (const auto& g : corpus) {
    const auto prof = torsion_ratio_profile(g.curve);
    slope = std::max(slope, std::abs(prof.fit.slope - g.params.a) / g.params.a);
    intercept = std::max(intercept, std::abs(prof.fit.intercept - g.params.b) / std::abs(g.params.b));
    residual = std::max(residual, prof.fit.residual);
  }
  report(8, "tau/kappa is affine in s", slope < 1e-4 && intercept < 1e-4 && residual < 1e-5,
         fmt("slope rel err = %.2e", slope) + fmt(", intercept rel err = %.2e", intercept) +
             fmt(", residual = %.2e", residual));
}

void development_geometry(const std::vector<Generated>& corpus) {
  double distance = 0.0, arg = 0.0, norm = 0.0;
  for (const auto& g : corpus) {
    const double a = g.params.a, b = g.params.b;
    const auto chart = chart_of_curve(g.cone, g.curve);
    const auto line = fit_line(develop(chart, chart.node_parameters()).points);
    distance = std::max(distance, std::abs(line.distance_to_origin - 1 / a));

    // <alpha, alpha'> changes sign once; bisect for the closest point.
    auto radial = [&](double s) { return g.curve.evaluate(s).dot(g.curve.derivative(s, 1)); };
    double lo = g.curve.domain().lo, hi = g.curve.domain().hi;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
      const double mid = 0.5 * (lo + hi);
      (radial(mid) < 0 ? lo : hi) = mid;
    }
    const double s_min = 0.5 * (lo + hi);
    double sampled_min = 1e300;
    for (double s : g.curve.sample_parameters(1001)) sampled_min = std::min(sampled_min, g.curve.evaluate(s).norm());
    const double at_min = g.curve.evaluate(s_min).norm();
    arg = std::max(arg, std::abs(s_min + b / a));
    norm = std::max({norm, std::abs(at_min - 1 / a), std::max(0.0, at_min - sampled_min)});
  }
  report(9, "development is a line at distance 1/a", distance < 1e-6 && arg < 1e-6 && norm < 1e-6,
         fmt("line distance err = %.2e", distance) + fmt(", argmin err = %.2e", arg) +
             fmt(", min norm err = %.2e", norm));
}

template <class F>
void guarded(int id, const char* name, F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    report(id, name, false, std::string("exception: ") + e.what());
  }
}

}  // namespace

int main() {
  const auto corpus = rectifying_corpus(101, 20);
  std::vector<GeodesyReport> geodesics;
  guarded(1, "cross-product identity", [&] { cross_product_identity(corpus); });
  guarded(2, "rectifying/spherical dichotomy", [&] { dichotomy(); });
  guarded(3, "rectifying curves are geodesics", [&] { geodesics = forward_geodesics(corpus); });
  guarded(4, "latitude circles are not geodesics", [&] { latitude_obstruction(); });
  guarded(5, "integrator matches closed form", [&] { ode_agreement(); });
  guarded(6, "circular-cone geodesics are rectifying slant helices", [&] { circular_cross_checks(); });
  guarded(7, "rulings and non-planar geodesics", [&] { rulings_and_torsion(geodesics); });
  guarded(8, "tau/kappa is affine in s", [&] { torsion_ratio(corpus); });
  guarded(9, "development is a line at distance 1/a", [&] { development_geometry(corpus); });
  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
