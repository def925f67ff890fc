#include "conegeo/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>

#include <CLI11.hpp>

#include "conegeo/classification.hpp"
#include "conegeo/cone.hpp"
#include "conegeo/geodesic.hpp"
#include "conegeo/io.hpp"

namespace conegeo::cli {

namespace {

using nlohmann::json;

struct Options {
  // generate / crosscheck
  double a = 1.0;
  double b = 0.0;
  double c = 0.0;
  std::optional<double> psi0;
  std::string base_csv;
  std::optional<double> s_min;
  std::optional<double> s_max;
  int samples = 0;
  std::uint64_t seed = 7;

  // classify
  std::optional<double> constancy_tol;
  std::optional<double> component_tol;
  std::optional<double> slant_tol;

  // integrate
  double step = 1e-3;
  std::string chart_out;

  std::string in;
  std::string out;
  std::string report;
  std::string cone;
  std::string ivp;
};

[[noreturn]] void invalid(const std::string& message) {
  throw GeometryError(ErrorCode::InvalidConfig, message);
}

void require_positive(const std::optional<double>& v, const char* name) {
  if (v && !(*v > 0.0)) invalid(std::string("--") + name + " must be positive");
}

void check_psi0(double psi0) {
  if (!(psi0 > 0.0 && psi0 < std::numbers::pi / 2)) invalid("--psi0 must lie in (0, pi/2)");
}

SpaceCurve load_curve(const std::string& path) {
  auto samples = io::read_curve_csv(path);
  return SpaceCurve::sampled(std::move(samples.params), std::move(samples.points));
}

// CSV curves are expected to be sampled by arc length; anything else is
// reparametrized first.
SpaceCurve ensure_unit_speed(const SpaceCurve& curve) {
  for (double s : curve.sample_parameters(257))
    if (std::abs(curve.derivative(s, 1).norm() - 1.0) > 1e-6) return reparametrize_arclength(curve);
  return curve;
}

Interval generator_domain(const Options& o, const RectifyingParams& p) {
  Interval d = p.default_domain();
  if (o.s_min) d.lo = *o.s_min;
  if (o.s_max) d.hi = *o.s_max;
  if (!(d.lo < d.hi)) invalid("--s-min must be below --s-max");
  return d;
}

RectifyingParams rectifying_params(const Options& o) {
  if (!std::isfinite(o.a) || !(o.a > 0.0)) invalid("--a must be positive");
  if (!std::isfinite(o.b)) invalid("--b must be finite");
  if (!std::isfinite(o.c)) invalid("--c must be finite");
  return {o.a, o.b, o.c};
}

void cmd_generate(const Options& o, std::ostream& out) {
  const RectifyingParams params = rectifying_params(o);
  const Interval domain = generator_domain(o, params);
  std::optional<SpaceCurve> curve;
  if (o.psi0) {
    check_psi0(*o.psi0);
    curve = generate_circular_geodesic(params, *o.psi0, domain);
  } else {
    auto samples = io::read_curve_csv(o.base_csv, "t");
    const auto base =
        SphericalBaseCurve::from_samples(std::move(samples.params), std::move(samples.points));
    curve = generate_rectifying(params, base, domain);
  }
  const int count = o.samples > 0 ? o.samples : 1001;
  io::write_text_atomic(o.out, io::format_curve_csv(io::sample_curve(*curve, count)));
  out << "wrote " << count << " samples to " << o.out << "\n";
}

void cmd_classify(const Options& o, std::ostream& out) {
  require_positive(o.constancy_tol, "constancy-tol");
  require_positive(o.component_tol, "component-tol");
  require_positive(o.slant_tol, "slant-tol");
  const SpaceCurve curve = ensure_unit_speed(load_curve(o.in));

  auto settings = ClassificationSettings::defaults_for(curve.mode());
  if (o.samples > 0) settings.samples = o.samples;
  if (o.constancy_tol) settings.constancy_tol = *o.constancy_tol;
  if (o.component_tol) settings.component_tol = *o.component_tol;
  if (o.slant_tol) settings.slant_tol = *o.slant_tol;

  const ClassificationReport report = classify_rectifying_or_spherical(curve, settings);
  json j = io::to_json(report);
  j.update(io::to_json(fit_slant_axis(curve, settings)));
  io::write_text_atomic(o.report, io::dump(j));
  out << class_label(report.label) << "\n";
}

void cmd_integrate(const Options& o, std::ostream& out) {
  if (!(o.step > 0.0)) invalid("--step must be positive");
  const Cone cone = io::read_cone_json(o.cone);
  std::ifstream in(o.ivp);
  if (!in) throw GeometryError(ErrorCode::IoError, o.ivp + ": cannot open for reading");
  json ivp_json;
  try {
    ivp_json = json::parse(in);
  } catch (const json::parse_error& e) {
    invalid(o.ivp + ": " + e.what());
  }
  const GeodesicIVP ivp = io::ivp_from_json(ivp_json);
  if (!(ivp.length > 0.0)) invalid("IVP length must be positive");
  if (!(ivp.u0 > 0.0)) invalid("IVP u0 must be positive");

  const IntegratedGeodesic g = integrate_geodesic(cone, ivp, {o.step, 1e-9});
  io::CurveSamples samples{g.parameters, embed(cone, g.chart)};
  io::write_text_atomic(o.out, io::format_curve_csv(samples));
  if (!o.chart_out.empty())
    io::write_text_atomic(o.chart_out, io::format_chart_csv(g.parameters, g.states));
  out << "integrated " << g.parameters.size() << " samples; Clairaut drift "
      << g.clairaut_drift << ", renormalization " << g.renormalization << "\n";
}

void cmd_develop(const Options& o, std::ostream& out) {
  const Cone cone = io::read_cone_json(o.cone);
  const SpaceCurve curve = load_curve(o.in);
  const int count = o.samples > 0 ? o.samples
                                   : static_cast<int>(curve.node_parameters().size());
  const ChartCurve chart = chart_of_curve(cone, curve, std::max(count, 2), 1e-6);
  const Development dev = develop(chart, chart.node_parameters());
  io::write_text_atomic(o.out, io::format_development_csv(dev));
  out << "developed " << dev.points.size() << " samples\n";
}

void cmd_verify(const Options& o, std::ostream& out) {
  const Cone cone = io::read_cone_json(o.cone);
  const SpaceCurve curve = ensure_unit_speed(load_curve(o.in));
  const GeodesyReport report =
      verify_geodesic(cone, curve, std::nullopt, o.samples > 0 ? o.samples : 256);
  io::write_text_atomic(o.report, io::dump(io::to_json(report)));
  out << verdict_name(report.verdict) << "\n";
}

void cmd_crosscheck(const Options& o, std::ostream& out) {
  const RectifyingParams params = rectifying_params(o);
  check_psi0(*o.psi0);
  const CrossCheckReport report = cross_check_circular_geodesic(params, *o.psi0, std::nullopt, o.seed);
  io::write_text_atomic(o.report, io::dump(io::to_json(report)));
  out << (report.consistent ? "consistent" : "falsified") << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Geodesics on cones: generation, classification and verification"};
  app.set_config("--config", "", "TOML/INI file with default option values");
  app.require_subcommand(1);

  Options o;
  std::function<void(const Options&, std::ostream&)> action;
  std::string report_path;

  auto* gen = app.add_subcommand("generate", "Sample a rectifying geodesic of a cone to CSV");
  gen->add_option("--a", o.a, "Slope constant a > 0")->required();
  gen->add_option("--b", o.b, "Offset constant b");
  gen->add_option("--c", o.c, "Angular offset c");
  auto* gen_psi = gen->add_option("--psi0", o.psi0, "Half-angle of a circular cone");
  auto* gen_base = gen->add_option("--base", o.base_csv, "Base curve CSV (t,x,y,z)");
  gen_psi->excludes(gen_base);
  gen->add_option("--s-min", o.s_min, "Start of the arc-length domain");
  gen->add_option("--s-max", o.s_max, "End of the arc-length domain");
  gen->add_option("--samples", o.samples, "Number of output samples (default 1001)")
      ->check(CLI::PositiveNumber);
  gen->add_option("--out", o.out, "Output curve CSV")->required();
  gen->callback([&] {
    if (!o.psi0 && o.base_csv.empty()) invalid("generate needs --psi0 or --base");
    action = cmd_generate;
  });

  auto* cls = app.add_subcommand("classify", "Classify a sampled curve");
  cls->add_option("--in", o.in, "Input curve CSV (s,x,y,z)")->required();
  cls->add_option("--report", o.report, "Output JSON report")->required();
  cls->add_option("--samples", o.samples, "Number of classification samples")
      ->check(CLI::Range(16, 1 << 20));
  cls->add_option("--constancy-tol", o.constancy_tol, "Relative constancy tolerance");
  cls->add_option("--component-tol", o.component_tol, "Relative position-component tolerance");
  cls->add_option("--slant-tol", o.slant_tol, "Slant-helix residual tolerance");
  cls->callback([&] {
    action = cmd_classify;
    report_path = o.report;
  });

  auto* integ = app.add_subcommand("integrate", "Integrate the geodesic equations on a cone");
  integ->add_option("--cone", o.cone, "Cone descriptor JSON")->required();
  integ->add_option("--ivp", o.ivp, "Initial value problem JSON")->required();
  integ->add_option("--out", o.out, "Output curve CSV")->required();
  integ->add_option("--chart", o.chart_out, "Optional chart CSV (s,t,u,dt,du)");
  integ->add_option("--step", o.step, "Arc-length step (default 1e-3)");
  integ->callback([&] { action = cmd_integrate; });

  auto* dev = app.add_subcommand("develop", "Unroll a curve on a cone into the plane");
  dev->add_option("--cone", o.cone, "Cone descriptor JSON")->required();
  dev->add_option("--in", o.in, "Input curve CSV (s,x,y,z)")->required();
  dev->add_option("--out", o.out, "Output development CSV (s,px,py)")->required();
  dev->add_option("--samples", o.samples, "Number of samples (default: input rows)")
      ->check(CLI::PositiveNumber);
  dev->callback([&] { action = cmd_develop; });

  auto* ver = app.add_subcommand("verify", "Check whether a curve is a geodesic of a cone");
  ver->add_option("--cone", o.cone, "Cone descriptor JSON")->required();
  ver->add_option("--in", o.in, "Input curve CSV (s,x,y,z)")->required();
  ver->add_option("--report", o.report, "Output JSON report")->required();
  ver->add_option("--samples", o.samples, "Number of verification samples")
      ->check(CLI::PositiveNumber);
  ver->callback([&] {
    action = cmd_verify;
    report_path = o.report;
  });

  auto* cc = app.add_subcommand("crosscheck",
                                "Rectifying, slant-helix and geodesic checks on a circular cone");
  cc->add_option("--a", o.a, "Slope constant a > 0")->required();
  cc->add_option("--b", o.b, "Offset constant b");
  cc->add_option("--c", o.c, "Angular offset c");
  cc->add_option("--psi0", o.psi0, "Half-angle of the circular cone")->required();
  cc->add_option("--seed", o.seed, "Seed of the random identity axis");
  cc->add_option("--report", o.report, "Output JSON report")->required();
  cc->callback([&] {
    action = cmd_crosscheck;
    report_path = o.report;
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInvalid;
  } catch (const GeometryError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }

  try {
    action(o, out);
    return kExitOk;
  } catch (const GeometryError& e) {
    err << "error: " << e.what() << "\n";
    if (e.code() == ErrorCode::InvalidConfig || e.code() == ErrorCode::IoError)
      return kExitInvalid;
    if (!report_path.empty()) {
      const json j = {{"error", std::string(e.name())}, {"message", e.what()}};
      try {
        io::write_text_atomic(report_path, io::dump(j));
      } catch (const GeometryError& io_err) {
        err << "error: " << io_err.what() << "\n";
      }
    }
    return kExitNumerical;
  }
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace conegeo::cli
