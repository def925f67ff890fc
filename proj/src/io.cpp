#include "conegeo/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

namespace conegeo::io {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ',';
    out += parts[i];
  }
  return out;
}

[[noreturn]] void io_error(const fs::path& path, const std::string& what) {
  throw GeometryError(ErrorCode::IoError, path.string() + ": " + what);
}

}  // namespace

Table read_table(const fs::path& path, const std::vector<std::string>& expected) {
  std::ifstream in(path);
  if (!in) io_error(path, "cannot open for reading");
  Table t;
  std::string line;
  if (!std::getline(in, line)) io_error(path, "empty file");
  for (auto f : split(line)) t.header.emplace_back(f);
  if (t.header != expected) io_error(path, "expected header '" + join(expected) + "'");

  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto fields = split(line);
    if (fields.size() != expected.size())
      io_error(path, "line " + std::to_string(lineno) + ": wrong number of fields");
    std::vector<double> row;
    row.reserve(fields.size());
    for (auto f : fields) {
      double v = 0.0;
      const auto res = std::from_chars(f.data(), f.data() + f.size(), v);
      if (res.ec != std::errc() || res.ptr != f.data() + f.size())
        io_error(path, "line " + std::to_string(lineno) + ": bad number '" + std::string(f) + "'");
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::string format_table(const Table& table) {
  std::string out = join(table.header);
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

void write_text_atomic(const fs::path& path, std::string_view content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) io_error(path, "cannot open for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      io_error(path, "write failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    io_error(path, "rename failed");
  }
}

CurveSamples read_curve_csv(const fs::path& path, std::string_view param) {
  const Table t = read_table(path, {std::string(param), "x", "y", "z"});
  CurveSamples c;
  for (const auto& r : t.rows) {
    c.params.push_back(r[0]);
    c.points.emplace_back(r[1], r[2], r[3]);
  }
  for (std::size_t i = 1; i < c.params.size(); ++i)
    if (!(c.params[i] > c.params[i - 1])) io_error(path, "parameters must strictly increase");
  if (c.params.size() < 2) io_error(path, "need at least two samples");
  return c;
}

std::string format_curve_csv(const CurveSamples& samples, std::string_view param) {
  Table t{{std::string(param), "x", "y", "z"}, {}};
  t.rows.reserve(samples.params.size());
  for (std::size_t i = 0; i < samples.params.size(); ++i) {
    const Vec3& p = samples.points[i];
    t.rows.push_back({samples.params[i], p.x(), p.y(), p.z()});
  }
  return format_table(t);
}

CurveSamples sample_curve(const SpaceCurve& curve, int count) {
  if (count < 2) throw GeometryError(ErrorCode::InsufficientSamples, "need at least 2 samples");
  const Interval d = curve.domain();
  CurveSamples out;
  for (int i = 0; i < count; ++i) {
    const double s = (i == count - 1) ? d.hi : d.lo + d.length() * i / (count - 1);
    out.params.push_back(s);
    out.points.push_back(curve.evaluate(s));
  }
  return out;
}

std::string format_development_csv(const Development& dev) {
  Table t{{"s", "px", "py"}, {}};
  for (std::size_t i = 0; i < dev.parameters.size(); ++i)
    t.rows.push_back({dev.parameters[i], dev.points[i].x(), dev.points[i].y()});
  return format_table(t);
}

std::string format_chart_csv(std::span<const double> s, std::span<const ChartState> states) {
  Table t{{"s", "t", "u", "dt", "du"}, {}};
  for (std::size_t i = 0; i < s.size(); ++i)
    t.rows.push_back({s[i], states[i].t, states[i].u, states[i].dt, states[i].du});
  return format_table(t);
}

namespace {

double required_number(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number())
    throw GeometryError(ErrorCode::InvalidConfig, std::string("missing numeric key '") + key + "'");
  return j.at(key).get<double>();
}

}  // namespace

Cone cone_from_json(const json& j, const fs::path& relative_to) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw GeometryError(ErrorCode::InvalidConfig, "cone descriptor needs a string 'kind'");
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "circular") return Cone::circular(required_number(j, "psi0"));
  if (kind == "general") {
    if (!j.contains("base_csv") || !j.at("base_csv").is_string())
      throw GeometryError(ErrorCode::InvalidConfig, "general cone needs 'base_csv'");
    fs::path base = j.at("base_csv").get<std::string>();
    if (base.is_relative() && !relative_to.empty()) base = relative_to / base;
    auto samples = read_curve_csv(base, "t");
    return Cone::general(
        SphericalBaseCurve::from_samples(std::move(samples.params), std::move(samples.points)));
  }
  throw GeometryError(ErrorCode::InvalidConfig, "unknown cone kind '" + kind + "'");
}

namespace {

json parse_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) io_error(path, "cannot open for reading");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw GeometryError(ErrorCode::InvalidConfig, path.string() + ": " + e.what());
  }
}

}  // namespace

Cone read_cone_json(const fs::path& path) {
  return cone_from_json(parse_file(path), path.parent_path());
}

GeodesicIVP ivp_from_json(const json& j) {
  if (!j.is_object()) throw GeometryError(ErrorCode::InvalidConfig, "IVP must be a JSON object");
  GeodesicIVP ivp;
  ivp.t0 = required_number(j, "t0");
  ivp.u0 = required_number(j, "u0");
  ivp.dt0 = required_number(j, "dt0");
  ivp.du0 = required_number(j, "du0");
  ivp.length = required_number(j, "length");
  if (j.contains("s0")) ivp.s0 = required_number(j, "s0");
  return ivp;
}

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

json to_json(const ClassificationReport& r) {
  return {
      {"label", std::string(class_label(r.label))},
      {"cross_magnitude_mean", r.cross_magnitude_mean},
      {"cross_magnitude_relvar", r.cross_magnitude_relvar},
      {"normal_component_max", r.normal_component_max},
      {"tangential_component_max", r.tangential_component_max},
      {"tangential_slope", r.tangential_slope},
      {"fitted_a", optional_number(r.fitted_a)},
      {"fitted_b", optional_number(r.fitted_b)},
  };
}

json to_json(const SlantAxisFit& f) {
  return {
      {"axis", {f.axis.x(), f.axis.y(), f.axis.z()}},
      {"cos_angle_mean", f.cos_angle_mean},
      {"residual", f.residual},
      {"eigen_gap", f.eigen_gap},
      {"is_slant_helix", f.is_slant_helix},
  };
}

json to_json(const GeodesyReport& r) {
  return {
      {"max_abs_kg", r.max_abs_kg},
      {"clairaut_mean", r.clairaut_mean},
      {"clairaut_relvar", r.clairaut_relvar},
      {"normal_alignment_min", optional_number(r.normal_alignment_min)},
      {"development_straightness_residual", r.development_straightness_residual},
      {"development_line_distance", r.development_line_distance},
      {"max_curvature", r.max_curvature},
      {"max_abs_torsion", r.max_abs_torsion},
      {"verdict", std::string(verdict_name(r.verdict))},
  };
}

json to_json(const CrossCheckReport& r) {
  json j = {
      {"a", r.params.a},
      {"b", r.params.b},
      {"c", r.params.c},
      {"psi0", r.psi0},
  };
  j.update(to_json(r.geodesy));
  j.update(to_json(r.classification));
  j.update(to_json(r.slant));
  j["random_axis"] = {r.random_axis.x(), r.random_axis.y(), r.random_axis.z()};
  j["identity_residual_axis"] = r.identity_residual_axis;
  j["identity_residual_random"] = r.identity_residual_random;
  j["axis_angle_error"] = r.axis_angle_error;
  j["slant_cos_error"] = r.slant_cos_error;
  j["rectifying"] = r.rectifying;
  j["slant_helix"] = r.slant_helix;
  j["geodesic"] = r.geodesic;
  j["identity_holds"] = r.identity_holds;
  j["consistent"] = r.consistent;
  j["falsifications"] = r.falsifications;
  return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace conegeo::io
