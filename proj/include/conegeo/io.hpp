#pragma once

#include <filesystem>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "conegeo/classification.hpp"
#include "conegeo/cone.hpp"
#include "conegeo/geodesic.hpp"

namespace conegeo::io {

/// Shortest decimal string that parses back to the same double.
std::string format_double(double value);

/// Rows of a numeric CSV with a fixed header.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Reads a numeric CSV and checks its header matches `expected` exactly.
Table read_table(const std::filesystem::path& path, const std::vector<std::string>& expected);

std::string format_table(const Table& table);

/// Writes through a temporary file and renames, so a failed run never
/// leaves a truncated file behind.
void write_text_atomic(const std::filesystem::path& path, std::string_view content);

struct CurveSamples {
  std::vector<double> params;
  std::vector<Vec3> points;
};

/// `s,x,y,z` curve files. Parameters must strictly increase.
CurveSamples read_curve_csv(const std::filesystem::path& path, std::string_view param = "s");
std::string format_curve_csv(const CurveSamples& samples, std::string_view param = "s");

/// Samples `count` uniform parameters of a curve over its full domain.
CurveSamples sample_curve(const SpaceCurve& curve, int count);

/// `s,px,py` development files.
std::string format_development_csv(const Development& dev);

/// `s,t,u,dt,du` chart files.
std::string format_chart_csv(std::span<const double> s, std::span<const ChartState> states);

/// {"kind":"circular","psi0":x} or {"kind":"general","base_csv":path}; a
/// relative base_csv is resolved against the descriptor's directory.
Cone cone_from_json(const nlohmann::json& j, const std::filesystem::path& relative_to = {});
Cone read_cone_json(const std::filesystem::path& path);

/// {"t0","u0","dt0","du0","length"} with optional "s0".
GeodesicIVP ivp_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ClassificationReport& report);
nlohmann::json to_json(const SlantAxisFit& fit);
nlohmann::json to_json(const GeodesyReport& report);
nlohmann::json to_json(const CrossCheckReport& report);

/// Two-space indented JSON followed by a newline.
std::string dump(const nlohmann::json& j);

}  // namespace conegeo::io
