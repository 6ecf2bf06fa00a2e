#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "toric_limits/degeneration.hpp"
#include "toric_limits/hausdorff.hpp"
#include "toric_limits/point_configuration.hpp"
#include "toric_limits/sequence.hpp"
#include "toric_limits/subdivision.hpp"
#include "toric_limits/toric_variety.hpp"

namespace toric_limits {

inline constexpr const char* kToolVersion = "0.1.0";

// 12 significant digits, fixed "%.12g" rendering: stable golden files.
std::string format_real(double x);

// Whole-file helpers; messages carry the path.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// FNV-1a 64-bit digest of a byte string, as 16 lowercase hex digits.
std::string content_digest(const std::string& bytes);

// ---------------------------------------------------------------------------
// Readers. All files are UTF-8 JSON; numeric fields accept JSON numbers or
// "p/q" strings where noted. Decimal literals are taken at their double
// value; use "p/q" strings for exact non-dyadic rationals. Errors are
// std::invalid_argument naming the file, the field, and (for parse errors)
// the line.
// ---------------------------------------------------------------------------

// {"dim": d, "points": [{"label": str, "coord": [num|"p/q", ...]}, ...],
//  "mode": "rational"|"float"}   (mode optional, default "rational")
PointConfiguration read_configuration(const std::string& path);

// {"values": {label: num|"p/q", ...}}  — every label of A exactly once.
FunctionOnA read_lift(const PointConfiguration& A, const std::string& path);

// {"values": {label: num, ...}} (positive) or {"log_values": {label: num, ...}}
WeightVector read_weight(const PointConfiguration& A, const std::string& path);

// {"mode": "structured", "drift": {label: num|"p/q"}, "bounded": {label: expr},
//  "bound": B, "samples": [i, ...]}  — drift/bounded optional (default 0),
//  expr over i, sqrt(i), 1/i, constants, +, -, *;
// or {"mode": "raw", "values": [{label: num, ...}, ...]}.
SequenceSpec read_sequence(const PointConfiguration& A, const std::string& path);

// A stored cloud names its coordinates; all points share one key set.
struct NamedCloud {
  std::vector<std::string> labels;
  PointCloud cloud;
};

// {"mesh": h, "points": [{label: num, ...}, ...]}
NamedCloud read_cloud(const std::string& path);

// ---------------------------------------------------------------------------
// Writers. Deterministic, byte-stable output; reals via format_real.
// ---------------------------------------------------------------------------

std::string configuration_to_json(const PointConfiguration& A);
// {"facets": [[labels]], "nonparticipating": [labels]}
std::string subdivision_to_json(const PointConfiguration& A, const Subdivision& S);
std::string cloud_to_json(const std::vector<std::string>& labels, const PointCloud& cloud);
std::string weight_to_json(const PointConfiguration& A, const WeightVector& w);
std::string distance_report_to_text(const DistanceReport& r);
// "t,d_H,eta" header plus one row per entry.
std::string schedule_to_csv(const std::vector<ScheduleEntry>& rows);

// ---------------------------------------------------------------------------
// Run manifest: everything that determines a run's outputs, plus wall time.
// Two runs with identical manifests (wall time aside) write byte-identical
// reports.
// ---------------------------------------------------------------------------
struct RunManifest {
  std::string command;  // argv joined with single spaces
  std::vector<std::pair<std::string, std::string>> inputs;  // path, digest
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, double>> tolerances;  // name, value
  std::string version = kToolVersion;
  double wall_ms = 0;  // informational only; no report content depends on it
};

std::string manifest_to_json(const RunManifest& m);

}  // namespace toric_limits
