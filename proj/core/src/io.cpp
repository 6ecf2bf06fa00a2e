#include "toric_limits/io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace toric_limits {

using json = nlohmann::ordered_json;

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::invalid_argument(path + ": cannot open file for writing");
  out << content;
  if (!out) throw std::invalid_argument(path + ": write failed");
}

std::string content_digest(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;  // FNV offset basis
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;  // FNV prime
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
  return buf;
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& field,
                       const std::string& what) {
  throw std::invalid_argument(path + ": field \"" + field + "\": " + what);
}

json parse_file(const std::string& path) {
  std::string text = read_text_file(path);
  try {
    return json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // translate the byte offset into a line number
    std::size_t line = 1;
    for (std::size_t k = 0; k < e.byte && k < text.size(); ++k)
      if (text[k] == '\n') ++line;
    throw std::invalid_argument(path + ": line " + std::to_string(line) +
                                ": " + e.what());
  }
}

Rational json_rational(const json& v, const std::string& path, const std::string& field) {
  try {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(static_cast<long>(v.get<std::int64_t>()));
    if (v.is_number()) return rational_from_double(v.get<double>());
  } catch (const std::exception& e) {
    fail(path, field, e.what());
  }
  fail(path, field, "expected a number or a \"p/q\" string");
}

double json_double(const json& v, const std::string& path, const std::string& field) {
  if (!v.is_number()) fail(path, field, "expected a number");
  double x = v.get<double>();
  if (!std::isfinite(x)) fail(path, field, "must be finite");
  return x;
}

const json& require(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) fail(path, key, "enclosing value is not an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(path, key, "missing");
  return *it;
}

// Reads {label: value} in label order of A. A full cover is required unless
// `partial` (absent labels then default to the consumer's initial value).
template <typename F>
void for_labels(const PointConfiguration& A, const json& obj, const std::string& path,
                const std::string& field, F&& consume, bool partial = false) {
  if (!obj.is_object()) fail(path, field, "expected an object keyed by labels");
  if (!partial && static_cast<int>(obj.size()) != A.size())
    fail(path, field,
         "expected exactly one entry per label (" + std::to_string(A.size()) +
             " labels, " + std::to_string(obj.size()) + " entries)");
  for (const auto& [key, value] : obj.items()) {
    int j = A.index_of(key);
    if (j < 0) fail(path, field, "unknown label \"" + key + "\"");
    consume(j, value, field + "." + key);
  }
}

void emit_string(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
}

}  // namespace

PointConfiguration read_configuration(const std::string& path) {
  json j = parse_file(path);
  const json& jd = require(j, "dim", path);
  if (!jd.is_number_integer()) fail(path, "dim", "expected an integer");
  int dim = jd.get<int>();

  ScalarMode mode = ScalarMode::rational;
  if (auto it = j.find("mode"); it != j.end()) {
    std::string m = it->is_string() ? it->get<std::string>() : std::string();
    if (m == "rational")
      mode = ScalarMode::rational;
    else if (m == "float")
      mode = ScalarMode::floating;
    else
      fail(path, "mode", "expected \"rational\" or \"float\"");
  }

  const json& pts = require(j, "points", path);
  if (!pts.is_array() || pts.empty()) fail(path, "points", "expected a nonempty array");
  std::vector<std::string> labels;
  std::vector<QVec> coords;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    std::string field = "points[" + std::to_string(k) + "]";
    const json& pt = pts[k];
    if (!pt.is_object()) fail(path, field, "expected an object");
    const json& jl = require(pt, "label", path);
    if (!jl.is_string()) fail(path, field + ".label", "expected a string");
    labels.push_back(jl.get<std::string>());
    const json& jc = require(pt, "coord", path);
    if (!jc.is_array() || static_cast<int>(jc.size()) != dim)
      fail(path, field + ".coord", "expected an array of " + std::to_string(dim) + " numbers");
    QVec row;
    for (std::size_t c = 0; c < jc.size(); ++c)
      row.push_back(json_rational(jc[c], path, field + ".coord[" + std::to_string(c) + "]"));
    coords.push_back(std::move(row));
  }
  try {
    return new_configuration(dim, std::move(labels), std::move(coords), mode);
  } catch (const std::exception& e) {
    fail(path, "points", e.what());
  }
}

FunctionOnA read_lift(const PointConfiguration& A, const std::string& path) {
  json j = parse_file(path);
  FunctionOnA f;
  f.values.assign(A.size(), Rational(0));
  for_labels(A, require(j, "values", path), path, "values",
             [&](int idx, const json& v, const std::string& field) {
               f.values[idx] = json_rational(v, path, field);
             });
  return f;
}

WeightVector read_weight(const PointConfiguration& A, const std::string& path) {
  json j = parse_file(path);
  bool has_values = j.is_object() && j.contains("values");
  bool has_logs = j.is_object() && j.contains("log_values");
  if (has_values == has_logs)
    fail(path, "values", "expected exactly one of \"values\" or \"log_values\"");
  std::vector<double> entries(A.size(), 0.0);
  const char* key = has_values ? "values" : "log_values";
  for_labels(A, require(j, key, path), path, key,
             [&](int idx, const json& v, const std::string& field) {
               entries[idx] = json_double(v, path, field);
             });
  try {
    return has_values ? WeightVector::from_values(entries)
                      : WeightVector::from_logs(entries);
  } catch (const std::exception& e) {
    fail(path, key, e.what());
  }
}

SequenceSpec read_sequence(const PointConfiguration& A, const std::string& path) {
  json j = parse_file(path);
  const json& jm = require(j, "mode", path);
  std::string mode = jm.is_string() ? jm.get<std::string>() : std::string();
  SequenceSpec spec;

  if (mode == "structured") {
    spec.mode = SequenceSpec::Mode::structured;
    spec.structured.growth.assign(A.size(), GrowthPoly());
    if (auto it = j.find("drift"); it != j.end()) {
      for_labels(A, *it, path, "drift",
                 [&](int idx, const json& v, const std::string& field) {
                   spec.structured.growth[idx] =
                       spec.structured.growth[idx] +
                       GrowthPoly::term(json_rational(v, path, field), 2);
                 },
                 /*partial=*/true);
    }
    if (auto it = j.find("bounded"); it != j.end()) {
      for_labels(A, *it, path, "bounded",
                 [&](int idx, const json& v, const std::string& field) {
                   if (!v.is_string()) fail(path, field, "expected an expression string");
                   try {
                     spec.structured.growth[idx] =
                         spec.structured.growth[idx] +
                         parse_growth_expression(v.get<std::string>());
                   } catch (const std::exception& e) {
                     fail(path, field, e.what());
                   }
                 },
                 /*partial=*/true);
    }
    if (auto it = j.find("bound"); it != j.end())
      spec.structured.declared_bound = json_double(*it, path, "bound");
    if (auto it = j.find("samples"); it != j.end()) {
      if (!it->is_array()) fail(path, "samples", "expected an array of indices");
      for (std::size_t k = 0; k < it->size(); ++k) {
        const json& v = (*it)[k];
        std::string field = "samples[" + std::to_string(k) + "]";
        if (!v.is_number_integer()) fail(path, field, "expected an integer");
        long i = v.get<long>();
        if (i <= 0) fail(path, field, "indices start at 1");
        spec.structured.samples.push_back(i);
      }
    }
    return spec;
  }

  if (mode == "raw") {
    spec.mode = SequenceSpec::Mode::raw;
    const json& vals = require(j, "values", path);
    if (!vals.is_array() || vals.empty()) fail(path, "values", "expected a nonempty array");
    for (std::size_t k = 0; k < vals.size(); ++k) {
      std::string field = "values[" + std::to_string(k) + "]";
      std::vector<double> row(A.size(), 0.0);
      for_labels(A, vals[k], path, field,
                 [&](int idx, const json& v, const std::string& f) {
                   row[idx] = json_double(v, path, f);
                 });
      spec.raw.values.push_back(std::move(row));
    }
    return spec;
  }

  fail(path, "mode", "expected \"structured\" or \"raw\"");
}

NamedCloud read_cloud(const std::string& path) {
  json j = parse_file(path);
  NamedCloud out;
  out.cloud.mesh = json_double(require(j, "mesh", path), path, "mesh");
  const json& pts = require(j, "points", path);
  if (!pts.is_array() || pts.empty()) fail(path, "points", "expected a nonempty array");
  for (std::size_t k = 0; k < pts.size(); ++k) {
    std::string field = "points[" + std::to_string(k) + "]";
    const json& pt = pts[k];
    if (!pt.is_object()) fail(path, field, "expected an object keyed by labels");
    if (k == 0) {
      for (const auto& [key, value] : pt.items()) {
        (void)value;
        out.labels.push_back(key);
      }
    }
    if (pt.size() != out.labels.size())
      fail(path, field, "inconsistent label set across points");
    SimplexPoint z;
    for (const auto& label : out.labels) {
      auto it = pt.find(label);
      if (it == pt.end()) fail(path, field, "missing label \"" + label + "\"");
      z.coords.push_back(json_double(*it, path, field + "." + label));
    }
    out.cloud.points.push_back(std::move(z));
  }
  out.cloud.provenance = path;
  return out;
}

std::string configuration_to_json(const PointConfiguration& A) {
  std::string out = "{\n  \"dim\": " + std::to_string(A.dim) + ",\n  \"mode\": ";
  out += (A.mode == ScalarMode::rational) ? "\"rational\"" : "\"float\"";
  out += ",\n  \"points\": [\n";
  for (int j = 0; j < A.size(); ++j) {
    out += "    {\"label\": ";
    emit_string(out, A.labels[j]);
    out += ", \"coord\": [";
    for (int k = 0; k < A.dim; ++k) {
      if (k) out += ", ";
      Rational q = A.points[j][k];
      if (q.get_den() == 1) {
        out += q.get_num().get_str();
      } else {
        emit_string(out, to_string(q));
      }
    }
    out += "]}";
    if (j + 1 < A.size()) out += ',';
    out += '\n';
  }
  out += "  ]\n}\n";
  return out;
}

std::string subdivision_to_json(const PointConfiguration& A, const Subdivision& S) {
  std::string out = "{\n  \"facets\": [\n";
  for (std::size_t f = 0; f < S.facets.size(); ++f) {
    out += "    [";
    for (std::size_t k = 0; k < S.facets[f].size(); ++k) {
      if (k) out += ", ";
      emit_string(out, A.labels[S.facets[f][k]]);
    }
    out += ']';
    if (f + 1 < S.facets.size()) out += ',';
    out += '\n';
  }
  out += "  ],\n  \"nonparticipating\": [";
  for (std::size_t k = 0; k < S.nonparticipating.size(); ++k) {
    if (k) out += ", ";
    emit_string(out, A.labels[S.nonparticipating[k]]);
  }
  out += "]\n}\n";
  return out;
}

std::string cloud_to_json(const std::vector<std::string>& labels, const PointCloud& cloud) {
  std::string out = "{\n  \"mesh\": " + format_real(cloud.mesh) + ",\n  \"points\": [\n";
  for (std::size_t p = 0; p < cloud.points.size(); ++p) {
    out += "    {";
    const auto& z = cloud.points[p].coords;
    for (std::size_t k = 0; k < labels.size(); ++k) {
      if (k) out += ", ";
      emit_string(out, labels[k]);
      out += ": ";
      out += format_real(k < z.size() ? z[k] : 0.0);
    }
    out += '}';
    if (p + 1 < cloud.points.size()) out += ',';
    out += '\n';
  }
  out += "  ]\n}\n";
  return out;
}

std::string weight_to_json(const PointConfiguration& A, const WeightVector& w) {
  std::string out = "{\n  \"log_values\": {";
  for (int j = 0; j < A.size(); ++j) {
    if (j) out += ", ";
    emit_string(out, A.labels[j]);
    out += ": ";
    out += format_real(w.log_values[j]);
  }
  out += "}\n}\n";
  return out;
}

std::string distance_report_to_text(const DistanceReport& r) {
  std::string out;
  out += "d_forward: " + format_real(r.d_forward) + "\n";
  out += "d_backward: " + format_real(r.d_backward) + "\n";
  out += "d_h: " + format_real(r.d_h) + "\n";
  out += "witness_forward: x=" + std::to_string(r.witness_forward_x) +
         " y=" + std::to_string(r.witness_forward_y) + "\n";
  out += "witness_backward: y=" + std::to_string(r.witness_backward_y) +
         " x=" + std::to_string(r.witness_backward_x) + "\n";
  out += "eta_x: " + format_real(r.eta_x) + "\n";
  out += "eta_y: " + format_real(r.eta_y) + "\n";
  return out;
}

std::string schedule_to_csv(const std::vector<ScheduleEntry>& rows) {
  std::string out = "t,d_H,eta\n";
  for (const auto& row : rows) {
    out += format_real(row.t);
    out += ',';
    out += format_real(row.d_h);
    out += ',';
    out += format_real(row.eta_budget);
    out += '\n';
  }
  return out;
}

std::string manifest_to_json(const RunManifest& m) {
  std::string out = "{\n  \"command\": ";
  emit_string(out, m.command);
  out += ",\n  \"inputs\": [\n";
  for (std::size_t k = 0; k < m.inputs.size(); ++k) {
    out += "    {\"path\": ";
    emit_string(out, m.inputs[k].first);
    out += ", \"fnv1a64\": ";
    emit_string(out, m.inputs[k].second);
    out += '}';
    if (k + 1 < m.inputs.size()) out += ',';
    out += '\n';
  }
  out += "  ],\n  \"seed\": " + std::to_string(m.seed);
  out += ",\n  \"tolerances\": {";
  for (std::size_t k = 0; k < m.tolerances.size(); ++k) {
    if (k) out += ", ";
    emit_string(out, m.tolerances[k].first);
    out += ": ";
    out += format_real(m.tolerances[k].second);
  }
  out += "},\n  \"version\": ";
  emit_string(out, m.version);
  out += ",\n  \"wall_ms\": " + format_real(m.wall_ms);
  out += "\n}\n";
  return out;
}

}  // namespace toric_limits
