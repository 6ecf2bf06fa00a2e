#include "toric_limits/cli.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "toric_limits/degeneration.hpp"
#include "toric_limits/hausdorff.hpp"
#include "toric_limits/io.hpp"
#include "toric_limits/point_configuration.hpp"
#include "toric_limits/secondary_fan.hpp"
#include "toric_limits/sequence.hpp"
#include "toric_limits/subdivision.hpp"
#include "toric_limits/toric_variety.hpp"

namespace toric_limits {

namespace {

// Shared run plumbing: output directory, manifest assembly, report emission.
struct Run {
  std::string out_dir = ".";
  RunManifest manifest;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  void note_input(const std::string& path) {
    manifest.inputs.emplace_back(path, content_digest(read_text_file(path)));
  }
  void tolerance(const std::string& name, double v) {
    manifest.tolerances.emplace_back(name, v);
  }
  std::string path_of(const std::string& name) const {
    return (std::filesystem::path(out_dir) / name).string();
  }
  void emit(const std::string& name, const std::string& content, bool to_stdout = true) {
    std::filesystem::create_directories(out_dir);
    write_text_file(path_of(name), content);
    if (to_stdout) std::fputs(content.c_str(), stdout);
  }
  void finish() {
    auto dt = std::chrono::steady_clock::now() - t0;
    manifest.wall_ms =
        std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(dt).count();
    std::filesystem::create_directories(out_dir);
    write_text_file(path_of("manifest.json"), manifest_to_json(manifest));
  }
};

Gauge parse_gauge(const std::string& text) {
  if (text.empty() || text == "orthogonal") return OrthogonalGauge{};
  LabelGauge lg;
  std::string item;
  std::istringstream ss(text);
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) lg.labels.push_back(item);
  }
  if (lg.labels.empty())
    throw std::invalid_argument("--gauge: expected \"orthogonal\" or a comma-separated label list");
  return lg;
}

std::string members_text(const PointConfiguration& A, const std::vector<int>& members) {
  std::string out = "{";
  for (std::size_t k = 0; k < members.size(); ++k) {
    if (k) out += ", ";
    out += A.labels[members[k]];
  }
  out += "}";
  return out;
}

std::string subdivision_text(const PointConfiguration& A, const Subdivision& S) {
  std::string out;
  for (const auto& f : S.facets) out += "  " + members_text(A, f) + "\n";
  if (!S.nonparticipating.empty())
    out += "nonparticipating: " + members_text(A, S.nonparticipating) + "\n";
  return out;
}

std::string values_text(const PointConfiguration& A, const QVec& v) {
  std::string out;
  for (int j = 0; j < A.size(); ++j) {
    if (j) out += "  ";
    out += A.labels[j] + "=" + to_string(v[j]);
  }
  return out;
}

std::string values_text(const PointConfiguration& A, const std::vector<double>& v) {
  std::string out;
  for (int j = 0; j < A.size(); ++j) {
    if (j) out += "  ";
    out += A.labels[j] + "=" + format_real(v[j]);
  }
  return out;
}

std::string schedule_text(const std::vector<ScheduleEntry>& rows, const char* param) {
  std::string out;
  for (const auto& e : rows)
    out += "  " + std::string(param) + "=" + format_real(e.t) + "  d_H=" + format_real(e.d_h) +
           "  eta=" + format_real(e.eta_budget) + "\n";
  return out;
}

std::string verdict_text(Verdict v) {
  return v == Verdict::converged ? "converged" : "inconclusive";
}

int verdict_code(Verdict v) { return v == Verdict::converged ? 0 : 2; }

// ---- subcommand bodies ------------------------------------------------------

int cmd_subdivide(Run& run, const std::string& config, const std::string& lift,
                  const Gauge& gauge) {
  PointConfiguration A = read_configuration(config);
  run.note_input(config);
  FunctionOnA f = read_lift(A, lift);
  run.note_input(lift);
  InducedSubdivision S = induced_subdivision(A, f.values);
  QVec reduced = reduce_mod_aff(A, f.values, gauge);

  std::string report;
  report += "configuration: " + std::to_string(A.size()) + " points in R^" +
            std::to_string(A.dim) + "\n";
  report += "lift (reduced): " + values_text(A, reduced) + "\n";
  report += "facets:\n" + subdivision_text(A, S.combinatorics);
  run.emit("subdivision-report.txt", report);
  run.emit("subdivision.json", subdivision_to_json(A, S.combinatorics), false);
  run.finish();
  return 0;
}

int cmd_certify(Run& run, const std::string& config, const std::string& lift) {
  PointConfiguration A = read_configuration(config);
  run.note_input(config);
  FunctionOnA f = read_lift(A, lift);
  run.note_input(lift);
  InducedSubdivision S = induced_subdivision(A, f.values);
  NonfaceSet nf = minimal_nonfaces(A, S.combinatorics);

  std::string report;
  report += "facets:\n" + subdivision_text(A, S.combinatorics);
  report += "minimal nonfaces: " + std::to_string(nf.pairs.size()) + " pairs, " +
            std::to_string(nf.singletons.size()) + " singletons\n";
  bool all_positive = true;
  auto describe = [&](const Certificate& c, const std::string& head) {
    report += head + ": facet " + members_text(A, c.facet) + ", p=(";
    for (std::size_t k = 0; k < c.p.size(); ++k) {
      if (k) report += ", ";
      report += to_string(c.p[k]);
    }
    report += "), alpha=(";
    for (std::size_t k = 0; k < c.alpha.size(); ++k) {
      if (k) report += ", ";
      report += to_string(c.alpha[k]);
    }
    report += "), margin=" + to_string(c.margin) + "\n";
    if (sign(c.margin) <= 0) all_positive = false;
  };
  for (const auto& pr : nf.pairs) {
    Certificate c = convex_certificate(A, f.values, S, pr);
    describe(c, "pair {" + A.labels[pr[0]] + ", " + A.labels[pr[1]] + "}");
  }
  for (int s : nf.singletons) {
    Certificate c = convex_certificate(A, f.values, S, s);
    describe(c, "singleton {" + A.labels[s] + "}");
  }
  report += std::string("all margins positive: ") + (all_positive ? "yes" : "NO") + "\n";
  run.emit("certificates.txt", report);
  run.finish();
  return all_positive ? 0 : 2;
}

int cmd_fan(Run& run, const std::string& config, int samples, std::uint64_t seed) {
  PointConfiguration A = read_configuration(config);
  run.note_input(config);
  SecondaryFanSample fan = sample_secondary_fan(A, samples, seed);

  std::string report;
  report += "secondary fan sample: " + std::to_string(fan.n_samples) + " lifts, seed " +
            std::to_string(fan.seed) + "\n";
  report += "cells: " + std::to_string(fan.cells.size()) + "\n";
  for (std::size_t k = 0; k < fan.cells.size(); ++k) {
    const FanCell& cell = fan.cells[k];
    report += "cell " + std::to_string(k) + ": dim " + std::to_string(cell.cone.dim) +
              (cell.full_dimensional ? " (full)" : "") + ", hits " + std::to_string(cell.hits) +
              "\n";
    report += subdivision_text(A, cell.subdivision);
    for (const auto& ray : cell.cone.rays) {
      report += "  ray: (";
      for (std::size_t j = 0; j < ray.size(); ++j) {
        if (j) report += ", ";
        report += to_string(ray[j]);
      }
      report += ")\n";
    }
  }
  report += "refinement cover relations (coarser -> finer):";
  for (const auto& [lo, hi] : fan.poset_edges)
    report += " " + std::to_string(lo) + "->" + std::to_string(hi);
  report += "\n";
  run.emit("fan-report.txt", report);
  run.finish();
  return 0;
}

int cmd_sample(Run& run, const std::string& config, const std::string& weight, double mesh) {
  PointConfiguration A = read_configuration(config);
  run.note_input(config);
  WeightVector w = read_weight(A, weight);
  run.note_input(weight);
  run.tolerance("mesh", mesh);
  PointCloud cloud = sample_variety(A, w, mesh);

  double worst = 0;
  std::vector<AffineRelation> rels = affine_relations_basis(A);
  for (const auto& z : cloud.points)
    for (const auto& rel : rels) worst = std::max(worst, binomial_residual(z, w, rel));

  std::string report;
  report += "sampled " + std::to_string(cloud.points.size()) + " points at mesh " +
            format_real(mesh) + "\n";
  report += "net radius eta: " + format_real(cloud_eta(cloud)) + "\n";
  report += "worst binomial residual: " + format_real(worst) + "\n";
  run.emit("sample-report.txt", report);
  run.emit("cloud.json", cloud_to_json(A.labels, cloud), false);
  run.finish();
  return 0;
}

int cmd_hausdorff(Run& run, const std::string& cloud_a, const std::string& cloud_b) {
  NamedCloud X = read_cloud(cloud_a);
  run.note_input(cloud_a);
  NamedCloud Y = read_cloud(cloud_b);
  run.note_input(cloud_b);
  if (X.labels != Y.labels) {
    // same label set in a different order is fine; permute Y into X's order
    std::vector<int> perm;
    for (const auto& label : X.labels) {
      auto it = std::find(Y.labels.begin(), Y.labels.end(), label);
      if (it == Y.labels.end())
        throw std::invalid_argument(cloud_b + ": clouds do not share a label set");
      perm.push_back(static_cast<int>(it - Y.labels.begin()));
    }
    for (auto& z : Y.cloud.points) {
      std::vector<double> c(perm.size());
      for (std::size_t k = 0; k < perm.size(); ++k) c[k] = z.coords[perm[k]];
      z.coords = std::move(c);
    }
  }
  DistanceReport rep = hausdorff(X.cloud, Y.cloud);
  run.emit("hausdorff.txt", distance_report_to_text(rep));
  run.finish();
  return 0;
}

int cmd_degenerate(Run& run, const std::string& config, const std::string& lift,
                   const std::string& weight, double t_max, double t_step, double mesh,
                   double tol) {
  PointConfiguration A = read_configuration(config);
  run.note_input(config);
  FunctionOnA lam = read_lift(A, lift);
  run.note_input(lift);
  WeightVector w = weight.empty() ? WeightVector::ones(A.size()) : read_weight(A, weight);
  if (!weight.empty()) run.note_input(weight);
  run.tolerance("mesh", mesh);
  run.tolerance("tol", tol);
  run.tolerance("t-max", t_max);
  run.tolerance("t-step", t_step);

  std::vector<double> schedule;
  for (double t = 0; t <= t_max + 1e-12; t += t_step) schedule.push_back(t);
  DegenerationReport rep = verify_toric_degeneration(A, lam.values, w, schedule, mesh, tol);

  std::vector<double> wred = reduce_mod_aff(A, rep.predicted.weight.log_values);
  std::string report;
  report += "predicted limit complex X(S, w)\n";
  report += "facets:\n" + subdivision_text(A, rep.predicted.subdivision);
  report += "log w (reduced): " + values_text(A, wred) + "\n";
  report += "verdict: " + verdict_text(rep.verdict) + "\n";
  report += "schedule:\n" + schedule_text(rep.distances, "t");
  run.emit("degeneration-report.txt", report);
  run.emit("degeneration.csv", schedule_to_csv(rep.distances), false);
  run.finish();
  return verdict_code(rep.verdict);
}

int cmd_sequence_limit(Run& run, const std::string& config, const std::string& sequence,
                       double mesh, double tol) {
  PointConfiguration A = read_configuration(config);
  run.note_input(config);
  SequenceSpec seq = read_sequence(A, sequence);
  run.note_input(sequence);
  run.tolerance("mesh", mesh);
  run.tolerance("tol", tol);

  SequenceLimitResult res = sequence_limit(A, seq, mesh, tol);

  std::string report;
  report += std::string("mode: ") +
            (seq.mode == SequenceSpec::Mode::structured ? "structured (exact)"
                                                        : "raw (heuristic)") +
            "\n";
  report += "sigma: face of dim " + std::to_string(res.sigma.dim) + " with " +
            std::to_string(res.sigma.rays.size()) + " rays of the secondary cone (dim " +
            std::to_string(res.tau.dim) + ")\n";
  for (int r : res.sigma.rays) {
    report += "  ray: (";
    const QVec& ray = res.tau.rays[r];
    for (std::size_t j = 0; j < ray.size(); ++j) {
      if (j) report += ", ";
      report += to_string(ray[j]);
    }
    report += ")\n";
  }
  if (seq.mode == SequenceSpec::Mode::structured) {
    report += "decomposition v_i = u_i + vbar_i:\n";
    for (int j = 0; j < A.size(); ++j)
      report += "  " + A.labels[j] + ": u=" + res.decomposition.u[j].to_text() +
                "  vbar=" + res.decomposition.vbar[j].to_text() + "\n";
  }
  if (res.decomposition.multiple_accumulation)
    report += "warning: multiple accumulation points detected in the bounded remainder\n";
  report += "v (reduced): " + values_text(A, to_doubles(res.decomposition.v)) + "\n";
  report += "achieved bound on |vbar_i|: " + format_real(res.decomposition.achieved_bound) +
            "\n";
  report += "predicted limit complex X(S, w)\n";
  report += "facets:\n" + subdivision_text(A, res.predicted.subdivision);
  report += "log w (reduced): " + values_text(A, res.predicted.weight.log_values) + "\n";
  if (!res.diagnostics.empty()) report += "diagnostics: " + res.diagnostics + "\n";
  if (!res.decomposition.diagnostics.empty())
    report += "diagnostics: " + res.decomposition.diagnostics + "\n";
  report += "verdict: " + verdict_text(res.report.verdict) + "\n";
  report += "schedule (translates of the sequence):\n" +
            schedule_text(res.report.distances, "i");
  report += "complex continuity X(S, Exp(vbar_i)) -> X(S, w):\n" +
            schedule_text(res.complex_limit_distances, "i");
  run.emit("sequence-report.txt", report);
  run.emit("sequence.csv", schedule_to_csv(res.report.distances), false);
  run.finish();
  return verdict_code(res.report.verdict);
}

PointConfiguration builtin_pentagon() {
  return new_configuration(
      2, {"0,0", "1,0", "1,1", "1/2,3/2", "0,1"},
      {{0, 0}, {1, 0}, {1, 1}, {Rational(1, 2), Rational(3, 2)}, {0, 1}});
}

int cmd_repro(Run& run, const std::string& which, double mesh, double tol) {
  PointConfiguration A = builtin_pentagon();
  run.tolerance("mesh", mesh);
  run.tolerance("tol", tol);
  SequenceSpec seq;
  seq.mode = SequenceSpec::Mode::structured;
  GrowthPoly i = GrowthPoly::term(1, 2);
  GrowthPoly rooti = GrowthPoly::term(1, 1);
  GrowthPoly invi = GrowthPoly::term(1, -2);

  Subdivision expected;
  bool check_weight = false;
  if (which == "pentagon-ex42") {
    // v_i = (-i - 1/i, i - 1, i, -i/2, -i)
    seq.structured.growth = {GrowthPoly(0) - i - invi, i - GrowthPoly(1), i,
                             GrowthPoly(0) - GrowthPoly(Rational(1, 2)) * i, GrowthPoly(0) - i};
    expected.facets = {{0, 1, 2, 4}, {2, 3, 4}};
    check_weight = true;
  } else if (which == "pentagon-sqrt") {
    // u_i = (sqrt(i) - i, -i, 0, 0, 0)
    seq.structured.growth = {rooti - i, GrowthPoly(0) - i, GrowthPoly(0), GrowthPoly(0),
                             GrowthPoly(0)};
    expected.facets = {{0, 1, 2}, {0, 2, 4}, {2, 3, 4}};
  } else {
    throw std::invalid_argument("repro: unknown case \"" + which +
                                "\" (expected pentagon-ex42 or pentagon-sqrt)");
  }

  SequenceLimitResult res = sequence_limit(A, seq, mesh, tol);

  std::string report;
  report += "repro " + which + "\n";
  report += "facets:\n" + subdivision_text(A, res.predicted.subdivision);
  report += "log w (reduced): " + values_text(A, res.predicted.weight.log_values) + "\n";
  bool ok = res.predicted.subdivision.facets == expected.facets;
  report += std::string("subdivision as expected: ") + (ok ? "yes" : "NO") + "\n";
  if (check_weight) {
    // w must be the translate class of (1, e^-1, 1, 1, 1)
    std::vector<double> diff = res.predicted.weight.log_values;
    diff[1] -= -1.0;
    std::vector<double> residual = reduce_mod_aff(A, diff);
    double err = 0;
    for (double r : residual) err = std::max(err, std::abs(r));
    report += "|log w - log(1,e^-1,1,1,1)| mod Aff: " + format_real(err) + "\n";
    ok = ok && err <= 1e-9;
  }
  report += "verdict: " + verdict_text(res.report.verdict) + "\n";
  report += "schedule:\n" + schedule_text(res.report.distances, "i");
  run.emit("repro-" + which + ".txt", report);
  run.emit("sequence.csv", schedule_to_csv(res.report.distances), false);
  run.finish();
  if (!ok) return 2;
  return verdict_code(res.report.verdict);
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"regular subdivisions, secondary fans, and Hausdorff limits of toric varieties"};
  app.require_subcommand(1);

  std::string config, lift, weight, sequence, cloud_a, cloud_b, gauge_text, out_dir = ".";
  std::string repro_case;
  double mesh = 0.05, tol = 0.05, t_max = 40, t_step = 2;
  int samples = 2000;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out-dir", out_dir, "directory for reports and CSVs");
    sub->add_option("--seed", seed, "random seed");
  };

  CLI::App* sub_subdivide = app.add_subcommand("subdivide", "regular subdivision of a lift");
  sub_subdivide->add_option("--config", config, "point configuration file")->required();
  sub_subdivide->add_option("--lift", lift, "lifting function file")->required();
  sub_subdivide->add_option("--gauge", gauge_text, "orthogonal | comma-separated labels");
  add_common(sub_subdivide);

  CLI::App* sub_certify = app.add_subcommand("certify", "nonface certificates of a lift");
  sub_certify->add_option("--config", config, "point configuration file")->required();
  sub_certify->add_option("--lift", lift, "lifting function file")->required();
  add_common(sub_certify);

  CLI::App* sub_fan = app.add_subcommand("fan", "sample the secondary fan");
  sub_fan->add_option("--config", config, "point configuration file")->required();
  sub_fan->add_option("--samples", samples, "number of random lifts");
  add_common(sub_fan);

  CLI::App* sub_sample = app.add_subcommand("sample", "sample the toric variety");
  sub_sample->add_option("--config", config, "point configuration file")->required();
  sub_sample->add_option("--weight", weight, "weight vector file")->required();
  sub_sample->add_option("--mesh", mesh, "grid spacing");
  add_common(sub_sample);

  CLI::App* sub_hausdorff = app.add_subcommand("hausdorff", "distance between two clouds");
  sub_hausdorff->add_option("--cloud-a", cloud_a, "first cloud file")->required();
  sub_hausdorff->add_option("--cloud-b", cloud_b, "second cloud file")->required();
  add_common(sub_hausdorff);

  CLI::App* sub_degenerate = app.add_subcommand("degenerate", "verify a toric degeneration");
  sub_degenerate->add_option("--config", config, "point configuration file")->required();
  sub_degenerate->add_option("--lift", lift, "one-parameter direction file")->required();
  sub_degenerate->add_option("--weight", weight, "base weight file (default all ones)");
  sub_degenerate->add_option("--t-max", t_max, "schedule endpoint");
  sub_degenerate->add_option("--t-step", t_step, "schedule step");
  sub_degenerate->add_option("--mesh", mesh, "grid spacing");
  sub_degenerate->add_option("--tol", tol, "distance tolerance");
  add_common(sub_degenerate);

  CLI::App* sub_seq = app.add_subcommand("sequence-limit", "limit of a sequence of translates");
  sub_seq->add_option("--config", config, "point configuration file")->required();
  sub_seq->add_option("--sequence", sequence, "sequence file")->required();
  sub_seq->add_option("--mesh", mesh, "grid spacing");
  sub_seq->add_option("--tol", tol, "distance tolerance");
  add_common(sub_seq);

  CLI::App* sub_repro = app.add_subcommand("repro", "reproduce a worked example");
  sub_repro->add_option("case", repro_case, "pentagon-ex42 | pentagon-sqrt")->required();
  sub_repro->add_option("--mesh", mesh, "grid spacing");
  sub_repro->add_option("--tol", tol, "distance tolerance");
  add_common(sub_repro);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << app.help();
    return 1;
  }

  Run run;
  run.out_dir = out_dir;
  run.manifest.seed = seed;
  {
    std::string cmd;
    for (int k = 0; k < argc; ++k) {
      if (k) cmd += ' ';
      cmd += argv[k];
    }
    run.manifest.command = cmd;
  }

  try {
    if (sub_subdivide->parsed())
      return cmd_subdivide(run, config, lift, parse_gauge(gauge_text));
    if (sub_certify->parsed()) return cmd_certify(run, config, lift);
    if (sub_fan->parsed()) return cmd_fan(run, config, samples, seed);
    if (sub_sample->parsed()) return cmd_sample(run, config, weight, mesh);
    if (sub_hausdorff->parsed()) return cmd_hausdorff(run, cloud_a, cloud_b);
    if (sub_degenerate->parsed())
      return cmd_degenerate(run, config, lift, weight, t_max, t_step, mesh, tol);
    if (sub_seq->parsed()) return cmd_sequence_limit(run, config, sequence, mesh, tol);
    if (sub_repro->parsed()) return cmd_repro(run, repro_case, mesh, tol);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

int run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("toric-limits");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace toric_limits
