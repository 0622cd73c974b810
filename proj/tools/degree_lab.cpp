// Copyright 2026 The degree-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// degree-lab: command-line front end for the samplers and the experiment
// harness. Exit status 0 on pass, 1 on fail, 2 on usage or input errors.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "degree_lab/edge_list.hpp"
#include "degree_lab/experiment.hpp"

namespace {

using namespace degree_lab;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitError = 2;

struct CommonFlags {
  std::string format = "json";
  std::string out;
  std::string emit;
  std::string core_path;
};

LabeledGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return read_graph(in);
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

/// Writes the sample of trial 0 in edge-list form.
void emit_sample(const ExperimentConfig& cfg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  const Seed seed = derive_seed(cfg.master_seed, 0);
  const auto n = static_cast<Vertex>(cfg.n);
  switch (cfg.kind) {
    case ExperimentKind::Bins: {
      // location vector as a 2-column list "ball bin"
      const auto loc = throw_balls(n, cfg.k, seed);
      out << loc.n << ' ' << loc.entries.size() << " locations\n";
      for (std::size_t i = 0; i < loc.entries.size(); ++i) out << i + 1 << ' ' << loc.entries[i] << '\n';
      break;
    }
    case ExperimentKind::Forest: {
      const auto f = sample_forest(n, static_cast<Vertex>(cfg.t), seed);
      out << f.order() << ' ' << f.edges().size() << " roots=" << f.roots() << '\n';
      write_edges(out, f.edges());
      break;
    }
    case ExperimentKind::Gnm:
    case ExperimentKind::Census:
      write_graph(out, sample_gnm(n, cfg.m, seed, cfg.limits).graph);
      break;
    case ExperimentKind::Cs:
      write_graph(out, sample_cs(n, cfg.m, seed, cfg.limits).graph);
      break;
    case ExperimentKind::Complex:
      write_graph(out, sample_complex(cfg.core, static_cast<Vertex>(cfg.q), seed).graph);
      break;
    case ExperimentKind::Pipeline:
      write_graph(out, sample_pipeline(cfg.pipeline_spec(), seed, cfg.limits, cfg.shuffle_labels).graph);
      break;
  }
}

nlohmann::json slice_json(const Slice& s, bool with_edges) {
  nlohmann::json j;
  j["order"] = s.vertices.size();
  j["size"] = s.edges.size();
  j["maxDegree"] = max_degree(s);
  if (with_edges) {
    j["vertices"] = s.vertices;
    auto edges = nlohmann::json::array();
    for (const auto& e : s.edges) edges.push_back({e.u, e.v});
    j["edges"] = edges;
  }
  return j;
}

nlohmann::json nu_json(double n, double k, double eps) {
  nlohmann::json j;
  const double value = nu(n, k);
  j["n"] = n;
  j["k"] = k;
  j["nu"] = value;
  j["nuHat"] = nu_hat(n);
  j["residualK"] = K_eval(value, n) - std::log(k);
  j["residualF"] = f_eval(value, n, k);
  const auto iv = interval_around(value, eps);
  j["epsilon"] = eps;
  j["interval"] = {iv.lo, iv.hi};
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random-structure laboratory: max-degree concentration experiments"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand help for all subcommands");

  ExperimentConfig cfg;
  CommonFlags common;
  double nu_n = 0;
  double nu_k = 0;
  double nu_eps = 1.0 / 3;
  std::string decompose_path;

  auto add_run_flags = [&](CLI::App* sub) {
    sub->add_option("--trials", cfg.trials, "Number of independent trials")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.master_seed, "Master seed; trial i uses derive_seed(seed, i)");
    sub->add_option("--threshold", cfg.threshold, "Pass fraction")->check(CLI::Range(0.0, 1.0));
    sub->add_option("--format", common.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", common.out, "Write the report to this path");
    sub->add_option("--emit", common.emit, "Write the trial-0 sample as an edge list");
    sub->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)");
    sub->add_option("--gnm-cap", cfg.limits.gnm_attempts, "Multigraph draws per G(n,m) sample");
    sub->add_option("--cs-cap", cfg.limits.cs_attempts, "G(n,m) draws per complex-free sample");
  };
  auto add_eps = [&](CLI::App* sub) {
    sub->add_option("--eps", cfg.epsilon, "Interval half-width")->check(CLI::PositiveNumber);
  };

  auto* nu_cmd = app.add_subcommand("nu", "Evaluate nu(n, k) and its predicted interval");
  nu_cmd->add_option("--n", nu_n, "Bins")->required();
  nu_cmd->add_option("--k", nu_k, "Balls")->required();
  nu_cmd->add_option("--eps", nu_eps, "Interval half-width")->check(CLI::PositiveNumber);

  auto* bins = app.add_subcommand("bins", "Maximum load of k balls in n bins");
  bins->add_option("--n", cfg.n)->required();
  bins->add_option("--k", cfg.k)->required();
  bins->add_option("--t", cfg.t, "Also record max load minus max load of bins 1..t");
  add_eps(bins);
  add_run_flags(bins);

  auto* forest = app.add_subcommand("forest", "Maximum degree of a uniform forest F(n, t)");
  forest->add_option("--n", cfg.n)->required();
  forest->add_option("--t", cfg.t)->required();
  add_eps(forest);
  add_run_flags(forest);

  auto* gnm = app.add_subcommand("gnm", "Maximum degree of G(n, m)");
  gnm->add_option("--n", cfg.n)->required();
  gnm->add_option("--m", cfg.m)->required();
  add_eps(gnm);
  add_run_flags(gnm);

  auto* cs = app.add_subcommand("cs", "Maximum degree of a graph without complex components");
  cs->add_option("--n", cfg.n)->required();
  cs->add_option("--m", cfg.m)->required();
  add_eps(cs);
  add_run_flags(cs);

  auto* complex = app.add_subcommand("complex", "Maximum degree of Q(C, q)");
  complex->add_option("--core", common.core_path, "Core edge list")->required()->check(CLI::ExistingFile);
  complex->add_option("--q", cfg.q)->required();
  add_eps(complex);
  add_run_flags(complex);

  auto* pipeline = app.add_subcommand("pipeline", "Core-to-graph pipeline with part-wise degrees");
  pipeline->add_option("--core", common.core_path, "Core edge list")->required()->check(CLI::ExistingFile);
  pipeline->add_option("--l", cfg.l)->required();
  pipeline->add_option("--r", cfg.r)->required();
  pipeline->add_option("--n", cfg.n)->required();
  pipeline->add_option("--m", cfg.m)->required();
  pipeline->add_flag("--shuffle-labels", cfg.shuffle_labels, "Apply a uniform relabelling");
  add_eps(pipeline);
  add_run_flags(pipeline);

  auto* census = app.add_subcommand("census", "Exact uniformity check of the G(n, m) sampler");
  census->add_option("--n", cfg.n)->required();
  census->add_option("--m", cfg.m)->required();
  census->add_option("--max-tv", cfg.max_tv, "Pass when TV distance is below this")->check(CLI::PositiveNumber);
  add_run_flags(census);

  auto* decompose = app.add_subcommand("decompose", "Split a graph into complex parts and core");
  decompose->add_option("file", decompose_path, "Edge list")->required()->check(CLI::ExistingFile);
  decompose->add_option("--out", common.out, "Write JSON to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return e.get_exit_code() == 0 ? code : kExitError;
  }

  try {
    if (*nu_cmd) {
      write_output(nu_json(nu_n, nu_k, nu_eps).dump(2) + "\n", common.out);
      return kExitPass;
    }
    if (*decompose) {
      const auto g = load_graph(decompose_path);
      const auto d = split(g);
      nlohmann::json j;
      j["n"] = g.order();
      j["m"] = g.size();
      j["components"] = components(g).size();
      j["largeComplex"] = slice_json(d.large_complex, true);
      j["smallComplex"] = slice_json(d.small_complex, true);
      j["nonComplex"] = slice_json(d.non_complex, false);
      j["core"] = slice_json(d.core, true);
      j["coreLargestComponent"] = d.core_largest_component;
      write_output(j.dump(2) + "\n", common.out);
      return kExitPass;
    }

    for (auto* sub : app.get_subcommands()) cfg.kind = parse_kind(sub->get_name());
    if (!common.core_path.empty()) {
      cfg.core = load_graph(common.core_path);
      cfg.core_label = std::filesystem::path(common.core_path).filename().string();
    }
    if (cfg.kind == ExperimentKind::Complex) cfg.n = cfg.q;

    const auto report = run_experiment(cfg);
    if (!common.emit.empty()) emit_sample(cfg, common.emit);
    write_output(emit_report(report, common.format == "csv" ? ReportFormat::Csv : ReportFormat::Json),
                 common.out);
    return report.pass ? kExitPass : kExitFail;
  } catch (const std::exception& e) {
    std::cerr << "degree-lab: " << e.what() << '\n';
    return kExitError;
  }
}
