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

#pragma once

// Seeded Monte Carlo harness: runs independent trials of one sampler,
// compares the observed statistic with the interval predicted by nu, and
// produces a report that is byte-for-byte reproducible from the master seed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "degree_lab/balls_bins.hpp"
#include "degree_lab/graph.hpp"
#include "degree_lab/nu.hpp"
#include "degree_lab/pruefer.hpp"
#include "degree_lab/rng.hpp"
#include "degree_lab/samplers.hpp"

namespace degree_lab {

/// Regime of (n, m) under finite-n gates; see RegimeGates.
inline Regime classify_regime(double n, double m, const RegimeGates& gates = {}) {
  if (!(n >= 1) || !(m >= 0)) throw std::invalid_argument("classify_regime: need n >= 1, m >= 0");
  const double window = gates.a * std::cbrt(n * n);
  const double s = m - n / 2;
  if (s <= window) return Regime::I;
  if (s <= gates.s_max_fraction * n) return Regime::II;
  const double alpha = 2 * m / n;
  if (alpha > 1 + gates.delta0 && alpha < 2 - gates.delta0) return Regime::III;
  return Regime::OutOfScope;
}

enum class ExperimentKind { Bins, Forest, Gnm, Cs, Complex, Pipeline, Census };

inline const char* to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::Bins: return "bins";
    case ExperimentKind::Forest: return "forest";
    case ExperimentKind::Gnm: return "gnm";
    case ExperimentKind::Cs: return "cs";
    case ExperimentKind::Complex: return "complex";
    case ExperimentKind::Pipeline: return "pipeline";
    case ExperimentKind::Census: return "census";
  }
  return "?";
}

inline ExperimentKind parse_kind(const std::string& s) {
  for (auto k : {ExperimentKind::Bins, ExperimentKind::Forest, ExperimentKind::Gnm,
                 ExperimentKind::Cs, ExperimentKind::Complex, ExperimentKind::Pipeline,
                 ExperimentKind::Census}) {
    if (s == to_string(k)) return k;
  }
  throw std::invalid_argument("unknown experiment kind '" + s + "'");
}

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Bins;
  std::uint64_t n = 0;
  std::uint64_t k = 0;  // bins: balls
  std::uint64_t m = 0;  // gnm, cs, census, pipeline: edges
  std::uint64_t t = 0;  // forest: roots; bins: optional prefix length for the gap statistic
  std::uint64_t q = 0;  // complex: order of the output
  std::uint64_t l = 0;  // pipeline: large complex part order
  std::uint64_t r = 0;  // pipeline: small complex part order
  LabeledGraph core;    // complex, pipeline
  std::string core_label;
  double epsilon = 0.25;
  std::uint64_t trials = 100;
  Seed master_seed = 1;
  double threshold = 0.9;  // pass when hitFraction >= threshold
  double max_tv = 0.03;    // census: pass when TV < max_tv
  bool shuffle_labels = false;
  RegimeGates gates;
  SamplerLimits limits;
  unsigned threads = 0;  // 0 picks hardware concurrency

  void validate() const {
    if (trials < 1) throw std::invalid_argument("experiment: trials must be >= 1");
    if (!(epsilon > 0)) throw std::invalid_argument("experiment: epsilon must be positive");
    if (!(threshold >= 0 && threshold <= 1)) {
      throw std::invalid_argument("experiment: threshold must lie in [0, 1]");
    }
    if (n < 1 && kind != ExperimentKind::Complex) {
      throw std::invalid_argument("experiment: n must be >= 1");
    }
    if (n > UINT32_MAX || q > UINT32_MAX) throw std::invalid_argument("experiment: n too large");
    switch (kind) {
      case ExperimentKind::Bins:
        if (t > n) throw std::invalid_argument("bins: prefix t must not exceed n");
        break;
      case ExperimentKind::Forest:
        if (t < 1 || t > n) throw std::invalid_argument("forest: need 1 <= t <= n");
        break;
      case ExperimentKind::Gnm:
      case ExperimentKind::Census:
        if (m > pair_count(static_cast<Vertex>(n))) {
          throw std::invalid_argument("gnm: m exceeds C(n,2)");
        }
        break;
      case ExperimentKind::Cs:
        if (m > n) throw std::invalid_argument("cs: need m <= n");
        break;
      case ExperimentKind::Complex:
        if (core.order() == 0) throw std::invalid_argument("complex: empty core");
        if (q < core.order()) throw std::invalid_argument("complex: need q >= v(C)");
        validate_core(core);
        break;
      case ExperimentKind::Pipeline:
        if (core.order() > 0) validate_core(core);
        pipeline_budget(pipeline_spec(), split_core(core));
        break;
    }
  }

  PipelineSpec pipeline_spec() const {
    return {core, static_cast<Vertex>(l), static_cast<Vertex>(r), static_cast<Vertex>(n),
            static_cast<std::size_t>(m)};
  }
};

/// One trial: the statistic (absent if the sampler failed) plus named
/// indicator flags and counters aggregated into report metrics.
struct TrialRecord {
  std::uint64_t index = 0;
  Seed seed = 0;
  std::optional<std::int64_t> statistic;
  bool in_interval = false;
  std::string error;
  std::map<std::string, bool> flags;
  std::map<std::string, std::int64_t> counters;
};

struct ConcentrationReport {
  std::string kind;
  nlohmann::json params = nlohmann::json::object();
  std::optional<IntInterval> interval;
  std::optional<std::int64_t> h;
  std::string regime;  // pipeline only
  std::map<std::int64_t, std::uint64_t> histogram;  // over successful trials
  double hit_fraction = 0;
  double threshold = 0;
  bool pass = false;
  Seed master_seed = 0;
  std::vector<Seed> trial_seeds;
  std::vector<TrialRecord> records;
  nlohmann::json metrics = nlohmann::json::object();
  double elapsed_ms = 0;
};

namespace detail {

struct Prediction {
  std::optional<IntInterval> interval;
  std::optional<std::int64_t> h;
  std::string regime;
  std::optional<IntInterval> large_part;  // pipeline: B_L range
  std::optional<IntInterval> non_complex; // pipeline: B_N range
};

inline Prediction predict(const ExperimentConfig& cfg) {
  Prediction p;
  const auto n = static_cast<double>(cfg.n);
  switch (cfg.kind) {
    case ExperimentKind::Bins:
      p.interval = predicted_interval(n, static_cast<double>(std::max<std::uint64_t>(cfg.k, 1)),
                                      cfg.epsilon);
      break;
    case ExperimentKind::Forest:
      p.interval = interval_around(nu_hat(n), cfg.epsilon).shifted(1);
      break;
    case ExperimentKind::Gnm:
      p.interval = predicted_interval(n, static_cast<double>(std::max<std::uint64_t>(2 * cfg.m, 1)),
                                      cfg.epsilon);
      break;
    case ExperimentKind::Cs:
      p.interval = interval_around(nu_hat(n), cfg.epsilon);
      break;
    case ExperimentKind::Complex:
      p.interval = interval_around(nu_hat(static_cast<double>(cfg.q)), cfg.epsilon).shifted(1);
      break;
    case ExperimentKind::Pipeline: {
      const auto m = static_cast<double>(cfg.m);
      const Regime regime = classify_regime(n, m, cfg.gates);
      p.regime = to_string(regime);
      if (regime != Regime::OutOfScope) {
        const auto tp = two_point({n, m, regime}, cfg.gates);
        p.interval = tp.interval;
        p.h = tp.h;
      }
      if (regime == Regime::II) {
        p.large_part = interval_around(nu_hat(m - n / 2), cfg.epsilon).shifted(1);
      } else if (regime == Regime::III) {
        p.large_part = interval_around(nu_hat(n), cfg.epsilon).shifted(1);
      }
      if (regime == Regime::II || regime == Regime::III) {
        p.non_complex = interval_around(nu_hat(n), cfg.epsilon);
      }
      break;
    }
    case ExperimentKind::Census:
      break;
  }
  return p;
}

inline TrialRecord run_trial(const ExperimentConfig& cfg, const Prediction& pred,
                             std::uint64_t index,
                             const std::map<std::vector<Edge>, std::size_t>* census_index) {
  TrialRecord rec;
  rec.index = index;
  rec.seed = derive_seed(cfg.master_seed, index);
  const auto n = static_cast<Vertex>(cfg.n);
  try {
    switch (cfg.kind) {
      case ExperimentKind::Bins: {
        const auto lv = loads(throw_balls(n, cfg.k, rec.seed));
        const auto top = max_load(lv);
        rec.statistic = top;
        if (cfg.t > 0) rec.flags["prefixGap"] = top > max_load_prefix(lv, cfg.t);
        break;
      }
      case ExperimentKind::Forest: {
        const auto forest = sample_forest(n, static_cast<Vertex>(cfg.t), rec.seed);
        const auto deg = degree_sequence(forest.graph());
        const auto top = *std::max_element(deg.begin(), deg.end());
        const auto root_top = *std::max_element(deg.begin(), deg.begin() + static_cast<std::ptrdiff_t>(cfg.t));
        rec.statistic = static_cast<std::int64_t>(top);
        rec.flags["rootGap"] = top > root_top;
        break;
      }
      case ExperimentKind::Gnm: {
        const auto draw = sample_gnm(n, cfg.m, rec.seed, cfg.limits);
        rec.statistic = static_cast<std::int64_t>(max_degree(draw.graph));
        rec.counters["multigraphRejections"] = static_cast<std::int64_t>(draw.rejections);
        break;
      }
      case ExperimentKind::Cs: {
        const auto draw = sample_cs(n, cfg.m, rec.seed, cfg.limits);
        rec.statistic = static_cast<std::int64_t>(max_degree(draw.graph));
        rec.counters["gnmAttempts"] = static_cast<std::int64_t>(draw.attempts);
        rec.counters["multigraphRejections"] = static_cast<std::int64_t>(draw.multigraph_rejections);
        break;
      }
      case ExperimentKind::Complex: {
        const auto draw = sample_complex(cfg.core, static_cast<Vertex>(cfg.q), rec.seed);
        const auto deg = degree_sequence(draw.graph);
        const auto core_deg = degree_sequence(cfg.core);
        const auto forest_deg = degree_sequence(draw.forest.graph());
        bool identity = true;
        for (std::size_t v = 0; v < deg.size(); ++v) {
          const auto expect = forest_deg[v] + (v < core_deg.size() ? core_deg[v] : 0);
          identity = identity && deg[v] == expect;
        }
        const auto core = core_of(draw.graph);
        rec.statistic = static_cast<std::int64_t>(*std::max_element(deg.begin(), deg.end()));
        rec.flags["degreeIdentity"] = identity;
        rec.flags["coreRecovered"] =
            core.edges.size() == cfg.core.size() &&
            std::equal(core.edges.begin(), core.edges.end(), cfg.core.edges().begin());
        break;
      }
      case ExperimentKind::Pipeline: {
        const auto draw = sample_pipeline(cfg.pipeline_spec(), rec.seed, cfg.limits, cfg.shuffle_labels);
        const auto& g = draw.graph;
        const auto parts = split(g);
        const auto dl = static_cast<std::int64_t>(max_degree(parts.large_complex));
        const auto ds = static_cast<std::int64_t>(max_degree(parts.small_complex));
        const auto dn = static_cast<std::int64_t>(max_degree(parts.non_complex));
        rec.statistic = static_cast<std::int64_t>(max_degree(g));
        rec.flags["conserved"] = g.order() == cfg.n && g.size() == cfg.m;
        rec.flags["partOrders"] = parts.large_complex.vertices.size() == cfg.l &&
                                  parts.small_complex.vertices.size() == cfg.r &&
                                  parts.non_complex.vertices.size() == draw.budget.u;
        if (!cfg.shuffle_labels) {
          rec.flags["coreIsomorphic"] = compact(parts.core) == core_layout(split_core(cfg.core));
        }
        rec.flags["smallBelowNonComplex"] = ds < dn;
        if (pred.large_part) rec.flags["largeInInterval"] = pred.large_part->contains(dl);
        if (pred.non_complex) rec.flags["nonComplexInInterval"] = pred.non_complex->contains(dn);
        rec.counters["maxDegreeLargeSum"] = dl;
        rec.counters["csAttempts"] = static_cast<std::int64_t>(draw.cs_attempts);
        break;
      }
      case ExperimentKind::Census: {
        const auto draw = sample_gnm(n, cfg.m, rec.seed, cfg.limits);
        const std::vector<Edge> key(draw.graph.edges().begin(), draw.graph.edges().end());
        rec.statistic = static_cast<std::int64_t>(census_index->at(key));
        break;
      }
    }
  } catch (const std::exception& e) {
    rec.statistic.reset();
    rec.error = e.what();
  }
  rec.in_interval = rec.statistic && pred.interval && pred.interval->contains(*rec.statistic);
  return rec;
}

}  // namespace detail

/// Runs cfg.trials independent trials on a worker pool. Trial i always uses
/// derive_seed(master_seed, i), so the report does not depend on the
/// number of threads.
inline ConcentrationReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const auto pred = detail::predict(cfg);

  std::vector<std::vector<Edge>> census_graphs;
  std::map<std::vector<Edge>, std::size_t> census_index;
  if (cfg.kind == ExperimentKind::Census) {
    census_graphs = enumerate_gnm(static_cast<Vertex>(cfg.n), cfg.m);
    for (std::size_t i = 0; i < census_graphs.size(); ++i) census_index.emplace(census_graphs[i], i);
  }

  std::vector<TrialRecord> records(cfg.trials);
  unsigned workers = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, cfg.trials));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::uint64_t i = w; i < cfg.trials; i += workers) {
          records[i] = detail::run_trial(cfg, pred, i, &census_index);
        }
      });
    }
  }

  ConcentrationReport rep;
  rep.kind = to_string(cfg.kind);
  rep.master_seed = cfg.master_seed;
  rep.interval = pred.interval;
  rep.h = pred.h;
  rep.regime = pred.regime;
  rep.threshold = cfg.threshold;

  auto& p = rep.params;
  p["n"] = cfg.n;
  p["trials"] = cfg.trials;
  p["threshold"] = cfg.threshold;
  switch (cfg.kind) {
    case ExperimentKind::Bins:
      p["k"] = cfg.k;
      p["epsilon"] = cfg.epsilon;
      if (cfg.t > 0) p["t"] = cfg.t;
      break;
    case ExperimentKind::Forest:
      p["t"] = cfg.t;
      p["epsilon"] = cfg.epsilon;
      break;
    case ExperimentKind::Gnm:
    case ExperimentKind::Cs:
      p["m"] = cfg.m;
      p["epsilon"] = cfg.epsilon;
      break;
    case ExperimentKind::Complex:
      p["q"] = cfg.q;
      p["core"] = {{"label", cfg.core_label}, {"v", cfg.core.order()}, {"e", cfg.core.size()}};
      p["epsilon"] = cfg.epsilon;
      break;
    case ExperimentKind::Pipeline:
      p["m"] = cfg.m;
      p["l"] = cfg.l;
      p["r"] = cfg.r;
      p["core"] = {{"label", cfg.core_label}, {"v", cfg.core.order()}, {"e", cfg.core.size()}};
      p["epsilon"] = cfg.epsilon;
      p["shuffleLabels"] = cfg.shuffle_labels;
      break;
    case ExperimentKind::Census:
      p["m"] = cfg.m;
      p["maxTv"] = cfg.max_tv;
      break;
  }

  std::uint64_t hits = 0;
  std::uint64_t ok = 0;
  std::map<std::string, std::uint64_t> flag_hits;
  std::map<std::string, std::uint64_t> flag_seen;
  std::map<std::string, std::int64_t> counter_sum;
  std::vector<std::string> failures;
  for (const auto& rec : records) {
    rep.trial_seeds.push_back(rec.seed);
    if (!rec.statistic) {
      failures.push_back("trial " + std::to_string(rec.index) + ": " + rec.error);
      continue;
    }
    ++ok;
    ++rep.histogram[*rec.statistic];
    hits += rec.in_interval ? 1 : 0;
    for (const auto& [name, value] : rec.flags) {
      ++flag_seen[name];
      flag_hits[name] += value ? 1 : 0;
    }
    for (const auto& [name, value] : rec.counters) counter_sum[name] += value;
  }
  const auto trials = static_cast<double>(cfg.trials);
  rep.hit_fraction = static_cast<double>(hits) / trials;

  auto& metrics = rep.metrics;
  metrics["successfulTrials"] = ok;
  if (!failures.empty()) metrics["failures"] = failures;
  for (const auto& [name, seen] : flag_seen) {
    metrics[name + "Fraction"] = static_cast<double>(flag_hits[name]) / trials;
  }
  for (const auto& [name, sum] : counter_sum) metrics[name + "Total"] = sum;
  if (cfg.kind == ExperimentKind::Gnm && ok > 0) {
    const auto rejected = static_cast<double>(counter_sum["multigraphRejections"]);
    metrics["simpleFraction"] = static_cast<double>(ok) / (static_cast<double>(ok) + rejected);
  }
  if (cfg.kind == ExperimentKind::Cs && ok > 0) {
    metrics["acceptanceFraction"] =
        static_cast<double>(ok) / static_cast<double>(counter_sum["gnmAttempts"]);
  }
  if (cfg.kind == ExperimentKind::Pipeline) {
    if (pred.large_part) metrics["largeInterval"] = {pred.large_part->lo, pred.large_part->hi};
    if (pred.non_complex) metrics["nonComplexInterval"] = {pred.non_complex->lo, pred.non_complex->hi};
  }
  if (cfg.kind == ExperimentKind::Census) {
    const double p_uniform = 1.0 / static_cast<double>(census_graphs.size());
    double tv = 0;
    double chi = 0;
    const double expected = trials * p_uniform;
    for (std::size_t i = 0; i < census_graphs.size(); ++i) {
      const auto it = rep.histogram.find(static_cast<std::int64_t>(i));
      const double c = it == rep.histogram.end() ? 0.0 : static_cast<double>(it->second);
      tv += std::abs(c / trials - p_uniform);
      chi += (c - expected) * (c - expected) / expected;
    }
    tv /= 2;
    metrics["graphs"] = census_graphs.size();
    metrics["tvDistance"] = tv;
    metrics["chiSquare"] = chi;
    metrics["degreesOfFreedom"] = census_graphs.size() - 1;
    rep.hit_fraction = 1 - tv;
    rep.threshold = 1 - cfg.max_tv;
    rep.pass = tv < cfg.max_tv;
  } else {
    rep.pass = rep.interval.has_value() && rep.hit_fraction >= cfg.threshold;
  }
  rep.records = std::move(records);
  rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

enum class ReportFormat { Json, Csv };

inline nlohmann::json to_json(const ConcentrationReport& rep) {
  nlohmann::json j;
  j["kind"] = rep.kind;
  j["params"] = rep.params;
  nlohmann::json pred = nlohmann::json::object();
  pred["interval"] = rep.interval ? nlohmann::json{rep.interval->lo, rep.interval->hi}
                                  : nlohmann::json(nullptr);
  pred["h"] = rep.h ? nlohmann::json(*rep.h) : nlohmann::json(nullptr);
  if (!rep.regime.empty()) pred["regime"] = rep.regime;
  j["prediction"] = pred;
  auto hist = nlohmann::json::array();
  for (const auto& [value, count] : rep.histogram) hist.push_back({value, count});
  j["histogram"] = hist;
  j["hitFraction"] = rep.hit_fraction;
  j["threshold"] = rep.threshold;
  j["verdict"] = rep.pass ? "pass" : "fail";
  j["masterSeed"] = rep.master_seed;
  j["trialSeeds"] = rep.trial_seeds;
  j["metrics"] = rep.metrics;
  j["elapsedMs"] = rep.elapsed_ms;
  return j;
}

inline ConcentrationReport report_from_json(const nlohmann::json& j) {
  ConcentrationReport rep;
  rep.kind = j.at("kind").get<std::string>();
  rep.params = j.at("params");
  const auto& pred = j.at("prediction");
  if (!pred.at("interval").is_null()) {
    rep.interval = IntInterval{pred["interval"][0].get<std::int64_t>(),
                               pred["interval"][1].get<std::int64_t>()};
  }
  if (!pred.at("h").is_null()) rep.h = pred["h"].get<std::int64_t>();
  if (pred.contains("regime")) rep.regime = pred["regime"].get<std::string>();
  for (const auto& row : j.at("histogram")) {
    rep.histogram[row[0].get<std::int64_t>()] = row[1].get<std::uint64_t>();
  }
  rep.hit_fraction = j.at("hitFraction").get<double>();
  rep.threshold = j.at("threshold").get<double>();
  rep.pass = j.at("verdict").get<std::string>() == "pass";
  rep.master_seed = j.at("masterSeed").get<Seed>();
  rep.trial_seeds = j.at("trialSeeds").get<std::vector<Seed>>();
  rep.metrics = j.at("metrics");
  rep.elapsed_ms = j.at("elapsedMs").get<double>();
  return rep;
}

inline std::string emit_report(const ConcentrationReport& rep, ReportFormat format) {
  if (format == ReportFormat::Json) return to_json(rep).dump(2) + "\n";
  std::ostringstream out;
  out << "trialIndex,seed,statistic,inInterval\n";
  for (const auto& rec : rep.records) {
    out << rec.index << ',' << rec.seed << ',';
    if (rec.statistic) out << *rec.statistic;
    out << ',' << (rec.in_interval ? 1 : 0) << '\n';
  }
  return out.str();
}

}  // namespace degree_lab
