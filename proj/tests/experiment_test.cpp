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

#include "degree_lab/experiment.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "test_support.hpp"

namespace degree_lab {
namespace {

nlohmann::json without_time(const ConcentrationReport& rep) {
  auto j = to_json(rep);
  j.erase("elapsedMs");
  return j;
}

ExperimentConfig bins_config(std::uint64_t n, std::uint64_t k, std::uint64_t trials) {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::Bins;
  cfg.n = n;
  cfg.k = k;
  cfg.trials = trials;
  cfg.master_seed = 7;
  return cfg;
}

TEST(ClassifyRegime, Examples) {
  const double n = 1e6;
  EXPECT_EQ(classify_regime(n, n / 2), Regime::I);
  EXPECT_EQ(classify_regime(n, 0.75 * n), Regime::III);
  EXPECT_EQ(classify_regime(n, n / 2 + std::pow(n, 0.75)), Regime::II);
  EXPECT_EQ(classify_regime(n, n), Regime::OutOfScope);
  EXPECT_EQ(classify_regime(n, 2 * n), Regime::OutOfScope);
}

TEST(ClassifyRegime, GatesAreConfigurable) {
  const double n = 1e6;
  const double m = n / 2 + std::pow(n, 0.8);  // s = 63096 > n/20
  EXPECT_EQ(classify_regime(n, m), Regime::III);
  RegimeGates wide;
  wide.s_max_fraction = 0.1;
  EXPECT_EQ(classify_regime(n, m, wide), Regime::II);
  RegimeGates tight;
  tight.a = 100;
  EXPECT_EQ(classify_regime(n, n / 2 + std::pow(n, 0.75), tight), Regime::I);
}

TEST(ClassifyRegime, BoundaryBetweenIAndII) {
  const double n = 1e6;
  const double window = std::cbrt(n * n);
  EXPECT_EQ(classify_regime(n, n / 2 + window), Regime::I);
  EXPECT_EQ(classify_regime(n, n / 2 + window + 1), Regime::II);
}

TEST(Experiment, SingleBinHistogram) {
  auto cfg = bins_config(1, 1, 5);
  const auto rep = run_experiment(cfg);
  ASSERT_EQ(rep.histogram.size(), 1u);
  EXPECT_EQ(rep.histogram.at(1), 5u);
  EXPECT_EQ(rep.trial_seeds.size(), 5u);
  EXPECT_EQ(rep.trial_seeds[3], derive_seed(7, 3));
}

TEST(Experiment, HistogramMassAndRange) {
  const auto rep = run_experiment(bins_config(1000, 1000, 40));
  std::uint64_t mass = 0;
  for (const auto& [value, count] : rep.histogram) mass += count;
  EXPECT_EQ(mass, 40u);
  EXPECT_GE(rep.hit_fraction, 0.0);
  EXPECT_LE(rep.hit_fraction, 1.0);
  ASSERT_TRUE(rep.interval);
  EXPECT_EQ(*rep.interval, predicted_interval(1000, 1000, 0.25));
}

TEST(Experiment, VerdictFollowsThreshold) {
  auto cfg = bins_config(1000, 1000, 40);
  const auto rep = run_experiment(cfg);
  cfg.threshold = rep.hit_fraction;
  EXPECT_TRUE(run_experiment(cfg).pass);
  if (rep.hit_fraction < 1) {
    cfg.threshold = std::nextafter(rep.hit_fraction, 2.0);
    EXPECT_FALSE(run_experiment(cfg).pass);
  }
}

TEST(Experiment, ThreadCountDoesNotChangeReport) {
  auto cfg = bins_config(5000, 5000, 37);
  cfg.t = 70;
  cfg.threads = 1;
  const auto serial = without_time(run_experiment(cfg));
  cfg.threads = 4;
  EXPECT_EQ(without_time(run_experiment(cfg)).dump(), serial.dump());
}

TEST(Experiment, RerunIsByteIdentical) {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::Cs;
  cfg.n = 2000;
  cfg.m = 1000;
  cfg.trials = 12;
  cfg.master_seed = 99;
  EXPECT_EQ(without_time(run_experiment(cfg)).dump(), without_time(run_experiment(cfg)).dump());
  cfg.master_seed = 100;
  const auto other = without_time(run_experiment(cfg)).dump();
  cfg.master_seed = 99;
  EXPECT_NE(without_time(run_experiment(cfg)).dump(), other);
}

TEST(Experiment, JsonRoundTrip) {
  auto cfg = bins_config(300, 600, 9);
  const auto rep = run_experiment(cfg);
  const auto text = emit_report(rep, ReportFormat::Json);
  const auto back = report_from_json(nlohmann::json::parse(text));
  EXPECT_EQ(back.kind, rep.kind);
  EXPECT_EQ(back.interval, rep.interval);
  EXPECT_EQ(back.h, rep.h);
  EXPECT_EQ(back.histogram, rep.histogram);
  EXPECT_DOUBLE_EQ(back.hit_fraction, rep.hit_fraction);
  EXPECT_EQ(back.pass, rep.pass);
  EXPECT_EQ(back.master_seed, rep.master_seed);
  EXPECT_EQ(back.trial_seeds, rep.trial_seeds);
  EXPECT_EQ(back.params, rep.params);
  EXPECT_EQ(back.metrics, rep.metrics);
  EXPECT_EQ(to_json(back).dump(), to_json(rep).dump());
}

TEST(Experiment, JsonSchema) {
  const auto j = nlohmann::json::parse(emit_report(run_experiment(bins_config(50, 50, 3)), ReportFormat::Json));
  for (const char* key : {"kind", "params", "prediction", "histogram", "hitFraction", "verdict",
                          "masterSeed", "trialSeeds", "elapsedMs"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_TRUE(j["prediction"].contains("interval"));
  EXPECT_TRUE(j["prediction"].contains("h"));
  EXPECT_EQ(j["kind"], "bins");
}

TEST(Experiment, CsvHasOneRowPerTrial) {
  const auto rep = run_experiment(bins_config(50, 50, 4));
  std::istringstream in(emit_report(rep, ReportFormat::Csv));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "trialIndex,seed,statistic,inInterval");
  int rows = 0;
  while (std::getline(in, line)) {
    EXPECT_EQ(line.rfind(std::to_string(rows) + "," + std::to_string(rep.trial_seeds[rows]) + ",", 0), 0u);
    ++rows;
  }
  EXPECT_EQ(rows, 4);
}

TEST(Experiment, CensusVerdictUsesTotalVariation) {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::Census;
  cfg.n = 3;
  cfg.m = 2;
  cfg.trials = 30000;
  const auto rep = run_experiment(cfg);
  EXPECT_LT(rep.metrics["tvDistance"].get<double>(), 0.02);
  EXPECT_EQ(rep.metrics["graphs"].get<int>(), 3);
  EXPECT_TRUE(rep.pass);
  EXPECT_DOUBLE_EQ(rep.hit_fraction, 1 - rep.metrics["tvDistance"].get<double>());
}

TEST(Experiment, FailedTrialsAreRecorded) {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::Gnm;
  cfg.n = 40;
  cfg.m = 500;
  cfg.trials = 3;
  cfg.limits.gnm_attempts = 1;
  const auto rep = run_experiment(cfg);
  EXPECT_TRUE(rep.histogram.empty());
  EXPECT_EQ(rep.metrics["failures"].size(), 3u);
  EXPECT_FALSE(rep.pass);
}

TEST(Experiment, ComplexFlags) {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::Complex;
  cfg.core = testing::complete_graph(4);
  cfg.q = 500;
  cfg.trials = 20;
  const auto rep = run_experiment(cfg);
  EXPECT_DOUBLE_EQ(rep.metrics["coreRecoveredFraction"].get<double>(), 1.0);
  EXPECT_DOUBLE_EQ(rep.metrics["degreeIdentityFraction"].get<double>(), 1.0);
  ASSERT_TRUE(rep.interval);
  EXPECT_EQ(*rep.interval, interval_around(nu_hat(500), 0.25).shifted(1));
}

TEST(Experiment, PipelineConservation) {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::Pipeline;
  cfg.core = testing::prism_graph(4);
  cfg.n = 3000;
  cfg.l = 1000;
  cfg.r = 0;
  cfg.m = 2004;
  cfg.trials = 10;
  const auto rep = run_experiment(cfg);
  EXPECT_EQ(rep.regime, "III");
  EXPECT_DOUBLE_EQ(rep.metrics["conservedFraction"].get<double>(), 1.0);
  EXPECT_DOUBLE_EQ(rep.metrics["partOrdersFraction"].get<double>(), 1.0);
  EXPECT_DOUBLE_EQ(rep.metrics["coreIsomorphicFraction"].get<double>(), 1.0);
}

TEST(Experiment, ConfigValidation) {
  auto cfg = bins_config(10, 10, 0);
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.trials = 1;
  cfg.epsilon = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.epsilon = 0.25;
  cfg.threshold = 1.5;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.threshold = 0.9;
  EXPECT_NO_THROW(cfg.validate());
  cfg.kind = ExperimentKind::Forest;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.kind = ExperimentKind::Cs;
  cfg.m = 11;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  EXPECT_EQ(parse_kind("pipeline"), ExperimentKind::Pipeline);
  EXPECT_THROW(parse_kind("nope"), std::invalid_argument);
}

}  // namespace
}  // namespace degree_lab
