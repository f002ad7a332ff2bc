#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "sdc/controller.hpp"
#include "sdc/vsn.hpp"
#include "sdc/world.hpp"

namespace sdc {

struct ScenarioConfig {
  WorldConfig world;
  ControllerConfig controller;
  ModelProfile model;
  int duration = 3600; // s

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// Reads "key = value" lines ('#' starts a comment) on top of `base`.
/// Unknown keys and malformed values throw std::invalid_argument naming
/// the key.
ScenarioConfig parse_config(std::istream& in, ScenarioConfig base = {});
ScenarioConfig load_config(const std::string& path, ScenarioConfig base = {});

struct ScenarioResult {
  CollectionMode mode = CollectionMode::Continuous;
  std::uint64_t seed = 0;
  double q_a = 0.0;
  double q_b = 0.0;
  double threshold = 0.0;
  std::uint64_t qn = 0;
  double avg_delay_gt = 0.0; // s/vehicle; 0 when no vehicle was seen
  Accounting accounting;
  std::uint64_t vehicles = 0;
  std::vector<DecisionRecord> decisions;
  std::vector<QueryLogEntry> queries;
};

struct RunOptions {
  bool keep_trace = false;
  std::ostream* world_trace = nullptr; // ground-truth rows each step
};

/// Controller, sensor network and ground truth wired together for
/// `cfg.duration` seconds.
ScenarioResult run_scenario(const ScenarioConfig& cfg, CollectionMode mode, std::uint64_t seed,
                            const RunOptions& opts = {});

/// (QN_continuous - QN_selective) / QN_continuous.
double qrf(const ScenarioResult& continuous, const ScenarioResult& selective);
double qrf(std::uint64_t qn_continuous, std::uint64_t qn_selective);
/// (delay_selective - delay_continuous) / delay_continuous.
double dif(const ScenarioResult& continuous, const ScenarioResult& selective);
double dif(double delay_continuous, double delay_selective);

struct SweepPlan {
  std::vector<std::pair<double, double>> grid; // (q_a, q_b)
  std::vector<double> thresholds;
  std::vector<std::uint64_t> seeds;
  unsigned threads = 0; // 0 = hardware concurrency

  static SweepPlan defaults();
};

struct SweepRow {
  double q_a = 0.0;
  double q_b = 0.0;
  double threshold = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t qn_1 = 0;
  std::uint64_t qn_2 = 0;
  double qrf = 0.0;
  double delay_1 = 0.0;
  double delay_2 = 0.0;
  double dif = 0.0;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

/// Paired continuous / selective runs for every grid cell, threshold and
/// seed. Rows are ordered by (q_a, q_b, threshold, seed) whatever the
/// thread count.
std::vector<SweepRow> sweep(const ScenarioConfig& base, const SweepPlan& plan);

void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows);
/// Throws std::invalid_argument on a malformed table.
std::vector<SweepRow> read_sweep_csv(std::istream& is);

/// Shortest decimal text that parses back to the same double.
std::string format_real(double x);

} // namespace sdc
