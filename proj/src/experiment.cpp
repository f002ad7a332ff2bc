#include "sdc/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <fstream>
#include <functional>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace sdc {
namespace {

class VsnCollector final : public DataCollector {
public:
  VsnCollector(const World& world, VsnRegistry& registry) : m_world(world), m_registry(registry) {}

  void register_arrivals(ApproachModels& models) override { m_registry.register_hello(m_world, models); }

  void collect(ApproachModels& models, SignalState signal) override {
    const std::vector<SensorReading> readings = m_registry.execute_query(m_world);
    adjust_model(models, readings, signal, m_registry.profile());
  }

private:
  const World& m_world;
  VsnRegistry& m_registry;
};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw std::invalid_argument("invalid " + key + ": '" + text + "' is not a number");
  return value;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (char c : line) {
    if (c == '"') quoted = !quoted;
    else if (c == ',' && !quoted) {
      out.push_back(field);
      field.clear();
    } else if (c != '\r') field += c;
  }
  out.push_back(field);
  return out;
}

} // namespace

void ScenarioConfig::validate() const {
  world.validate();
  controller.validate();
  if (duration < 0) throw std::invalid_argument("invalid duration: must be >= 0");
  if (!model.vmax.is_sorted() || model.vmax.min_component() < 0)
    throw std::invalid_argument("invalid model_vmax: must be sorted and non-negative");
}

ScenarioConfig parse_config(std::istream& in, ScenarioConfig cfg) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));

    if (key == "cells") cfg.world.cells = parse_number<int>(key, value);
    else if (key == "stop_line") cfg.world.stop_line = parse_number<int>(key, value);
    else if (key == "vmax") cfg.world.vmax = parse_number<int>(key, value);
    else if (key == "p_slow") cfg.world.p_slow = parse_number<double>(key, value);
    else if (key == "q_a") cfg.world.q_a = parse_number<double>(key, value);
    else if (key == "q_b") cfg.world.q_b = parse_number<double>(key, value);
    else if (key == "min_green") cfg.controller.min_green = parse_number<int>(key, value);
    else if (key == "inter_green") cfg.controller.inter_green = parse_number<int>(key, value);
    else if (key == "horizon") cfg.controller.horizon = parse_number<int>(key, value);
    else if (key == "threshold") cfg.controller.uncertainty_threshold = parse_number<double>(key, value);
    else if (key == "defer_collection") cfg.controller.defer_collection = parse_number<int>(key, value) != 0;
    else if (key == "duration") cfg.duration = parse_number<int>(key, value);
    else if (key == "model_vmax") {
      try {
        cfg.model.vmax = parse_ofn(value);
      } catch (const std::invalid_argument&) {
        throw std::invalid_argument("invalid model_vmax: '" + value + "' is not of the form (a1,a2,a3,a4)");
      }
    } else throw std::invalid_argument("unknown config key '" + key + "'");
  }
  return cfg;
}

ScenarioConfig load_config(const std::string& path, ScenarioConfig base) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  return parse_config(in, base);
}

ScenarioResult run_scenario(const ScenarioConfig& cfg, CollectionMode mode, std::uint64_t seed,
                            const RunOptions& opts) {
  cfg.validate();
  ControllerConfig ccfg = cfg.controller;
  ccfg.mode = mode;

  World world(cfg.world, seed);
  VsnRegistry registry(cfg.model);
  VsnCollector collector(world, registry);
  ControllerState state = ControllerState::initial(cfg.world);

  for (int t = 0; t < cfg.duration; ++t) {
    world.spawn_arrivals();
    control_step(state, ccfg, collector);
    if (opts.world_trace) world.write_rows(*opts.world_trace);
    world.step(state.decision_log.back().signal);
  }

  ScenarioResult r;
  r.mode = mode;
  r.seed = seed;
  r.q_a = cfg.world.q_a;
  r.q_b = cfg.world.q_b;
  r.threshold = mode == CollectionMode::Selective ? ccfg.uncertainty_threshold : 0.0;
  r.accounting = registry.accounting();
  r.qn = r.accounting.query_count;
  r.vehicles = world.spawned();
  r.avg_delay_gt = world.spawned() > 0 ? world.ground_delay() : 0.0;
  if (opts.keep_trace) {
    r.decisions = std::move(state.decision_log);
    r.queries = registry.query_log();
  }
  return r;
}

double qrf(std::uint64_t qn_continuous, std::uint64_t qn_selective) {
  if (qn_continuous == 0) throw std::invalid_argument("qrf: continuous run issued no queries");
  return (static_cast<double>(qn_continuous) - static_cast<double>(qn_selective)) /
         static_cast<double>(qn_continuous);
}

double qrf(const ScenarioResult& continuous, const ScenarioResult& selective) {
  return qrf(continuous.qn, selective.qn);
}

double dif(double delay_continuous, double delay_selective) {
  if (!(delay_continuous > 0.0)) throw std::invalid_argument("dif: continuous delay must be > 0");
  return (delay_selective - delay_continuous) / delay_continuous;
}

double dif(const ScenarioResult& continuous, const ScenarioResult& selective) {
  return dif(continuous.avg_delay_gt, selective.avg_delay_gt);
}

SweepPlan SweepPlan::defaults() {
  SweepPlan s;
  const double volumes[] = {150, 300, 450, 600, 750};
  for (double qa : volumes)
    for (double qb : volumes) s.grid.emplace_back(qa, qb);
  s.thresholds = {0.0, 0.05, 0.10};
  s.seeds = {1, 2, 3, 4, 5};
  return s;
}

std::vector<SweepRow> sweep(const ScenarioConfig& base, const SweepPlan& plan) {
  if (plan.grid.empty()) throw std::invalid_argument("sweep: empty volume grid");
  base.validate();

  struct Job {
    std::pair<double, double> volumes;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (const auto& cell : plan.grid)
    for (std::uint64_t seed : plan.seeds) jobs.push_back({cell, seed});

  std::vector<SweepRow> rows;
  std::mutex rows_mutex;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;

  auto worker = [&] {
    try {
      for (std::size_t j = next++; j < jobs.size(); j = next++) {
        ScenarioConfig cfg = base;
        cfg.world.q_a = jobs[j].volumes.first;
        cfg.world.q_b = jobs[j].volumes.second;
        const ScenarioResult cont = run_scenario(cfg, CollectionMode::Continuous, jobs[j].seed);
        std::vector<SweepRow> local;
        for (double threshold : plan.thresholds) {
          cfg.controller.uncertainty_threshold = threshold;
          const ScenarioResult sel = run_scenario(cfg, CollectionMode::Selective, jobs[j].seed);
          SweepRow row{cfg.world.q_a, cfg.world.q_b, threshold, jobs[j].seed, cont.qn, sel.qn, 0.0,
                       cont.avg_delay_gt, sel.avg_delay_gt, 0.0};
          row.qrf = cont.qn > 0 ? qrf(cont, sel) : 0.0;
          row.dif = cont.avg_delay_gt > 0.0 ? dif(cont, sel) : 0.0;
          local.push_back(row);
        }
        std::lock_guard lock(rows_mutex);
        rows.insert(rows.end(), local.begin(), local.end());
      }
    } catch (...) {
      std::lock_guard lock(rows_mutex);
      if (!failure) failure = std::current_exception();
      next = jobs.size();
    }
  };

  unsigned n = plan.threads ? plan.threads : std::max(1u, std::thread::hardware_concurrency());
  n = static_cast<unsigned>(std::min<std::size_t>(n, jobs.size()));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    return std::tie(a.q_a, a.q_b, a.threshold, a.seed) < std::tie(b.q_a, b.q_b, b.threshold, b.seed);
  });
  return rows;
}

std::string format_real(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) throw std::runtime_error("format_real: conversion failed");
  return std::string(buf, ptr);
}

void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows) {
  os << "q_A,q_B,threshold,seed,QN_1,QN_2,QRF,delay_1,delay_2,DIF\n";
  for (const SweepRow& r : rows) {
    os << format_real(r.q_a) << ',' << format_real(r.q_b) << ',' << format_real(r.threshold) << ',' << r.seed
       << ',' << r.qn_1 << ',' << r.qn_2 << ',' << format_real(r.qrf) << ',' << format_real(r.delay_1) << ','
       << format_real(r.delay_2) << ',' << format_real(r.dif) << '\n';
  }
}

std::vector<SweepRow> read_sweep_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("sweep table: missing header");
  if (trim(line) != "q_A,q_B,threshold,seed,QN_1,QN_2,QRF,delay_1,delay_2,DIF")
    throw std::invalid_argument("sweep table: unexpected header '" + line + "'");
  std::vector<SweepRow> rows;
  while (std::getline(is, line)) {
    if (trim(line).empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 10) throw std::invalid_argument("sweep table: expected 10 fields in '" + line + "'");
    SweepRow r;
    r.q_a = parse_number<double>("q_A", f[0]);
    r.q_b = parse_number<double>("q_B", f[1]);
    r.threshold = parse_number<double>("threshold", f[2]);
    r.seed = parse_number<std::uint64_t>("seed", f[3]);
    r.qn_1 = parse_number<std::uint64_t>("QN_1", f[4]);
    r.qn_2 = parse_number<std::uint64_t>("QN_2", f[5]);
    r.qrf = parse_number<double>("QRF", f[6]);
    r.delay_1 = parse_number<double>("delay_1", f[7]);
    r.delay_2 = parse_number<double>("delay_2", f[8]);
    r.dif = parse_number<double>("DIF", f[9]);
    rows.push_back(r);
  }
  return rows;
}

} // namespace sdc
