// Command-line entry point: single scenarios, volume/threshold sweeps and the
// two-vehicle start-up trace.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sdc/experiment.hpp"

namespace {

// Opens `path` for writing, or returns std::cout for "-" / empty.
std::ostream& open_output(const std::string& path, std::unique_ptr<std::ofstream>& holder) {
  if (path.empty() || path == "-") return std::cout;
  holder = std::make_unique<std::ofstream>(path);
  if (!*holder) throw std::runtime_error("cannot open output file '" + path + "'");
  return *holder;
}

sdc::CollectionMode parse_mode(const std::string& s) {
  if (s == "continuous") return sdc::CollectionMode::Continuous;
  if (s == "selective") return sdc::CollectionMode::Selective;
  throw std::invalid_argument("invalid mode: '" + s + "' (expected continuous or selective)");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Uncertainty-dependent selective data collection for signal control"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "key = value file with intersection/controller parameters");

  // run
  auto* run = app.add_subcommand("run", "Simulate one scenario");
  std::uint64_t seed = 1;
  std::optional<int> duration;
  std::optional<double> q_a, q_b, threshold;
  std::string mode = "selective";
  std::string out, decision_log, query_log, world_trace;
  run->add_option("--seed", seed, "RNG seed");
  run->add_option("--duration", duration, "simulated seconds");
  run->add_option("--qa", q_a, "approach A volume, vph");
  run->add_option("--qb", q_b, "approach B volume, vph");
  run->add_option("--threshold", threshold, "uncertainty threshold in [0, 1]");
  run->add_option("--mode", mode, "continuous | selective");
  run->add_option("-o,--out", out, "summary CSV (default stdout)");
  run->add_option("--decision-log", decision_log, "per-second decision log CSV");
  run->add_option("--query-log", query_log, "query log CSV");
  run->add_option("--world-trace", world_trace, "ground-truth trajectory CSV");

  // sweep
  auto* sw = app.add_subcommand("sweep", "Paired continuous/selective runs over a volume grid");
  std::vector<double> volumes{150, 300, 450, 600, 750};
  std::vector<double> thresholds{0.0, 0.05, 0.10};
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  unsigned threads = 0;
  std::string sweep_out;
  sw->add_option("--volumes", volumes, "per-approach volumes; the grid is their square")->delimiter(',');
  sw->add_option("--thresholds", thresholds, "uncertainty thresholds")->delimiter(',');
  sw->add_option("--seeds", seeds, "seeds")->delimiter(',');
  sw->add_option("--threads", threads, "worker threads (0 = all cores)");
  sw->add_option("--duration", duration, "simulated seconds per run");
  sw->add_option("-o,--out", sweep_out, "sweep CSV (default stdout)");

  // trace
  auto* tr = app.add_subcommand("trace", "Replay the two-vehicle start-up scenario");
  int steps = 4;
  std::string trace_out;
  tr->add_option("--steps", steps, "steps to simulate")->check(CLI::NonNegativeNumber);
  tr->add_option("-o,--out", trace_out, "trace CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    sdc::ScenarioConfig cfg;
    if (!config_path.empty()) cfg = sdc::load_config(config_path, cfg);
    if (duration) cfg.duration = *duration;

    if (*run) {
      if (q_a) cfg.world.q_a = *q_a;
      if (q_b) cfg.world.q_b = *q_b;
      if (threshold) cfg.controller.uncertainty_threshold = *threshold;
      const sdc::CollectionMode m = parse_mode(mode);

      std::unique_ptr<std::ofstream> world_file;
      sdc::RunOptions opts;
      opts.keep_trace = !decision_log.empty() || !query_log.empty();
      if (!world_trace.empty()) {
        std::ostream& os = open_output(world_trace, world_file);
        os << "t,approach,vehicle,cell,v\n";
        opts.world_trace = &os;
      }
      const sdc::ScenarioResult r = sdc::run_scenario(cfg, m, seed, opts);

      std::unique_ptr<std::ofstream> f;
      std::ostream& os = open_output(out, f);
      os << "mode,seed,q_A,q_B,threshold,QN,hello,readings,vehicles,avg_delay\n"
         << sdc::to_string(r.mode) << ',' << r.seed << ',' << sdc::format_real(r.q_a) << ','
         << sdc::format_real(r.q_b) << ',' << sdc::format_real(r.threshold) << ',' << r.qn << ','
         << r.accounting.hello_count << ',' << r.accounting.readings_transferred << ',' << r.vehicles << ','
         << sdc::format_real(r.avg_delay_gt) << '\n';
      if (!decision_log.empty()) {
        std::unique_ptr<std::ofstream> g;
        sdc::write_decision_log(open_output(decision_log, g), r.decisions, r.threshold);
      }
      if (!query_log.empty()) {
        std::unique_ptr<std::ofstream> g;
        sdc::write_query_log(open_output(query_log, g), r.queries);
      }
    } else if (*sw) {
      sdc::SweepPlan plan;
      for (double qa : volumes)
        for (double qb : volumes) plan.grid.emplace_back(qa, qb);
      plan.thresholds = thresholds;
      plan.seeds = seeds;
      plan.threads = threads;
      const auto rows = sdc::sweep(cfg, plan);
      std::unique_ptr<std::ofstream> f;
      sdc::write_sweep_csv(open_output(sweep_out, f), rows);
    } else if (*tr) {
      sdc::LaneModel lane = sdc::startup_pair_lane();
      std::unique_ptr<std::ofstream> f;
      std::ostream& os = open_output(trace_out, f);
      os << "t,vehicle,x,v\n";
      sdc::write_lane_rows(os, lane);
      for (int k = 0; k < steps; ++k) {
        lane.step();
        sdc::write_lane_rows(os, lane);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "sdc: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
