#include "sdc/controller.hpp"

#include <array>
#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <string>

namespace sdc {

const char* to_string(Strategy s) { return s == Strategy::Keep ? "KEEP" : "SWITCH"; }

const char* to_string(CollectionMode m) { return m == CollectionMode::Continuous ? "continuous" : "selective"; }

void ControllerConfig::validate() const {
  auto bad = [](const std::string& field, const std::string& why) {
    return std::invalid_argument("invalid " + field + ": " + why);
  };
  if (min_green < 1) throw bad("min_green", "must be >= 1");
  if (inter_green < 0) throw bad("inter_green", "must be >= 0");
  if (horizon < 1) throw bad("horizon", "must be >= 1");
  if (!(uncertainty_threshold >= 0.0 && uncertainty_threshold <= 1.0))
    throw bad("threshold", "must be in [0, 1]");
}

ControllerState ControllerState::initial(const WorldConfig& world) {
  ControllerState s;
  s.models = make_models(world);
  const SignalState sig = s.signal();
  for (Approach a : kApproaches) s.models[index(a)].set_signal(sig.green(a));
  return s;
}

SignalState ControllerState::signal() const {
  if (in_inter_green > 0) return {false, false};
  return {current_phase == Phase::AGreen, current_phase == Phase::BGreen};
}

std::vector<Strategy> applicable_strategies(const ControllerState& state, const ControllerConfig& cfg) {
  if (state.in_inter_green > 0 || state.phase_age < cfg.min_green) return {};
  return {Strategy::Keep, Strategy::Switch};
}

Ofn predict_objective(const ControllerState& state, Strategy strategy, const ControllerConfig& cfg) {
  ApproachModels models = state.models;
  int vehicles = 0;
  std::array<TraceRecorder, 2> recorders;
  for (Approach a : kApproaches) {
    vehicles += static_cast<int>(models[index(a)].size());
    recorders[index(a)].begin(models[index(a)]);
  }
  if (vehicles == 0) return {};

  const Phase held = strategy == Strategy::Keep ? state.current_phase : other(state.current_phase);
  const int all_red = strategy == Strategy::Keep ? 0 : cfg.inter_green;
  for (int k = 0; k < cfg.horizon; ++k) {
    for (Approach a : kApproaches) {
      LaneModel& lane = models[index(a)];
      const bool green = k >= all_red && (held == Phase::AGreen) == (a == Approach::A);
      lane.set_signal(green);
      recorders[index(a)].record(lane, lane.step());
    }
  }

  Ofn total;
  for (const TraceRecorder& r : recorders)
    for (const VelocityTrace& t : r.traces()) total += delay_total(t);
  return scalar_div(total, vehicles);
}

Decision evaluate_strategies(const ControllerState& state, const ControllerConfig& cfg) {
  std::vector<StrategyEvaluation> evals;
  for (Strategy s : applicable_strategies(state, cfg))
    evals.push_back({static_cast<StrategyId>(s), predict_objective(state, s, cfg)});
  return decide(evals);
}

void control_step(ControllerState& state, const ControllerConfig& cfg, DataCollector& collector) {
  collector.register_arrivals(state.models);

  DecisionRecord rec;
  rec.t = state.clock;
  rec.phase = state.current_phase;
  rec.inter_green = state.in_inter_green > 0;

  if (state.collection_pending) {
    collector.collect(state.models, state.signal());
    rec.query_issued = true;
    state.collection_pending = false;
  }

  if (!applicable_strategies(state, cfg).empty()) {
    rec.applicable = true;
    Decision decision;
    if (cfg.mode == CollectionMode::Continuous) {
      if (!rec.query_issued) collector.collect(state.models, state.signal());
      rec.query_issued = true;
      decision = evaluate_strategies(state, cfg);
      rec.uncertainty = decision.uncertainty;
    } else {
      decision = evaluate_strategies(state, cfg);
      rec.uncertainty = decision.uncertainty;
      if (decision.uncertainty > cfg.uncertainty_threshold && cfg.defer_collection && !rec.query_issued) {
        state.collection_pending = true;
      } else if (decision.uncertainty > cfg.uncertainty_threshold && !rec.query_issued) {
        collector.collect(state.models, state.signal());
        rec.query_issued = true;
        decision = evaluate_strategies(state, cfg);
      }
    }
    if (decision.chosen) rec.chosen = static_cast<Strategy>(*decision.chosen);
    if (rec.chosen == Strategy::Switch) {
      if (cfg.inter_green > 0) {
        state.in_inter_green = cfg.inter_green;
      } else {
        state.current_phase = other(state.current_phase);
        state.phase_age = 0;
      }
    }
  }

  rec.signal = state.signal();
  state.decision_log.push_back(rec);

  for (Approach a : kApproaches) {
    LaneModel& lane = state.models[index(a)];
    lane.set_signal(rec.signal.green(a));
    lane.step();
  }

  if (state.in_inter_green > 0) {
    if (--state.in_inter_green == 0) {
      state.current_phase = other(state.current_phase);
      state.phase_age = 0;
    }
  } else {
    ++state.phase_age;
  }
  ++state.clock;
}

void write_decision_log(std::ostream& os, std::span<const DecisionRecord> log, double threshold) {
  os << "t,phase,applicable,uncertainty,threshold,query_issued,chosen\n";
  const auto old_precision = os.precision(17);
  for (const DecisionRecord& r : log) {
    os << r.t << ',' << (r.inter_green ? std::string("inter_green") : std::to_string(static_cast<int>(r.phase)))
       << ',' << (r.applicable ? 1 : 0) << ',' << r.uncertainty << ',' << threshold << ','
       << (r.query_issued ? 1 : 0) << ',' << (r.chosen ? to_string(*r.chosen) : (r.applicable ? "none" : ""))
       << '\n';
  }
  os.precision(old_precision);
}

} // namespace sdc
