#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "sdc/decision.hpp"
#include "sdc/vsn.hpp"

namespace sdc {

enum class Strategy : StrategyId { Keep = 0, Switch = 1 };
const char* to_string(Strategy s);

/// Phase 1 gives green to approach A, phase 2 to approach B.
enum class Phase : int { AGreen = 1, BGreen = 2 };
inline Phase other(Phase p) { return p == Phase::AGreen ? Phase::BGreen : Phase::AGreen; }

enum class CollectionMode { Continuous, Selective };
const char* to_string(CollectionMode m);

struct ControllerConfig {
  int min_green = 5;   // s
  int inter_green = 4; // s
  int horizon = 30;    // prediction steps
  double uncertainty_threshold = 0.05;
  CollectionMode mode = CollectionMode::Selective;
  /// Selective mode only: an uncertain decision is applied as is and the
  /// query runs at the start of the next step instead of re-deciding now.
  bool defer_collection = true;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// What the controller needs from the data-collection side.
class DataCollector {
public:
  virtual ~DataCollector() = default;
  /// Adds newly announced vehicles to the models.
  virtual void register_arrivals(ApproachModels& models) = 0;
  /// Runs one query and re-anchors the models to its readings.
  virtual void collect(ApproachModels& models, SignalState signal) = 0;
};

struct DecisionRecord {
  long t = 0;
  Phase phase = Phase::AGreen;
  bool inter_green = false;
  bool applicable = false;
  /// Uncertainty that was compared with the threshold; 0 when no decision.
  double uncertainty = 0.0;
  bool query_issued = false;
  /// Empty when undecidable or when no strategy dominated.
  std::optional<Strategy> chosen;
  /// Signal actually shown during [t, t + 1).
  SignalState signal;
};

struct ControllerState {
  Phase current_phase = Phase::AGreen;
  int phase_age = 0;      // s of green in the current phase
  int in_inter_green = 0; // remaining all-red seconds
  long clock = 0;
  bool collection_pending = false;
  ApproachModels models;
  std::vector<DecisionRecord> decision_log;

  static ControllerState initial(const WorldConfig& world);
  SignalState signal() const;
};

/// {} while in inter-green or before min green has elapsed; otherwise
/// {Keep, Switch}.
std::vector<Strategy> applicable_strategies(const ControllerState& state, const ControllerConfig& cfg);

/// Average delay (s/vehicle) over both approaches predicted by rolling
/// copies of the models `horizon` steps forward under `strategy`. Only
/// vehicles already in the models are considered.
Ofn predict_objective(const ControllerState& state, Strategy strategy, const ControllerConfig& cfg);

/// Predicts every applicable strategy and decides between them.
Decision evaluate_strategies(const ControllerState& state, const ControllerConfig& cfg);

/// One second of the control loop: register arrivals, decide (collecting
/// data first in continuous mode, or when the decision is too uncertain in
/// selective mode), apply the choice, log it, and advance the models one
/// real-time step under the signal shown.
void control_step(ControllerState& state, const ControllerConfig& cfg, DataCollector& collector);

/// CSV with header "t,phase,applicable,uncertainty,threshold,query_issued,chosen".
void write_decision_log(std::ostream& os, std::span<const DecisionRecord> log, double threshold);

} // namespace sdc
