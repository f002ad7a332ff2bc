#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <unordered_map>
#include <vector>

#include "sdc/fuzzy_lane.hpp"
#include "sdc/world.hpp"

namespace sdc {

/// One predictive lane model per approach, indexed by index(Approach).
using ApproachModels = std::array<LaneModel, 2>;

/// Calibrated profile given to every vehicle the model creates.
struct ModelProfile {
  Ofn vmax{2, 3, 3, 4};
  AccelProfile accel;
};

ApproachModels make_models(const WorldConfig& cfg);

struct SensorReading {
  VehicleId vehicle_id = 0;
  double position_m = 0.0; // from approach entry
  double speed_mps = 0.0;
  Approach approach = Approach::A;
};

struct Accounting {
  std::uint64_t hello_count = 0;
  std::uint64_t query_count = 0;
  std::uint64_t readings_transferred = 0;
};

struct QueryLogEntry {
  long t = 0;
  std::uint64_t ordinal = 0;
  std::size_t readings = 0;
};

/// Control-node side of the vehicular sensor network: which vehicles have
/// said hello, which have left, and how many messages that cost.
class VsnRegistry {
public:
  explicit VsnRegistry(ModelProfile profile = {});

  /// Registers ground-truth vehicles not seen before and adds each one to
  /// the predictive model as a crisp vehicle at its entry cell. Vehicles
  /// that left the world are marked departed. Throws std::logic_error if a
  /// departed id shows up again.
  void register_hello(const World& world, ApproachModels& models);

  /// Positions and speeds of every registered vehicle still in the world.
  std::vector<SensorReading> execute_query(const World& world);

  const Accounting& accounting() const { return m_accounting; }
  const std::vector<QueryLogEntry>& query_log() const { return m_queryLog; }
  const ModelProfile& profile() const { return m_profile; }
  bool is_registered(VehicleId id) const { return m_status.contains(id); }
  std::size_t active() const { return m_active; }

private:
  enum class Status { Active, Departed };

  ModelProfile m_profile;
  std::unordered_map<VehicleId, Status> m_status;
  std::size_t m_active = 0;
  Accounting m_accounting;
  std::vector<QueryLogEntry> m_queryLog;
};

/// Re-anchors the predictive models to a full set of readings: matched
/// vehicles become crisp at the reading's cell and speed, unmatched model
/// vehicles are removed and unmatched readings generate new vehicles.
/// Throws std::invalid_argument on duplicate vehicle ids.
void adjust_model(ApproachModels& models, std::span<const SensorReading> readings, SignalState signal,
                  const ModelProfile& profile);

/// Cell holding a position, floor(position / cell length).
int cell_of(double position_m);
/// Speed in whole cells per step, rounded and clamped to [0, max_cells].
int cells_per_step(double speed_mps, int max_cells);

/// CSV rows "t,query,readings".
void write_query_log(std::ostream& os, std::span<const QueryLogEntry> log);

} // namespace sdc
