#include "sdc/vsn.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace sdc {
namespace {

// Makes room for a vehicle entering at the back of the lane: any component
// of a model vehicle that would overlap it is pushed forward, cascading to
// the front.
void make_room_behind(std::vector<FuzzyVehicle>& vehicles, const Ofn& entering_x) {
  Ofn floor = entering_x;
  for (auto it = vehicles.rbegin(); it != vehicles.rend(); ++it) {
    const Ofn required = floor + Ofn::crisp(1);
    const Ofn pushed = cwise_max(it->x, required);
    if (pushed == it->x) break;
    it->x = pushed;
    floor = pushed;
  }
}

} // namespace

ApproachModels make_models(const WorldConfig& cfg) {
  return {LaneModel(cfg.cells, cfg.stop_line), LaneModel(cfg.cells, cfg.stop_line)};
}

int cell_of(double position_m) { return static_cast<int>(std::floor(position_m / kCellLengthM)); }

int cells_per_step(double speed_mps, int max_cells) {
  const long v = std::lround(speed_mps * kStepS / kCellLengthM);
  return static_cast<int>(std::clamp<long>(v, 0, max_cells));
}

VsnRegistry::VsnRegistry(ModelProfile profile) : m_profile(profile) {}

void VsnRegistry::register_hello(const World& world, ApproachModels& models) {
  std::unordered_set<VehicleId> present;
  for (Approach a : kApproaches) {
    LaneModel& model = models[index(a)];
    std::vector<FuzzyVehicle> added;
    for (const CrispVehicle& veh : world.vehicles(a)) {
      present.insert(veh.id);
      auto it = m_status.find(veh.id);
      if (it != m_status.end()) {
        if (it->second == Status::Departed)
          throw std::logic_error("vehicle " + std::to_string(veh.id) + " re-entered after departing");
        continue;
      }
      m_status.emplace(veh.id, Status::Active);
      ++m_active;
      ++m_accounting.hello_count;
      const int v = std::clamp(veh.v, 0, m_profile.vmax.max_component());
      added.push_back({veh.id, Ofn::crisp(veh.cell), Ofn::crisp(v), m_profile.vmax, m_profile.accel});
    }
    if (added.empty()) continue;
    // World order is front to back; new vehicles are at the entry.
    std::vector<FuzzyVehicle> all(model.vehicles().begin(), model.vehicles().end());
    for (const FuzzyVehicle& v : added) {
      make_room_behind(all, v.x);
      all.push_back(v);
    }
    model.assign(std::move(all));
  }
  for (auto& [id, status] : m_status) {
    if (status == Status::Active && !present.contains(id)) {
      status = Status::Departed;
      --m_active;
    }
  }
}

std::vector<SensorReading> VsnRegistry::execute_query(const World& world) {
  std::vector<SensorReading> readings;
  for (Approach a : kApproaches)
    for (const CrispVehicle& veh : world.vehicles(a)) {
      auto it = m_status.find(veh.id);
      if (it == m_status.end() || it->second != Status::Active) continue;
      readings.push_back({veh.id, veh.cell * kCellLengthM, veh.v * kCellLengthM / kStepS, a});
    }
  ++m_accounting.query_count;
  m_accounting.readings_transferred += readings.size();
  m_queryLog.push_back({world.clock(), m_accounting.query_count, readings.size()});
  return readings;
}

void adjust_model(ApproachModels& models, std::span<const SensorReading> readings, SignalState signal,
                  const ModelProfile& profile) {
  std::unordered_set<VehicleId> seen;
  for (const SensorReading& r : readings)
    if (!seen.insert(r.vehicle_id).second)
      throw std::invalid_argument("duplicate vehicle id " + std::to_string(r.vehicle_id) + " in readings");

  for (Approach a : kApproaches) {
    LaneModel& model = models[index(a)];
    std::unordered_map<VehicleId, const FuzzyVehicle*> known;
    for (const FuzzyVehicle& v : model.vehicles()) known.emplace(v.id, &v);

    std::vector<FuzzyVehicle> next;
    for (const SensorReading& r : readings) {
      if (r.approach != a) continue;
      auto it = known.find(r.vehicle_id);
      FuzzyVehicle veh = it != known.end() ? *it->second
                                           : FuzzyVehicle{r.vehicle_id, {}, {}, profile.vmax, profile.accel};
      veh.x = Ofn::crisp(cell_of(r.position_m));
      veh.v = Ofn::crisp(cells_per_step(r.speed_mps, veh.vmax.max_component()));
      next.push_back(veh);
    }
    model.assign(std::move(next));
    model.set_signal(signal.green(a));
  }
}

void write_query_log(std::ostream& os, std::span<const QueryLogEntry> log) {
  os << "t,query,readings\n";
  for (const QueryLogEntry& e : log) os << e.t << ',' << e.ordinal << ',' << e.readings << '\n';
}

} // namespace sdc
