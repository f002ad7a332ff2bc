#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "sdc/ofn.hpp"

namespace sdc {

using VehicleId = std::uint64_t;

inline constexpr double kCellLengthM = 7.5;
inline constexpr double kStepS = 1.0;

/// Two-valued acceleration: `at_cruise` when V equals Vmax or
/// Vmax - (1,0,0,0), `below_cruise` otherwise.
struct AccelProfile {
  Ofn at_cruise{1, 1, 1, 1};
  Ofn below_cruise{0, 1, 1, 1};

  Ofn operator()(const Ofn& v, const Ofn& vmax) const;

  static constexpr AccelProfile standard() { return {}; }
  /// Crisp profile (a,a,a,a) in both branches; reduces the model to
  /// deterministic Nagel-Schreckenberg acceleration by `a`.
  static constexpr AccelProfile crisp(int a = 1) { return {Ofn::crisp(a), Ofn::crisp(a)}; }
};

/// Acceleration under the standard profile.
Ofn accel(const Ofn& v, const Ofn& vmax);

struct FuzzyVehicle {
  VehicleId id = 0;
  Ofn x;    // cell index
  Ofn v;    // cells per step
  Ofn vmax; // cells per step
  AccelProfile accel_profile;
};

struct LaneStepReport {
  /// Vehicles removed this step, with the velocity they left with.
  std::vector<FuzzyVehicle> departed;
};

/// One lane of the fuzzy cellular automaton. Vehicles are held front to
/// back: vehicles()[n - 1] leads vehicles()[n].
class LaneModel {
public:
  LaneModel() = default;
  LaneModel(int cells, int stop_line);

  int cells() const { return m_cells; }
  int stop_line() const { return m_stopLine; }
  long clock() const { return m_clock; }
  bool signal_green() const { return m_green; }
  void set_signal(bool green) { m_green = green; }

  std::span<const FuzzyVehicle> vehicles() const { return m_vehicles; }
  std::size_t size() const { return m_vehicles.size(); }
  bool empty() const { return m_vehicles.empty(); }

  /// Appends behind the current last vehicle.
  void push_back(FuzzyVehicle v);
  /// Replaces the population; vehicles are re-sorted front to back.
  void assign(std::vector<FuzzyVehicle> vehicles);

  /// Free cells ahead of vehicle n at the current clock.
  Ofn gap(std::size_t n) const;

  /// One synchronous update: velocities front to back, then positions.
  /// Vehicles whose whole position support is past the lattice end leave.
  LaneStepReport step();

  /// Every gap component of every follower is >= 0.
  bool collision_free() const;

private:
  int m_cells = 0;
  int m_stopLine = 0;
  long m_clock = 0;
  bool m_green = true;
  std::vector<FuzzyVehicle> m_vehicles;
};

/// Per-vehicle velocity history: v[0] is the initial state, v[t] the
/// velocity computed in step t.
struct VelocityTrace {
  VehicleId id = 0;
  std::vector<Ofn> v;
};

/// Records velocity traces while a set of lanes is stepped.
class TraceRecorder {
public:
  /// Starts a trace for every vehicle currently on the lane.
  void begin(const LaneModel& lane);
  /// Appends the velocities produced by the last step.
  void record(const LaneModel& lane, const LaneStepReport& report);

  const std::vector<VelocityTrace>& traces() const { return m_traces; }

private:
  VelocityTrace* find(VehicleId id);
  std::vector<VelocityTrace> m_traces;
};

/// Sum over t >= 1 of S_{=0}(V_t).
Ofn delay_total(const VelocityTrace& trace);
/// Sum over t >= 1 of min{S_{>0}(V_{t-1}), S_{=0}(V_t)}.
Ofn stops_total(const VelocityTrace& trace);

/// Average delay in steps per vehicle; throws std::invalid_argument if n < 1.
Ofn avg_delay(std::span<const VelocityTrace> traces, int n);
/// Average number of stops per vehicle; throws std::invalid_argument if n < 1.
Ofn avg_stops(std::span<const VelocityTrace> traces, int n);

/// Two vehicles at rest in cells 2 and 1 with Vmax (1,2,2,3) on an open
/// lane: the reference start-up scenario replayed by `sdc trace`.
LaneModel startup_pair_lane(int cells = 20);

/// CSV rows "t,vehicle,x,v" for the current lane state.
void write_lane_rows(std::ostream& os, const LaneModel& lane);

} // namespace sdc
