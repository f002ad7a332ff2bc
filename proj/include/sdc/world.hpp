#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <random>
#include <span>
#include <vector>

#include "sdc/fuzzy_lane.hpp"

namespace sdc {

enum class Approach : int { A = 0, B = 1 };

inline constexpr std::array<Approach, 2> kApproaches{Approach::A, Approach::B};
inline constexpr std::size_t index(Approach a) { return static_cast<std::size_t>(a); }
const char* to_string(Approach a);

/// Which approaches may discharge across their stop line this second.
struct SignalState {
  bool green_a = false;
  bool green_b = false;

  bool green(Approach a) const { return a == Approach::A ? green_a : green_b; }
  friend bool operator==(const SignalState&, const SignalState&) = default;
};

struct WorldConfig {
  int cells = 60;
  int stop_line = 49;
  int vmax = 3;
  double p_slow = 0.1;
  double q_a = 150.0; // vehicles per hour
  double q_b = 300.0;
  /// Crisp acceleration when below / at vmax; the standard rule is +1.
  int accel_below_vmax = 1;
  int accel_at_vmax = 1;

  void validate() const;
};

struct CrispVehicle {
  VehicleId id = 0;
  int cell = 0;
  int v = 0;
  int stopped_steps = 0;
};

/// Crisp stochastic Nagel-Schreckenberg intersection with two independent
/// single-lane approaches. The signal acts as a wall at stop_line + 1 for
/// vehicles that have not yet passed the line.
class World {
public:
  World(WorldConfig cfg, std::uint64_t seed);

  const WorldConfig& config() const { return m_cfg; }
  long clock() const { return m_clock; }
  std::uint64_t seed() const { return m_seed; }

  /// Front-to-back vehicles on one approach.
  std::span<const CrispVehicle> vehicles(Approach a) const { return m_lanes[index(a)].vehicles; }

  /// Draws this second's arrivals and places them at cell 0 with velocity
  /// vmax. The draw is consumed every second whatever the state, so the
  /// arrival stream depends only on the seed and volumes. A blocked entry
  /// cell defers the arrival.
  void spawn_arrivals();

  /// Places a vehicle directly (tests and scripted scenarios).
  VehicleId insert(Approach a, int cell, int v);

  /// One synchronous update under `signal`; departures leave the lattice.
  void step(SignalState signal);

  std::uint64_t spawned() const { return m_spawned; }
  std::uint64_t departed() const { return m_departedCount; }
  std::size_t present() const { return m_lanes[0].vehicles.size() + m_lanes[1].vehicles.size(); }
  std::uint64_t pending(Approach a) const { return m_lanes[index(a)].pending; }

  /// Mean over departed and present vehicles of steps spent at v = 0.
  /// Throws std::logic_error if no vehicle was ever seen.
  double ground_delay() const;

  bool occupancy_valid() const;

  /// CSV rows "t,approach,vehicle,cell,v".
  void write_rows(std::ostream& os) const;

private:
  struct Lane {
    std::vector<CrispVehicle> vehicles;
    std::mt19937_64 arrivals;
    std::uint64_t pending = 0;
  };

  bool dawdles(VehicleId id) const;

  WorldConfig m_cfg;
  std::uint64_t m_seed;
  long m_clock = 0;
  std::array<Lane, 2> m_lanes;
  VehicleId m_nextId = 1;
  std::uint64_t m_spawned = 0;
  std::uint64_t m_departedCount = 0;
  std::uint64_t m_departedDelay = 0;
};

/// Crisp per-lane update shared with the crisp-reduction check: accelerate,
/// clamp to the gap (and to the red wall), optionally slow down, move.
/// `slow(n)` reports whether vehicle n dawdles this step. Returns vehicles
/// that left the lattice.
std::vector<CrispVehicle> crisp_lane_step(std::vector<CrispVehicle>& lane, const WorldConfig& cfg, bool green,
                                          const std::function<bool(const CrispVehicle&)>& slow);

} // namespace sdc
