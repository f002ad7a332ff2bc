#include "sdc/world.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace sdc {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

} // namespace

const char* to_string(Approach a) { return a == Approach::A ? "A" : "B"; }

void WorldConfig::validate() const {
  auto bad = [](const std::string& field, const std::string& why) {
    return std::invalid_argument("invalid " + field + ": " + why);
  };
  if (cells < 2) throw bad("cells", "must be >= 2");
  if (stop_line < 0 || stop_line >= cells - 1) throw bad("stop_line", "must lie inside the lane, before its last cell");
  if (vmax < 1) throw bad("vmax", "must be >= 1");
  if (!(p_slow >= 0.0 && p_slow <= 1.0)) throw bad("p_slow", "must be in [0, 1]");
  if (!(q_a >= 0.0 && q_a <= 3600.0)) throw bad("q_a", "must be in [0, 3600] vph");
  if (!(q_b >= 0.0 && q_b <= 3600.0)) throw bad("q_b", "must be in [0, 3600] vph");
  if (accel_below_vmax < 0 || accel_at_vmax < 0) throw bad("accel", "must be >= 0");
}

std::vector<CrispVehicle> crisp_lane_step(std::vector<CrispVehicle>& lane, const WorldConfig& cfg, bool green,
                                          const std::function<bool(const CrispVehicle&)>& slow) {
  for (std::size_t n = 0; n < lane.size(); ++n) {
    CrispVehicle& veh = lane[n];
    int gap = n == 0 ? cfg.vmax : lane[n - 1].cell - veh.cell - 1;
    if (!green && veh.cell <= cfg.stop_line) gap = std::min(gap, cfg.stop_line - veh.cell);
    const int a = veh.v == cfg.vmax ? cfg.accel_at_vmax : cfg.accel_below_vmax;
    veh.v = std::min({veh.v + a, gap, cfg.vmax});
    if (veh.v > 0 && slow && slow(veh)) --veh.v;
  }
  for (CrispVehicle& veh : lane) {
    veh.cell += veh.v;
    if (veh.v == 0) ++veh.stopped_steps;
  }
  std::size_t leaving = 0;
  while (leaving < lane.size() && lane[leaving].cell >= cfg.cells) ++leaving;
  std::vector<CrispVehicle> out(lane.begin(), lane.begin() + static_cast<std::ptrdiff_t>(leaving));
  lane.erase(lane.begin(), lane.begin() + static_cast<std::ptrdiff_t>(leaving));
  return out;
}

World::World(WorldConfig cfg, std::uint64_t seed) : m_cfg(cfg), m_seed(seed) {
  m_cfg.validate();
  for (Approach a : kApproaches) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index(a) + 1)};
    m_lanes[index(a)].arrivals.seed(seq);
  }
}

void World::spawn_arrivals() {
  for (Approach a : kApproaches) {
    Lane& lane = m_lanes[index(a)];
    const double q = a == Approach::A ? m_cfg.q_a : m_cfg.q_b;
    // Uniform draw in [0, 1) from the top 53 bits.
    const double u = static_cast<double>(lane.arrivals() >> 11) * 0x1.0p-53;
    if (u < q / 3600.0) ++lane.pending;
    const bool entry_free = lane.vehicles.empty() || lane.vehicles.back().cell > 0;
    if (lane.pending > 0 && entry_free) {
      insert(a, 0, m_cfg.vmax);
      --lane.pending;
    }
  }
}

VehicleId World::insert(Approach a, int cell, int v) {
  auto& vehicles = m_lanes[index(a)].vehicles;
  if (cell < 0 || cell >= m_cfg.cells) throw std::invalid_argument("insert: cell outside the lattice");
  if (v < 0 || v > m_cfg.vmax) throw std::invalid_argument("insert: velocity outside [0, vmax]");
  auto pos = std::find_if(vehicles.begin(), vehicles.end(), [&](const CrispVehicle& c) { return c.cell <= cell; });
  if (pos != vehicles.end() && pos->cell == cell) throw std::invalid_argument("insert: cell already occupied");
  const VehicleId id = m_nextId++;
  vehicles.insert(pos, CrispVehicle{id, cell, v, 0});
  ++m_spawned;
  return id;
}

bool World::dawdles(VehicleId id) const {
  if (m_cfg.p_slow <= 0.0) return false;
  // Keyed on (seed, vehicle, time) so the same vehicle sees the same draws in
  // paired runs regardless of what other vehicles do.
  const std::uint64_t h = splitmix64(splitmix64(m_seed ^ 0x5deece66dULL) ^ splitmix64(id) ^
                                     (static_cast<std::uint64_t>(m_clock) * 0x9e3779b97f4a7c15ULL));
  return static_cast<double>(h >> 11) * 0x1.0p-53 < m_cfg.p_slow;
}

void World::step(SignalState signal) {
  const auto slow = [this](const CrispVehicle& v) { return dawdles(v.id); };
  for (Approach a : kApproaches) {
    for (const CrispVehicle& gone : crisp_lane_step(m_lanes[index(a)].vehicles, m_cfg, signal.green(a), slow)) {
      ++m_departedCount;
      m_departedDelay += static_cast<std::uint64_t>(gone.stopped_steps);
    }
  }
  ++m_clock;
}

double World::ground_delay() const {
  std::uint64_t count = m_departedCount;
  std::uint64_t total = m_departedDelay;
  for (const Lane& lane : m_lanes)
    for (const CrispVehicle& v : lane.vehicles) {
      ++count;
      total += static_cast<std::uint64_t>(v.stopped_steps);
    }
  if (count == 0) throw std::logic_error("ground_delay: no vehicles observed");
  return static_cast<double>(total) / static_cast<double>(count);
}

bool World::occupancy_valid() const {
  for (const Lane& lane : m_lanes) {
    for (std::size_t n = 0; n < lane.vehicles.size(); ++n) {
      const CrispVehicle& v = lane.vehicles[n];
      if (v.cell < 0 || v.cell >= m_cfg.cells || v.v < 0 || v.v > m_cfg.vmax) return false;
      if (n > 0 && lane.vehicles[n - 1].cell <= v.cell) return false;
    }
  }
  return true;
}

void World::write_rows(std::ostream& os) const {
  for (Approach a : kApproaches)
    for (const CrispVehicle& v : vehicles(a))
      os << m_clock << ',' << to_string(a) << ',' << v.id << ',' << v.cell << ',' << v.v << '\n';
}

} // namespace sdc
