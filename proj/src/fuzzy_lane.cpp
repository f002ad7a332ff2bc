#include "sdc/fuzzy_lane.hpp"

#include <algorithm>
#include <cassert>
#include <ostream>
#include <stdexcept>

namespace sdc {

Ofn AccelProfile::operator()(const Ofn& v, const Ofn& vmax) const {
  if (v == vmax || v == vmax - Ofn{1, 0, 0, 0}) return at_cruise;
  return below_cruise;
}

Ofn accel(const Ofn& v, const Ofn& vmax) { return AccelProfile::standard()(v, vmax); }

LaneModel::LaneModel(int cells, int stop_line) : m_cells(cells), m_stopLine(stop_line) {
  if (cells < 1) throw std::invalid_argument("lane must have at least one cell");
  if (stop_line < 0 || stop_line >= cells) throw std::invalid_argument("stop line must lie on the lane");
}

void LaneModel::push_back(FuzzyVehicle v) { m_vehicles.push_back(std::move(v)); }

void LaneModel::assign(std::vector<FuzzyVehicle> vehicles) {
  std::stable_sort(vehicles.begin(), vehicles.end(), [](const FuzzyVehicle& a, const FuzzyVehicle& b) {
    if (a.x[0] != b.x[0]) return a.x[0] > b.x[0];
    return a.x[3] > b.x[3];
  });
  m_vehicles = std::move(vehicles);
}

Ofn LaneModel::gap(std::size_t n) const {
  const FuzzyVehicle& veh = m_vehicles.at(n);
  Ofn g = n == 0 ? veh.vmax : m_vehicles[n - 1].x - veh.x - Ofn::crisp(1);
  if (m_green) return g;

  // Red: a crisp virtual leader sits at stop_line + 1. Components already
  // past the line are unaffected.
  std::array<int, 4> c = g.components();
  for (std::size_t i = 0; i < 4; ++i) {
    if (veh.x[i] <= m_stopLine) c[i] = std::min(c[i], m_stopLine - veh.x[i]);
  }
  return {c[0], c[1], c[2], c[3]};
}

LaneStepReport LaneModel::step() {
  for (std::size_t n = 0; n < m_vehicles.size(); ++n) {
    FuzzyVehicle& veh = m_vehicles[n];
    const Ofn candidate = veh.v + veh.accel_profile(veh.v, veh.vmax);
    veh.v = cwise_min(cwise_min(candidate, gap(n)), veh.vmax);
  }
  for (FuzzyVehicle& veh : m_vehicles) veh.x += veh.v;
  ++m_clock;

  assert(collision_free());

  LaneStepReport report;
  // Departures can only happen at the front of the lane.
  std::size_t leaving = 0;
  while (leaving < m_vehicles.size() && m_vehicles[leaving].x.min_component() >= m_cells) ++leaving;
  if (leaving > 0) {
    report.departed.assign(m_vehicles.begin(), m_vehicles.begin() + static_cast<std::ptrdiff_t>(leaving));
    m_vehicles.erase(m_vehicles.begin(), m_vehicles.begin() + static_cast<std::ptrdiff_t>(leaving));
  }
  return report;
}

bool LaneModel::collision_free() const {
  for (std::size_t n = 1; n < m_vehicles.size(); ++n) {
    const Ofn g = m_vehicles[n - 1].x - m_vehicles[n].x - Ofn::crisp(1);
    if (g.min_component() < 0) return false;
  }
  return true;
}

void TraceRecorder::begin(const LaneModel& lane) {
  for (const FuzzyVehicle& veh : lane.vehicles()) m_traces.push_back({veh.id, {veh.v}});
}

VelocityTrace* TraceRecorder::find(VehicleId id) {
  // Traces are appended in lane order and lanes rarely hold more than a few
  // dozen vehicles, so a linear scan is fine.
  for (VelocityTrace& t : m_traces)
    if (t.id == id) return &t;
  return nullptr;
}

void TraceRecorder::record(const LaneModel& lane, const LaneStepReport& report) {
  auto append = [&](const FuzzyVehicle& veh) {
    if (VelocityTrace* t = find(veh.id)) t->v.push_back(veh.v);
  };
  for (const FuzzyVehicle& veh : report.departed) append(veh);
  for (const FuzzyVehicle& veh : lane.vehicles()) append(veh);
}

Ofn delay_total(const VelocityTrace& trace) {
  Ofn total;
  for (std::size_t t = 1; t < trace.v.size(); ++t) total += s_c(trace.v[t], Condition::equal(0));
  return total;
}

Ofn stops_total(const VelocityTrace& trace) {
  Ofn total;
  for (std::size_t t = 1; t < trace.v.size(); ++t)
    total += cwise_min(s_c(trace.v[t - 1], Condition::greater(0)), s_c(trace.v[t], Condition::equal(0)));
  return total;
}

Ofn avg_delay(std::span<const VelocityTrace> traces, int n) {
  if (n < 1) throw std::invalid_argument("avg_delay: vehicle count must be >= 1");
  Ofn total;
  for (const VelocityTrace& t : traces) total += delay_total(t);
  return scalar_div(total, n);
}

Ofn avg_stops(std::span<const VelocityTrace> traces, int n) {
  if (n < 1) throw std::invalid_argument("avg_stops: vehicle count must be >= 1");
  Ofn total;
  for (const VelocityTrace& t : traces) total += stops_total(t);
  return scalar_div(total, n);
}

LaneModel startup_pair_lane(int cells) {
  LaneModel lane(cells, cells - 1);
  const Ofn vmax{1, 2, 2, 3};
  lane.push_back({1, Ofn::crisp(2), Ofn::crisp(0), vmax, AccelProfile::standard()});
  lane.push_back({2, Ofn::crisp(1), Ofn::crisp(0), vmax, AccelProfile::standard()});
  return lane;
}

void write_lane_rows(std::ostream& os, const LaneModel& lane) {
  for (const FuzzyVehicle& veh : lane.vehicles())
    os << lane.clock() << ',' << veh.id << ",\"" << veh.x << "\",\"" << veh.v << "\"\n";
}

} // namespace sdc
