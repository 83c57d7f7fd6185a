#include "gearevo/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "gearevo/errors.hpp"

namespace gearevo {

GearCatalog::GearCatalog(const std::array<double, kSize>& radii_mm)
    : radii_mm_(radii_mm) {
  for (int i = 0; i < kSize; ++i) {
    if (!(radii_mm_[i] > 0.0) || !std::isfinite(radii_mm_[i]))
      throw ConfigError("catalog radius " + std::to_string(i + 1) +
                        " must be positive and finite");
    if (i > 0 && !(radii_mm_[i] > radii_mm_[i - 1]))
      throw ConfigError("catalog radii must be strictly increasing");
  }
}

void GeometryConfig::validate() const {
  if (!(box_length_mm > 0.0) || !std::isfinite(box_length_mm))
    throw ConfigError("box_length_mm must be positive");
  if (!(axle_radius_mm >= 0.0) || !std::isfinite(axle_radius_mm))
    throw ConfigError("axle_radius_mm must be nonnegative");
}

Mechanism place_sequence(std::span<const PlacementStep> steps,
                         const GeometryConfig& geo) {
  if (steps.size() < 2 || steps.size() > 6)
    throw std::invalid_argument("mechanism must have 2..6 gears, got " +
                                std::to_string(steps.size()));
  Mechanism mech;
  mech.gears.reserve(steps.size());
  int next_axle = 0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto& step = steps[i];
    if (step.gear_id < 1 || step.gear_id > GearCatalog::kSize)
      throw std::invalid_argument("gear id out of range: " +
                                  std::to_string(step.gear_id));
    const double r = geo.catalog.radius_mm(step.gear_id);
    PlacedGear g;
    g.gear_id = step.gear_id;
    g.radius_mm = r;
    if (i == 0) {
      g.center_x_mm = r;
      g.plane = 0;
      g.axle_id = next_axle++;
      g.placement = Placement::First;
    } else if (step.placement == Placement::Coaxial) {
      const PlacedGear& prev = mech.gears.back();
      g.center_x_mm = prev.center_x_mm;
      g.plane = prev.plane + 1;
      g.axle_id = prev.axle_id;
      g.placement = Placement::Coaxial;
    } else {
      const PlacedGear& prev = mech.gears.back();
      g.center_x_mm = prev.center_x_mm + prev.radius_mm + r;
      g.plane = prev.plane;
      g.axle_id = next_axle++;
      g.placement = Placement::Linear;
    }
    mech.gears.push_back(g);
  }
  mech.feasibility = check_feasibility(mech, geo);
  return mech;
}

FeasibilityReport check_feasibility(const Mechanism& mech,
                                    const GeometryConfig& geo) {
  FeasibilityReport report;
  const auto& gears = mech.gears;
  const int n = static_cast<int>(gears.size());

  // Bounds: each disc must lie inside [0, box_length].
  for (int i = 0; i < n; ++i) {
    const double lo = gears[i].center_x_mm - gears[i].radius_mm;
    const double hi = gears[i].center_x_mm + gears[i].radius_mm;
    double depth = 0.0;
    if (lo < 0.0) depth += -lo;
    if (hi > geo.box_length_mm) depth += hi - geo.box_length_mm;
    if (depth > 0.0)
      report.breaches.push_back({BreachKind::OutOfBounds, depth, i, -1});
  }

  // Disc overlap: same-plane pairs that are not chain-adjacent. Adjacent
  // Linear pairs mesh tangentially and are exempt by construction.
  for (int i = 0; i < n; ++i) {
    for (int j = i + 2; j < n; ++j) {
      if (gears[i].plane != gears[j].plane) continue;
      const double dist = std::abs(gears[i].center_x_mm - gears[j].center_x_mm);
      const double min_dist = gears[i].radius_mm + gears[j].radius_mm;
      if (dist < min_dist)
        report.breaches.push_back(
            {BreachKind::DiscOverlap, min_dist - dist, i, j});
    }
  }

  // Axle clash: axles are through-rods spanning every plane, so each gear is
  // checked against every axle except its own and those of its direct
  // meshing partners (predecessor/successor joined by a Linear placement).
  std::vector<std::pair<int, double>> axles;  // (axle_id, x), first occurrence
  for (const auto& g : gears) {
    bool known = false;
    for (const auto& [id, x] : axles) known = known || id == g.axle_id;
    if (!known) axles.emplace_back(g.axle_id, g.center_x_mm);
  }
  for (int i = 0; i < n; ++i) {
    for (const auto& [axle_id, axle_x] : axles) {
      if (axle_id == gears[i].axle_id) continue;
      if (i > 0 && gears[i].placement == Placement::Linear &&
          gears[i - 1].axle_id == axle_id)
        continue;
      if (i + 1 < n && gears[i + 1].placement == Placement::Linear &&
          gears[i + 1].axle_id == axle_id)
        continue;
      const double dist = std::abs(gears[i].center_x_mm - axle_x);
      const double min_dist = gears[i].radius_mm + geo.axle_radius_mm;
      if (dist < min_dist)
        report.breaches.push_back(
            {BreachKind::AxleClash, min_dist - dist, i, axle_id});
    }
  }

  for (const auto& b : report.breaches) report.violation_mm += b.depth_mm;
  report.feasible = report.breaches.empty();
  return report;
}

double speed_ratio(const Mechanism& mech) {
  double ratio = 1.0;
  for (std::size_t i = 1; i < mech.gears.size(); ++i) {
    if (mech.gears[i].placement == Placement::Linear)
      ratio *= mech.gears[i - 1].radius_mm / mech.gears[i].radius_mm;
  }
  return ratio;
}

int linear_mesh_count(const Mechanism& mech) {
  int count = 0;
  for (std::size_t i = 1; i < mech.gears.size(); ++i)
    if (mech.gears[i].placement == Placement::Linear) ++count;
  return count;
}

bool has_coaxial(const Mechanism& mech) {
  for (const auto& g : mech.gears)
    if (g.placement == Placement::Coaxial) return true;
  return false;
}

}  // namespace gearevo
