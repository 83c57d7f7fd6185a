#pragma once

#include <array>
#include <span>
#include <vector>

namespace gearevo {

// How a gear is attached relative to its predecessor in the chain.
// First applies only to the opening gear of a mechanism.
enum class Placement { First, Linear, Coaxial };

// One build instruction: which catalog gear to add and how to attach it.
// The flag of the first step is recorded but has no geometric effect.
struct PlacementStep {
  int gear_id = 1;  // 1..6
  Placement placement = Placement::Linear;

  bool operator==(const PlacementStep&) const = default;
};

struct GearType {
  int id = 0;               // 1..6
  double pitch_radius_mm = 0.0;

  bool operator==(const GearType&) const = default;
};

// The six discrete gear sizes. Radii are strictly increasing and positive;
// the default is 5..30 mm in 5 mm steps, which keeps meshing arithmetic exact.
class GearCatalog {
 public:
  static constexpr int kSize = 6;

  GearCatalog() : radii_mm_{5.0, 10.0, 15.0, 20.0, 25.0, 30.0} {}
  explicit GearCatalog(const std::array<double, kSize>& radii_mm);

  double radius_mm(int gear_id) const { return radii_mm_[gear_id - 1]; }
  GearType gear(int gear_id) const { return {gear_id, radius_mm(gear_id)}; }
  const std::array<double, kSize>& radii_mm() const { return radii_mm_; }

  bool operator==(const GearCatalog&) const = default;

 private:
  std::array<double, kSize> radii_mm_;
};

struct GeometryConfig {
  double box_length_mm = 150.0;
  double axle_radius_mm = 2.5;
  GearCatalog catalog;

  void validate() const;  // throws ConfigError

  bool operator==(const GeometryConfig&) const = default;
};

struct PlacedGear {
  int gear_id = 0;
  double radius_mm = 0.0;
  double center_x_mm = 0.0;
  int plane = 0;
  int axle_id = 0;
  Placement placement = Placement::First;

  bool operator==(const PlacedGear&) const = default;
};

enum class BreachKind { DiscOverlap, AxleClash, OutOfBounds };

// One constraint breach with its penetration/exceedance depth.
// `gear` is the index of the offending gear; `other` is the second gear index
// for DiscOverlap, the foreign axle id for AxleClash, and -1 for OutOfBounds.
struct Breach {
  BreachKind kind = BreachKind::OutOfBounds;
  double depth_mm = 0.0;
  int gear = 0;
  int other = -1;

  bool operator==(const Breach&) const = default;
};

struct FeasibilityReport {
  bool feasible = true;
  double violation_mm = 0.0;  // sum of all breach depths
  std::vector<Breach> breaches;

  bool operator==(const FeasibilityReport&) const = default;
};

struct Mechanism {
  std::vector<PlacedGear> gears;  // 2..6, placement order
  FeasibilityReport feasibility;

  bool operator==(const Mechanism&) const = default;
};

// Places a step list into deterministic coordinates and evaluates feasibility.
// The chain grows in +x; a Linear gear meshes exactly with its predecessor
// (center distance = sum of pitch radii) on the same plane with a fresh axle;
// a Coaxial gear shares the predecessor's axle and x and moves one plane up.
// Throws std::invalid_argument for step counts outside 2..6 or gear ids
// outside 1..6; callers are expected to clamp genomes before invoking.
Mechanism place_sequence(std::span<const PlacementStep> steps,
                         const GeometryConfig& geo);

// Enumerates all geometric breaches of an already-placed mechanism:
//   OutOfBounds - disc extent below 0 or beyond box_length_mm,
//   DiscOverlap - same-plane non-adjacent discs closer than the radius sum,
//   AxleClash   - a gear closer to a foreign through-axle than its radius
//                 plus the axle radius (own axle and direct meshing
//                 partners' axles excluded).
// Total function; violation_mm is the sum of depths and is 0 iff feasible.
FeasibilityReport check_feasibility(const Mechanism& mech,
                                    const GeometryConfig& geo);

// Output-axle speed per unit input-axle speed: the product of
// r_prev / r_curr over Linear meshes (Coaxial transfers 1:1).
double speed_ratio(const Mechanism& mech);

// Number of Linear meshes in the chain.
int linear_mesh_count(const Mechanism& mech);

// True if any gear is coaxially placed.
bool has_coaxial(const Mechanism& mech);

}  // namespace gearevo
