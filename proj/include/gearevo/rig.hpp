#pragma once

#include "gearevo/geometry.hpp"
#include "gearevo/novelty.hpp"

namespace gearevo {

// Deterministic stand-in for the physical pull-car rig. A twisted band
// drives the input axle; the gear train trades torque for spool speed, so
// distance rises with the speed ratio until the output torque can no longer
// hold the band's tension and the car stalls. Defaults are calibrated so
// that over the stock catalog moderate ratios travel farthest and extreme
// ratios stall; see README for the sweep.
struct RigModel {
  double track_length_in = 35.0;
  double input_turns = 1.0;
  double band_torque = 16.0;
  double spool_radius_mm = 10.0;
  double required_tension = 0.18;
  double friction_loss_per_mesh = 0.08;

  void validate() const;  // throws ConfigError

  bool operator==(const RigModel&) const = default;
};

// Predicted travel distance in inches, in [0, track_length_in].
// Output torque is band_torque scaled down once per mesh by friction and by
// the speed ratio; below required_tension * spool_radius the car stalls to
// zero, otherwise the spool pays out input_turns * ratio revolutions of
// line, clamped to the track. Throws std::invalid_argument for infeasible
// mechanisms (the rig could not be assembled).
double distance_score(const Mechanism& mech, const RigModel& rig);

// Copy of the archive with distance annotations: feasible entries receive a
// surrogate score, infeasible entries are left unscored. Only the distance
// field changes; genomes, mechanisms, and fitness are untouched.
Archive attach_scores(const Archive& archive, const RigModel& rig);

}  // namespace gearevo
