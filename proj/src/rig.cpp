#include "gearevo/rig.hpp"

#include <cmath>
#include <stdexcept>

#include "gearevo/errors.hpp"

namespace gearevo {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kMmPerInch = 25.4;
}  // namespace

void RigModel::validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(track_length_in)) throw ConfigError("track_length_in must be positive");
  if (!positive(input_turns)) throw ConfigError("input_turns must be positive");
  if (!positive(band_torque)) throw ConfigError("band_torque must be positive");
  if (!positive(spool_radius_mm)) throw ConfigError("spool_radius_mm must be positive");
  if (!positive(required_tension)) throw ConfigError("required_tension must be positive");
  if (!std::isfinite(friction_loss_per_mesh) || friction_loss_per_mesh < 0.0 ||
      friction_loss_per_mesh >= 1.0) {
    throw ConfigError("friction_loss_per_mesh must be in [0, 1)");
  }
}

double distance_score(const Mechanism& mech, const RigModel& rig) {
  if (!mech.feasibility.feasible) {
    throw std::invalid_argument("cannot score an infeasible mechanism");
  }
  const double ratio = speed_ratio(mech);
  const int meshes = linear_mesh_count(mech);
  const double torque_out =
      rig.band_torque * std::pow(1.0 - rig.friction_loss_per_mesh, meshes) / ratio;
  if (torque_out < rig.required_tension * rig.spool_radius_mm) return 0.0;
  const double travel_in =
      rig.input_turns * ratio * 2.0 * kPi * rig.spool_radius_mm / kMmPerInch;
  return std::min(rig.track_length_in, travel_in);
}

Archive attach_scores(const Archive& archive, const RigModel& rig) {
  Archive out;
  for (const auto& entry : archive.entries()) {
    ArchiveEntry scored = entry;
    scored.distance_in = entry.mechanism.feasibility.feasible
                             ? std::optional<double>(distance_score(entry.mechanism, rig))
                             : std::nullopt;
    out.append(std::move(scored));
  }
  return out;
}

}  // namespace gearevo
