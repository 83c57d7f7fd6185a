#pragma once

#include <string>

#include "gearevo/geometry.hpp"

namespace gearevo {

// Renders a placed mechanism as a standalone SVG document. Gears are circles
// on a shared horizontal axis (coaxial gears come out concentric), stroked
// in a color keyed by plane, labeled with their gear id, with axles as small
// filled dots and the design box outlined. Breaches are overlaid in red:
// hatched slivers where a disc leaves the box, a lens where two discs
// overlap, and a dashed rod plus ring where a gear sweeps a foreign axle.
// Output is deterministic: same mechanism, same bytes.
std::string render_mechanism_svg(const Mechanism& mech,
                                 const GeometryConfig& geo);

}  // namespace gearevo
