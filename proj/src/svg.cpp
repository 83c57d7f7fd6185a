#include "gearevo/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <vector>

namespace gearevo {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// One stroke color per plane, cycled for deeper stacks.
constexpr const char* kPlaneColors[] = {"#1f77b4", "#d62728", "#2ca02c",
                                        "#9467bd", "#ff7f0e", "#8c564b"};
constexpr int kPlaneColorCount = 6;
constexpr const char* kBreachColor = "#cc0000";

// Fixed decimal formatting keeps the byte stream independent of locale and
// float printing quirks.
std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  // Avoid the "-0.00" artifact so equal geometry renders equal bytes.
  if (std::strcmp(buf, "-0.00") == 0) return "0.00";
  return buf;
}

const char* plane_color(int plane) {
  return kPlaneColors[((plane % kPlaneColorCount) + kPlaneColorCount) %
                      kPlaneColorCount];
}

void append(std::string& out, const std::string& s) { out += s; }

// Lens between two overlapping same-plane discs, approximated by points
// sampled along both circular arcs.
std::string lens_path(const PlacedGear& a, const PlacedGear& b) {
  const PlacedGear& left = a.center_x_mm <= b.center_x_mm ? a : b;
  const PlacedGear& right = a.center_x_mm <= b.center_x_mm ? b : a;
  const double d = right.center_x_mm - left.center_x_mm;
  const double r1 = left.radius_mm;
  const double r2 = right.radius_mm;
  if (d >= r1 + r2 || d <= 0.0) return "";
  const double ax = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
  const double h2 = r1 * r1 - ax * ax;
  if (h2 <= 0.0) return "";
  const double h = std::sqrt(h2);
  const double cross_x = left.center_x_mm + ax;

  constexpr int kSamples = 16;
  std::string path = "M ";
  // Right-bulging arc of the left circle, bottom crossing to top crossing.
  const double a1 = std::atan2(-h, ax);
  const double a2 = std::atan2(h, ax);
  for (int i = 0; i <= kSamples; ++i) {
    const double t = a1 + (a2 - a1) * i / kSamples;
    const double x = left.center_x_mm + r1 * std::cos(t);
    const double y = r1 * std::sin(t);
    if (i > 0) path += " L ";
    path += num(x) + " " + num(y);
  }
  // Left-bulging arc of the right circle, top crossing back to bottom.
  const double bx = cross_x - right.center_x_mm;
  double b1 = std::atan2(h, bx);
  double b2 = std::atan2(-h, bx);
  if (b1 < 0.0) b1 += 2.0 * kPi;  // pass through pi (the leftmost point)
  if (b2 < b1) b2 += 2.0 * kPi;
  for (int i = 1; i <= kSamples; ++i) {
    const double t = b1 + (b2 - b1) * i / kSamples;
    const double x = right.center_x_mm + r2 * std::cos(t);
    const double y = r2 * std::sin(t);
    path += " L " + num(x) + " " + num(y);
  }
  path += " Z";
  return path;
}

}  // namespace

std::string render_mechanism_svg(const Mechanism& mech,
                                 const GeometryConfig& geo) {
  const auto& gears = mech.gears;
  double max_r = 0.0;
  double min_x = 0.0;
  double max_x = geo.box_length_mm;
  for (const auto& g : gears) {
    max_r = std::max(max_r, g.radius_mm);
    min_x = std::min(min_x, g.center_x_mm - g.radius_mm);
    max_x = std::max(max_x, g.center_x_mm + g.radius_mm);
  }

  const double frame_h = max_r + 8.0;  // design-box half-height, display only
  const double margin = 6.0;
  const double view_x = min_x - margin;
  const double view_y = -(frame_h + margin);
  const double view_w = (max_x + margin) - view_x;
  const double view_h = 2.0 * (frame_h + margin);
  const double scale = 3.0;  // px per mm

  std::string svg;
  append(svg, "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                  num(view_w * scale) + "\" height=\"" + num(view_h * scale) +
                  "\" viewBox=\"" + num(view_x) + " " + num(view_y) + " " +
                  num(view_w) + " " + num(view_h) + "\">\n");
  append(svg,
         "  <defs>\n"
         "    <pattern id=\"breach-hatch\" width=\"4\" height=\"4\" "
         "patternUnits=\"userSpaceOnUse\" patternTransform=\"rotate(45)\">\n"
         "      <rect width=\"4\" height=\"4\" fill=\"none\"/>\n"
         "      <line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"4\" stroke=\"" +
             std::string(kBreachColor) + "\" stroke-width=\"1.2\"/>\n"
             "    </pattern>\n"
             "  </defs>\n");

  // Design box.
  append(svg, "  <rect x=\"0\" y=\"" + num(-frame_h) + "\" width=\"" +
                  num(geo.box_length_mm) + "\" height=\"" + num(2.0 * frame_h) +
                  "\" fill=\"none\" stroke=\"#999999\" stroke-width=\"0.6\"/>\n");

  // Gear discs, placement order.
  for (const auto& g : gears) {
    append(svg, "  <circle cx=\"" + num(g.center_x_mm) +
                    "\" cy=\"0\" r=\"" + num(g.radius_mm) + "\" fill=\"" +
                    plane_color(g.plane) + "\" fill-opacity=\"0.18\" stroke=\"" +
                    plane_color(g.plane) + "\" stroke-width=\"1\"/>\n");
  }

  // Axles: one dot per distinct axle, at its first gear's x.
  std::vector<int> seen_axles;
  for (const auto& g : gears) {
    if (std::find(seen_axles.begin(), seen_axles.end(), g.axle_id) !=
        seen_axles.end()) {
      continue;
    }
    seen_axles.push_back(g.axle_id);
    append(svg, "  <circle cx=\"" + num(g.center_x_mm) + "\" cy=\"0\" r=\"" +
                    num(geo.axle_radius_mm) +
                    "\" fill=\"#333333\" stroke=\"none\"/>\n");
  }

  // Gear-id labels just above each disc; deeper planes step outward so
  // stacked coaxial labels stay apart.
  for (const auto& g : gears) {
    const double label_y = -(g.radius_mm + 2.0 + 3.0 * g.plane);
    append(svg, "  <text x=\"" + num(g.center_x_mm) + "\" y=\"" + num(label_y) +
                    "\" font-family=\"sans-serif\" font-size=\"6\" "
                    "text-anchor=\"middle\" fill=\"" +
                    plane_color(g.plane) + "\">" + std::to_string(g.gear_id) +
                    "</text>\n");
  }

  // Breach overlays, report order.
  for (const auto& b : mech.feasibility.breaches) {
    const PlacedGear& g = gears[static_cast<std::size_t>(b.gear)];
    switch (b.kind) {
      case BreachKind::OutOfBounds: {
        const double left = g.center_x_mm - g.radius_mm;
        const double right = g.center_x_mm + g.radius_mm;
        if (left < 0.0) {
          append(svg, "  <rect x=\"" + num(left) + "\" y=\"" + num(-g.radius_mm) +
                          "\" width=\"" + num(-left) + "\" height=\"" +
                          num(2.0 * g.radius_mm) +
                          "\" fill=\"url(#breach-hatch)\" stroke=\"" +
                          kBreachColor + "\" stroke-width=\"0.5\"/>\n");
        }
        if (right > geo.box_length_mm) {
          append(svg, "  <rect x=\"" + num(geo.box_length_mm) + "\" y=\"" +
                          num(-g.radius_mm) + "\" width=\"" +
                          num(right - geo.box_length_mm) + "\" height=\"" +
                          num(2.0 * g.radius_mm) +
                          "\" fill=\"url(#breach-hatch)\" stroke=\"" +
                          kBreachColor + "\" stroke-width=\"0.5\"/>\n");
        }
        break;
      }
      case BreachKind::DiscOverlap: {
        const PlacedGear& other = gears[static_cast<std::size_t>(b.other)];
        const std::string path = lens_path(g, other);
        if (!path.empty()) {
          append(svg, "  <path d=\"" + path + "\" fill=\"" + kBreachColor +
                          "\" fill-opacity=\"0.45\" stroke=\"" + kBreachColor +
                          "\" stroke-width=\"0.6\"/>\n");
        }
        break;
      }
      case BreachKind::AxleClash: {
        // The foreign rod runs through every plane; ring the gear that
        // sweeps into it.
        double axle_x = 0.0;
        for (const auto& o : gears) {
          if (o.axle_id == b.other) {
            axle_x = o.center_x_mm;
            break;
          }
        }
        append(svg, "  <line x1=\"" + num(axle_x) + "\" y1=\"" + num(-frame_h) +
                        "\" x2=\"" + num(axle_x) + "\" y2=\"" + num(frame_h) +
                        "\" stroke=\"" + kBreachColor +
                        "\" stroke-width=\"1\" stroke-dasharray=\"3 2\"/>\n");
        append(svg, "  <circle cx=\"" + num(g.center_x_mm) +
                        "\" cy=\"0\" r=\"" + num(g.radius_mm) + "\" fill=\"none\" "
                        "stroke=\"" +
                        kBreachColor +
                        "\" stroke-width=\"1.2\" stroke-dasharray=\"4 2\"/>\n");
        break;
      }
    }
  }

  append(svg, "</svg>\n");
  return svg;
}

}  // namespace gearevo
