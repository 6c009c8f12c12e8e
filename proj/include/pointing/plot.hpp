#pragma once

#include <string>

#include "pointing/harness.hpp"

namespace pointing {

enum class PlotKind {
  ScatterPies,   // pies at stimulus positions, x marks the pointing target
  DistancePies,  // pies at (|d1 - d2|, separation) for cluttered pairs
};

std::string_view to_string(PlotKind kind);
PlotKind plot_kind_from_string(std::string_view name);

struct PlotSpec {
  PlotKind kind = PlotKind::ScatterPies;
  int width = 640;
  int height = 480;
  bool legend = true;
};

/// SVG 1.1 document with one `<g class="pie">` per group. Wedge fills:
/// correct grey, incorrect black, ambiguous white, nearer green, farther red.
/// Throws EmptyInput for an empty aggregate, InvalidArgument for bad sizes.
std::string render_svg(const AggregateTable& table, const PlotSpec& spec);

}  // namespace pointing
