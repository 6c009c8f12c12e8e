#include "pointing/plot.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "pointing/error.hpp"

namespace pointing {
namespace {

constexpr double kMargin = 56.0;
constexpr double kPieRadius = 11.0;
constexpr std::array<const char*, kLabelCount> kFill{"#808080", "#000000", "#ffffff", "#2ca02c", "#d62728"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  // Avoid "-0.00".
  return std::string(buf) == "-0.00" ? "0.00" : buf;
}

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Frame {
  double x0, x1, y0, y1;  // data bounds
  double sx, sy;          // pixels per unit
  double ox, oy;          // pixel offsets
  double px(double x) const { return ox + (x - x0) * sx; }
  double py(double y) const { return oy - (y - y0) * sy; }
};

Frame make_frame(double x0, double x1, double y0, double y1, const PlotSpec& spec, bool equal_aspect) {
  auto pad = [](double& lo, double& hi) {
    const double span = hi - lo;
    const double p = span > 0.0 ? 0.08 * span : 0.05;
    lo -= p;
    hi += p;
  };
  pad(x0, x1);
  pad(y0, y1);
  const double w = spec.width - 2.0 * kMargin;
  const double h = spec.height - 2.0 * kMargin;
  double sx = w / (x1 - x0);
  double sy = h / (y1 - y0);
  if (equal_aspect) sx = sy = std::min(sx, sy);
  const double ox = kMargin + 0.5 * (w - (x1 - x0) * sx);
  const double oy = spec.height - kMargin - 0.5 * (h - (y1 - y0) * sy);
  return {x0, x1, y0, y1, sx, sy, ox, oy};
}

void pie(std::ostringstream& out, const AggregateGroup& g, double cx, double cy) {
  out << "<g class=\"pie\" data-key=\"" << escape(g.key) << "\">";
  const double total = static_cast<double>(g.total());
  std::vector<std::size_t> present;
  for (std::size_t l = 0; l < kLabelCount; ++l) {
    if (g.counts[l] > 0) present.push_back(l);
  }
  if (present.size() == 1) {
    out << "<circle cx=\"" << fmt(cx) << "\" cy=\"" << fmt(cy) << "\" r=\"" << fmt(kPieRadius)
        << "\" fill=\"" << kFill[present[0]] << "\" stroke=\"#000000\" stroke-width=\"1\"/>";
  } else {
    // Clockwise from twelve o'clock.
    double start = -0.5 * kPi;
    for (std::size_t l : present) {
      const double sweep = 2.0 * kPi * static_cast<double>(g.counts[l]) / total;
      const double end = start + sweep;
      out << "<path d=\"M" << fmt(cx) << ',' << fmt(cy) << " L" << fmt(cx + kPieRadius * std::cos(start))
          << ',' << fmt(cy + kPieRadius * std::sin(start)) << " A" << fmt(kPieRadius) << ','
          << fmt(kPieRadius) << " 0 " << (sweep > kPi ? 1 : 0) << " 1 "
          << fmt(cx + kPieRadius * std::cos(end)) << ',' << fmt(cy + kPieRadius * std::sin(end))
          << " Z\" fill=\"" << kFill[l] << "\" stroke=\"#000000\" stroke-width=\"1\"/>";
      start = end;
    }
  }
  out << "</g>\n";
}

}  // namespace

std::string_view to_string(PlotKind kind) {
  return kind == PlotKind::ScatterPies ? "scatter-pies" : "distance-pies";
}

PlotKind plot_kind_from_string(std::string_view name) {
  if (name == "scatter-pies") return PlotKind::ScatterPies;
  if (name == "distance-pies") return PlotKind::DistancePies;
  throw Error(ErrorCode::InvalidArgument, "unknown plot kind '" + std::string(name) + "'");
}

std::string render_svg(const AggregateTable& table, const PlotSpec& spec) {
  if (table.groups.empty()) throw Error(ErrorCode::EmptyInput, "nothing to plot");
  if (spec.width <= 2 * kMargin || spec.height <= 2 * kMargin) {
    throw Error(ErrorCode::InvalidArgument, "plot is too small");
  }
  const bool scatter = spec.kind == PlotKind::ScatterPies;
  auto gx = [&](const AggregateGroup& g) { return scatter ? g.position.u : g.delta; };
  auto gy = [&](const AggregateGroup& g) { return scatter ? g.position.v : g.separation; };

  // Pointing targets, deduplicated at millimeter resolution.
  std::vector<SurfacePoint> targets;
  if (scatter) {
    for (const auto& g : table.groups) {
      const bool seen = std::any_of(targets.begin(), targets.end(), [&](const SurfacePoint& t) {
        return surface_distance(t, g.x_star) < 1e-3;
      });
      if (!seen) targets.push_back(g.x_star);
    }
  }

  double x0 = gx(table.groups.front()), x1 = x0;
  double y0 = gy(table.groups.front()), y1 = y0;
  auto extend = [&](double x, double y) {
    x0 = std::min(x0, x);
    x1 = std::max(x1, x);
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  };
  for (const auto& g : table.groups) extend(gx(g), gy(g));
  for (const auto& t : targets) extend(t.u, t.v);
  if (!scatter) {
    x0 = std::min(x0, 0.0);
    y0 = std::min(y0, 0.0);
  }
  const Frame f = make_frame(x0, x1, y0, y1, spec, scatter);

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << spec.width
      << "\" height=\"" << spec.height << "\" viewBox=\"0 0 " << spec.width << ' ' << spec.height << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << spec.width << "\" height=\"" << spec.height
      << "\" fill=\"#f4f4f4\"/>\n";

  const double left = kMargin;
  const double right = spec.width - kMargin;
  const double top = kMargin;
  const double bottom = spec.height - kMargin;
  out << "<rect x=\"" << fmt(left) << "\" y=\"" << fmt(top) << "\" width=\"" << fmt(right - left)
      << "\" height=\"" << fmt(bottom - top) << "\" fill=\"none\" stroke=\"#999999\"/>\n";
  const char* xlabel = scatter ? "u (m)" : "|d1 - d2| (m)";
  const char* ylabel = scatter ? "v (m)" : "separation (m)";
  out << "<text x=\"" << fmt(0.5 * (left + right)) << "\" y=\"" << fmt(spec.height - 16.0)
      << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" << xlabel << "</text>\n"
      << "<text x=\"16\" y=\"" << fmt(0.5 * (top + bottom)) << "\" font-family=\"sans-serif\" font-size=\"12\" "
      << "text-anchor=\"middle\" transform=\"rotate(-90 16 " << fmt(0.5 * (top + bottom)) << ")\">" << ylabel
      << "</text>\n";
  // Axis extent annotations.
  out << "<text x=\"" << fmt(left) << "\" y=\"" << fmt(bottom + 16.0)
      << "\" font-family=\"sans-serif\" font-size=\"10\">" << fmt(f.x0) << "</text>\n"
      << "<text x=\"" << fmt(right) << "\" y=\"" << fmt(bottom + 16.0)
      << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">" << fmt(f.x1) << "</text>\n";

  for (const auto& g : table.groups) pie(out, g, f.px(gx(g)), f.py(gy(g)));

  for (const auto& t : targets) {
    out << "<text class=\"target\" x=\"" << fmt(f.px(t.u)) << "\" y=\"" << fmt(f.py(t.v))
        << "\" font-family=\"sans-serif\" font-size=\"18\" text-anchor=\"middle\" "
        << "dominant-baseline=\"central\" fill=\"#c00000\">×</text>\n";
  }

  if (spec.legend) {
    const std::vector<Label> shown = scatter ? std::vector<Label>{Label::Correct, Label::Incorrect, Label::Ambiguous}
                                             : std::vector<Label>{Label::Nearer, Label::Farther, Label::Ambiguous};
    double y = 14.0;
    double x = left;
    for (Label l : shown) {
      out << "<rect x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" width=\"12\" height=\"12\" fill=\""
          << kFill[static_cast<std::size_t>(l)] << "\" stroke=\"#000000\"/>"
          << "<text x=\"" << fmt(x + 16.0) << "\" y=\"" << fmt(y + 10.0)
          << "\" font-family=\"sans-serif\" font-size=\"11\">" << to_string(l) << "</text>\n";
      x += 96.0;
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace pointing
