#pragma once
// SVG 1.1 export. The viewBox is in rectangle units and the y axis is flipped
// by a transform, so path coordinates are the region vertices themselves.

#include "mvg/diagram.hpp"

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace mvg::app {

struct SvgOptions {
  std::vector<int> colour;  // per site: 0 white, 1 black; empty = all white
  double pixels_per_unit = 400;
  bool show_sites = true;
};

inline std::string svg_number(const Rational& q) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", q.get_d());
  std::string s = buf;
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s == "-0" ? "0" : s;
}

inline std::string svg_path(const std::vector<Polygon<Rational>>& loops) {
  std::ostringstream d;
  for (const auto& loop : loops) {
    for (std::size_t i = 0; i < loop.size(); ++i)
      d << (i ? " L" : "M") << svg_number(loop[i].x) << ' ' << svg_number(loop[i].y);
    d << " Z ";
  }
  std::string s = d.str();
  if (!s.empty()) s.pop_back();
  return s;
}

inline std::string to_svg(const Diagram<Rational>& d, const SvgOptions& opt = {}) {
  const std::string w = svg_number(d.rect.width), h = svg_number(d.rect.height);
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 " << w << ' ' << h << "\" width=\""
      << d.rect.width.get_d() * opt.pixels_per_unit << "\" height=\"" << d.rect.height.get_d() * opt.pixels_per_unit
      << "\">\n"
      << "<defs>\n"
      << "<pattern id=\"hatch\" patternUnits=\"userSpaceOnUse\" width=\"0.02\" height=\"0.02\" "
         "patternTransform=\"rotate(45)\"><line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"0.02\" class=\"hatch-line\"/></pattern>\n"
      << "<style>\n"
      << ".cell{stroke:#333;stroke-width:0.003;fill-rule:evenodd}\n"
      << ".cell.white{fill:#f4f1ea}.cell.black{fill:#5b5f66}\n"
      << ".neutral{fill:url(#hatch);stroke:#b03a2e;stroke-width:0.003;fill-rule:evenodd}\n"
      << ".hatch-line{stroke:#b03a2e;stroke-width:0.006}\n"
      << ".site.white{fill:#fff;stroke:#000;stroke-width:0.004}.site.black{fill:#000}\n"
      << "</style>\n"
      << "</defs>\n"
      << "<g transform=\"matrix(1 0 0 -1 0 " << h << ")\">\n"
      << "<rect class=\"frame\" x=\"0\" y=\"0\" width=\"" << w << "\" height=\"" << h
      << "\" fill=\"none\" stroke=\"#000\" stroke-width=\"0.004\"/>\n";
  for (std::size_t i = 0; i < d.size(); ++i) {
    const bool black = i < opt.colour.size() && opt.colour[i] == 1;
    if (d.cells[i].empty()) continue;
    out << "<path class=\"cell " << (black ? "black" : "white") << "\" data-site=\"" << i << "\" d=\""
        << svg_path(d.cells[i].outline()) << "\"/>\n";
  }
  if (!d.neutral.empty()) out << "<path class=\"neutral\" d=\"" << svg_path(d.neutral.outline()) << "\"/>\n";
  if (opt.show_sites) {
    for (std::size_t i = 0; i < d.size(); ++i) {
      const bool black = i < opt.colour.size() && opt.colour[i] == 1;
      out << "<circle class=\"site " << (black ? "black" : "white") << "\" cx=\"" << svg_number(d.sites[i].x)
          << "\" cy=\"" << svg_number(d.sites[i].y) << "\" r=\"0.012\"/>\n";
    }
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

}  // namespace mvg::app
