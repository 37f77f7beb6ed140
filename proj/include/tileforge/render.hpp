#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tileforge/deformation.hpp"
#include "tileforge/error.hpp"
#include "tileforge/geometry.hpp"
#include "tileforge/matching.hpp"

namespace tileforge {

enum class RenderFormat { ascii, svg };

inline RenderFormat parse_render_format(std::string_view s) {
  if (s == "ascii") return RenderFormat::ascii;
  if (s == "svg") return RenderFormat::svg;
  throw parse_error("unknown render format '" + std::string(s) + "' (expected svg or ascii)");
}

namespace detail {

constexpr int svg_scale = 20;

inline char cell_glyph(const Cell& c) {
  const bool b = c.color == Color::black;
  switch (c.kind) {
    case CellKind::square: return b ? '#' : '.';
    case CellKind::up_triangle: return b ? 'A' : 'a';
    case CellKind::down_triangle: return b ? 'V' : 'v';
  }
  return '?';
}

inline const char* fill_of(Color c) { return c == Color::black ? "#222222" : "#ffffff"; }

struct Box {
  int x0 = 0, y0 = 0, x1 = 0, y1 = 0;  // inclusive lower, exclusive upper
};

inline std::string svg_open(const Box& b) {
  const int w = (b.x1 - b.x0 + 2) * svg_scale;
  const int h = (b.y1 - b.y0 + 2) * svg_scale;
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << w << "\" height=\"" << h
     << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";
  return os.str();
}

// Lattice point to SVG pixel, y pointing down, one unit of margin.
inline std::pair<int, int> px(const Box& b, int x, int y) {
  return {(x - b.x0 + 1) * svg_scale, (b.y1 - y + 1) * svg_scale};
}

inline std::string svg_point(const Box& b, int x, int y) {
  auto [sx, sy] = px(b, x, y);
  return std::to_string(sx) + "," + std::to_string(sy);
}

// Point given in quarter units, so cell centers stay integral.
inline std::string svg_quarter(const Box& b, int x4, int y4) {
  const int sx = (x4 - 4 * b.x0 + 4) * svg_scale / 4;
  const int sy = (4 * b.y1 - y4 + 4) * svg_scale / 4;
  return std::to_string(sx) + "," + std::to_string(sy);
}

}  // namespace detail

/// ASCII: two characters per unit square; '#'/'.' black/white squares, a cut
/// square shows its up triangle (A/a) then its down triangle (V/v). A tiling,
/// when given, is listed below the picture as cell pairs.
inline std::string render(const Dissection& g, const std::optional<Matching>& tiling, RenderFormat format) {
  if (tiling && !is_perfect_matching(dual_graph(g), *tiling))
    throw precondition_error("tiling is not a perfect matching of the region");
  detail::Box box{g.cells.front().sq_x, g.cells.front().sq_y, g.cells.front().sq_x + 1, g.cells.front().sq_y + 1};
  for (const auto& c : g.cells) {
    box.x0 = std::min(box.x0, c.sq_x);
    box.y0 = std::min(box.y0, c.sq_y);
    box.x1 = std::max(box.x1, c.sq_x + 1);
    box.y1 = std::max(box.y1, c.sq_y + 1);
  }
  std::ostringstream os;
  if (format == RenderFormat::ascii) {
    const int cols = box.x1 - box.x0;
    std::vector<std::string> lines(static_cast<std::size_t>(box.y1 - box.y0), std::string(2 * cols, ' '));
    for (const auto& c : g.cells) {
      auto& line = lines[static_cast<std::size_t>(box.y1 - 1 - c.sq_y)];
      const auto col = static_cast<std::size_t>(2 * (c.sq_x - box.x0));
      const char glyph = detail::cell_glyph(c);
      if (c.kind == CellKind::square) {
        line[col] = line[col + 1] = glyph;
      } else {
        line[c.kind == CellKind::up_triangle ? col : col + 1] = glyph;
      }
    }
    os << to_string(g.spec) << '\n';
    for (auto& l : lines) {
      while (!l.empty() && l.back() == ' ') l.pop_back();
      os << l << '\n';
    }
    if (tiling)
      for (auto [u, v] : tiling->edges) os << "tile " << u << ' ' << v << '\n';
    return os.str();
  }

  os << detail::svg_open(box);
  os << "<title>" << to_string(g.spec) << "</title>\n";
  for (const auto& c : g.cells) {
    const int x = c.sq_x, y = c.sq_y;
    std::string pts;
    switch (c.kind) {
      case CellKind::square:
        pts = detail::svg_point(box, x, y) + ' ' + detail::svg_point(box, x + 1, y) + ' ' +
              detail::svg_point(box, x + 1, y + 1) + ' ' + detail::svg_point(box, x, y + 1);
        break;
      case CellKind::up_triangle:
        pts = detail::svg_point(box, x, y) + ' ' + detail::svg_point(box, x + 1, y + 1) + ' ' +
              detail::svg_point(box, x, y + 1);
        break;
      case CellKind::down_triangle:
        pts = detail::svg_point(box, x, y) + ' ' + detail::svg_point(box, x + 1, y) + ' ' +
              detail::svg_point(box, x + 1, y + 1);
        break;
    }
    os << "<polygon points=\"" << pts << "\" fill=\"" << detail::fill_of(c.color)
       << "\" stroke=\"#999999\" stroke-width=\"1\"/>\n";
  }
  for (const auto& c : g.cells)
    if (c.kind == CellKind::up_triangle)
      os << "<line class=\"diagonal\" x1=\"" << detail::px(box, c.sq_x, c.sq_y).first << "\" y1=\""
         << detail::px(box, c.sq_x, c.sq_y).second << "\" x2=\"" << detail::px(box, c.sq_x + 1, c.sq_y + 1).first
         << "\" y2=\"" << detail::px(box, c.sq_x + 1, c.sq_y + 1).second
         << "\" stroke=\"#cc0000\" stroke-width=\"2\"/>\n";
  std::string outline;
  for (auto p : g.boundary()) outline += (outline.empty() ? "" : " ") + detail::svg_point(box, p.x, p.y);
  os << "<polygon class=\"boundary\" points=\"" << outline
     << "\" fill=\"none\" stroke=\"#0044aa\" stroke-width=\"2\"/>\n";
  if (tiling) {
    auto center4 = [&](int t) -> std::pair<int, int> {
      const auto& c = g.cells[static_cast<std::size_t>(t)];
      switch (c.kind) {
        case CellKind::up_triangle: return {4 * c.sq_x + 1, 4 * c.sq_y + 3};
        case CellKind::down_triangle: return {4 * c.sq_x + 3, 4 * c.sq_y + 1};
        default: return {4 * c.sq_x + 2, 4 * c.sq_y + 2};
      }
    };
    for (auto [u, v] : tiling->edges) {
      auto a = center4(u), b = center4(v);
      os << "<polyline class=\"tile\" points=\"" << detail::svg_quarter(box, a.first, a.second) << ' '
         << detail::svg_quarter(box, b.first, b.second) << "\" stroke=\"#00aa44\" stroke-width=\"4\"/>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

/// The sheared grid region: '#'/'.' cells, each barrier drawn as "--" just
/// below the cell whose bottom edge it occupies, sources '>' and sinks '<'.
inline std::string render(const DeformedRegion& dr, const std::optional<DominoTiling>& tiling, RenderFormat format) {
  if (tiling && !is_compatible_tiling(dr, *tiling)) throw precondition_error("tiling is not compatible");
  detail::Box box{dr.cells.front().x, dr.cells.front().y, dr.cells.front().x + 1, dr.cells.front().y + 1};
  for (auto c : dr.cells) {
    box.x0 = std::min(box.x0, c.x);
    box.y0 = std::min(box.y0, c.y);
    box.x1 = std::max(box.x1, c.x + 1);
    box.y1 = std::max(box.y1, c.y + 1);
  }
  --box.x0;
  ++box.x1;
  std::ostringstream os;
  if (format == RenderFormat::ascii) {
    const auto cols = static_cast<std::size_t>(2 * (box.x1 - box.x0));
    for (int y = box.y1 - 1; y >= box.y0; --y) {
      std::string line(cols, ' ');
      for (int x = box.x0; x < box.x1; ++x) {
        const auto col = static_cast<std::size_t>(2 * (x - box.x0));
        if (int t = dr.at(x, y); t >= 0) line[col] = line[col + 1] = dr.colors[static_cast<std::size_t>(t)] == Color::black ? '#' : '.';
      }
      for (auto s : dr.sources)
        if (s.y == y) line[static_cast<std::size_t>(2 * (s.x - box.x0) - 1)] = '>';
      for (auto s : dr.sinks)
        if (s.y == y) line[static_cast<std::size_t>(2 * (s.x - box.x0))] = '<';
      while (!line.empty() && line.back() == ' ') line.pop_back();
      os << line << '\n';
      std::string bars(cols, ' ');
      bool any = false;
      for (auto b : dr.barriers)
        if (b.y == y) {
          bars[static_cast<std::size_t>(2 * (b.x - box.x0))] = bars[static_cast<std::size_t>(2 * (b.x - box.x0) + 1)] = '-';
          any = true;
        }
      if (any) {
        while (!bars.empty() && bars.back() == ' ') bars.pop_back();
        os << bars << '\n';
      }
    }
    if (tiling)
      for (const auto& d : tiling->dominoes)
        os << "domino " << d.first.x << ',' << d.first.y << ' ' << d.second.x << ',' << d.second.y << '\n';
    return os.str();
  }

  os << detail::svg_open(box);
  for (std::size_t t = 0; t < dr.cells.size(); ++t) {
    const auto [x, y] = dr.cells[t];
    const auto [sx, sy] = detail::px(box, x, y + 1);
    os << "<rect x=\"" << sx << "\" y=\"" << sy << "\" width=\"" << detail::svg_scale << "\" height=\""
       << detail::svg_scale << "\" fill=\"" << detail::fill_of(dr.colors[t]) << "\" stroke=\"#999999\"/>\n";
  }
  for (auto b : dr.barriers) {
    const auto [x1, y1] = detail::px(box, b.x, b.y);
    const auto [x2, y2] = detail::px(box, b.x + 1, b.y);
    os << "<line class=\"barrier\" x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\"" << y2
       << "\" stroke=\"#cc0000\" stroke-width=\"4\"/>\n";
  }
  for (const auto* ends : {&dr.sources, &dr.sinks})
    for (auto p : *ends)
      os << "<circle cx=\"" << detail::px(box, p.x, p.y).first << "\" cy=\""
         << detail::px(box, p.x, p.y).second - detail::svg_scale / 2 << "\" r=\"3\" fill=\"#0044aa\"/>\n";
  if (tiling)
    for (const auto& d : tiling->dominoes)
      os << "<polyline class=\"tile\" points=\"" << detail::svg_quarter(box, 4 * d.first.x + 2, 4 * d.first.y + 2)
         << ' ' << detail::svg_quarter(box, 4 * d.second.x + 2, 4 * d.second.y + 2)
         << "\" stroke=\"#00aa44\" stroke-width=\"4\"/>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace tileforge
