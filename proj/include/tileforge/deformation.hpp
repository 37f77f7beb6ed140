#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "tileforge/error.hpp"
#include "tileforge/geometry.hpp"
#include "tileforge/matching.hpp"
#include "tileforge/schroeder.hpp"

namespace tileforge {

struct GridCell {
  int x = 0;
  int y = 0;

  friend auto operator<=>(const GridCell&, const GridCell&) = default;
};

/// The region sheared onto the square grid. Cell t of the dissection sits at
/// cells[t]. A barrier at (X, Y) is the unit segment from (X, Y) to (X+1, Y);
/// it forbids the vertical domino on cells (X, Y-1) and (X, Y). Sources and
/// sinks are midpoints (X, Y + 1/2) of vertical unit edges, stored as (X, Y).
struct DeformedRegion {
  std::vector<GridCell> cells;
  std::vector<Color> colors;
  std::vector<GridCell> barriers;
  std::vector<GridCell> sources;  // west boundary, bottom to top
  std::vector<GridCell> sinks;    // east boundary, bottom to top
  std::map<GridCell, int> index;

  int width() const noexcept { return static_cast<int>(sources.size()); }

  /// Cell index at grid position, or -1 outside the region.
  int at(int x, int y) const {
    auto it = index.find({x, y});
    return it == index.end() ? -1 : it->second;
  }

  /// Cell color, extended as a checkerboard outside the region.
  Color color_at(int x, int y) const {
    if (int t = at(x, y); t >= 0) return colors[static_cast<std::size_t>(t)];
    const auto& c0 = cells.front();
    const bool same = ((x - c0.x + y - c0.y) & 1) == 0;
    return same ? colors.front() : detail::flip(colors.front());
  }

  /// True when a barrier separates (x, y - 1) from (x, y).
  bool barred(int x, int y) const { return std::binary_search(barriers.begin(), barriers.end(), GridCell{x, y}); }

  /// Path-plane coordinates: the lowest sink maps to (1, 0).
  Point to_path_plane(GridCell g) const { return {g.x - sinks.front().x + 1, g.y - sinks.front().y}; }
  GridCell from_path_plane(Point p) const { return {p.x + sinks.front().x - 1, p.y + sinks.front().y}; }

  /// Barrier offsets read off the grid: a barrier at (X, Y) lies on the
  /// path-plane line y = x + a + 1 with a its offset.
  BarrierSet barrier_offsets() const {
    std::set<int> offs;
    for (auto b : barriers) {
      const Point p = to_path_plane(b);
      offs.insert(p.y - p.x - 1);
    }
    return BarrierSet(std::vector<int>(offs.begin(), offs.end()));
  }
};

/// Shears row r right by the number of drawn-in diagonals above it; the down
/// triangle of a cut square moves one further. Verifies that the grid
/// adjacency minus barrier-crossed vertical edges is exactly the dual graph.
inline DeformedRegion deform(const Dissection& g) {
  DeformedRegion dr;
  for (std::size_t t = 0; t < g.cells.size(); ++t) {
    const auto& c = g.cells[t];
    const int shift = static_cast<int>(std::lower_bound(g.drawn_rows.begin(), g.drawn_rows.end(), c.row) -
                                       g.drawn_rows.begin());
    const GridCell at{c.sq_x + shift + (c.kind == CellKind::down_triangle ? 1 : 0), c.sq_y};
    if (!dr.index.emplace(at, static_cast<int>(t)).second)
      throw geometry_error(geometry_failure::deformation, "two cells sheared onto one grid square");
    dr.cells.push_back(at);
    dr.colors.push_back(c.color);
    if (c.kind == CellKind::up_triangle) dr.barriers.push_back(at);
  }
  std::sort(dr.barriers.begin(), dr.barriers.end());

  std::vector<Edge> grid_edges;
  for (std::size_t t = 0; t < dr.cells.size(); ++t) {
    const auto [x, y] = dr.cells[t];
    if (int u = dr.at(x + 1, y); u >= 0) grid_edges.emplace_back(static_cast<int>(t), u);
    if (int u = dr.at(x, y + 1); u >= 0 && !dr.barred(x, y + 1)) grid_edges.emplace_back(static_cast<int>(t), u);
  }
  if (Graph(static_cast<int>(dr.cells.size()), std::move(grid_edges)).edges != g.adjacency)
    throw geometry_error(geometry_failure::deformation, "sheared region does not reproduce the dual graph");

  for (std::size_t t = 0; t < dr.cells.size(); ++t) {
    const auto [x, y] = dr.cells[t];
    if (dr.colors[t] == Color::black && dr.at(x - 1, y) < 0) dr.sources.push_back({x, y});
    if (dr.colors[t] == Color::white && dr.at(x + 1, y) < 0) dr.sinks.push_back({x + 1, y});
  }
  auto by_height = [](GridCell a, GridCell b) { return std::pair(a.y, a.x) < std::pair(b.y, b.x); };
  std::sort(dr.sources.begin(), dr.sources.end(), by_height);
  std::sort(dr.sinks.begin(), dr.sinks.end(), by_height);
  if (dr.width() != g.width || static_cast<int>(dr.sinks.size()) != g.width)
    throw geometry_error(geometry_failure::deformation,
                         "expected " + std::to_string(g.width) + " path sources and sinks, found " +
                             std::to_string(dr.sources.size()) + " and " + std::to_string(dr.sinks.size()));
  return dr;
}

/// Grid adjacency without barrier-crossed vertical edges, built from grid
/// positions only.
inline Graph deformed_graph(const DeformedRegion& dr) {
  std::vector<Edge> edges;
  for (std::size_t t = 0; t < dr.cells.size(); ++t) {
    const auto [x, y] = dr.cells[t];
    if (int u = dr.at(x + 1, y); u >= 0) edges.emplace_back(static_cast<int>(t), u);
    if (int u = dr.at(x, y + 1); u >= 0 && !dr.barred(x, y + 1)) edges.emplace_back(static_cast<int>(t), u);
  }
  return Graph(static_cast<int>(dr.cells.size()), std::move(edges));
}

/// Tilings with no barrier-crossed vertical domino.
inline BigCount compatible_tiling_count(const DeformedRegion& dr) {
  return count_perfect_matchings(deformed_graph(dr));
}

/// A domino covers `first` and the cell to its right or above it.
struct Domino {
  GridCell first;
  GridCell second;

  bool vertical() const noexcept { return first.x == second.x; }

  friend auto operator<=>(const Domino&, const Domino&) = default;
};

struct DominoTiling {
  std::vector<Domino> dominoes;  // sorted

  friend bool operator==(const DominoTiling&, const DominoTiling&) = default;
};

inline DominoTiling tiling_from_matching(const DeformedRegion& dr, const Matching& m) {
  DominoTiling t;
  for (auto [u, v] : m.edges) {
    auto a = dr.cells.at(static_cast<std::size_t>(u));
    auto b = dr.cells.at(static_cast<std::size_t>(v));
    if (b < a) std::swap(a, b);
    t.dominoes.push_back({a, b});
  }
  std::sort(t.dominoes.begin(), t.dominoes.end());
  return t;
}

inline Matching matching_from_tiling(const DeformedRegion& dr, const DominoTiling& t) {
  Matching m;
  for (const auto& d : t.dominoes) {
    int u = dr.at(d.first.x, d.first.y);
    int v = dr.at(d.second.x, d.second.y);
    if (u < 0 || v < 0) throw precondition_error("domino leaves the region");
    if (u > v) std::swap(u, v);
    m.edges.emplace_back(u, v);
  }
  std::sort(m.edges.begin(), m.edges.end());
  return m;
}

inline bool is_compatible_tiling(const DeformedRegion& dr, const DominoTiling& t) {
  std::vector<int> covered(dr.cells.size(), 0);
  for (const auto& d : t.dominoes) {
    const int u = dr.at(d.first.x, d.first.y);
    const int v = dr.at(d.second.x, d.second.y);
    if (u < 0 || v < 0) return false;
    const bool horizontal = d.second.x == d.first.x + 1 && d.second.y == d.first.y;
    const bool vertical = d.second.x == d.first.x && d.second.y == d.first.y + 1;
    if (!horizontal && !vertical) return false;
    if (vertical && dr.barred(d.second.x, d.second.y)) return false;
    if (++covered[static_cast<std::size_t>(u)] > 1 || ++covered[static_cast<std::size_t>(v)] > 1) return false;
  }
  return std::all_of(covered.begin(), covered.end(), [](int c) { return c == 1; });
}

/// Every compatible tiling, in matching enumeration order, at most `cap`.
inline std::vector<DominoTiling> enumerate_compatible_tilings(const DeformedRegion& dr, std::size_t cap,
                                                              bool* truncated = nullptr) {
  const auto list = enumerate_perfect_matchings(deformed_graph(dr), cap);
  if (truncated) *truncated = list.truncated;
  std::vector<DominoTiling> out;
  out.reserve(list.matchings.size());
  for (const auto& m : list.matchings) out.push_back(tiling_from_matching(dr, m));
  return out;
}

/// Reads the w paths off a compatible tiling. A horizontal domino with a
/// black left cell carries a flat step; a vertical domino carries an up step
/// when its lower cell is black and a down step otherwise. Paths are in the
/// path plane, tau_i running from source i to sink i.
inline PathTuple tiling_to_paths(const DeformedRegion& dr, const DominoTiling& t) {
  if (!is_compatible_tiling(dr, t)) throw precondition_error("tiling is not a compatible tiling of the region");
  std::map<GridCell, std::pair<char, GridCell>> segment;
  for (const auto& d : t.dominoes) {
    const auto [x, y] = d.first;
    const bool black = dr.color_at(x, y) == Color::black;
    if (!d.vertical()) {
      if (black) segment[{x, y}] = {'F', {x + 2, y}};
    } else if (black) {
      segment[{x, y}] = {'U', {x + 1, y + 1}};
    } else {
      segment[{x, y + 1}] = {'D', {x + 1, y}};
    }
  }
  PathTuple out;
  std::size_t used = 0;
  for (std::size_t i = 0; i < dr.sources.size(); ++i) {
    SchroederPath tau{dr.to_path_plane(dr.sources[i]), ""};
    GridCell p = dr.sources[i];
    for (auto it = segment.find(p); it != segment.end(); it = segment.find(p)) {
      tau.steps += it->second.first;
      p = it->second.second;
      ++used;
    }
    if (p != dr.sinks[i])
      throw precondition_error("path " + std::to_string(i + 1) + " does not end at its sink");
    out.push_back(std::move(tau));
  }
  if (used != segment.size()) throw precondition_error("tiling carries path segments off the source paths");
  return out;
}

/// Inverse of tiling_to_paths: lay dominoes under the paths and fill the
/// rest with horizontal dominoes whose left cell is white.
inline DominoTiling paths_to_tiling(const DeformedRegion& dr, const PathTuple& taus) {
  if (taus.size() != dr.sources.size())
    throw precondition_error("expected " + std::to_string(dr.sources.size()) + " paths, got " +
                             std::to_string(taus.size()));
  std::set<GridCell> covered;
  DominoTiling t;
  auto place = [&](GridCell a, GridCell b) {
    if (dr.at(a.x, a.y) < 0 || dr.at(b.x, b.y) < 0) throw precondition_error("path leaves the region");
    if (!covered.insert(a).second || !covered.insert(b).second)
      throw precondition_error("paths overlap on a cell");
    t.dominoes.push_back({a, b});
  };
  for (std::size_t i = 0; i < taus.size(); ++i) {
    GridCell p = dr.from_path_plane(taus[i].start);
    if (p != dr.sources[i]) throw precondition_error("path " + std::to_string(i + 1) + " starts off its source");
    for (char c : taus[i].steps) {
      switch (to_step(c)) {
        case Step::flat:
          if (dr.color_at(p.x, p.y) != Color::black) throw precondition_error("flat step on a white cell");
          place(p, {p.x + 1, p.y});
          p = {p.x + 2, p.y};
          break;
        case Step::up:
          if (dr.barred(p.x, p.y + 1)) throw precondition_error("up step crosses a barrier");
          place(p, {p.x, p.y + 1});
          p = {p.x + 1, p.y + 1};
          break;
        case Step::down:
          if (dr.barred(p.x, p.y)) throw precondition_error("down step crosses a barrier");
          place({p.x, p.y - 1}, p);
          p = {p.x + 1, p.y - 1};
          break;
      }
    }
    if (p != dr.sinks[i]) throw precondition_error("path " + std::to_string(i + 1) + " ends off its sink");
  }
  for (const auto& [cell, idx] : dr.index) {
    (void)idx;
    if (covered.count(cell)) continue;
    const GridCell right{cell.x + 1, cell.y};
    if (dr.color_at(cell.x, cell.y) != Color::white || dr.at(right.x, right.y) < 0 || covered.count(right))
      throw precondition_error("cells left by the paths are not tileable by horizontal dominoes");
    place(cell, right);
  }
  std::sort(t.dominoes.begin(), t.dominoes.end());
  return t;
}

/// pi_i = U^(i-1) tau_i D^(i-1), re-anchored at (x_i, 0).
inline PathTuple shift_paths(const PathTuple& taus, const BarrierSet& bar) {
  const auto ends = endpoints(static_cast<int>(taus.size()), bar);
  PathTuple out;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    const int lift = static_cast<int>(i);
    SchroederPath pi{{taus[i].start.x - lift, taus[i].start.y - lift},
                     std::string(i, 'U') + taus[i].steps + std::string(i, 'D')};
    if (pi.start != Point{ends.sources[i], 0} || pi.end() != Point{ends.sinks[i], 0})
      throw precondition_error("shifted path " + std::to_string(i + 1) + " misses its endpoints");
    out.push_back(std::move(pi));
  }
  return out;
}

/// Inverse of shift_paths.
inline PathTuple unshift_paths(const PathTuple& pis) {
  PathTuple out;
  for (std::size_t i = 0; i < pis.size(); ++i) {
    const auto& s = pis[i].steps;
    const std::string ups(i, 'U'), downs(i, 'D');
    if (s.size() < 2 * i || s.compare(0, i, ups) != 0 || s.compare(s.size() - i, i, downs) != 0)
      throw precondition_error("path " + std::to_string(i + 1) + " lacks its added rise and fall");
    const int lift = static_cast<int>(i);
    out.push_back({{pis[i].start.x + lift, pis[i].start.y + lift}, s.substr(i, s.size() - 2 * i)});
  }
  return out;
}

}  // namespace tileforge
