#pragma once

#include <algorithm>
#include <compare>
#include <deque>
#include <iterator>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tileforge/error.hpp"
#include "tileforge/matching.hpp"
#include "tileforge/region_spec.hpp"

namespace tileforge {

enum class CellKind { square, up_triangle, down_triangle };
enum class Color { white, black };

inline const char* to_string(CellKind k) {
  switch (k) {
    case CellKind::square: return "square";
    case CellKind::up_triangle: return "up";
    case CellKind::down_triangle: return "down";
  }
  return "?";
}

inline const char* to_string(Color c) { return c == Color::black ? "black" : "white"; }

struct LatticePoint {
  int x = 0;
  int y = 0;

  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

/// One fundamental region. The unit square [sq_x, sq_x+1] x [sq_y, sq_y+1]
/// lies in diagonal row `row` = sq_x - sq_y (0 on the top boundary diagonal).
/// A drawn-in diagonal cuts its square into an up triangle (left and top
/// edges) and a down triangle (bottom and right edges).
struct Cell {
  CellKind kind = CellKind::square;
  Color color = Color::white;
  int row = 0;
  int pos = 0;  // index of the square within its row, west to east
  int sq_x = 0;
  int sq_y = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
};

/// The dissected region. Lattice frame: A = (0, 0), the top boundary
/// diagonal runs through A and D, and the bottom one through B and C.
struct Dissection {
  RegionSpec spec;
  std::vector<Cell> cells;
  std::vector<Edge> adjacency;
  LatticePoint A, B, C, D;
  std::string ne, se, sw, nw;  // boundary step words over {N, E, S, W}
  std::vector<int> drawn_rows;  // rows cut by a drawn-in diagonal
  int width = 0;

  /// Closed boundary circuit A -> B -> C -> D -> A, without the repeated A.
  std::vector<LatticePoint> boundary() const {
    std::vector<LatticePoint> pts{A};
    for (const auto* word : {&ne, &se, &sw, &nw}) {
      for (char c : *word) {
        auto p = pts.back();
        switch (c) {
          case 'N': ++p.y; break;
          case 'S': --p.y; break;
          case 'E': ++p.x; break;
          case 'W': --p.x; break;
          default: break;
        }
        pts.push_back(p);
      }
    }
    pts.pop_back();
    return pts;
  }

  bool is_drawn(int row) const {
    return std::binary_search(drawn_rows.begin(), drawn_rows.end(), row);
  }
};

namespace detail {

struct RowColors {
  Color upper;
  Color lower;
};

inline Color flip(Color c) { return c == Color::black ? Color::white : Color::black; }

// Colors above and below the middle of each row 0..S. Crossing a unit edge
// between rows flips the color; crossing a drawn-in diagonal flips it too.
inline std::vector<RowColors> row_colors(const std::vector<int>& drawn, int rows) {
  std::vector<RowColors> col(static_cast<std::size_t>(rows + 1));
  col[0] = {Color::white, Color::white};
  for (int r = 1; r <= rows; ++r) {
    const Color up = flip(col[static_cast<std::size_t>(r - 1)].lower);
    const bool cut = std::binary_search(drawn.begin(), drawn.end(), r);
    col[static_cast<std::size_t>(r)] = {up, cut ? flip(up) : up};
  }
  return col;
}

inline std::vector<int> drawn_rows_of(const RegionSpec& spec) {
  std::vector<int> out;
  int t = 0;
  for (int i = 0; i + 1 < spec.k(); ++i) out.push_back(t += spec.d[static_cast<std::size_t>(i)]);
  return out;
}

inline std::string repeat(std::string_view unit, int times) {
  std::string s;
  for (int i = 0; i < times; ++i) s += unit;
  return s;
}

}  // namespace detail

/// Builds the dissection, checking every condition the parameters alone
/// cannot: parity of the bottom row, horizontal alignment of B and D,
/// simplicity of the boundary, bipartite coloring and the row census.
inline Dissection build_dissection(const RegionSpec& spec) {
  const auto report = validate(spec);
  if (!report.ok) {
    if (report.has("parity"))
      throw geometry_error(geometry_failure::parity, "bottom diagonal of " + to_string(spec) +
                                                         " passes through black squares");
    throw spec_error("invalid region " + to_string(spec) + ": " + report.violations.front().message);
  }
  const int rows = spec.total();
  Dissection g;
  g.spec = spec;
  g.drawn_rows = detail::drawn_rows_of(spec);
  const auto col = detail::row_colors(g.drawn_rows, rows);
  const auto& last = col[static_cast<std::size_t>(rows)];
  if (last.upper != Color::white || last.lower != Color::white)
    throw geometry_error(geometry_failure::parity, "bottom row of " + to_string(spec) + " is not white");

  // NE boundary: step so that the black cell lies inside, i.e. right of the walk.
  int east = 0;
  int south = 0;
  for (int r = 0; r < rows; ++r) {
    if (col[static_cast<std::size_t>(r + 1)].upper == Color::black) {
      g.ne += 'E';
      ++east;
    } else if (col[static_cast<std::size_t>(r)].lower == Color::black) {
      g.ne += 'S';
      ++south;
    } else {
      throw geometry_error(geometry_failure::boundary_intersection,
                           "boundary walk of " + to_string(spec) + " is stuck at row " + std::to_string(r));
    }
  }
  if (south != spec.a)
    throw geometry_error(geometry_failure::alignment,
                         "western and eastern vertices of " + to_string(spec) + " differ in height (" +
                             std::to_string(south) + " south steps, a = " + std::to_string(spec.a) + ")");

  g.width = east;
  g.A = {0, 0};
  g.B = {east, -south};
  g.C = {south - spec.a, -spec.a - east};
  g.D = {-spec.a, -spec.a};
  g.se = detail::repeat("SW", east);
  for (auto it = g.ne.rbegin(); it != g.ne.rend(); ++it) g.sw += (*it == 'E' ? 'N' : 'W');
  g.nw = detail::repeat("NE", spec.a);

  const auto circuit = g.boundary();
  {
    std::set<LatticePoint> seen(circuit.begin(), circuit.end());
    if (seen.size() != circuit.size())
      throw geometry_error(geometry_failure::boundary_intersection,
                           "boundary of " + to_string(spec) + " touches itself");
  }

  // Inside squares by even-odd scanlines over the unit vertical boundary edges.
  std::map<int, std::vector<int>> crossings;  // sq_y -> x of vertical edges
  for (std::size_t t = 0; t < circuit.size(); ++t) {
    const auto p = circuit[t];
    const auto q = circuit[(t + 1) % circuit.size()];
    if (p.x == q.x) crossings[std::min(p.y, q.y)].push_back(p.x);
  }
  std::vector<std::pair<int, int>> squares;  // (-sq_y, sq_x): row-major from the top
  for (auto& [y, xs] : crossings) {
    std::sort(xs.begin(), xs.end());
    for (std::size_t t = 0; t + 1 < xs.size(); t += 2)
      for (int x = xs[t]; x < xs[t + 1]; ++x) squares.emplace_back(-y, x);
  }
  std::sort(squares.begin(), squares.end());

  std::map<std::pair<int, int>, int> first_cell;  // (sq_x, sq_y) -> cell index
  for (auto [ny, x] : squares) {
    const int y = -ny;
    const int row = x - y;
    if (row < 0 || row > rows)
      throw geometry_error(geometry_failure::boundary_intersection, "square outside the diagonal band");
    first_cell[{x, y}] = static_cast<int>(g.cells.size());
    const auto& rc = col[static_cast<std::size_t>(row)];
    if (g.is_drawn(row)) {
      g.cells.push_back({CellKind::up_triangle, rc.upper, row, 0, x, y});
      g.cells.push_back({CellKind::down_triangle, rc.lower, row, 0, x, y});
    } else {
      g.cells.push_back({CellKind::square, rc.upper, row, 0, x, y});
    }
  }
  // Number squares west to east within each row.
  {
    std::map<int, std::vector<std::pair<int, std::size_t>>> by_row;
    for (std::size_t t = 0; t < g.cells.size(); ++t)
      if (g.cells[t].kind != CellKind::down_triangle) by_row[g.cells[t].row].emplace_back(g.cells[t].sq_x, t);
    for (auto& [row, members] : by_row) {
      std::sort(members.begin(), members.end());
      for (std::size_t p = 0; p < members.size(); ++p) {
        g.cells[members[p].second].pos = static_cast<int>(p);
        if (g.cells[members[p].second].kind == CellKind::up_triangle)
          g.cells[members[p].second + 1].pos = static_cast<int>(p);
      }
    }
  }

  auto part = [&](int x, int y, char side) -> int {
    auto it = first_cell.find({x, y});
    if (it == first_cell.end()) return -1;
    const bool cut = g.cells[static_cast<std::size_t>(it->second)].kind == CellKind::up_triangle;
    if (cut && (side == 'R' || side == 'B')) return it->second + 1;
    return it->second;
  };
  std::vector<Edge> edges;
  for (const auto& [sq, idx] : first_cell) {
    const auto [x, y] = sq;
    if (g.cells[static_cast<std::size_t>(idx)].kind == CellKind::up_triangle) edges.emplace_back(idx, idx + 1);
    if (int v = part(x + 1, y, 'L'); v >= 0) edges.emplace_back(part(x, y, 'R'), v);
    if (int v = part(x, y + 1, 'B'); v >= 0) edges.emplace_back(part(x, y, 'T'), v);
  }
  g.adjacency = Graph(static_cast<int>(g.cells.size()), std::move(edges)).edges;

  // Coloring by propagation from the white top row; must reproduce the row colors.
  const Graph dual(static_cast<int>(g.cells.size()), g.adjacency);
  const auto adj = dual.adjacency();
  std::vector<int> shade(g.cells.size(), -1);
  std::deque<int> queue;
  for (std::size_t t = 0; t < g.cells.size(); ++t)
    if (g.cells[t].row == 0) {
      shade[t] = 0;
      queue.push_back(static_cast<int>(t));
    }
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int u : adj[static_cast<std::size_t>(v)]) {
      auto& su = shade[static_cast<std::size_t>(u)];
      if (su < 0) {
        su = 1 - shade[static_cast<std::size_t>(v)];
        queue.push_back(u);
      } else if (su == shade[static_cast<std::size_t>(v)]) {
        throw geometry_error(geometry_failure::non_bipartite,
                             "odd cycle through cell " + std::to_string(u) + " of " + to_string(spec));
      }
    }
  }
  for (std::size_t t = 0; t < g.cells.size(); ++t) {
    if (shade[t] < 0)
      throw geometry_error(geometry_failure::disconnected,
                           "cell " + std::to_string(t) + " of " + to_string(spec) + " is unreachable");
    if ((shade[t] == 1) != (g.cells[t].color == Color::black))
      throw geometry_error(geometry_failure::non_bipartite, "propagated coloring disagrees with row colors");
  }
  for (const auto& c : g.cells)
    if (c.row == rows && c.color != Color::white)
      throw geometry_error(geometry_failure::parity, "bottom row contains a black cell");

  return g;
}

/// C = number of black squares plus black up triangles.
inline int count_regular_cells(const Dissection& g) {
  return static_cast<int>(std::count_if(g.cells.begin(), g.cells.end(), [](const Cell& c) {
    return c.color == Color::black && c.kind != CellKind::down_triangle;
  }));
}

/// Row census of the built cells. Throws geometry_error(profile_mismatch)
/// when it disagrees with the parameter-level profile.
inline StructuralProfile geometric_profile(const Dissection& g) {
  std::set<int> square_rows, up_rows, down_rows;
  int bottom_white = 0;
  const int rows = g.spec.total();
  for (const auto& c : g.cells) {
    if (c.row == rows && c.kind == CellKind::square && c.color == Color::white) ++bottom_white;
    if (c.color != Color::black) continue;
    switch (c.kind) {
      case CellKind::square: square_rows.insert(c.row); break;
      case CellKind::up_triangle: up_rows.insert(c.row); break;
      case CellKind::down_triangle: down_rows.insert(c.row); break;
    }
  }
  StructuralProfile pr;
  pr.w = bottom_white;
  pr.p = static_cast<int>(square_rows.size());
  pr.q = static_cast<int>(up_rows.size());
  pr.l = static_cast<int>(down_rows.size());
  std::partial_sum(g.spec.d.begin(), g.spec.d.end(), std::back_inserter(pr.cumulative));
  pr.x = g.spec.d.back() / 2;

  StructuralProfile expected;
  try {
    expected = profile(g.spec);
  } catch (const spec_error& e) {
    throw geometry_error(geometry_failure::profile_mismatch, e.what());
  }
  if (!(pr == expected))
    throw geometry_error(geometry_failure::profile_mismatch,
                         "cell census w=" + std::to_string(pr.w) + " p=" + std::to_string(pr.p) +
                             " q=" + std::to_string(pr.q) + " l=" + std::to_string(pr.l) +
                             " disagrees with the parameter profile of " + to_string(g.spec));
  return pr;
}

inline Graph dual_graph(const Dissection& g) { return Graph(static_cast<int>(g.cells.size()), g.adjacency); }

/// The drawn-in diagonals are exactly the odd rows 1, 3, ..., S - 1.
inline bool has_douglas_structure(const Dissection& g) {
  const int rows = g.spec.total();
  if (rows % 2 != 0) return false;
  std::vector<int> odd;
  for (int r = 1; r < rows; r += 2) odd.push_back(r);
  return g.drawn_rows == odd;
}

/// Douglas's region of order n: a = 2n, d = (1, 2, ..., 2, 1) with 2n - 1 twos.
inline RegionSpec douglas_spec(int n) {
  if (n < 1) throw precondition_error("Douglas order must be positive");
  RegionSpec s{2 * n, {1}};
  for (int i = 0; i < 2 * n - 1; ++i) s.d.push_back(2);
  s.d.push_back(1);
  return s;
}

inline RegionSpec aztec_spec(int n) {
  if (n < 1) throw precondition_error("Aztec order must be positive");
  return RegionSpec{n, {2 * n}};
}

}  // namespace tileforge
