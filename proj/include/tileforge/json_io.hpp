#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "tileforge/deformation.hpp"
#include "tileforge/geometry.hpp"
#include "tileforge/schroeder.hpp"
#include "tileforge/theorem.hpp"

namespace tileforge::json_io {

using json = nlohmann::json;

/// Big integers travel as decimal strings.
inline json count(const BigCount& v) { return to_decimal(v); }
inline json power(const PowerOfTwo& p) { return json{{"exp", p.exponent}}; }

inline json spec(const RegionSpec& s) { return json{{"a", s.a}, {"d", s.d}, {"text", to_string(s)}}; }

inline json barriers(const BarrierSet& b) { return b.offsets(); }

inline json profile(const StructuralProfile& p) {
  return json{{"w", p.w}, {"p", p.p}, {"q", p.q}, {"l", p.l}, {"cumulative", p.cumulative}, {"x", p.x}};
}

inline json record(const VerificationRecord& r, bool with_timings = false) {
  json j{{"spec", spec(r.spec)}, {"applicable", r.applicable}};
  if (!r.applicable) {
    j["reason"] = r.reason;
    return j;
  }
  j["cells"] = r.cells;
  j["regular_cells"] = r.regular_cells;
  j["w"] = r.width;
  j["barriers"] = barriers(r.barriers);
  j["M_paths"] = count(*r.m_paths);
  j["M_brute"] = r.m_brute ? count(*r.m_brute) : json(nullptr);
  j["formula"] = power(*r.formula);
  j["agree"] = r.agree;
  if (with_timings) j["ms"] = json{{"paths", r.ms_paths}, {"brute", r.ms_brute}, {"formula", r.ms_formula}};
  return j;
}

inline json sweep_report(const std::vector<VerificationRecord>& recs, int max_sum, int max_k, int budget) {
  json list = json::array();
  int agree = 0, brute = 0;
  for (const auto& r : recs) {
    list.push_back(record(r));
    agree += r.agree ? 1 : 0;
    brute += r.m_brute ? 1 : 0;
  }
  const int total = static_cast<int>(recs.size());
  return json{{"max_sum", max_sum},
              {"max_k", max_k},
              {"budget", budget},
              {"records", list},
              {"summary", {{"total", total}, {"agree", agree}, {"disagree", total - agree}, {"brute_checked", brute}}}};
}

inline json matrix(const PathMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.entries.order(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.entries.order(); ++j) row.push_back(count(m.entries(i, j)));
    rows.push_back(row);
  }
  return json{{"order", m.order}, {"family", m.family == Family::all_flats ? "H" : "G"}, {"entries", rows}};
}

inline json path(const SchroederPath& p) { return json{{"start", {p.start.x, p.start.y}}, {"steps", p.steps}}; }

inline json tuple(const PathTuple& t) {
  json out = json::array();
  for (const auto& p : t) out.push_back(path(p));
  return out;
}

inline json dissection(const Dissection& g) {
  json cells = json::array();
  for (const auto& c : g.cells)
    cells.push_back(json{{"kind", to_string(c.kind)},
                         {"color", to_string(c.color)},
                         {"row", c.row},
                         {"pos", c.pos},
                         {"square", {c.sq_x, c.sq_y}}});
  json edges = json::array();
  for (auto [u, v] : g.adjacency) edges.push_back({u, v});
  auto pt = [](LatticePoint p) { return json{p.x, p.y}; };
  return json{{"spec", spec(g.spec)},
              {"cells", cells},
              {"adjacency", edges},
              {"anchors", {{"A", pt(g.A)}, {"B", pt(g.B)}, {"C", pt(g.C)}, {"D", pt(g.D)}}},
              {"boundary", {{"NE", g.ne}, {"SE", g.se}, {"SW", g.sw}, {"NW", g.nw}}},
              {"drawn_rows", g.drawn_rows},
              {"width", g.width},
              {"regular_cells", count_regular_cells(g)}};
}

inline json deformed(const DeformedRegion& dr) {
  json cells = json::array();
  for (std::size_t t = 0; t < dr.cells.size(); ++t)
    cells.push_back(json{{"at", {dr.cells[t].x, dr.cells[t].y}}, {"color", to_string(dr.colors[t])}});
  json bars = json::array();
  for (auto b : dr.barriers) bars.push_back({{b.x, b.y}, {b.x + 1, b.y}});
  auto pts = [](const std::vector<GridCell>& v) {
    json out = json::array();
    for (auto p : v) out.push_back({p.x, p.y});
    return out;
  };
  return json{{"cells", cells},
              {"barriers", bars},
              {"sources", pts(dr.sources)},
              {"sinks", pts(dr.sinks)},
              {"barrier_offsets", barriers(dr.barrier_offsets())}};
}

inline json reduction(const Reduction& r, const ReductionCheck& c) {
  json j{{"parent", spec(r.parent)},
         {"case", to_string(r.kind)},
         {"x", r.x},
         {"w", r.width},
         {"exponent", r.exponent},
         {"terminal", r.terminal()},
         {"M_parent", count(c.parent_count)},
         {"holds", c.holds}};
  if (r.child) {
    j["child"] = json{{"a", r.child->a}, {"d", r.child->d}, {"text", to_string(*r.child)}};
    j["degenerate_child"] = r.degenerate_child;
    j["child_barriers"] = barriers(r.child_barriers);
    j["child_w"] = r.child_width;
    j["M_child"] = count(*c.child_count);
  }
  return j;
}

inline json douglas(const std::vector<DouglasMatch>& ms, int max_sum, int max_k) {
  json list = json::array();
  for (const auto& m : ms) {
    json cm = json::array(), dm = json::array();
    for (const auto& s : m.count_matches) cm.push_back(to_string(s));
    for (const auto& s : m.douglas_matches) dm.push_back(to_string(s));
    list.push_back(json{{"n", m.n},
                        {"target", count(m.target)},
                        {"count_matches", cm},
                        {"douglas_matches", dm},
                        {"chosen", m.chosen ? json(to_string(*m.chosen)) : json(nullptr)}});
  }
  return json{{"max_sum", max_sum},
              {"max_k", max_k},
              {"mapping", "D(n) = a=2n d=1,2,...,2,1 (2n-1 twos)"},
              {"orders", list}};
}

/// Deterministic text: sorted keys, two-space indent, trailing newline.
inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace tileforge::json_io
