#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tileforge/big_count.hpp"
#include "tileforge/error.hpp"

namespace tileforge {

using Edge = std::pair<int, int>;

/// Simple undirected graph on vertices 0..n-1 with a sorted edge list (u < v).
struct Graph {
  int n = 0;
  std::vector<Edge> edges;

  Graph() = default;

  Graph(int vertex_count, std::vector<Edge> edge_list) : n(vertex_count), edges(std::move(edge_list)) {
    if (n < 0) throw precondition_error("negative vertex count");
    for (auto& [u, v] : edges) {
      if (u == v) throw precondition_error("self-loop on vertex " + std::to_string(u));
      if (u > v) std::swap(u, v);
      if (u < 0 || v >= n) throw precondition_error("edge endpoint out of range");
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  }

  std::vector<std::vector<int>> adjacency() const {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (auto [u, v] : edges) {
      adj[static_cast<std::size_t>(u)].push_back(v);
      adj[static_cast<std::size_t>(v)].push_back(u);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
    return adj;
  }

  /// Largest |u - v| over all edges.
  int bandwidth() const {
    int b = 0;
    for (auto [u, v] : edges) b = std::max(b, v - u);
    return b;
  }

  friend bool operator==(const Graph&, const Graph&) = default;
};

/// A perfect matching, stored as its sorted edge list.
struct Matching {
  std::vector<Edge> edges;

  friend auto operator<=>(const Matching&, const Matching&) = default;
};

inline bool is_perfect_matching(const Graph& g, const Matching& m) {
  std::vector<int> covered(static_cast<std::size_t>(g.n), 0);
  for (auto e : m.edges) {
    auto norm = e.first < e.second ? e : Edge{e.second, e.first};
    if (!std::binary_search(g.edges.begin(), g.edges.end(), norm)) return false;
    if (++covered[static_cast<std::size_t>(norm.first)] > 1) return false;
    if (++covered[static_cast<std::size_t>(norm.second)] > 1) return false;
  }
  return std::all_of(covered.begin(), covered.end(), [](int c) { return c == 1; });
}

enum class CountMode {
  branching,  // min-degree branching with memo on the remaining vertex set
  frontier,   // vertex-order profile DP; needs bandwidth <= 63
  automatic   // frontier when the bandwidth allows, else branching
};

namespace detail {

class BranchingCounter {
 public:
  explicit BranchingCounter(const Graph& g) : adj_(g.adjacency()), words_((g.n + 63) / 64) {}

  BigCount run(int n) {
    std::vector<std::uint64_t> alive(words_, 0);
    for (int v = 0; v < n; ++v) alive[static_cast<std::size_t>(v / 64)] |= std::uint64_t{1} << (v % 64);
    return count(alive, n);
  }

 private:
  struct KeyHash {
    std::size_t operator()(const std::vector<std::uint64_t>& k) const noexcept {
      std::uint64_t h = 1469598103934665603ull;
      for (auto w : k) {
        h ^= w;
        h *= 1099511628211ull;
        h ^= h >> 29;
      }
      return static_cast<std::size_t>(h);
    }
  };

  bool is_alive(const std::vector<std::uint64_t>& s, int v) const {
    return (s[static_cast<std::size_t>(v / 64)] >> (v % 64)) & 1u;
  }
  static void drop(std::vector<std::uint64_t>& s, int v) {
    s[static_cast<std::size_t>(v / 64)] &= ~(std::uint64_t{1} << (v % 64));
  }

  BigCount count(const std::vector<std::uint64_t>& alive, int remaining) {
    if (remaining == 0) return 1;
    if (remaining % 2 != 0) return 0;
    if (auto it = memo_.find(alive); it != memo_.end()) return it->second;

    // Branch on the alive vertex with the fewest alive neighbours.
    int best = -1;
    int best_deg = 1 << 30;
    for (int v = 0; v < static_cast<int>(adj_.size()); ++v) {
      if (!is_alive(alive, v)) continue;
      int deg = 0;
      for (int u : adj_[static_cast<std::size_t>(v)])
        if (is_alive(alive, u)) ++deg;
      if (deg == 0) {
        memo_.emplace(alive, 0);
        return 0;
      }
      if (deg < best_deg) {
        best_deg = deg;
        best = v;
        if (deg == 1) break;
      }
    }
    BigCount total = 0;
    for (int u : adj_[static_cast<std::size_t>(best)]) {
      if (!is_alive(alive, u)) continue;
      auto next = alive;
      drop(next, best);
      drop(next, u);
      total += count(next, remaining - 2);
    }
    memo_.emplace(alive, total);
    return total;
  }

  std::vector<std::vector<int>> adj_;
  std::size_t words_;
  std::unordered_map<std::vector<std::uint64_t>, BigCount, KeyHash> memo_;
};

// Processes vertices in index order; the state is the set of already matched
// vertices in the window [v, v + bandwidth], stored relative to v.
inline BigCount frontier_count(const Graph& g) {
  const auto adj = g.adjacency();
  std::unordered_map<std::uint64_t, BigCount> states{{0, 1}};
  for (int v = 0; v < g.n; ++v) {
    std::unordered_map<std::uint64_t, BigCount> next;
    for (const auto& [mask, ways] : states) {
      if (mask & 1u) {
        next[mask >> 1] += ways;
        continue;
      }
      for (int u : adj[static_cast<std::size_t>(v)]) {
        if (u <= v) continue;
        const auto bit = std::uint64_t{1} << (u - v);
        if (mask & bit) continue;
        next[(mask | bit) >> 1] += ways;
      }
    }
    states = std::move(next);
    if (states.empty()) return 0;
  }
  auto it = states.find(0);
  return it == states.end() ? BigCount(0) : it->second;
}

}  // namespace detail

/// Exact number of perfect matchings.
inline BigCount count_perfect_matchings(const Graph& g, CountMode mode = CountMode::automatic) {
  if (g.n % 2 != 0) return 0;
  if (g.n == 0) return 1;
  const bool frontier_ok = g.bandwidth() <= 63;
  if (mode == CountMode::frontier && !frontier_ok)
    throw precondition_error("frontier mode needs graph bandwidth <= 63, got " +
                             std::to_string(g.bandwidth()));
  if (mode == CountMode::frontier || (mode == CountMode::automatic && frontier_ok))
    return detail::frontier_count(g);
  return detail::BranchingCounter(g).run(g.n);
}

struct MatchingList {
  std::vector<Matching> matchings;
  bool truncated = false;
};

/// Perfect matchings in lexicographic order of their sorted edge lists, at most
/// `cap` of them.
inline MatchingList enumerate_perfect_matchings(const Graph& g, std::size_t cap) {
  if (cap < 1) throw precondition_error("enumeration cap must be at least 1");
  MatchingList out;
  if (g.n % 2 != 0) return out;
  const auto adj = g.adjacency();
  std::vector<char> used(static_cast<std::size_t>(g.n), 0);
  std::vector<Edge> current;

  auto rec = [&](auto&& self, int from) -> bool {
    int v = from;
    while (v < g.n && used[static_cast<std::size_t>(v)]) ++v;
    if (v == g.n) {
      if (out.matchings.size() == cap) {
        out.truncated = true;
        return false;
      }
      out.matchings.push_back(Matching{current});
      return true;
    }
    used[static_cast<std::size_t>(v)] = 1;
    for (int u : adj[static_cast<std::size_t>(v)]) {
      if (u < v || used[static_cast<std::size_t>(u)]) continue;
      used[static_cast<std::size_t>(u)] = 1;
      current.emplace_back(v, u);
      const bool go_on = self(self, v + 1);
      current.pop_back();
      used[static_cast<std::size_t>(u)] = 0;
      if (!go_on) {
        used[static_cast<std::size_t>(v)] = 0;
        return false;
      }
    }
    used[static_cast<std::size_t>(v)] = 0;
    return true;
  };
  rec(rec, 0);
  return out;
}

/// Edge-list interchange: vertex count on the first line, then "u v" per line.
inline std::string format_graph(const Graph& g) {
  std::ostringstream os;
  os << g.n << '\n';
  for (auto [u, v] : g.edges) os << u << ' ' << v << '\n';
  return os.str();
}

inline Graph parse_graph(std::istream& in) {
  long n = -1;
  if (!(in >> n) || n < 0) throw parse_error("graph text must start with a vertex count");
  std::vector<Edge> edges;
  long u = 0, v = 0;
  while (in >> u) {
    if (!(in >> v)) throw parse_error("dangling vertex id in edge list");
    if (u < 0 || v < 0 || u >= n || v >= n || u == v)
      throw parse_error("bad edge " + std::to_string(u) + " " + std::to_string(v));
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }
  if (!in.eof()) throw parse_error("non-numeric token in edge list");
  return Graph(static_cast<int>(n), std::move(edges));
}

inline Graph parse_graph(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

}  // namespace tileforge
