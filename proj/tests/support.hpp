#pragma once

// Seeded generators and brute-force oracles shared by the unit tests. The
// oracles avoid the library's counting code so they can check it.

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tileforge/tileforge.hpp"

namespace support {

using tileforge::BarrierSet;
using tileforge::BigCount;
using tileforge::Edge;
using tileforge::Graph;

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(0x7ea11e5);
  return gen;
}

inline int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

/// Strictly increasing offsets with gaps of at least `min_gap`.
inline BarrierSet random_barriers(int max_size, int min_gap = 1, int max_first = 6) {
  std::vector<int> v;
  const int m = uniform(0, max_size);
  int cur = uniform(0, max_first);
  for (int i = 0; i < m; ++i) {
    v.push_back(cur);
    cur += uniform(min_gap, min_gap + 3);
  }
  return BarrierSet(v);
}

inline Graph random_graph(int n, double p) {
  std::vector<Edge> e;
  std::bernoulli_distribution coin(p);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng())) e.emplace_back(u, v);
  return Graph(n, e);
}

/// Random spacing list with sum <= max_sum and at most max_k parts.
inline std::vector<int> random_spacings(int max_sum, int max_k) {
  std::vector<int> d;
  int left = max_sum;
  const int k = uniform(1, max_k);
  for (int i = 0; i < k && left > 0; ++i) {
    const int v = uniform(1, std::min(left, 6));
    d.push_back(v);
    left -= v;
  }
  return d;
}

/// Perfect matchings by recursion on the lowest uncovered vertex, bitmask memo.
inline BigCount oracle_matchings(const Graph& g) {
  std::vector<std::uint64_t> nbr(static_cast<std::size_t>(g.n), 0);
  for (auto [u, v] : g.edges) {
    nbr[static_cast<std::size_t>(u)] |= std::uint64_t{1} << v;
    nbr[static_cast<std::size_t>(v)] |= std::uint64_t{1} << u;
  }
  std::map<std::uint64_t, BigCount> memo;
  std::function<BigCount(std::uint64_t)> f = [&](std::uint64_t mask) -> BigCount {
    if (mask == 0) return 1;
    if (auto it = memo.find(mask); it != memo.end()) return it->second;
    int v = 0;
    while (!((mask >> v) & 1)) ++v;
    BigCount total = 0;
    std::uint64_t cand = nbr[static_cast<std::size_t>(v)] & mask;
    while (cand) {
      const int u = __builtin_ctzll(cand);
      cand &= cand - 1;
      total += f(mask & ~(std::uint64_t{1} << v) & ~(std::uint64_t{1} << u));
    }
    memo[mask] = total;
    return total;
  };
  if (g.n % 2) return 0;
  return f(g.n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << g.n) - 1);
}

/// Unit squares of the Aztec diamond of order n, by the defining inequality
/// on square centers: |x| + |y| <= n for centers at half-integers.
inline Graph aztec_dual(int n) {
  std::vector<std::pair<int, int>> sq;  // lower-left corners
  for (int x = -n; x < n; ++x)
    for (int y = -n; y < n; ++y)
      if (std::abs(2 * x + 1) + std::abs(2 * y + 1) <= 2 * n) sq.emplace_back(x, y);
  std::map<std::pair<int, int>, int> id;
  for (std::size_t i = 0; i < sq.size(); ++i) id[sq[i]] = static_cast<int>(i);
  std::vector<Edge> e;
  for (auto [p, i] : id) {
    if (auto it = id.find({p.first + 1, p.second}); it != id.end()) e.emplace_back(i, it->second);
    if (auto it = id.find({p.first, p.second + 1}); it != id.end()) e.emplace_back(i, it->second);
  }
  return Graph(static_cast<int>(sq.size()), e);
}

/// All step words from (x0, 0) to (x1, 0) staying weakly above the axis,
/// filtered by a literal segment-crossing test against the barrier family.
inline bool crosses_barrier(tileforge::Point from, char step, const BarrierSet& bar) {
  // Barrier of offset a at height t + 1/2 spans [t - a, t - a + 1]. Work in
  // doubled coordinates so every endpoint is an integer.
  const int x0 = 2 * from.x, y0 = 2 * from.y;
  int x1 = x0, y1 = y0;
  if (step == 'U') x1 += 2, y1 += 2;
  if (step == 'D') x1 += 2, y1 -= 2;
  if (step == 'F') x1 += 4;
  for (int a : bar.offsets()) {
    for (int t = std::min(from.y, from.y - 1) - 1; t <= from.y + 1; ++t) {
      const int by = 2 * t + 1;
      const int bx0 = 2 * (t - a), bx1 = bx0 + 2;
      if (y0 == y1) continue;  // flats stay at integer heights
      if ((by - y0) * (by - y1) > 0) continue;
      // x where the step reaches height by
      const int num = x0 * (y1 - y0) + (by - y0) * (x1 - x0);
      const int den = y1 - y0;
      // crossing x = num / den; compare with [bx0, bx1] without division
      const bool inside = den > 0 ? (num >= bx0 * den && num <= bx1 * den) : (num <= bx0 * den && num >= bx1 * den);
      if (inside) return true;
    }
  }
  return false;
}

inline std::vector<std::string> oracle_paths(int x0, int x1, const BarrierSet& bar, bool forbid_bad) {
  std::vector<std::string> out;
  std::set<int> good_flat_x;
  for (int a : bar.offsets()) good_flat_x.insert(-a - 1);
  std::function<void(int, int, std::string&)> rec = [&](int x, int y, std::string& w) {
    if (x > x1 || y < 0) return;
    if (x == x1) {
      if (y == 0) out.push_back(w);
      return;
    }
    for (char s : std::string("UDF")) {
      if (crosses_barrier({x, y}, s, bar)) continue;
      if (s == 'F' && forbid_bad && y == 0 && !good_flat_x.count(x)) continue;
      w.push_back(s);
      if (s == 'U') rec(x + 1, y + 1, w);
      if (s == 'D') rec(x + 1, y - 1, w);
      if (s == 'F') rec(x + 2, y, w);
      w.pop_back();
    }
  };
  std::string w;
  rec(x0, 0, w);
  return out;
}

/// Determinant by cofactor expansion along the first row.
inline BigCount cofactor_det(const std::vector<std::vector<BigCount>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  BigCount total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<BigCount>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<BigCount> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[i][c]);
      minor.push_back(row);
    }
    const BigCount term = m[0][j] * cofactor_det(minor);
    total += (j % 2 == 0) ? term : BigCount(-term);
  }
  return total;
}

inline std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = digits[h & 15];
  return out;
}

}  // namespace support
