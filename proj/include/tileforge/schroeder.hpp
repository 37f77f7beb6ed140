#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tileforge/barrier_set.hpp"
#include "tileforge/big_count.hpp"
#include "tileforge/error.hpp"

namespace tileforge {

struct Point {
  int x = 0;
  int y = 0;

  friend auto operator<=>(const Point&, const Point&) = default;
};

enum class Step : char { up = 'U', down = 'D', flat = 'F' };

inline Point advance(Point p, Step s) {
  switch (s) {
    case Step::up: return {p.x + 1, p.y + 1};
    case Step::down: return {p.x + 1, p.y - 1};
    case Step::flat: return {p.x + 2, p.y};
  }
  return p;
}

inline Step to_step(char c) {
  switch (c) {
    case 'U': return Step::up;
    case 'D': return Step::down;
    case 'F': return Step::flat;
    default: throw parse_error(std::string("unknown step letter '") + c + "'");
  }
}

/// A lattice path over the steps U=(1,1), D=(1,-1), F=(2,0).
struct SchroederPath {
  Point start;
  std::string steps;

  std::vector<Point> points() const {
    std::vector<Point> pts{start};
    pts.reserve(steps.size() + 1);
    for (char c : steps) pts.push_back(advance(pts.back(), to_step(c)));
    return pts;
  }

  Point end() const { return points().back(); }

  friend auto operator<=>(const SchroederPath&, const SchroederPath&) = default;
};

using PathTuple = std::vector<SchroederPath>;

// Closed forms of exact segment intersection with the barrier family:
// an up step from (x, y) meets the barrier at height y + 1/2 iff y - x = a,
// a down step meets the one at height y - 1/2 iff y - x = a + 1, and flat
// steps run at integer heights so they never meet a barrier.
inline bool step_allowed(Step step, Point at, const BarrierSet& bar) {
  switch (step) {
    case Step::up: return !bar.contains(at.y - at.x);
    case Step::down: return !bar.contains(at.y - at.x - 1);
    case Step::flat: return true;
  }
  return false;
}

/// A ground-level flat from (x, 0) is bad unless x = -a - 1 for some offset a.
inline bool bad_flat(int x, const BarrierSet& bar) { return !bar.contains(-x - 1); }

/// Which ground-level flats a path family admits.
enum class Family {
  all_flats,    // large family: every flat allowed
  no_bad_flats  // small family: ground-level flats only where bad_flat is false
};

inline Family parse_family(std::string_view s) {
  if (s == "H" || s == "Pi" || s == "pi" || s == "all") return Family::all_flats;
  if (s == "G" || s == "Lambda" || s == "lambda" || s == "small") return Family::no_bad_flats;
  throw parse_error("unknown path family '" + std::string(s) + "'");
}

inline bool flat_permitted(Point at, Family family, const BarrierSet& bar) {
  return family == Family::all_flats || at.y != 0 || !bad_flat(at.x, bar);
}

/// Barrier-compatible, never below the x-axis, and (for the small family)
/// free of bad flats. Start and end heights are not constrained here.
inline bool is_compatible(const SchroederPath& path, const BarrierSet& bar,
                          Family family = Family::all_flats) {
  Point p = path.start;
  if (p.y < 0) return false;
  for (char c : path.steps) {
    const Step s = to_step(c);
    if (!step_allowed(s, p, bar)) return false;
    if (s == Step::flat && !flat_permitted(p, family, bar)) return false;
    p = advance(p, s);
    if (p.y < 0) return false;
  }
  return true;
}

inline bool has_bad_flat(const SchroederPath& path, const BarrierSet& bar) {
  Point p = path.start;
  for (char c : path.steps) {
    const Step s = to_step(c);
    if (s == Step::flat && p.y == 0 && bad_flat(p.x, bar)) return true;
    p = advance(p, s);
  }
  return false;
}

/// Number of compatible paths from (from_x, 0) to (to_x, 0).
inline BigCount count_paths(int from_x, int to_x, const BarrierSet& bar, Family family) {
  if (to_x < from_x || (to_x - from_x) % 2 != 0) return 0;
  const int len = to_x - from_x;
  const int max_h = len / 2;
  // table[dx][y] = ways to reach (from_x + dx, y)
  std::vector<std::vector<BigCount>> table(static_cast<std::size_t>(len + 1),
                                           std::vector<BigCount>(static_cast<std::size_t>(max_h + 2)));
  table[0][0] = 1;
  for (int dx = 0; dx < len; ++dx) {
    for (int y = 0; y <= max_h; ++y) {
      const BigCount& ways = table[static_cast<std::size_t>(dx)][static_cast<std::size_t>(y)];
      if (ways == 0) continue;
      const Point at{from_x + dx, y};
      if (y + 1 <= len - dx - 1 && step_allowed(Step::up, at, bar))
        table[static_cast<std::size_t>(dx + 1)][static_cast<std::size_t>(y + 1)] += ways;
      if (y > 0 && step_allowed(Step::down, at, bar))
        table[static_cast<std::size_t>(dx + 1)][static_cast<std::size_t>(y - 1)] += ways;
      if (dx + 2 <= len && flat_permitted(at, family, bar))
        table[static_cast<std::size_t>(dx + 2)][static_cast<std::size_t>(y)] += ways;
    }
  }
  return table[static_cast<std::size_t>(len)][0];
}

/// Start abscissae x_1 > x_2 > ... > x_n: the largest negative odd integers
/// that are not -a for an offset a. Sinks are 1, 3, ..., 2n - 1.
struct Endpoints {
  std::vector<int> sources;
  std::vector<int> sinks;
};

inline Endpoints endpoints(int n, const BarrierSet& bar) {
  if (n < 0) throw precondition_error("endpoint count must be nonnegative");
  Endpoints e;
  for (int x = -1; static_cast<int>(e.sources.size()) < n; x -= 2)
    if (!bar.contains(-x)) e.sources.push_back(x);
  for (int j = 1; j <= n; ++j) e.sinks.push_back(2 * j - 1);
  return e;
}

/// Dense square matrix of big integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(std::size_t n) : n_(n), data_(n * n) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) : n_(rows.size()), data_(n_ * n_) {
    std::size_t i = 0;
    for (const auto& r : rows) {
      if (r.size() != n_) throw precondition_error("matrix must be square");
      std::size_t j = 0;
      for (long long v : r) (*this)(i, j++) = v;
      ++i;
    }
  }

  std::size_t order() const noexcept { return n_; }
  BigCount& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const BigCount& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<BigCount> data_;
};

struct PathMatrix {
  int order = 0;
  Family family = Family::all_flats;
  IntMatrix entries;
};

/// Entry (i, j) counts compatible paths from source i to sink j.
inline PathMatrix path_matrix(int n, const BarrierSet& bar, Family family) {
  if (n < 1) throw precondition_error("path matrix order must be at least 1");
  const auto ends = endpoints(n, bar);
  PathMatrix m{n, family, IntMatrix(static_cast<std::size_t>(n))};
  for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i)
    for (std::size_t j = 0; j < static_cast<std::size_t>(n); ++j)
      m.entries(i, j) = count_paths(ends.sources[i], ends.sinks[j], bar, family);
  return m;
}

/// Exact determinant by fraction-free (Bareiss) elimination.
inline BigCount determinant(IntMatrix m) {
  const std::size_t n = m.order();
  if (n == 0) return 1;
  BigCount sign = 1;
  BigCount prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m(swap_row, k) == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(swap_row, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        // Exact by Sylvester's identity.
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

inline BigCount determinant(const PathMatrix& m) { return determinant(m.entries); }

/// Number of non-intersecting n-tuples, by the determinant of the path matrix.
inline BigCount count_tuples(int n, const BarrierSet& bar, Family family) {
  if (n < 0) throw precondition_error("tuple size must be nonnegative");
  if (n == 0) return 1;
  return determinant(path_matrix(n, bar, family));
}

inline constexpr std::size_t default_enumeration_budget = 5'000'000;

/// All compatible paths from (from_x, 0) to (to_x, 0), in U < D < F word order.
inline std::vector<SchroederPath> enumerate_paths(int from_x, int to_x, const BarrierSet& bar,
                                                  Family family,
                                                  std::size_t budget = default_enumeration_budget) {
  std::vector<SchroederPath> out;
  if (to_x < from_x || (to_x - from_x) % 2 != 0) return out;
  std::string word;
  std::size_t work = 0;
  auto rec = [&](auto&& self, Point p) -> void {
    if (++work > budget) throw budget_exceeded("path enumeration exceeded its budget");
    if (p.x == to_x) {
      if (p.y == 0) out.push_back({{from_x, 0}, word});
      return;
    }
    const int remaining = to_x - p.x;
    for (Step s : {Step::up, Step::down, Step::flat}) {
      const Point q = advance(p, s);
      if (q.y < 0 || q.y > to_x - q.x || q.x > to_x) continue;
      if (remaining < 1) continue;
      if (!step_allowed(s, p, bar)) continue;
      if (s == Step::flat && !flat_permitted(p, family, bar)) continue;
      word.push_back(static_cast<char>(s));
      self(self, q);
      word.pop_back();
    }
  };
  rec(rec, Point{from_x, 0});
  return out;
}

inline bool vertex_disjoint(const PathTuple& tuple) {
  std::set<Point> seen;
  for (const auto& p : tuple)
    for (auto pt : p.points())
      if (!seen.insert(pt).second) return false;
  return true;
}

/// True iff `tuple` is a non-intersecting family of compatible paths joining
/// source i to sink i for every i.
inline bool is_member(const PathTuple& tuple, const BarrierSet& bar, Family family) {
  const auto ends = endpoints(static_cast<int>(tuple.size()), bar);
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    const auto& p = tuple[i];
    if (p.start != Point{ends.sources[i], 0}) return false;
    if (p.end() != Point{ends.sinks[i], 0}) return false;
    if (!is_compatible(p, bar, family)) return false;
  }
  return vertex_disjoint(tuple);
}

/// Every non-intersecting n-tuple, in lexicographic order of path words.
inline std::vector<PathTuple> enumerate_tuples(int n, const BarrierSet& bar, Family family,
                                               std::size_t budget = default_enumeration_budget) {
  if (n < 0) throw precondition_error("tuple size must be nonnegative");
  const auto ends = endpoints(n, bar);
  std::vector<std::vector<SchroederPath>> options;
  std::vector<std::vector<std::vector<Point>>> option_points;
  std::size_t work = 0;
  for (int i = 0; i < n; ++i) {
    options.push_back(enumerate_paths(ends.sources[static_cast<std::size_t>(i)],
                                      ends.sinks[static_cast<std::size_t>(i)], bar, family, budget));
    work += options.back().size();
    auto& pts = option_points.emplace_back();
    for (const auto& p : options.back()) pts.push_back(p.points());
  }
  std::vector<PathTuple> out;
  PathTuple current;
  std::set<Point> used;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (++work > budget) throw budget_exceeded("tuple enumeration exceeded its budget");
    if (i == options.size()) {
      out.push_back(current);
      return;
    }
    for (std::size_t t = 0; t < options[i].size(); ++t) {
      const auto& pts = option_points[i][t];
      if (std::any_of(pts.begin(), pts.end(), [&](Point p) { return used.count(p) != 0; })) continue;
      for (auto p : pts) used.insert(p);
      current.push_back(options[i][t]);
      self(self, i + 1);
      current.pop_back();
      for (auto p : pts) used.erase(p);
    }
  };
  rec(rec, 0);
  return out;
}

/// Counts non-intersecting tuples by exhaustive search; the oracle for
/// count_tuples.
inline BigCount brute_count_tuples(int n, const BarrierSet& bar, Family family,
                                   std::size_t budget = default_enumeration_budget) {
  return BigCount(enumerate_tuples(n, bar, family, budget).size());
}

// ---------------------------------------------------------------------------
// Large/small path bijection. A path with a bad flat factors as P F Q with F
// its last bad flat; it maps to U P D Q. Conversely a path without bad flats
// factors at its first return to the axis as U P D Q and maps back to P F Q.

inline SchroederPath tau_to_lambda(const SchroederPath& tau, const BarrierSet& bar) {
  if (tau.start.y != 0) throw precondition_error("path must start on the x-axis");
  Point p = tau.start;
  std::ptrdiff_t last_bad = -1;
  for (std::size_t i = 0; i < tau.steps.size(); ++i) {
    const Step s = to_step(tau.steps[i]);
    if (s == Step::flat && p.y == 0 && bad_flat(p.x, bar)) last_bad = static_cast<std::ptrdiff_t>(i);
    p = advance(p, s);
  }
  if (last_bad < 0) throw precondition_error("path has no bad flat step");
  const auto cut = static_cast<std::size_t>(last_bad);
  return {tau.start, "U" + tau.steps.substr(0, cut) + "D" + tau.steps.substr(cut + 1)};
}

inline SchroederPath lambda_to_tau(const SchroederPath& lambda, const BarrierSet& bar) {
  if (lambda.steps.empty()) throw precondition_error("path is empty");
  if (lambda.start.y != 0) throw precondition_error("path must start on the x-axis");
  if (has_bad_flat(lambda, bar)) throw precondition_error("path has a bad flat step");
  if (lambda.steps.front() != 'U') throw precondition_error("path must start with an up step");
  Point p = lambda.start;
  for (std::size_t i = 0; i < lambda.steps.size(); ++i) {
    p = advance(p, to_step(lambda.steps[i]));
    if (p.y == 0) {
      return {lambda.start, lambda.steps.substr(1, i - 1) + "F" + lambda.steps.substr(i + 1)};
    }
  }
  throw precondition_error("path never returns to the x-axis");
}

// ---------------------------------------------------------------------------
// Tuple lifts between families with shifted barriers.

namespace detail {

inline PathTuple anchored(const PathTuple& words_only, const BarrierSet& bar) {
  const auto ends = endpoints(static_cast<int>(words_only.size()), bar);
  PathTuple out = words_only;
  for (std::size_t i = 0; i < out.size(); ++i) out[i].start = {ends.sources[i], 0};
  return out;
}

inline void require_member(const PathTuple& t, const BarrierSet& bar, Family family,
                           const char* what) {
  if (!is_member(t, bar, family)) throw precondition_error(what);
}

inline bool gaps_at_least_two(const BarrierSet& bar) {
  for (std::size_t i = 1; i < bar.size(); ++i)
    if (bar[i] - bar[i - 1] < 2) return false;
  return true;
}

inline bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace detail

/// Large n-tuple for offsets `bar` to a small (n+1)-tuple for bar + 2:
/// a new innermost peak UD, then every path wrapped as UU path DD.
inline PathTuple lift_add_peak(const PathTuple& tuple, const BarrierSet& bar) {
  detail::require_member(tuple, bar, Family::all_flats, "source tuple is not a valid large tuple");
  const auto target = bar.shifted(2);
  PathTuple words{{{0, 0}, "UD"}};
  for (const auto& p : tuple) words.push_back({{0, 0}, "UU" + p.steps + "DD"});
  return detail::anchored(words, target);
}

/// Inverse of lift_add_peak; `bar` is the target offset set (all offsets >= 2).
inline PathTuple lower_add_peak(const PathTuple& tuple, const BarrierSet& bar) {
  detail::require_member(tuple, bar, Family::no_bad_flats, "tuple is not a valid small tuple");
  if (tuple.empty() || tuple.front().steps != "UD")
    throw precondition_error("innermost path must be UD");
  const auto source = bar.shifted(-2);
  PathTuple words;
  for (std::size_t i = 1; i < tuple.size(); ++i) {
    const auto& s = tuple[i].steps;
    if (s.size() < 4 || s.compare(0, 2, "UU") != 0 || !detail::ends_with(s, "DD"))
      throw precondition_error("path does not have the UU ... DD shape");
    words.push_back({{0, 0}, s.substr(2, s.size() - 4)});
  }
  auto out = detail::anchored(words, source);
  detail::require_member(out, source, Family::all_flats, "lowered tuple is not a valid large tuple");
  return out;
}

/// Large n-tuple for offsets `tail_minus_two` to a small n-tuple for
/// (1, tail_minus_two + 2): each path wrapped as U path D.
inline PathTuple lift_wrap(const PathTuple& tuple, const BarrierSet& tail_minus_two) {
  detail::require_member(tuple, tail_minus_two, Family::all_flats, "source tuple is not a valid large tuple");
  const auto target = tail_minus_two.shifted(2).prepended(1);
  if (!detail::gaps_at_least_two(target)) throw precondition_error("offset gaps must be at least 2");
  PathTuple words;
  for (const auto& p : tuple) words.push_back({{0, 0}, "U" + p.steps + "D"});
  return detail::anchored(words, target);
}

/// Inverse of lift_wrap; `bar` must start with offset 1.
inline PathTuple lower_wrap(const PathTuple& tuple, const BarrierSet& bar) {
  if (bar.empty() || bar[0] != 1) throw precondition_error("first offset must be 1");
  detail::require_member(tuple, bar, Family::no_bad_flats, "tuple is not a valid small tuple");
  const auto source = bar.tail().shifted(-2);
  PathTuple words;
  for (const auto& p : tuple) {
    const auto& s = p.steps;
    if (s.size() < 2 || s.front() != 'U' || s.back() != 'D')
      throw precondition_error("path does not have the U ... D shape");
    words.push_back({{0, 0}, s.substr(1, s.size() - 2)});
  }
  auto out = detail::anchored(words, source);
  detail::require_member(out, source, Family::all_flats, "lowered tuple is not a valid large tuple");
  return out;
}

/// Large (n-1)-tuple for offsets `tail_minus_two` to a large n-tuple for
/// (0, tail_minus_two + 2). The first path becomes a lone F; path i >= 2 is
/// U (path i-1 minus its final i-2 down steps) F D^(i-1).
inline PathTuple lift_add_flat(const PathTuple& tuple, const BarrierSet& tail_minus_two) {
  detail::require_member(tuple, tail_minus_two, Family::all_flats, "source tuple is not a valid large tuple");
  const auto target = tail_minus_two.shifted(2).prepended(0);
  if (!detail::gaps_at_least_two(target)) throw precondition_error("offset gaps must be at least 2");
  PathTuple words{{{0, 0}, "F"}};
  for (std::size_t i = 2; i <= tuple.size() + 1; ++i) {
    const auto& s = tuple[i - 2].steps;
    const std::string descent(i - 2, 'D');
    if (!detail::ends_with(s, descent))
      throw precondition_error("path " + std::to_string(i - 1) + " does not end with its descent run");
    words.push_back({{0, 0}, "U" + s.substr(0, s.size() - descent.size()) + "F" + std::string(i - 1, 'D')});
  }
  return detail::anchored(words, target);
}

/// Inverse of lift_add_flat; `bar` must start with offset 0.
inline PathTuple lower_add_flat(const PathTuple& tuple, const BarrierSet& bar) {
  if (bar.empty() || bar[0] != 0) throw precondition_error("first offset must be 0");
  detail::require_member(tuple, bar, Family::all_flats, "tuple is not a valid large tuple");
  if (tuple.empty() || tuple.front().steps != "F") throw precondition_error("innermost path must be F");
  const auto source = bar.tail().shifted(-2);
  PathTuple words;
  for (std::size_t i = 2; i <= tuple.size(); ++i) {
    const auto& s = tuple[i - 1].steps;
    const std::string suffix = "F" + std::string(i - 1, 'D');
    if (s.empty() || s.front() != 'U' || !detail::ends_with(s, suffix))
      throw precondition_error("path does not have the U ... F D..D shape");
    words.push_back({{0, 0}, s.substr(1, s.size() - 1 - suffix.size()) + std::string(i - 2, 'D')});
  }
  auto out = detail::anchored(words, source);
  detail::require_member(out, source, Family::all_flats, "lowered tuple is not a valid large tuple");
  return out;
}

}  // namespace tileforge
