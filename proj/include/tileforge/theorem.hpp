#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "tileforge/big_count.hpp"
#include "tileforge/deformation.hpp"
#include "tileforge/error.hpp"
#include "tileforge/geometry.hpp"
#include "tileforge/matching.hpp"
#include "tileforge/region_spec.hpp"
#include "tileforge/schroeder.hpp"

namespace tileforge {

inline constexpr int default_cell_budget = 128;

/// Brute-force cell budget: TILEFORGE_BUDGET if set to a positive integer,
/// otherwise default_cell_budget.
inline int cell_budget_from_env() {
  if (const char* v = std::getenv("TILEFORGE_BUDGET")) {
    char* end = nullptr;
    const long n = std::strtol(v, &end, 10);
    if (end != v && *end == '\0' && n > 0) return static_cast<int>(n);
  }
  return default_cell_budget;
}

/// |Pi_w(a_1..a_{k-1})| by determinant. Builds the geometry first so that
/// misaligned regions are rejected.
inline BigCount count_via_paths(const RegionSpec& spec) {
  const auto g = build_dissection(spec);
  return count_tuples(g.width, barrier_offsets(spec), Family::all_flats);
}

/// Perfect matchings of the dual graph; throws budget_exceeded above `budget` cells.
inline BigCount count_via_bruteforce(const RegionSpec& spec, int budget = default_cell_budget) {
  const auto g = build_dissection(spec);
  if (static_cast<int>(g.cells.size()) > budget)
    throw budget_exceeded(to_string(spec) + " has " + std::to_string(g.cells.size()) +
                          " cells, over the brute-force budget of " + std::to_string(budget));
  return count_perfect_matchings(dual_graph(g));
}

inline std::int64_t formula_exponent(int regular_cells, int width) {
  return static_cast<std::int64_t>(regular_cells) - static_cast<std::int64_t>(width) * (width + 1) / 2;
}

/// 2^(C - w(w+1)/2).
inline PowerOfTwo count_via_formula(const RegionSpec& spec) {
  const auto g = build_dissection(spec);
  const auto e = formula_exponent(count_regular_cells(g), g.width);
  if (e < 0) throw error("negative exponent " + std::to_string(e) + " for " + to_string(spec));
  return {e};
}

struct VerificationRecord {
  RegionSpec spec;
  bool applicable = false;
  std::string reason;  // why not applicable
  int cells = 0;
  int regular_cells = 0;
  int width = 0;
  BarrierSet barriers;
  std::optional<BigCount> m_paths;
  std::optional<BigCount> m_brute;  // empty when over budget
  std::optional<PowerOfTwo> formula;
  bool agree = false;
  double ms_paths = 0, ms_brute = 0, ms_formula = 0;
};

namespace detail {

template <class F>
auto timed(double& ms, F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  auto r = f();
  ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace detail

/// Runs all three engines and compares exactly. Never throws for bad specs;
/// they come back not applicable.
inline VerificationRecord verify(const RegionSpec& spec, int budget = default_cell_budget) {
  VerificationRecord rec;
  rec.spec = spec;
  Dissection g;
  try {
    g = build_dissection(spec);
    geometric_profile(g);
  } catch (const error& e) {
    rec.reason = e.what();
    return rec;
  }
  rec.applicable = true;
  rec.cells = static_cast<int>(g.cells.size());
  rec.regular_cells = count_regular_cells(g);
  rec.width = g.width;
  rec.barriers = barrier_offsets(spec);
  rec.m_paths = detail::timed(rec.ms_paths, [&] { return count_tuples(g.width, rec.barriers, Family::all_flats); });
  rec.formula = detail::timed(rec.ms_formula, [&] {
    return PowerOfTwo{formula_exponent(rec.regular_cells, g.width)};
  });
  if (rec.cells <= budget)
    rec.m_brute = detail::timed(rec.ms_brute, [&] { return count_perfect_matchings(dual_graph(g)); });
  rec.agree = rec.formula->exponent >= 0 && *rec.m_paths == rec.formula->value() &&
              (!rec.m_brute || *rec.m_brute == *rec.m_paths);
  return rec;
}

enum class ReductionCase {
  aztec_base,   // k = 1
  closed_even,  // d_k = 2x and a = x
  closed_odd,   // d_k = 2x + 1 and w = x + 1
  reduce_even,  // d_k = 2x and a > x
  reduce_odd    // d_k = 2x + 1 and w > x + 1
};

inline const char* to_string(ReductionCase c) {
  switch (c) {
    case ReductionCase::aztec_base: return "aztec-base";
    case ReductionCase::closed_even: return "closed-even";
    case ReductionCase::closed_odd: return "closed-odd";
    case ReductionCase::reduce_even: return "reduce-even";
    case ReductionCase::reduce_odd: return "reduce-odd";
  }
  return "?";
}

/// One step of the layer-peeling recurrence: M(parent) = 2^exponent M(child),
/// or M(parent) = 2^exponent outright for the terminal cases.
struct Reduction {
  ReductionCase kind = ReductionCase::aztec_base;
  RegionSpec parent;
  int x = 0;
  int width = 0;
  std::int64_t exponent = 0;
  std::optional<RegionSpec> child;
  // A child whose last spacing drops to 0 is not a region; the contract is
  // then checked on path families with these parameters.
  bool degenerate_child = false;
  BarrierSet child_barriers;
  int child_width = 0;

  bool terminal() const noexcept { return !child.has_value(); }
};

namespace detail {

inline std::int64_t falling_sum(int w, int terms) {
  std::int64_t s = 0;
  for (int i = 0; i < terms; ++i) s += w - i;
  return s;
}

// Offsets a_i for a spacing list that may end in 0.
inline BarrierSet offsets_allowing_zero(const std::vector<int>& d) {
  std::vector<int> out;
  int running = 0;
  const int k = static_cast<int>(d.size());
  for (int i = 1; i < k; ++i) {
    running += d[static_cast<std::size_t>(k - i)];
    out.push_back(running + i - 1);
  }
  return BarrierSet(std::move(out));
}

}  // namespace detail

inline Reduction reduce(const RegionSpec& spec) {
  const auto pr = profile(spec);
  Reduction r;
  r.parent = spec;
  r.width = pr.w;
  const int k = spec.k();
  const int dk = spec.d.back();
  r.x = dk / 2;
  if (k == 1) {
    r.kind = ReductionCase::aztec_base;
    r.exponent = static_cast<std::int64_t>(pr.w) * (pr.w + 1) / 2;
    return r;
  }
  std::vector<int> cd;
  int ca = 0;
  if (dk % 2 == 0) {
    r.exponent = detail::falling_sum(pr.w, r.x);
    if (spec.a == r.x) {
      r.kind = ReductionCase::closed_even;
      return r;
    }
    r.kind = ReductionCase::reduce_even;
    ca = spec.a - r.x;
    cd.assign(spec.d.begin(), spec.d.end() - 1);
    cd.back() -= 1;
  } else {
    r.exponent = detail::falling_sum(pr.w, r.x + 1);
    if (pr.w == r.x + 1) {
      r.kind = ReductionCase::closed_odd;
      r.exponent += k - 1;
      return r;
    }
    r.kind = ReductionCase::reduce_odd;
    ca = spec.a - r.x - 1;
    cd.assign(spec.d.begin(), spec.d.end() - 1);
  }
  r.child = RegionSpec{ca, cd};
  r.child_barriers = detail::offsets_allowing_zero(cd);
  r.child_width = std::accumulate(cd.begin(), cd.end(), 0) - ca;
  r.degenerate_child = ca < 1 || std::any_of(cd.begin(), cd.end(), [](int v) { return v < 1; });
  if (!r.degenerate_child) {
    try {
      build_dissection(*r.child);
    } catch (const error&) {
      r.degenerate_child = true;
    }
  }
  return r;
}

struct ReductionCheck {
  BigCount parent_count;
  std::optional<BigCount> child_count;
  bool holds = false;
};

/// Both sides by the path engine.
inline ReductionCheck check_reduction(const Reduction& r) {
  ReductionCheck c;
  c.parent_count = count_tuples(r.width, barrier_offsets(r.parent), Family::all_flats);
  const BigCount factor = PowerOfTwo{r.exponent}.value();
  if (r.terminal()) {
    c.holds = c.parent_count == factor;
    return c;
  }
  c.child_count = r.degenerate_child ? count_tuples(r.child_width, r.child_barriers, Family::all_flats)
                                     : count_via_paths(*r.child);
  c.holds = c.parent_count == factor * *c.child_count;
  return c;
}

/// Closed form for the two terminal shapes; nothing for other specs.
inline std::optional<PowerOfTwo> closed_forms(const RegionSpec& spec) {
  if (!validate(spec).ok || spec.d.empty()) return std::nullopt;
  const int k = spec.k();
  const int dk = spec.d.back();
  const int x = dk / 2;
  const int w = spec.total() - spec.a;
  auto all_ones = [&](std::size_t from) {
    return std::all_of(spec.d.begin() + static_cast<std::ptrdiff_t>(from), spec.d.end() - 1,
                       [](int v) { return v == 1; });
  };
  if (dk % 2 == 0 && all_ones(0) && spec.a == x) return PowerOfTwo{detail::falling_sum(w, x)};
  if (dk % 2 == 1 && k >= 2 && spec.d.front() == 2 && all_ones(1) && w == x + 1)
    return PowerOfTwo{k - 1 + detail::falling_sum(w, x + 1)};
  return std::nullopt;
}

/// Every spacing list with sum <= max_sum and at most max_k parts, paired with
/// each a for which the region builds, sorted by spec.
inline std::vector<RegionSpec> aligned_specs(int max_sum, int max_k) {
  std::vector<RegionSpec> out;
  std::vector<int> d;
  auto rec = [&](auto&& self, int remaining) -> void {
    if (!d.empty()) {
      const int s = std::accumulate(d.begin(), d.end(), 0);
      for (int a = 1; a < s; ++a) {
        RegionSpec spec{a, d};
        if (!validate(spec).ok) continue;
        try {
          build_dissection(spec);
          out.push_back(spec);
        } catch (const error&) {
        }
      }
    }
    if (static_cast<int>(d.size()) == max_k) return;
    for (int v = 1; v <= remaining; ++v) {
      d.push_back(v);
      self(self, remaining - v);
      d.pop_back();
    }
  };
  if (max_sum >= 1 && max_k >= 1) rec(rec, max_sum);
  std::sort(out.begin(), out.end());
  return out;
}

/// Verifies every aligned spec in range; output sorted by spec regardless of
/// the thread schedule.
inline std::vector<VerificationRecord> sweep(int max_sum, int max_k, int budget = default_cell_budget,
                                             unsigned threads = 0) {
  const auto specs = aligned_specs(max_sum, max_k);
  std::vector<VerificationRecord> out(specs.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, specs.size())));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < specs.size(); i = next++) out[i] = verify(specs[i], budget);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return out;
}

struct DouglasMatch {
  int n = 0;
  BigCount target;
  std::vector<RegionSpec> count_matches;    // specs whose count is 2^(2n(n+1))
  std::vector<RegionSpec> douglas_matches;  // those that also have the Douglas structure
  std::optional<RegionSpec> chosen;
};

/// Searches aligned specs with sum(d) <= max_sum and k <= max_k for regions
/// counted by 2^(2n(n+1)) that have drawn-in diagonals on every second row.
inline std::vector<DouglasMatch> douglas_search(int max_n = 2, int max_sum = 14, int max_k = 5) {
  const auto specs = aligned_specs(max_sum, max_k);
  std::map<RegionSpec, BigCount> counts;
  for (const auto& s : specs) counts[s] = count_via_paths(s);
  std::vector<DouglasMatch> out;
  for (int n = 1; n <= max_n; ++n) {
    DouglasMatch m;
    m.n = n;
    m.target = PowerOfTwo{2 * n * (n + 1)}.value();
    for (const auto& [s, c] : counts) {
      if (c != m.target) continue;
      m.count_matches.push_back(s);
      if (has_douglas_structure(build_dissection(s))) m.douglas_matches.push_back(s);
    }
    if (!m.douglas_matches.empty()) m.chosen = m.douglas_matches.front();
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace tileforge
