#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace tileforge;

namespace {

const std::vector<BarrierSet> family{{1}, {2}, {1, 4}, {2, 5, 8}, {3, 6}, {4, 10, 13}};

std::vector<std::string> words(const std::vector<SchroederPath>& ps) {
  std::vector<std::string> w;
  for (const auto& p : ps) w.push_back(p.steps);
  return w;
}

}  // namespace

TEST_CASE("step rules") {
  CHECK_FALSE(step_allowed(Step::up, {-2, 2}, BarrierSet{4}));
  CHECK_FALSE(step_allowed(Step::down, {0, 1}, BarrierSet{0, 4}));
  CHECK(step_allowed(Step::flat, {-7, 0}, BarrierSet{0, 1, 2, 3, 4, 5, 6, 7}));
  CHECK(step_allowed(Step::up, {-2, 2}, BarrierSet{3}));
}

TEST_CASE("step rules match literal segment crossing") {
  for (int trial = 0; trial < 300; ++trial) {
    const auto bar = support::random_barriers(4);
    for (int x = -12; x <= 6; ++x)
      for (int y = 0; y <= 6; ++y)
        for (char s : std::string("UDF")) {
          if (s == 'D' && y == 0) continue;
          CHECK(step_allowed(to_step(s), {x, y}, bar) == !support::crosses_barrier({x, y}, s, bar));
        }
  }
}

TEST_CASE("bad flats") {
  CHECK(bad_flat(1, BarrierSet{2, 5, 8}));
  CHECK_FALSE(bad_flat(-3, BarrierSet{2}));
  CHECK_FALSE(bad_flat(-1, BarrierSet{0}));
  CHECK(bad_flat(-1, BarrierSet{}));
}

TEST_CASE("count_paths examples") {
  CHECK(count_paths(-1, 1, BarrierSet{2}, Family::all_flats) == 2);
  CHECK(count_paths(-1, 1, BarrierSet{2}, Family::no_bad_flats) == 1);
  CHECK(count_paths(-3, 1, BarrierSet{1}, Family::no_bad_flats) == 2);
  CHECK(words(enumerate_paths(-3, 1, BarrierSet{1}, Family::no_bad_flats)) ==
        std::vector<std::string>{"UUDD", "UFD"});
  CHECK(count_paths(-3, 3, BarrierSet{}, Family::all_flats) == 22);
  CHECK(count_paths(-3, 0, BarrierSet{}, Family::all_flats) == 0);
  CHECK(count_paths(3, 1, BarrierSet{}, Family::all_flats) == 0);
  CHECK(count_paths(4, 4, BarrierSet{}, Family::all_flats) == 1);
}

TEST_CASE("large Schroeder numbers without barriers") {
  const int expected[] = {1, 2, 6, 22, 90, 394, 1806, 8558};
  for (int n = 0; n < 8; ++n) CHECK(count_paths(0, 2 * n, BarrierSet{}, Family::all_flats) == expected[n]);
}

TEST_CASE("DP and enumeration agree with the crossing oracle") {
  for (int trial = 0; trial < 150; ++trial) {
    const auto bar = support::random_barriers(3);
    const int x0 = -1 - 2 * support::uniform(0, 4);
    const int x1 = 2 * support::uniform(0, 3) + 1;
    for (bool forbid : {false, true}) {
      const auto fam = forbid ? Family::no_bad_flats : Family::all_flats;
      auto expect = support::oracle_paths(x0, x1, bar, forbid);
      auto got = words(enumerate_paths(x0, x1, bar, fam));
      std::sort(expect.begin(), expect.end());
      std::sort(got.begin(), got.end());
      CHECK(got == expect);
      CHECK(count_paths(x0, x1, bar, fam) == BigCount(expect.size()));
      for (const auto& p : enumerate_paths(x0, x1, bar, fam)) CHECK(is_compatible(p, bar, fam));
    }
  }
}

TEST_CASE("endpoints skip excluded odd abscissae") {
  CHECK(endpoints(3, BarrierSet{}).sources == std::vector<int>{-1, -3, -5});
  CHECK(endpoints(8, BarrierSet{4, 10, 13}).sources == std::vector<int>{-1, -3, -5, -7, -9, -11, -15, -17});
  CHECK(endpoints(1, BarrierSet{1}).sources == std::vector<int>{-3});
  CHECK(endpoints(3, BarrierSet{}).sinks == std::vector<int>{1, 3, 5});
}

TEST_CASE("path matrices") {
  CHECK(path_matrix(1, BarrierSet{2}, Family::all_flats).entries == IntMatrix{{2}});
  CHECK(path_matrix(2, BarrierSet{}, Family::all_flats).entries == IntMatrix{{2, 6}, {6, 22}});
  CHECK(path_matrix(1, BarrierSet{2}, Family::no_bad_flats).entries == IntMatrix{{1}});
  CHECK(path_matrix(2, BarrierSet{0, 4}, Family::all_flats).entries == IntMatrix{{1, 3}, {2, 8}});
  CHECK_THROWS_AS(path_matrix(0, BarrierSet{}, Family::all_flats), precondition_error);
}

TEST_CASE("determinant examples") {
  CHECK(determinant(IntMatrix{{2}}) == 2);
  CHECK(determinant(IntMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}) == 1);
  CHECK(determinant(IntMatrix{{2, 6}, {6, 22}}) == 8);
  CHECK(determinant(IntMatrix{{0, 1}, {1, 0}}) == -1);
  CHECK(determinant(IntMatrix{{1, 2}, {2, 4}}) == 0);
  CHECK(determinant(IntMatrix(0)) == 1);
}

TEST_CASE("Bareiss agrees with cofactor expansion") {
  for (int trial = 0; trial < 400; ++trial) {
    const int n = support::uniform(1, 4);
    IntMatrix m(static_cast<std::size_t>(n));
    std::vector<std::vector<BigCount>> rows(static_cast<std::size_t>(n), std::vector<BigCount>(static_cast<std::size_t>(n)));
    const bool sparse = trial % 3 == 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const int v = sparse ? support::uniform(-1, 1) * support::uniform(0, 1) : support::uniform(-9, 9);
        m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = v;
        rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
      }
    CHECK(determinant(m) == support::cofactor_det(rows));
  }
}

TEST_CASE("tuple counts") {
  CHECK(count_tuples(2, BarrierSet{}, Family::all_flats) == 8);
  CHECK(count_tuples(2, BarrierSet{0, 4}, Family::all_flats) == 2);
  CHECK(count_tuples(1, BarrierSet{1, 3}, Family::no_bad_flats) == 4);
  CHECK(count_tuples(1, BarrierSet{1, 3, 5}, Family::no_bad_flats) == 8);
  CHECK(brute_count_tuples(1, BarrierSet{2}, Family::all_flats) == 2);
  CHECK(brute_count_tuples(2, BarrierSet{0, 4}, Family::all_flats) == 2);
  CHECK(brute_count_tuples(2, BarrierSet{}, Family::all_flats) == 8);
  CHECK_THROWS_AS(brute_count_tuples(4, BarrierSet{}, Family::all_flats, 1000), budget_exceeded);
}

TEST_CASE("no-barrier tuple counts are 2^(n(n+1)/2)") {
  for (int n = 1; n <= 6; ++n) CHECK(count_tuples(n, BarrierSet{}, Family::all_flats) == PowerOfTwo{n * (n + 1) / 2}.value());
}

TEST_CASE("determinant equals exhaustive tuple count") {
  for (const auto& bar : family)
    for (int n = 1; n <= 3; ++n)
      for (auto fam : {Family::all_flats, Family::no_bad_flats}) {
        const auto tuples = enumerate_tuples(n, bar, fam);
        CHECK(count_tuples(n, bar, fam) == BigCount(tuples.size()));
        for (const auto& t : tuples) CHECK(is_member(t, bar, fam));
      }
}

namespace {

bool good_flat_at(int x, const BarrierSet& bar) {
  for (int a : bar.offsets())
    if (x == -a - 1) return true;
  return false;
}

}  // namespace

TEST_CASE("r = 2 s away from good-flat sources") {
  // Bar(2): the second source -3 starts a good flat, so r_21 = 3 (FUD, FF, UFD) and s_21 = 2.
  CHECK(count_paths(-3, 1, BarrierSet{2}, Family::all_flats) == 3);
  CHECK(count_paths(-3, 1, BarrierSet{2}, Family::no_bad_flats) == 2);
  for (const auto& bar : family) {
    const auto ends = endpoints(5, bar);
    const auto r = path_matrix(5, bar, Family::all_flats);
    const auto s = path_matrix(5, bar, Family::no_bad_flats);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j) {
        const int x = ends.sources[i];
        const BigCount flat_start =
            good_flat_at(x, bar) ? count_paths(x + 2, ends.sinks[j], bar, Family::no_bad_flats) : BigCount(0);
        CHECK(r.entries(i, j) == 2 * s.entries(i, j) - flat_start);
      }
  }
}

TEST_CASE("r = 2 s holds for odd offsets") {
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto bar = support::random_barriers(3, 2, 5);
    const auto& o = bar.offsets();
    if (bar.empty() || bar[0] < 1 || std::any_of(o.begin(), o.end(), [](int a) { return a % 2 == 0; })) continue;
    ++checked;
    const auto r = path_matrix(4, bar, Family::all_flats);
    const auto s = path_matrix(4, bar, Family::no_bad_flats);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) CHECK(r.entries(i, j) == 2 * s.entries(i, j));
  }
  CHECK(checked > 10);
}

TEST_CASE("bad flat removal examples") {
  const BarrierSet b2{2}, b1{1};
  CHECK(tau_to_lambda({{-1, 0}, "F"}, b2).steps == "UD");
  CHECK(tau_to_lambda({{-3, 0}, "UDF"}, b1).steps == "UUDD");
  CHECK(tau_to_lambda({{-3, 0}, "FF"}, b1).steps == "UFD");
  CHECK(lambda_to_tau({{-1, 0}, "UD"}, b2).steps == "F");
  CHECK(lambda_to_tau({{-3, 0}, "UUDD"}, b1).steps == "UDF");
  CHECK_THROWS_AS(tau_to_lambda({{-3, 0}, "UFD"}, b1), precondition_error);
  CHECK_THROWS_AS(lambda_to_tau({{-3, 0}, ""}, b1), precondition_error);
  CHECK_THROWS_AS(lambda_to_tau({{-3, 0}, "FF"}, b1), precondition_error);
}

TEST_CASE("bad flat removal is a bijection on enumerated sets") {
  for (const auto& bar : family)
    for (int i = 1; i <= 4; ++i)
      for (int j = 1; i + j <= 5; ++j) {
        const auto ends = endpoints(i, bar);
        const int from = ends.sources.back();
        const int to = 2 * j - 1;
        std::vector<SchroederPath> s, sp;
        std::size_t flat_start = 0;
        for (auto& p : enumerate_paths(from, to, bar, Family::all_flats)) {
          if (has_bad_flat(p, bar))
            s.push_back(p);
          else if (p.steps.front() == 'U')
            sp.push_back(p);
          else
            ++flat_start;
        }
        CHECK(s.size() == sp.size());
        CHECK((flat_start > 0) == (good_flat_at(from, bar) && from + 2 <= to));
        std::set<SchroederPath> image;
        for (const auto& p : s) {
          const auto l = tau_to_lambda(p, bar);
          CHECK(is_compatible(l, bar, Family::no_bad_flats));
          CHECK(l.end() == p.end());
          CHECK(lambda_to_tau(l, bar) == p);
          image.insert(l);
        }
        CHECK(image == std::set<SchroederPath>(sp.begin(), sp.end()));
        for (const auto& p : sp) CHECK(tau_to_lambda(lambda_to_tau(p, bar), bar) == p);
      }
}

TEST_CASE("tuple lifts are bijections onto their targets") {
  SECTION("peak lift") {
    for (const auto& bar : family)
      for (int n = 0; n <= 2; ++n) {
        const auto src = enumerate_tuples(n, bar, Family::all_flats);
        const auto dst = enumerate_tuples(n + 1, bar.shifted(2), Family::no_bad_flats);
        std::set<PathTuple> image;
        for (const auto& t : src) {
          const auto l = lift_add_peak(t, bar);
          CHECK(lower_add_peak(l, bar.shifted(2)) == t);
          image.insert(l);
        }
        CHECK(image == std::set<PathTuple>(dst.begin(), dst.end()));
      }
    // The empty tuple lifts to the lone peak.
    CHECK(lift_add_peak({}, BarrierSet{2}) == PathTuple{{{-1, 0}, "UD"}});
  }
  SECTION("wrap lift") {
    for (const auto& tail : std::vector<BarrierSet>{{4}, {5, 8}, {3}, {6}, {3, 6}})
      for (int n = 1; n <= 2; ++n) {
        const auto src_bar = tail.shifted(-2);
        const auto dst_bar = tail.prepended(1);
        const auto src = enumerate_tuples(n, src_bar, Family::all_flats);
        const auto dst = enumerate_tuples(n, dst_bar, Family::no_bad_flats);
        std::set<PathTuple> image;
        for (const auto& t : src) {
          const auto l = lift_wrap(t, src_bar);
          for (std::size_t i = 0; i < t.size(); ++i) CHECK(l[i].steps == "U" + t[i].steps + "D");
          CHECK(lower_wrap(l, dst_bar) == t);
          image.insert(l);
        }
        CHECK(image == std::set<PathTuple>(dst.begin(), dst.end()));
      }
  }
  SECTION("flat lift") {
    for (const auto& tail : std::vector<BarrierSet>{{4}, {3, 7}, {2}, {5, 8}, {2, 5}})
      for (int n = 2; n <= 3; ++n) {
        const auto src_bar = tail.shifted(-2);
        const auto dst_bar = tail.prepended(0);
        const auto src = enumerate_tuples(n - 1, src_bar, Family::all_flats);
        const auto dst = enumerate_tuples(n, dst_bar, Family::all_flats);
        std::set<PathTuple> image;
        for (const auto& t : src) {
          const auto l = lift_add_flat(t, src_bar);
          CHECK(lower_add_flat(l, dst_bar) == t);
          image.insert(l);
        }
        CHECK(image == std::set<PathTuple>(dst.begin(), dst.end()));
      }
    CHECK(count_tuples(2, BarrierSet{0, 4}, Family::all_flats) == count_tuples(1, BarrierSet{2}, Family::all_flats));
  }
  CHECK_THROWS_AS(lift_wrap({}, BarrierSet{0}), precondition_error);
  CHECK_THROWS_AS(lower_add_flat({}, BarrierSet{1}), precondition_error);
}

TEST_CASE("shifted-family count identities by determinant") {
  for (const auto& bar : family)
    for (int n = 1; n <= 4; ++n) {
      CHECK(count_tuples(n, bar, Family::all_flats) == count_tuples(n + 1, bar.shifted(2), Family::no_bad_flats));
      if (bar[0] >= 2 || bar.size() > 1) {
        const auto tail = bar[0] >= 3 ? bar : bar.tail();
        if (!tail.empty() && tail[0] >= 3) {
          CHECK(count_tuples(n, tail.prepended(1), Family::no_bad_flats) ==
                count_tuples(n, tail.shifted(-2), Family::all_flats));
        }
        if (!tail.empty() && tail[0] >= 2) {
          CHECK(count_tuples(n, tail.prepended(0), Family::all_flats) ==
                count_tuples(n - 1, tail.shifted(-2), Family::all_flats));
        }
      }
    }
}

TEST_CASE("budgets and malformed words") {
  CHECK_THROWS_AS(enumerate_paths(-21, 21, BarrierSet{}, Family::all_flats, 1000), budget_exceeded);
  CHECK_THROWS_AS(to_step('X'), parse_error);
  CHECK(parse_family("G") == Family::no_bad_flats);
  CHECK(parse_family("Pi") == Family::all_flats);
  CHECK_THROWS_AS(parse_family("Q"), parse_error);
}
