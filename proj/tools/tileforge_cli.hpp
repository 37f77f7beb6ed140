#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "tileforge/json_io.hpp"
#include "tileforge/tileforge.hpp"

namespace tileforge::cli {

enum exit_code : int { ok = 0, failed = 1, usage = 2 };

struct SpecSource {
  std::optional<int> a;
  std::string d;
  std::string text;
  std::string file;

  void attach(CLI::App* cmd) {
    cmd->add_option("--a", a, "side parameter a");
    cmd->add_option("--d", d, "comma separated spacings d_1,...,d_k");
    cmd->add_option("--spec", text, "region as 'a=<int> d=<int>,...'");
    cmd->add_option("--spec-file", file, "file holding the region description");
  }

  RegionSpec resolve() const {
    if (!file.empty()) {
      std::ifstream in(file);
      if (!in) throw parse_error("cannot read spec file '" + file + "'");
      std::stringstream ss;
      ss << in.rdbuf();
      return parse_spec(ss.str());
    }
    if (!text.empty()) return parse_spec(text);
    if (!a || d.empty()) throw parse_error("give --a and --d, --spec, or --spec-file");
    return parse_spec("a=" + std::to_string(*a) + " d=" + d);
  }
};

inline std::string pow_text(const BigCount& v) {
  std::string s = to_decimal(v);
  if (auto e = exact_log2(v)) s += " (2^" + std::to_string(*e) + ")";
  return s;
}

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

inline void write_output(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw parse_error("cannot write '" + path + "'");
  f << text;
}

template <class T>
std::vector<T> sorted_unique(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

/// Runs one command line; returns the exit status.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact domino tiling counts for generalized Douglas regions", "tileforge"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);
  const int budget = cell_budget_from_env();

  std::function<int()> action;

  // count
  SpecSource count_src;
  std::string count_method = "all", count_format = "plain";
  auto* count_cmd = app.add_subcommand("count", "count tilings by formula, determinant and brute force");
  count_src.attach(count_cmd);
  count_cmd->add_option("--method", count_method, "formula | lgv | brute | all")
      ->check(CLI::IsMember({"formula", "lgv", "brute", "all"}));
  count_cmd->add_option("--format", count_format, "plain | json")->check(CLI::IsMember({"plain", "json"}));
  count_cmd->callback([&] {
    action = [&]() -> int {
      const auto spec = count_src.resolve();
      const auto g = build_dissection(spec);
      const int cells = static_cast<int>(g.cells.size());
      std::optional<BigCount> lgv, brute;
      std::optional<PowerOfTwo> formula;
      bool skipped = false;
      if (count_method == "formula" || count_method == "all") formula = count_via_formula(spec);
      if (count_method == "lgv" || count_method == "all") lgv = count_via_paths(spec);
      if (count_method == "brute") brute = count_via_bruteforce(spec, budget);
      if (count_method == "all") {
        if (cells <= budget)
          brute = count_via_bruteforce(spec, budget);
        else
          skipped = true;
      }
      std::vector<BigCount> values;
      if (formula) values.push_back(formula->value());
      if (lgv) values.push_back(*lgv);
      if (brute) values.push_back(*brute);
      const bool agree = std::all_of(values.begin(), values.end(), [&](const BigCount& v) { return v == values[0]; });
      if (count_format == "json") {
        json_io::json j{{"spec", json_io::spec(spec)}, {"method", count_method}, {"agree", agree}, {"cells", cells}};
        j["formula"] = formula ? json_io::power(*formula) : json_io::json(nullptr);
        j["lgv"] = lgv ? json_io::count(*lgv) : json_io::json(nullptr);
        j["brute"] = brute ? json_io::count(*brute) : json_io::json(nullptr);
        j["brute_skipped"] = skipped;
        out << json_io::dump(j);
      } else {
        out << "M = " << pow_text(values.front()) << '\n';
        if (formula) out << "formula: 2^" << formula->exponent << '\n';
        if (lgv) out << "lgv: " << to_decimal(*lgv) << '\n';
        if (brute) out << "brute: " << to_decimal(*brute) << '\n';
        if (skipped)
          out << "note: brute force skipped (" << cells << " cells > budget " << budget << ")\n";
        out << (agree ? "engines agree" : "ENGINES DISAGREE") << '\n';
      }
      return agree ? ok : failed;
    };
  });

  // profile
  SpecSource profile_src;
  std::string profile_format = "plain";
  auto* profile_cmd = app.add_subcommand("profile", "validate a region and print its row structure");
  profile_src.attach(profile_cmd);
  profile_cmd->add_option("--format", profile_format, "plain | json")->check(CLI::IsMember({"plain", "json"}));
  profile_cmd->callback([&] {
    action = [&]() -> int {
      const auto spec = profile_src.resolve();
      const auto report = validate(spec);
      if (!report.ok) {
        for (const auto& v : report.violations) err << "violation " << v.name << ": " << v.message << '\n';
        return failed;
      }
      const auto pr = profile(spec);
      const auto bars = barrier_offsets(spec);
      if (profile_format == "json") {
        auto j = json_io::profile(pr);
        j["spec"] = json_io::spec(spec);
        j["barriers"] = json_io::barriers(bars);
        out << json_io::dump(j);
      } else {
        out << "w=" << pr.w << " p=" << pr.p << " q=" << pr.q << " l=" << pr.l << " barriers=" << bars.to_string()
            << '\n';
      }
      return ok;
    };
  });

  // render
  SpecSource render_src;
  std::string render_format = "ascii", render_output;
  bool render_deformed = false;
  std::optional<std::size_t> render_tiling;
  auto* render_cmd = app.add_subcommand("render", "draw the dissection or the deformed region");
  render_src.attach(render_cmd);
  render_cmd->add_option("--format", render_format, "svg | ascii");
  render_cmd->add_flag("--deformed", render_deformed, "draw the sheared grid region with barriers");
  render_cmd->add_option("--tiling", render_tiling, "overlay the i-th enumerated tiling (0-based)");
  render_cmd->add_option("--output", render_output, "write to this file instead of standard output");
  render_cmd->callback([&] {
    action = [&]() -> int {
      const auto format = parse_render_format(render_format);
      const auto g = build_dissection(render_src.resolve());
      if (render_deformed) {
        const auto dr = deform(g);
        std::optional<DominoTiling> t;
        if (render_tiling) {
          const auto all = enumerate_compatible_tilings(dr, *render_tiling + 1);
          if (all.size() <= *render_tiling) throw precondition_error("tiling index out of range");
          t = all[*render_tiling];
        }
        write_output(render(dr, t, format), render_output, out);
      } else {
        std::optional<Matching> t;
        if (render_tiling) {
          const auto all = enumerate_perfect_matchings(dual_graph(g), *render_tiling + 1);
          if (all.matchings.size() <= *render_tiling) throw precondition_error("tiling index out of range");
          t = all.matchings[*render_tiling];
        }
        write_output(render(g, t, format), render_output, out);
      }
      return ok;
    };
  });

  // schroeder
  auto* sch = app.add_subcommand("schroeder", "barrier-constrained Schroeder path counts");
  sch->require_subcommand(1);
  std::string sch_bars, sch_family = "H", sch_format = "plain";
  int sch_from = 0, sch_to = 0, sch_n = 1;
  bool sch_brute = false, sch_list = false;
  auto add_common = [&](CLI::App* c) {
    c->add_option("--barriers", sch_bars, "comma separated offsets; empty for none");
    c->add_option("--family", sch_family, "H (all flats) or G (no bad flats)");
  };
  auto* sch_count = sch->add_subcommand("count", "paths from (from,0) to (to,0)");
  add_common(sch_count);
  sch_count->add_option("--from", sch_from)->required();
  sch_count->add_option("--to", sch_to)->required();
  sch_count->callback([&] {
    action = [&]() -> int {
      out << to_decimal(count_paths(sch_from, sch_to, BarrierSet::parse(sch_bars), parse_family(sch_family)))
          << '\n';
      return ok;
    };
  });
  auto* sch_matrix = sch->add_subcommand("matrix", "the n x n path count matrix");
  add_common(sch_matrix);
  sch_matrix->add_option("--n", sch_n)->required();
  sch_matrix->add_option("--format", sch_format)->check(CLI::IsMember({"plain", "json"}));
  sch_matrix->callback([&] {
    action = [&]() -> int {
      const auto m = path_matrix(sch_n, BarrierSet::parse(sch_bars), parse_family(sch_family));
      if (sch_format == "json") {
        out << json_io::dump(json_io::matrix(m));
      } else {
        for (std::size_t i = 0; i < m.entries.order(); ++i) {
          for (std::size_t j = 0; j < m.entries.order(); ++j) out << (j ? " " : "") << to_decimal(m.entries(i, j));
          out << '\n';
        }
      }
      return ok;
    };
  });
  auto* sch_det = sch->add_subcommand("det", "determinant of the path count matrix");
  add_common(sch_det);
  sch_det->add_option("--n", sch_n)->required();
  sch_det->callback([&] {
    action = [&]() -> int {
      out << to_decimal(determinant(path_matrix(sch_n, BarrierSet::parse(sch_bars), parse_family(sch_family))))
          << '\n';
      return ok;
    };
  });
  auto* sch_tuples = sch->add_subcommand("tuples", "non-intersecting n-tuples");
  add_common(sch_tuples);
  sch_tuples->add_option("--n", sch_n)->required();
  sch_tuples->add_flag("--brute", sch_brute, "also count by exhaustive enumeration");
  sch_tuples->add_flag("--list", sch_list, "print every tuple");
  sch_tuples->callback([&] {
    action = [&]() -> int {
      const auto bar = BarrierSet::parse(sch_bars);
      const auto fam = parse_family(sch_family);
      const auto det = count_tuples(sch_n, bar, fam);
      out << "det=" << to_decimal(det);
      bool agree = true;
      if (sch_brute || sch_list) {
        const auto all = enumerate_tuples(sch_n, bar, fam);
        out << " brute=" << all.size();
        agree = BigCount(all.size()) == det;
        if (sch_list) {
          out << '\n';
          for (const auto& t : all) {
            for (std::size_t i = 0; i < t.size(); ++i) out << (i ? " " : "") << (t[i].steps.empty() ? "-" : t[i].steps);
            out << '\n';
          }
          return agree ? ok : failed;
        }
      }
      out << '\n';
      return agree ? ok : failed;
    };
  });

  // bijection
  auto* bij = app.add_subcommand("bijection", "round-trip checks of the bijections");
  bij->require_subcommand(1);
  SpecSource bij_src;
  std::size_t bij_cap = 100000;
  auto* bij_tilings = bij->add_subcommand("tilings", "tilings <-> path tuples <-> shifted tuples");
  bij_src.attach(bij_tilings);
  bij_tilings->add_option("--cap", bij_cap, "maximum number of tilings to enumerate");
  bij_tilings->callback([&] {
    action = [&]() -> int {
      const auto spec = bij_src.resolve();
      const auto dr = deform(build_dissection(spec));
      const auto bar = barrier_offsets(spec);
      bool truncated = false;
      const auto tilings = enumerate_compatible_tilings(dr, bij_cap, &truncated);
      std::set<PathTuple> images;
      bool round = true, member = true;
      for (const auto& t : tilings) {
        const auto taus = tiling_to_paths(dr, t);
        round = round && paths_to_tiling(dr, taus) == t;
        const auto pis = shift_paths(taus, bar);
        member = member && is_member(pis, bar, Family::all_flats) && unshift_paths(pis) == taus;
        images.insert(pis);
      }
      const auto target = count_tuples(dr.width(), bar, Family::all_flats);
      const bool onto = !truncated && BigCount(images.size()) == target;
      out << "tilings=" << tilings.size() << (truncated ? "+" : "") << " tuples=" << images.size()
          << " |Pi|=" << to_decimal(target) << " roundtrip=" << (round ? "ok" : "FAIL")
          << " members=" << (member ? "ok" : "FAIL") << " bijective=" << yes_no(onto) << '\n';
      return round && member && (truncated || onto) ? ok : failed;
    };
  });
  std::string rs_bars;
  int rs_from = 0, rs_to = 0;
  auto* bij_rs = bij->add_subcommand("rs", "bad-flat removal between large and small path sets");
  bij_rs->add_option("--barriers", rs_bars);
  bij_rs->add_option("--from", rs_from)->required();
  bij_rs->add_option("--to", rs_to)->required();
  bij_rs->callback([&] {
    action = [&]() -> int {
      const auto bar = BarrierSet::parse(rs_bars);
      // Paths opening with a good flat have no partner and are reported apart.
      std::vector<SchroederPath> s, s_prime;
      std::size_t flat_start = 0;
      for (auto& p : enumerate_paths(rs_from, rs_to, bar, Family::all_flats)) {
        if (has_bad_flat(p, bar))
          s.push_back(p);
        else if (p.steps.front() == 'U')
          s_prime.push_back(p);
        else
          ++flat_start;
      }
      std::vector<SchroederPath> forward, back;
      for (const auto& p : s) forward.push_back(tau_to_lambda(p, bar));
      for (const auto& p : s_prime) back.push_back(lambda_to_tau(p, bar));
      bool okay = sorted_unique(forward) == sorted_unique(s_prime) && sorted_unique(back) == sorted_unique(s) &&
                  forward.size() == s_prime.size();
      for (const auto& p : s) okay = okay && lambda_to_tau(tau_to_lambda(p, bar), bar) == p;
      out << "|S|=" << s.size() << " |S'|=" << s_prime.size();
      if (flat_start) out << " flat-start=" << flat_start;
      out << " roundtrip=" << (okay ? "ok" : "FAIL") << '\n';
      return okay ? ok : failed;
    };
  });
  std::string lift_kind = "a", lift_bars;
  int lift_n = 1;
  auto* bij_lift = bij->add_subcommand("lift", "tuple lifts between shifted barrier families");
  bij_lift->add_option("--kind", lift_kind, "a: Pi_n(B) -> Lambda_n+1(B+2); b: Pi_n(B) -> Lambda_n(1,B+2); "
                                            "c: Pi_n(B) -> Pi_n+1(0,B+2)")
      ->check(CLI::IsMember({"a", "b", "c"}));
  bij_lift->add_option("--barriers", lift_bars, "source barrier offsets B");
  bij_lift->add_option("--n", lift_n, "source tuple size");
  bij_lift->callback([&] {
    action = [&]() -> int {
      const auto src = BarrierSet::parse(lift_bars);
      const auto sources = enumerate_tuples(lift_n, src, Family::all_flats);
      BarrierSet dst;
      Family fam = Family::no_bad_flats;
      int dst_n = lift_n;
      if (lift_kind == "a") {
        dst = src.shifted(2);
        dst_n = lift_n + 1;
      } else if (lift_kind == "b") {
        dst = src.shifted(2).prepended(1);
      } else {
        dst = src.shifted(2).prepended(0);
        dst_n = lift_n + 1;
        fam = Family::all_flats;
      }
      std::vector<PathTuple> image;
      bool inverse = true;
      for (const auto& t : sources) {
        PathTuple lifted, back;
        if (lift_kind == "a") {
          lifted = lift_add_peak(t, src);
          back = lower_add_peak(lifted, dst);
        } else if (lift_kind == "b") {
          lifted = lift_wrap(t, src);
          back = lower_wrap(lifted, dst);
        } else {
          lifted = lift_add_flat(t, src);
          back = lower_add_flat(lifted, dst);
        }
        inverse = inverse && back == t;
        image.push_back(lifted);
      }
      const auto targets = enumerate_tuples(dst_n, dst, fam);
      const bool injective = sorted_unique(image).size() == image.size();
      const bool onto = sorted_unique(image) == sorted_unique(targets);
      out << "source=" << sources.size() << " target=" << targets.size() << " injective=" << yes_no(injective)
          << " onto=" << yes_no(onto) << " inverse=" << (inverse ? "ok" : "FAIL") << '\n';
      return injective && onto && inverse ? ok : failed;
    };
  });

  // reduce
  SpecSource reduce_src;
  bool reduce_chain = false;
  std::string reduce_format = "plain";
  auto* reduce_cmd = app.add_subcommand("reduce", "peel the last layer and check the power-of-two relation");
  reduce_src.attach(reduce_cmd);
  reduce_cmd->add_flag("--chain", reduce_chain, "keep reducing down to a terminal case");
  reduce_cmd->add_option("--format", reduce_format)->check(CLI::IsMember({"plain", "json"}));
  reduce_cmd->callback([&] {
    action = [&]() -> int {
      auto spec = reduce_src.resolve();
      build_dissection(spec);
      json_io::json steps = json_io::json::array();
      bool all = true;
      while (true) {
        const auto r = reduce(spec);
        const auto c = check_reduction(r);
        all = all && c.holds;
        if (reduce_format == "json") {
          steps.push_back(json_io::reduction(r, c));
        } else {
          out << to_string(r.parent) << " case=" << to_string(r.kind) << " exponent=" << r.exponent;
          if (r.child) out << " child=" << to_string(*r.child) << (r.degenerate_child ? " (degenerate)" : "");
          out << " holds=" << yes_no(c.holds) << '\n';
        }
        if (!reduce_chain || r.terminal() || r.degenerate_child) break;
        spec = *r.child;
      }
      if (reduce_format == "json") out << json_io::dump(json_io::json{{"steps", steps}, {"holds", all}});
      return all ? ok : failed;
    };
  });

  // verify
  auto* ver = app.add_subcommand("verify", "three-engine verification");
  ver->require_subcommand(1);
  SpecSource ver_src;
  std::string ver_format = "plain";
  int max_sum = 10, max_k = 4, max_n = 2;
  unsigned threads = 0;
  auto* ver_one = ver->add_subcommand("one", "verify one region");
  ver_src.attach(ver_one);
  ver_one->add_option("--format", ver_format)->check(CLI::IsMember({"plain", "json"}));
  ver_one->callback([&] {
    action = [&]() -> int {
      const auto r = verify(ver_src.resolve(), budget);
      if (ver_format == "json") {
        out << json_io::dump(json_io::record(r));
      } else if (!r.applicable) {
        out << to_string(r.spec) << " not applicable: " << r.reason << '\n';
      } else {
        out << to_string(r.spec) << " M=" << pow_text(*r.m_paths) << " C=" << r.regular_cells << " w=" << r.width
            << " brute=" << (r.m_brute ? to_decimal(*r.m_brute) : std::string("skipped"))
            << " agree=" << yes_no(r.agree) << '\n';
      }
      return r.applicable && r.agree ? ok : failed;
    };
  });
  auto* ver_sweep = ver->add_subcommand("sweep", "verify every aligned region in range");
  ver_sweep->add_option("--max-sum", max_sum);
  ver_sweep->add_option("--max-k", max_k);
  ver_sweep->add_option("--threads", threads, "worker threads; 0 uses all cores");
  ver_sweep->add_option("--format", ver_format)->check(CLI::IsMember({"plain", "json"}));
  ver_sweep->callback([&] {
    action = [&]() -> int {
      const auto recs = sweep(max_sum, max_k, budget, threads);
      const auto bad = std::count_if(recs.begin(), recs.end(), [](const auto& r) { return !r.agree; });
      if (ver_format == "json") {
        out << json_io::dump(json_io::sweep_report(recs, max_sum, max_k, budget));
      } else {
        for (const auto& r : recs)
          out << to_string(r.spec) << " M=" << pow_text(*r.m_paths) << " agree=" << yes_no(r.agree) << '\n';
        out << "total=" << recs.size() << " disagree=" << bad << '\n';
      }
      return bad == 0 ? ok : failed;
    };
  });
  int dmax_sum = 14, dmax_k = 5;
  auto* ver_douglas = ver->add_subcommand("douglas", "search for Douglas region parameters");
  ver_douglas->add_option("--max-n", max_n);
  ver_douglas->add_option("--max-sum", dmax_sum);
  ver_douglas->add_option("--max-k", dmax_k);
  ver_douglas->add_option("--format", ver_format)->check(CLI::IsMember({"plain", "json"}));
  ver_douglas->callback([&] {
    action = [&]() -> int {
      const auto ms = douglas_search(max_n, dmax_sum, dmax_k);
      bool found = true;
      for (const auto& m : ms) found = found && m.chosen.has_value();
      if (ver_format == "json") {
        out << json_io::dump(json_io::douglas(ms, dmax_sum, dmax_k));
      } else {
        for (const auto& m : ms)
          out << "n=" << m.n << " target=" << to_decimal(m.target) << " count_matches=" << m.count_matches.size()
              << " chosen=" << (m.chosen ? to_string(*m.chosen) : std::string("none")) << '\n';
      }
      return found ? ok : failed;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage;
  }
  if (!action) return usage;
  try {
    return action();
  } catch (const parse_error& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const precondition_error& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const error& e) {
    err << "error: " << e.what() << '\n';
    return failed;
  }
}

}  // namespace tileforge::cli
