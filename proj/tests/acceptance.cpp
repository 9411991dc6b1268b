// Acceptance run: one PASS/FAIL line per criterion, with its time budget.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "marginvote/axioms.hpp"
#include "marginvote/canonical.hpp"
#include "marginvote/data.hpp"
#include "marginvote/noncomp.hpp"
#include "marginvote/random.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace marginvote;
using namespace marginvote::literals;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

struct Criterion {
  std::string name;
  double limit_seconds;
  std::function<Outcome()> run;
};

std::string winners(const RuleOutput& out) { return out.ok() ? to_string(out.winners()) : to_string(out); }

std::vector<std::int64_t> weights(const WeightedDigraph& g) {
  std::vector<std::int64_t> out;
  for (const auto& e : g.edges) out.push_back(e.weight);
  std::sort(out.begin(), out.end());
  return out;
}

std::map<std::string, int> multiset(const Profile& p) {
  std::map<std::string, int> out;
  for (const auto& [v, r] : p.ballots()) ++out[to_string(r)];
  return out;
}

std::map<std::string, int> multiset(const fixtures::Groups& groups) {
  std::map<std::string, int> out;
  for (const auto& [count, text] : groups) out[text] += static_cast<int>(count);
  return out;
}

std::vector<Profile> pool() {
  std::vector<Profile> out;
  for (const auto* f : {"tied_cycle.toi", "spoiler.soi", "spoiler_shifted.soi", "six_voter_p.soi", "six_voter_q.soi", "condorcet.soi",
                        "majority.soi", "landslide.soi"})
    out.push_back(fixtures::profile(f));
  out.push_back(profile_from_strings(CandidateSet{"w", "x", "y", "z"}, {"x>y>z>w", "z>x>y>w"}));
  out.push_back(profile_from_strings(fixtures::abc(), {"a>b~c", "a>b~c", "b>a~c"}));
  return out;
}

CheckOptions options(std::size_t budget) {
  CheckOptions o;
  o.budget = budget;
  o.seed = 2024;
  o.max_witnesses = 1;
  return o;
}

Outcome tied_cycle() {
  Outcome o;
  const auto p = fixtures::profile("tied_cycle.toi");
  const auto m = margins(p);
  const auto s = support(p);
  o.require(m.at("a"_cand, "b"_cand) == 3 && m.at("b"_cand, "c"_cand) == 1 && m.at("c"_cand, "a"_cand) == 2,
            "margins differ");
  o.require(s.at("a"_cand, "b"_cand) == 6 && s.at("b"_cand, "c"_cand) == 5 && s.at("c"_cand, "a"_cand) == 4,
            "winning votes differ");
  o.require(winners(minimax_margins(p)) == "c", "minimax-margins gave " + winners(minimax_margins(p)));
  o.require(winners(minimax_winning_votes(p)) == "a", "minimax-wv gave " + winners(minimax_winning_votes(p)));
  return o;
}

Outcome cycles() {
  Outcome o;
  struct Case {
    const char* file;
    std::vector<std::int64_t> margin_edges, wv_edges;
    const char *margins_winner, *wv_winner;
  };
  for (const auto& c : {Case{"govan.toi", {21, 86, 602}, {2992, 3578, 3654}, "Dornan", "Flanagan"},
                        Case{"minneapolis.soi", {15, 73, 225}, {3708, 4054, 4324}, "Arab", "Worlobah"}}) {
    const auto p = fixtures::profile(c.file);
    o.require(weights(margin_graph(p)) == c.margin_edges, std::string(c.file) + ": margin edges differ");
    o.require(weights(winning_votes_graph(p)) == c.wv_edges, std::string(c.file) + ": winning-votes edges differ");
    o.require(winners(minimax_margins(p)) == c.margins_winner, std::string(c.file) + ": minimax-margins winner");
    o.require(winners(minimax_winning_votes(p)) == c.wv_winner, std::string(c.file) + ": minimax-wv winner");
  }
  return o;
}

Outcome spoiler() {
  Outcome o;
  const auto p = fixtures::profile("spoiler.soi");
  const auto range = [](std::uint64_t from) {
    return std::vector<VoterId>{VoterId::natural(from), VoterId::natural(from + 1), VoterId::natural(from + 2)};
  };
  o.require(winners(irv(p)) == "R", "irv gave " + winners(irv(p)));
  o.require(winners(irv(coalition_switch(p, range(37), "R"_cand, "M"_cand))) == "R", "democratic switch");
  o.require(winners(irv(coalition_switch(p, range(40), "R"_cand, "M"_cand))) == "M", "republican switch");
  auto opts = options(200);
  opts.max_witnesses = 50;
  opts.random_fill = false;
  const auto report = check_axiom(find_rule("irv"), Axiom::PreferentialEquality, {p}, opts);
  bool found = false;
  for (const auto& w : report.witnesses)
    found = found || (to_string(w.outputs[0]) == "R" && to_string(w.outputs[1]) == "M") ||
            (to_string(w.outputs[0]) == "M" && to_string(w.outputs[1]) == "R");
  o.require(found, "no R vs M equality witness");
  return o;
}

Outcome six_voter() {
  Outcome o;
  const auto p = fixtures::profile("six_voter_p.soi");
  const auto q = fixtures::profile("six_voter_q.soi");
  const auto cp = canonicalize_linear(p);
  const auto cq = canonicalize_linear(q);
  o.require(cp.form == cq.form, "canonical forms differ");
  o.require(!cp.form.held_out, "unexpected held-out voter");
  o.require(cp.form.debord_part == debord(margins(p)), "form is not the Debord profile");
  o.require(multiset(cp.form.debord_part) == multiset(fixtures::kSixVoterDebord), "ballot multiset differs");
  o.require(static_cast<bool>(audit_trace(p, cp.trace, &cp.form.debord_part)), "trace audit failed for P");
  o.require(static_cast<bool>(audit_trace(q, cq.trace, &cq.form.debord_part)), "trace audit failed for Q");
  return o;
}

Outcome debord_exhaustive() {
  Outcome o;
  std::size_t checked = 0;
  for (std::size_t n = 1; n <= 4 && o.ok; ++n) {
    const auto scope = make_scope(letters(n));
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = x + 1; y < n; ++y) pairs.emplace_back(x, y);
    std::vector<int> digit(pairs.size(), 0);  // entry = 2 * digit - 6
    while (o.ok) {
      std::vector<std::int64_t> cells(n * n, 0);
      for (std::size_t k = 0; k < pairs.size(); ++k) {
        const auto [x, y] = pairs[k];
        cells[x * n + y] = 2 * digit[k] - 6;
        cells[y * n + x] = -cells[x * n + y];
      }
      const auto m = MarginMatrix::from_cells(scope, cells);
      if (!(margins(debord(m)) == m)) o.require(false, "margins(debord(m)) != m for " + to_string(m));
      ++checked;
      std::size_t k = 0;
      while (k < digit.size() && ++digit[k] == 7) digit[k++] = 0;
      if (k == digit.size()) break;
    }
  }
  o.require(checked == 1 + 7 + 343 + 117649, "unexpected matrix count " + std::to_string(checked));
  return o;
}

Outcome canonical_pairs() {
  Outcome o;
  gen::Stream s(2120);
  for (int k = 0; k < 500 && o.ok; ++k) {
    const auto eq = gen::margin_equal_linear(s);
    o.require(canonicalize_linear(gen::profile(eq.first, eq.n), false).form ==
                  canonicalize_linear(gen::profile(eq.second, eq.n), false).form,
              "margin-equal pair " + std::to_string(k) + " has different forms");
  }
  for (int k = 0; k < 500 && o.ok; ++k) {
    const auto ne = gen::margin_unequal_linear(s);
    o.require(!(canonicalize_linear(gen::profile(ne.first, ne.n), false).form ==
                canonicalize_linear(gen::profile(ne.second, ne.n), false).form),
              "margin-unequal pair " + std::to_string(k) + " has equal forms");
  }
  return o;
}

Outcome equalizers() {
  Outcome o;
  gen::Stream s(450);
  for (int k = 0; k < 500 && o.ok; ++k) {
    const auto eq = gen::margin_equal_weak(s);
    const auto [p2, q2] = equalize_h2h(gen::profile(eq.first, eq.n), gen::profile(eq.second, eq.n));
    const auto b1 = oracle::ballots_of(p2), b2 = oracle::ballots_of(q2);
    o.require(p2.voter_count() == q2.voter_count() && oracle::support(b1, eq.n) == oracle::support(b2, eq.n),
              "equalize_h2h pair " + std::to_string(k) + ": head-to-head counts differ");
    o.require(oracle::margins(b1, eq.n) == oracle::margins(eq.first, eq.n),
              "equalize_h2h pair " + std::to_string(k) + ": margins changed");
  }
  for (int k = 0; k < 500 && o.ok; ++k) {
    const bool ties = k % 2 == 1;
    const auto eq = gen::margin_equal_rel(s, ties);
    const auto r = gen::rel_profile(eq.first, eq.n);
    const auto q = gen::rel_profile(eq.second, eq.n);
    const auto [r2, q2] = equalize_rel(r, q, ties ? RelDomain::Wosn : RelDomain::Losn);
    o.require(oracle::triple(r2) == oracle::triple(q2),
              "equalize_rel pair " + std::to_string(k) + ": triple counts differ");
    o.require(oracle::rel_margins(r2) == oracle::rel_margins(r),
              "equalize_rel pair " + std::to_string(k) + ": margins changed");
  }
  return o;
}

Outcome tiebreak_witness() {
  Outcome o;
  const auto p = fixtures::profile("tied_cycle.toi");
  const CandidateSet ac{"a", "c"};
  const auto broken = tiebreak_pair(p, VoterId::natural(0), VoterId::natural(1), ac, {"a"_cand, "c"_cand});
  o.require(winners(minimax_winning_votes(p)) == "a", "minimax-wv before");
  o.require(winners(minimax_winning_votes(broken)) == "a,c",
            "minimax-wv after gave " + winners(minimax_winning_votes(broken)));
  o.require(minimax_margins(broken) == minimax_margins(p), "minimax-margins changed");
  return o;
}

Outcome borda_reversal() {
  Outcome o;
  const auto base = profile_from_strings(fixtures::abc(), {"b>a>c"});
  const auto with_pair = add_reversal_pair(base, parse_ranking("a>b~c", base.scope()));
  const auto direct = [](const Profile& p) {
    return oracle::names(oracle::borda_swo(oracle::ballots_of(p), p.candidates().size()), p.candidates());
  };
  o.require(winners(borda_swo(base)) == "b" && direct(base) == std::set<std::string>{"b"}, "borda-swo on b>a>c");
  o.require(winners(borda_swo(with_pair)) == "a,b" && direct(with_pair) == std::set<std::string>{"a", "b"},
            "borda-swo with the pair");
  const auto nr = check_axiom(find_rule("borda-swo"), Axiom::NeutralReversal, pool(), options(2000));
  o.require(nr.tried > 0 && nr.passed(), "neutral reversal witness for borda-swo");
  return o;
}

Outcome invariance() {
  Outcome o;
  const auto pl = pool();
  const auto witnessed = [&](const char* rule, Axiom axiom) {
    return !check_axiom(find_rule(rule), axiom, pl, options(1000)).passed();
  };
  const auto applicable = [](const char* rule, Axiom axiom) {
    try {
      require_applicable(find_rule(rule), axiom);
      return true;
    } catch (const DomainMismatchError&) {
      return false;
    }
  };
  for (const auto* rule : {"minimax-margins", "copeland"})
    for (auto axiom : profile_axioms())
      if (applicable(rule, axiom))
        o.require(!witnessed(rule, axiom), std::string(rule) + " has a " + std::string(to_string(axiom)) + " witness");
  for (const auto* rule : {"irv", "plurality"}) {
    o.require(witnessed(rule, Axiom::NeutralReversal), std::string(rule) + ": no neutral-reversal witness");
    o.require(witnessed(rule, Axiom::PreferentialEquality), std::string(rule) + ": no equality witness");
  }
  o.require(witnessed("pareto", Axiom::NeutralReversal), "pareto: no neutral-reversal witness");
  o.require(witnessed("pareto", Axiom::NeutralIndifference), "pareto: no neutral-indifference witness");
  o.require(witnessed("positive-negative", Axiom::PreferentialEquality), "positive-negative: no equality witness");
  for (auto axiom : {Axiom::NeutralReversal, Axiom::NonlinearNeutralReversal, Axiom::NeutralIndifference})
    o.require(!witnessed("positive-negative", axiom),
              "positive-negative has a " + std::string(to_string(axiom)) + " witness");
  const auto eo = classify_invariance(find_rule("even-odd"), pl);
  o.require(!eo.at(InvarianceLevel::MarginBased).passed(), "even-odd: no margin-based violation pair");
  return o;
}

Outcome scans() {
  Outcome o;
  std::vector<ScanInput> inputs;
  for (const auto* f : {"condorcet.soi", "six_voter_p.soi", "six_voter_q.soi", "tied_cycle.toi", "govan.toi", "spoiler.soi",
                        "spoiler_shifted.soi", "landslide.soi", "majority.soi", "minneapolis.soi", "truncated.csv"}) {
    auto e = fixtures::election(f);
    e.name = f;
    inputs.push_back({f, e, {}});
  }
  const auto status = [](const ScanReport& r, const std::string& name) {
    for (const auto& e : r.elections)
      if (e.name == name) return e.status;
    return ScanStatus::Skipped;
  };
  const auto mm = scan_minimax_divergence(inputs, 1);
  o.require(status(mm, "tied_cycle.toi") == ScanStatus::Hit, "tied_cycle is not a divergence hit");
  o.require(status(mm, "govan.toi") == ScanStatus::Hit, "govan is not a divergence hit");
  o.require(status(mm, "minneapolis.soi") == ScanStatus::Hit, "minneapolis is not a divergence hit");
  o.require(mm.hits == 3, "minimax hits " + std::to_string(mm.hits));
  const auto iv = scan_irv_violations(inputs, 3, 1);
  o.require(status(iv, "spoiler.soi") == ScanStatus::Hit, "spoiler is not an equality hit");
  o.require(iv.relevant == 6 && iv.denominator == 4, "irv scan counts differ");
  for (unsigned jobs : {2u, 4u}) {
    o.require(to_table(scan_minimax_divergence(inputs, jobs)) == to_table(mm), "minimax scan differs across jobs");
    o.require(to_table(scan_irv_violations(inputs, 3, jobs)) == to_table(iv), "irv scan differs across jobs");
  }
  o.require(to_table(scan_irv_violations(inputs, 3, 1)) == to_table(iv), "irv scan differs across reruns");
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"tied_cycle margins, winning votes and minimax winners (exact)", 1, tied_cycle},
      {"govan and minneapolis edges and minimax winners (exact)", 1, cycles},
      {"spoiler irv winner, coalition switches and equality witness (exact)", 5, spoiler},
      {"six-voter canonical forms equal the eighteen-ballot Debord table, traces audited", 1, six_voter},
      {"debord realizes every even matrix, |X|<=4, entries -6..6 (exhaustive)", 30, debord_exhaustive},
      {"canonical forms: 500 margin-equal pairs equal, 500 margin-unequal pairs differ", 60, canonical_pairs},
      {"equalize_h2h and equalize_rel on 500 margin-equal pairs each", 60, equalizers},
      {"tied_cycle opposite tiebreak flips minimax-wv to {a,c}, minimax-margins unchanged", 1, tiebreak_witness},
      {"borda-swo reversal-pair witness and no linear neutral-reversal witness", 30, borda_reversal},
      {"invariance classification of the bundled rules", 120, invariance},
      {"scan reports on bundled fixtures, deterministic across reruns and jobs", 30, scans},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.ok = false;
      out.detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (out.ok && seconds > c.limit_seconds) {
      out.ok = false;
      out.detail = "over the time limit";
    }
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.3fs / %.0fs", seconds, c.limit_seconds);
    std::cout << (out.ok ? "PASS" : "FAIL") << "  " << c.name << "  [" << timing << "]";
    if (!out.ok) std::cout << "  " << out.detail;
    std::cout << '\n';
    failed += !out.ok;
  }
  std::cout << (failed ? "FAILED " : "ALL PASSED ") << criteria.size() - failed << "/" << criteria.size() << '\n';
  return failed ? 1 : 0;
}
