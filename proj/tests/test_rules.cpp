#include "doctest.h"
#include "marginvote/axioms.hpp"
#include "marginvote/data.hpp"
#include "marginvote/random.hpp"
#include "marginvote/rules.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace marginvote;
using namespace marginvote::literals;

namespace {

std::string winners(const RuleOutput& out) { return out.ok() ? to_string(out.winners()) : to_string(out); }

}  // namespace

TEST_CASE("minimax versions on the three bundled cycles") {
  const auto tied_cycle = fixtures::profile("tied_cycle.toi");
  CHECK(winners(minimax_margins(tied_cycle)) == "c");
  CHECK(winners(minimax_winning_votes(tied_cycle)) == "a");
  const auto govan = fixtures::profile("govan.toi");
  CHECK(winners(minimax_margins(govan)) == "Dornan");
  CHECK(winners(minimax_winning_votes(govan)) == "Flanagan");
  const auto mpls = fixtures::profile("minneapolis.soi");
  CHECK(winners(minimax_margins(mpls)) == "Arab");
  CHECK(winners(minimax_winning_votes(mpls)) == "Worlobah");
}

TEST_CASE("minimax elects a Condorcet winner") {
  const auto p = fixtures::profile("condorcet.soi");
  CHECK(winners(minimax_margins(p)) == "a");
  CHECK(winners(minimax_winning_votes(p)) == "a");
  CHECK(winners(minimax_winning_votes(profile_from_strings(fixtures::abc(), {"b>c>a"}))) == "b");
}

TEST_CASE("irv") {
  CHECK(winners(irv(fixtures::make(fixtures::dmr(), fixtures::kSpoiler))) == "R");
  CHECK(winners(irv(fixtures::make(fixtures::dmr(), fixtures::kSpoilerShifted))) == "M");
  CHECK(winners(irv(profile_from_strings(CandidateSet{"a", "b"}, {"a>b", "a>b"}))) == "a");

  const auto run = irv_rounds(fixtures::make(fixtures::dmr(), fixtures::kSpoiler));
  REQUIRE(run.eliminated.size() == 2);
  CHECK(run.eliminated[0] == "M"_cand);
  CHECK(run.eliminated[1] == "D"_cand);

  const auto tied = irv(profile_from_strings(CandidateSet{"a", "b"}, {"a>b", "b>a"}));
  REQUIRE_FALSE(tied.ok());
  CHECK(tied.failure() == RuleFailure::TieAmbiguous);

  // A fully indifferent ballot credits nobody.
  CHECK(winners(irv(profile_from_strings(fixtures::abc(), {"a~b~c", "c>a>b", "b>a>c", "b>c>a"}))) == "b");
  CHECK(irv(profile_from_strings(fixtures::abc(), {"a>b~c", "b~c>a"})).failure() == RuleFailure::DomainError);
}

TEST_CASE("plurality") {
  CHECK(winners(plurality(fixtures::make(fixtures::dmr(), fixtures::kSpoiler))) == "D");
  CHECK(winners(plurality(profile_from_strings(fixtures::abc(), {"a>b>c"}))) == "a");
  CHECK(winners(plurality(profile_from_strings(fixtures::abc(), {"a>b~c", "b>a~c"}))) == "a,b");
  CHECK(plurality(profile_from_strings(fixtures::abc(), {"a~b>c"})).failure() == RuleFailure::DomainError);
}

TEST_CASE("borda on linear ballots") {
  // Position sums a=3, b=11, c=11, d=11.
  CHECK(winners(borda_linear(fixtures::make(fixtures::abcd(), fixtures::kSixVoterQ))) == "b,c,d");
  CHECK(winners(borda_linear(profile_from_strings(fixtures::abc(), {"a>b>c"}))) == "a");
  CHECK(winners(borda_linear(profile_from_strings(fixtures::abc(), {"a>b>c", "a>c>b", "c>b>a"}))) == "a");
  CHECK(winners(borda_linear(profile_from_strings(fixtures::abc(), {"a>b>c", "c>b>a"}))) == "a,b,c");
  CHECK(borda_linear(fixtures::make(fixtures::abc(), fixtures::kTiedCycle)).failure() == RuleFailure::DomainError);
}

TEST_CASE("borda on weak orders") {
  const auto one = profile_from_strings(fixtures::abc(), {"b>a~c"});
  CHECK(winners(borda_swo(one)) == "b");
  // Scores a=8, b=8, c=8.
  CHECK(winners(borda_swo(fixtures::make(fixtures::abc(), fixtures::kTiedCycle))) == "a,b,c");
  const auto base = profile_from_strings(fixtures::abc(), {"b>a>c"});
  const auto scope = base.scope();
  const auto pair = add_reversal_pair(base, parse_ranking("a>b~c", scope));
  CHECK(winners(borda_swo(base)) == "b");
  CHECK(winners(borda_swo(pair)) == "a,b");
}

TEST_CASE("pareto") {
  const CandidateSet ab{"a", "b"};
  CHECK(winners(pareto(profile_from_strings(ab, {"a>b"}))) == "a");
  CHECK(winners(pareto(profile_from_strings(ab, {"a>b", "b>a"}))) == "a,b");
  CHECK(winners(pareto(profile_from_strings(fixtures::abc(), {"a>b~c", "a>b>c"}))) == "a");
}

TEST_CASE("positive-negative") {
  const CandidateSet xyzw{"w", "x", "y", "z"};
  CHECK(winners(positive_negative(profile_from_strings(xyzw, {"x>y>z>w", "z>x>y>w"}))) == "x,z");
  CHECK(winners(positive_negative(profile_from_strings(fixtures::abc(), {"a>b>c", "c>b>a"}))) == "a,b,c");
  CHECK(winners(positive_negative(profile_from_strings(fixtures::abc(), {"a~b>c"}))) == "a,b");
}

TEST_CASE("copeland") {
  CHECK(winners(copeland(fixtures::make(fixtures::abc(), fixtures::kTiedCycle))) == "a,b,c");
  CHECK(winners(copeland(fixtures::profile("condorcet.soi"))) == "a");
  CHECK(winners(copeland(fixtures::profile("govan.toi"))) == "Dornan,Flanagan,Hunter");
}

TEST_CASE("fixture rules") {
  const auto tied_cycle = fixtures::make(fixtures::abc(), fixtures::kTiedCycle);
  // Margin 3 is not below 3, so the Copeland branch decides.
  CHECK(threshold_rule(3)(tied_cycle) == copeland(tied_cycle));
  CHECK(threshold_rule(4)(tied_cycle) == minimax_margins(tied_cycle));

  const auto mixed = profile_from_strings(fixtures::abc(), {"a>b>c", "b>a>c", "c>a>b"});
  CHECK(hybrid_pc_rule()(mixed) == borda_linear(mixed));
  const auto one_way = profile_from_strings(fixtures::abc(), {"a>b>c", "a>c>b", "c>b>a"});
  CHECK(hybrid_pc_rule()(one_way) == plurality(one_way));

  CHECK(winners(tie_or_last_rule()(profile_from_strings(fixtures::abc(), {"a>b~c"}))) == "a,b,c");
  CHECK(winners(tie_or_last_rule()(profile_from_strings(fixtures::abc(), {"a>b>c", "b>a>c"}))) == "a,b");

  // Two voters against three with the same margins.
  const auto even = profile_from_strings(fixtures::abc(), {"a>b>c", "c>b>a"});
  const auto odd = profile_from_strings(fixtures::abc(), {"a>b>c", "c>b>a", "a~b~c"});
  CHECK(margins(even) == margins(odd));
  CHECK(even_odd_rule()(even) == minimax_margins(even));
  CHECK(even_odd_rule()(odd) == copeland(odd));

  CHECK(fixture_rules().size() == 5);
  CHECK(find_rule("even-odd").name == "even-odd");
  CHECK_THROWS_AS(find_rule("no-such-rule"), UnknownIdentifierError);
}

TEST_CASE("rules reject voterless profiles") {
  const auto empty = Profile::empty(make_scope(fixtures::abc()));
  for (const auto& rule : rule_registry()) CHECK_THROWS_AS(rule(empty), EmptyProfileError);
}

TEST_CASE("property: matrix rules agree with the oracles") {
  gen::Stream s(31);
  for (int trial = 0; trial < 400; ++trial) {
    const auto n = static_cast<std::size_t>(s.between(1, 5));
    std::vector<oracle::Levels> ballots;
    for (int v = s.between(1, 7); v > 0; --v) ballots.push_back(gen::weak(s, n));
    const auto p = gen::profile(ballots, n);
    const auto& c = p.candidates();
    const auto m = oracle::margins(ballots, n);
    CHECK(oracle::names(minimax_margins(p).winners()) == oracle::names(oracle::minimax_margins(m), c));
    CHECK(oracle::names(minimax_winning_votes(p).winners()) ==
          oracle::names(oracle::minimax_wv(oracle::support(ballots, n)), c));
    CHECK(oracle::names(copeland(p).winners()) == oracle::names(oracle::copeland(m), c));
    CHECK(oracle::names(borda_swo(p).winners()) == oracle::names(oracle::borda_swo(ballots, n), c));
  }
}

TEST_CASE("property: irv and plurality agree with the oracles on LOBI profiles") {
  gen::Stream s(32);
  for (int trial = 0; trial < 400; ++trial) {
    const auto n = static_cast<std::size_t>(s.between(2, 5));
    std::vector<oracle::Levels> ballots;
    for (int v = s.between(1, 9); v > 0; --v) {
      auto l = gen::linear(s, n);
      const int cut = s.between(1, static_cast<int>(n) - 1);
      for (auto& x : l) x = std::min(x, cut);
      ballots.push_back(l);
    }
    const auto p = gen::profile(ballots, n);
    const auto& c = p.candidates();
    CHECK(oracle::names(plurality(p).winners()) == oracle::names(oracle::plurality(ballots, n), c));
    const auto expected = oracle::irv(ballots, n);
    const auto got = irv(p);
    REQUIRE(got.ok() == expected.has_value());
    if (expected) CHECK(to_string(got.winners()) == c[*expected].name);
  }
}

TEST_CASE("property: margin-based rules agree on margin-equal profiles") {
  gen::Stream s(33);
  for (int trial = 0; trial < 200; ++trial) {
    const auto pair = gen::margin_equal_weak(s);
    const auto p = gen::profile(pair.first, pair.n);
    const auto q = gen::profile(pair.second, pair.n);
    REQUIRE(oracle::margins(pair.first, pair.n) == oracle::margins(pair.second, pair.n));
    CHECK(minimax_margins(p) == minimax_margins(q));
    CHECK(copeland(p) == copeland(q));
  }
}

TEST_CASE("property: a planted Condorcet winner wins both minimax versions") {
  gen::Stream s(34);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = static_cast<std::size_t>(s.between(2, 5));
    const auto w = s.below(n);
    std::vector<oracle::Levels> ballots;
    for (int v = s.between(1, 7); v > 0; --v) {
      auto l = gen::weak(s, n);
      for (auto& x : l) ++x;
      l[w] = 0;  // strictly above everyone
      ballots.push_back(l);
    }
    const auto p = gen::profile(ballots, n);
    const auto& name = p.candidates()[w].name;
    CHECK(to_string(minimax_margins(p).winners()) == name);
    CHECK(to_string(minimax_winning_votes(p).winners()) == name);
  }
}

TEST_CASE("property: with an absolute majority winner irv, plurality and minimax agree") {
  gen::Stream s(35);
  std::size_t seen = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const auto n = static_cast<std::size_t>(s.between(2, 4));
    std::vector<oracle::Levels> ballots;
    for (int v = s.between(1, 9); v > 0; --v) ballots.push_back(gen::linear(s, n));
    const auto p = gen::profile(ballots, n);
    const auto amw = absolute_majority_winner(p);
    if (!amw) continue;
    ++seen;
    // Ties among the trailing candidates can still stop the count.
    const auto counted = irv(p);
    if (counted.ok()) CHECK(to_string(counted.winners()) == amw->name);
    CHECK(to_string(plurality(p).winners()) == amw->name);
    CHECK(to_string(minimax_margins(p).winners()) == amw->name);
  }
  CHECK(seen > 20);
}

TEST_CASE("property: borda argmax equals the margin-sum argmax on small linear profiles") {
  gen::Stream s(36);
  for (int trial = 0; trial < 300; ++trial) {
    const auto n = static_cast<std::size_t>(s.between(2, 4));
    std::vector<oracle::Levels> ballots;
    for (int v = s.between(1, 4); v > 0; --v) ballots.push_back(gen::linear(s, n));
    const auto p = gen::profile(ballots, n);
    const auto m = oracle::margins(ballots, n);
    std::vector<std::int64_t> sums(n, 0);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) sums[x] += m[x][y];
    CHECK(oracle::names(borda_linear(p).winners()) == oracle::names(oracle::argmax(sums), p.candidates()));
  }
}
