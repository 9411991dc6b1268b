#include "doctest.h"
#include "marginvote/data.hpp"
#include "marginvote/noncomp.hpp"
#include "marginvote/random.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace marginvote;
using namespace marginvote::literals;

namespace {

Scope abcd() { return make_scope(fixtures::abcd()); }

RelProfile rel(const Scope& scope, const std::vector<std::string>& ballots) {
  RelProfile::Ballots map;
  std::uint64_t id = 0;
  for (const auto& b : ballots) map.emplace(VoterId::natural(id++), parse_relation(b, scope));
  return RelProfile::allow_empty(scope, std::move(map));
}

std::size_t count_ballots(const RelProfile& rp, const PrefRelation& r) {
  std::size_t n = 0;
  for (const auto& [v, b] : rp.ballots()) n += b == r;
  return n;
}

}  // namespace

TEST_CASE("side_class") {
  const auto s = abcd();
  CHECK(PrefRelation::ranked(s, {{"a"_cand}, {"b"_cand}}).side_class() == CandidateSet{"c", "d"});
  CHECK(PrefRelation::from_ranking(parse_ranking("a>b>c>d", s)).side_class().empty());
  CHECK(PrefRelation::blank(s).side_class() == fixtures::abcd());
  // A single ranked candidate compares with nobody.
  CHECK(PrefRelation::ranked(s, {{"a"_cand}}) == PrefRelation::blank(s));
}

TEST_CASE("classify_rel") {
  const auto s = abcd();
  CHECK(classify_rel(parse_relation("a>b>c | unranked: d", s)) == RelDomain::Losn);
  CHECK(classify_rel(parse_relation("a~b>c | unranked: d", s)) == RelDomain::Wosn);
  const PrefRelation cycle(s, {{"a"_cand, "b"_cand}, {"b"_cand, "c"_cand}, {"c"_cand, "a"_cand}, {"a"_cand, "a"_cand},
                               {"b"_cand, "b"_cand}, {"c"_cand, "c"_cand}, {"d"_cand, "d"_cand}});
  CHECK_FALSE(cycle.is_transitive());
  CHECK(classify_rel(cycle) == RelDomain::Other);
  CHECK(to_string(cycle).front() == '{');
  CHECK(parse_relation(to_string(cycle), s) == cycle);
  CHECK(classify_rel(rel(s, {"a>b | unranked: c,d", "a~b>c~d"})) == RelDomain::Wosn);
}

TEST_CASE("relation text round-trips") {
  const auto s = abcd();
  for (const auto* text : {"a>b~c | unranked: d", "| unranked: a,b,c,d", "d>c>b>a", "b~c | unranked: a,d"})
    CHECK(to_string(parse_relation(text, s)) == text);
}

TEST_CASE("triple_counts") {
  const auto ab = make_scope(CandidateSet{"a", "b"});
  const auto t = triple_counts(rel(ab, {"a>b", "| unranked: a,b"}));
  CHECK(t.p(0, 1) == 1);
  CHECK(t.p(1, 0) == 0);
  CHECK(t.i(0, 1) == 0);
  CHECK(t.n(0, 1) == 1);
  CHECK(t.voters == 2);

  const auto s = abcd();
  const auto tie = RelProfile(s, {{VoterId::natural(0), PrefRelation::tie_pair(s, "b"_cand, "c"_cand)}});
  const auto tt = triple_counts(tie);
  CHECK(tt.i(1, 2) == 1);
  for (std::size_t x = 0; x < 4; ++x)
    for (std::size_t y = 0; y < 4; ++y) CHECK(tt.p(x, y) == 0);
}

TEST_CASE("embedding a linear profile keeps its support") {
  const auto p = fixtures::make(fixtures::abcd(), fixtures::kSixVoterP);
  const auto rp = embed(p);
  const auto t = triple_counts(rp);
  for (auto v : t.noncomparable) CHECK(v == 0);
  CHECK(strict_support(rp).cells() == support(p).cells());
  CHECK(margins(rp).cells() == margins(p).cells());
  CHECK(classify_rel(rp) == RelDomain::Losn);
}

TEST_CASE("comparable_compensation") {
  const auto s = abcd();
  const auto rp = rel(s, {"a>b | unranked: c,d", "a>b | unranked: c,d"});
  const auto out = comparable_compensation(rp, VoterId::natural(0), VoterId::natural(1), {"c"_cand, "d"_cand});
  CHECK(to_string(out.ballot(VoterId::natural(0))) == "c>d>a>b");
  CHECK(to_string(out.ballot(VoterId::natural(1))) == "a>b>d>c");
  CHECK(margins(out) == margins(rp));

  const auto differ = rel(s, {"a>b | unranked: c,d", "b>a | unranked: c,d"});
  CHECK_THROWS_AS(comparable_compensation(differ, VoterId::natural(0), VoterId::natural(1), {"c"_cand, "d"_cand}),
                  PreconditionError);
  const auto full = rel(s, {"a>b>c>d", "a>b>c>d"});
  CHECK_THROWS_AS(comparable_compensation(full, VoterId::natural(0), VoterId::natural(1), {}), PreconditionError);
}

TEST_CASE("blank and self-reversing voters") {
  const auto s = abcd();
  const auto rp = rel(s, {"a>b | unranked: c,d"});
  const auto tie = PrefRelation::tie_pair(s, "a"_cand, "b"_cand);
  CHECK(tie.is_self_reversing());
  CHECK(add_self_reversing_voter(rp, tie).voter_count() == 2);
  CHECK_THROWS_AS(add_self_reversing_voter(rp, PrefRelation::strict_pair(s, "a"_cand, "b"_cand)), SelfReversalError);
  CHECK(PrefRelation::blank(s).is_self_reversing());
  CHECK(add_blank_voter(rp) == add_self_reversing_voter(rp, PrefRelation::blank(s)));
}

TEST_CASE("every neutral-blankness scenario is a neutral-self-reversal scenario") {
  const auto s = abcd();
  const auto base = rel(s, {"a>b | unranked: c,d", "c~d>a"});
  const auto blank = rel_scenarios_from(base, Axiom::NeutralBlankness);
  const auto self = rel_scenarios_from(base, Axiom::NeutralSelfReversal);
  REQUIRE_FALSE(blank.empty());
  for (const auto& b : blank) {
    bool covered = false;
    for (const auto& r : self) covered = covered || r.after == b.after;
    CHECK(covered);
  }
}

TEST_CASE("equalize_rel examples") {
  const auto ab = make_scope(CandidateSet{"a", "b"});
  {
    const auto r = rel(ab, {"a>b"});
    const auto q = rel(ab, {"a>b", "| unranked: a,b"});
    const auto [r2, q2] = equalize_rel(r, q, RelDomain::Losn);
    CHECK(triple_counts(r2) == triple_counts(q2));
    CHECK(count_ballots(r2, PrefRelation::blank(ab)) == 1);
    CHECK(q2 == q);
  }
  {
    const auto r = rel(ab, {"a>b", "b>a"});
    const auto q = rel(ab, {"a~b", "a~b"});
    const auto [r2, q2] = equalize_rel(r, q, RelDomain::Wosn);
    CHECK(triple_counts(r2) == triple_counts(q2));
    CHECK(count_ballots(r2, PrefRelation::tie_pair(ab, "a"_cand, "b"_cand)) == 2);
    CHECK(count_ballots(q2, PrefRelation::strict_pair(ab, "a"_cand, "b"_cand)) == 1);
    CHECK(count_ballots(q2, PrefRelation::strict_pair(ab, "b"_cand, "a"_cand)) == 1);
    CHECK(r2.voter_count() == 4);
  }
  CHECK_THROWS_AS(equalize_rel(rel(ab, {"a>b"}), rel(ab, {"b>a"}), RelDomain::Losn), MarginMismatchError);
  CHECK_THROWS_AS(equalize_rel(rel(ab, {"a~b"}), rel(ab, {"a~b"}), RelDomain::Losn), DomainError);
}

TEST_CASE("self_reversal_replay") {
  const auto s = abcd();
  const auto base = rel(s, {"a>b | unranked: c,d", "c>a~d"});
  const auto tie = PrefRelation::tie_pair(s, "c"_cand, "d"_cand);
  const auto replay = self_reversal_replay(base, tie);
  CHECK(replay.consistent);
  CHECK(replay.doubled.voter_count() == 4);
  CHECK(replay.with_pair.voter_count() == 6);
  CHECK(replay.halved == add_self_reversing_voter(base, tie));
  CHECK_THROWS_AS(self_reversal_replay(base, PrefRelation::strict_pair(s, "a"_cand, "b"_cand)), SelfReversalError);
}

TEST_CASE("relational rules and appendix axioms") {
  const auto s = abcd();
  std::vector<RelProfile> pool = {rel(s, {"a>b | unranked: c,d", "a>b | unranked: c,d", "c>d>a"}),
                                  rel(s, {"b>c | unranked: a,d", "b>c | unranked: a,d", "a~b>d"}),
                                  to_rel(fixtures::election("truncated.csv"))};
  CheckOptions o;
  o.budget = 400;
  for (auto axiom : {Axiom::ComparableCompensation, Axiom::NeutralBlankness, Axiom::NeutralSelfReversal,
                     Axiom::NonlinearNeutralReversal, Axiom::Homogeneity}) {
    INFO(to_string(axiom));
    const auto report = check_rel_axiom(find_rel_rule("rel-minimax-margins"), axiom, pool, o);
    CHECK(report.tried > 0);
    CHECK(report.passed());
  }
  CHECK_FALSE(check_rel_axiom(find_rel_rule("rel-strict-borda"), Axiom::ComparableCompensation, pool, o).passed());
  CHECK(check_rel_axiom(find_rel_rule("rel-strict-borda"), Axiom::NeutralSelfReversal, pool, o).passed());
  CHECK_FALSE(check_rel_axiom(find_rel_rule("rel-even-odd"), Axiom::NeutralBlankness, pool, o).passed());
  CHECK_THROWS_AS(check_rel_axiom(find_rel_rule("rel-copeland"), Axiom::PreferentialEquality, pool, o),
                  DomainMismatchError);
}

TEST_CASE("property: P, I and N partition the off-diagonal pairs") {
  gen::Stream s(51);
  for (int trial = 0; trial < 300; ++trial) {
    const auto n = static_cast<std::size_t>(s.between(2, 5));
    const auto scope = make_scope(letters(n));
    std::vector<char> cells(n * n);
    for (auto& c : cells) c = s.coin();
    const auto r = PrefRelation::from_matrix(scope, cells);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        if (x == y) continue;
        const int kinds = r.strictly(x, y) + r.strictly(y, x) + r.indifferent(x, y) + r.noncomparable(x, y);
        CHECK(kinds == 1);
      }
  }
}

TEST_CASE("property: triple counts sum to the voter count and match the recount") {
  gen::Stream s(52);
  for (int trial = 0; trial < 200; ++trial) {
    const auto pair = gen::margin_equal_rel(s, s.coin());
    const auto rp = gen::rel_profile(pair.first, pair.n);
    const auto t = triple_counts(rp);
    const auto o = oracle::triple(rp);
    CHECK(oracle::grid_of(t.strict, pair.n) == o.p);
    CHECK(oracle::grid_of(t.indifferent, pair.n) == o.i);
    CHECK(oracle::grid_of(t.noncomparable, pair.n) == o.n);
    for (std::size_t x = 0; x < pair.n; ++x)
      for (std::size_t y = 0; y < pair.n; ++y)
        if (x != y) CHECK(t.p(x, y) + t.p(y, x) + t.i(x, y) + t.n(x, y) == t.voters);
  }
}

TEST_CASE("property: equalize_rel gives equal triple counts and keeps margins") {
  gen::Stream s(53);
  for (int trial = 0; trial < 200; ++trial) {
    const bool ties = trial % 2 == 1;
    const auto pair = gen::margin_equal_rel(s, ties);
    const auto r = gen::rel_profile(pair.first, pair.n);
    const auto q = gen::rel_profile(pair.second, pair.n);
    REQUIRE(oracle::rel_margins(r) == oracle::rel_margins(q));
    const auto [r2, q2] = equalize_rel(r, q, ties ? RelDomain::Wosn : RelDomain::Losn);
    CHECK(oracle::triple(r2) == oracle::triple(q2));
    CHECK(oracle::rel_margins(r2) == oracle::rel_margins(r));
    CHECK(classify_rel(r2) != RelDomain::Other);
    if (!ties) CHECK(classify_rel(r2) == RelDomain::Losn);
  }
}

TEST_CASE("property: LOBI profiles embed with their counts") {
  gen::Stream s(54);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = static_cast<std::size_t>(s.between(2, 5));
    std::vector<oracle::Levels> ballots;
    for (int v = s.between(1, 5); v > 0; --v) ballots.push_back(gen::linear(s, n));
    const auto p = gen::profile(ballots, n);
    const auto rp = embed(p);
    CHECK(classify_rel(rp) == RelDomain::Losn);
    for (const auto& [v, r] : rp.ballots()) CHECK(r.side_class().empty());
    CHECK(oracle::triple(rp).p == oracle::support(ballots, n));
  }
}
