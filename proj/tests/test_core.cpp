#include "doctest.h"
#include "marginvote/core.hpp"
#include "marginvote/margins.hpp"
#include "marginvote/random.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace marginvote;
using namespace marginvote::literals;

namespace {

Scope abc_scope() { return make_scope(fixtures::abc()); }

}  // namespace

TEST_CASE("make_ranking builds linear and tied rankings") {
  const auto s = abc_scope();
  const auto lin = make_ranking({{"a"_cand}, {"b"_cand}, {"c"_cand}}, s);
  CHECK(to_string(lin) == "a>b>c");
  CHECK(lin.domain() == Domain::Linear);

  const auto lobi = make_ranking({{"b"_cand}, {"a"_cand, "c"_cand}}, s);
  CHECK(to_string(lobi) == "b>a~c");
  CHECK(lobi.domain() == Domain::Lobi);
  CHECK(lobi.prefers("b"_cand, "a"_cand));
  CHECK_FALSE(lobi.prefers("a"_cand, "c"_cand));

  CHECK_THROWS_AS(make_ranking({{"a"_cand}, {"a"_cand, "b"_cand}}, s), OverlapOrGapError);
  CHECK_THROWS_AS(make_ranking({{"a"_cand}, {"b"_cand}}, s), OverlapOrGapError);
  CHECK_THROWS_AS(make_ranking({{"a"_cand}, {}, {"b"_cand, "c"_cand}}, s), OverlapOrGapError);
}

TEST_CASE("flip_adjacent swaps neighbours only") {
  const auto s = abc_scope();
  CHECK(to_string(flip_adjacent(parse_ranking("a>b>c", s), "a"_cand, "b"_cand)) == "b>a>c");
  CHECK_THROWS_AS(flip_adjacent(parse_ranking("a>b>c", s), "a"_cand, "c"_cand), NotAdjacentError);
  CHECK_THROWS_AS(flip_adjacent(parse_ranking("a>b>c", s), "b"_cand, "a"_cand), NotAdjacentError);

  const auto d = make_scope(fixtures::dmr());
  CHECK(to_string(flip_adjacent(parse_ranking("D>R>M", d), "R"_cand, "M"_cand)) == "D>M>R");
}

TEST_CASE("reverse reverses the class sequence") {
  const auto s = abc_scope();
  CHECK(to_string(reverse(parse_ranking("a>b>c", s))) == "c>b>a");
  CHECK(to_string(reverse(parse_ranking("b>a~c", s))) == "a~c>b");
  CHECK(reverse(Ranking::indifferent(s)) == Ranking::indifferent(s));
}

TEST_CASE("ranking text round-trips and blank text is full indifference") {
  const auto s = abc_scope();
  for (const auto& r : all_weak_orders(s)) CHECK(parse_ranking(to_string(r), s) == r);
  CHECK(parse_ranking("", s) == Ranking::indifferent(s));
  CHECK_THROWS_AS(parse_ranking("a>b>x", s), UnknownCandidateError);
}

TEST_CASE("voter ids: naturals precede designated ids and text round-trips") {
  const auto n0 = VoterId::natural(0);
  const auto n9 = VoterId::natural(9);
  const auto d = VoterId::designated(DesignatedVoterKey("a"_cand, "b"_cand, Star::Top, 1));
  const auto d2 = VoterId::designated(DesignatedVoterKey("a"_cand, "b"_cand, Star::Bottom, 1));
  CHECK(n0 < n9);
  CHECK(n9 < d);
  CHECK(d < d2);
  for (const auto& v : {n0, n9, d, d2}) CHECK(parse_voter_id(to_string(v)) == v);
  CHECK_THROWS_AS(DesignatedVoterKey("a"_cand, "a"_cand, Star::Top, 1), InvalidVoterIdError);
  CHECK_THROWS_AS(DesignatedVoterKey("a"_cand, "b"_cand, Star::Top, 0), InvalidVoterIdError);
}

TEST_CASE("disjoint_union") {
  const auto c = CandidateSet{"a", "b"};
  const auto p = profile_from_strings(c, {"a>b"});
  auto scope = p.scope();
  const Profile q(scope, {{VoterId::natural(1), parse_ranking("b>a", scope)}});
  const auto u = disjoint_union(p, q);
  CHECK(u.voter_count() == 2);
  CHECK(margins(u).is_zero());
  CHECK_THROWS_AS(disjoint_union(p, p), VoterCollisionError);
  CHECK_THROWS_AS(disjoint_union(p, profile_from_strings(fixtures::abc(), {"a>b>c"})), CandidateMismatchError);

  const auto ex = fixtures::make(fixtures::abcd(), fixtures::kSixVoterP);
  Profile::Ballots head, tail;
  for (const auto& [v, r] : ex.ballots()) (v.number() < 2 ? head : tail).emplace(v, r);
  CHECK(disjoint_union(Profile(ex.scope(), head), Profile(ex.scope(), tail)) == ex);
}

TEST_CASE("double_profile uses the least unused ids and doubles support") {
  const auto c = CandidateSet{"a", "b"};
  const auto p = profile_from_strings(c, {"a>b"});
  const auto d = double_profile(p);
  CHECK(d.voters() == std::vector<VoterId>{VoterId::natural(0), VoterId::natural(1)});
  CHECK(to_string(d.ballot(VoterId::natural(1))) == "a>b");

  const auto tied_cycle = fixtures::make(fixtures::abc(), fixtures::kTiedCycle);
  const auto m = margins(double_profile(tied_cycle));
  CHECK(m.at("a"_cand, "b"_cand) == 6);
  CHECK(m.at("b"_cand, "c"_cand) == 2);
  CHECK(m.at("c"_cand, "a"_cand) == 4);

  CHECK(double_profile(Profile::empty(make_scope(c))).empty());

  gen::Stream s(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = static_cast<std::size_t>(s.between(2, 5));
    std::vector<oracle::Levels> ballots;
    for (int v = s.between(1, 6); v > 0; --v) ballots.push_back(gen::weak(s, n));
    const auto p2 = gen::profile(ballots, n);
    const auto d2 = double_profile(p2);
    CHECK(d2.voter_count() == 2 * p2.voter_count());
    auto twice = oracle::support(ballots, n);
    for (auto& row : twice)
      for (auto& v : row) v *= 2;
    CHECK(oracle::grid_of(support(d2).cells(), n) == twice);
  }
}

TEST_CASE("restrict_profile keeps every voter") {
  const auto p = profile_from_strings(fixtures::abc(), {"a>b>c", "b>a~c"});
  const auto r = restrict_profile(p, CandidateSet{"a", "c"});
  CHECK(to_string(r.ballot(VoterId::natural(0))) == "a>c");
  CHECK(to_string(r.ballot(VoterId::natural(1))) == "a~c");
  CHECK(r.voter_count() == 2);
  CHECK_THROWS_AS(restrict_profile(p, CandidateSet{}), EmptyRestrictionError);
  CHECK_THROWS_AS(restrict_profile(p, CandidateSet{"a", "z"}), EmptyRestrictionError);

  const auto govan = fixtures::profile("govan.toi");
  const auto smith = smith_set(govan);
  CHECK(restrict_profile(govan, smith).voter_count() == 9560);
}

TEST_CASE("classify_domain") {
  CHECK(classify_domain(fixtures::make(fixtures::abcd(), fixtures::kSixVoterP)) == Domain::Linear);
  CHECK(classify_domain(fixtures::make(fixtures::abc(), fixtures::kTiedCycle)) == Domain::Lobi);
  CHECK(classify_domain(profile_from_strings(fixtures::abcd(), {"a~b>c>d", "a>b~c>d"})) == Domain::Swo);
}

TEST_CASE("property: strictly-above is asymmetric and negatively transitive") {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto scope = make_scope(letters(n));
    for (const auto& r : all_weak_orders(scope)) {
      const auto idx = static_cast<Ranking::Index>(n);
      for (Ranking::Index x = 0; x < idx; ++x)
        for (Ranking::Index y = 0; y < idx; ++y) {
          if (r.prefers(x, y)) CHECK_FALSE(r.prefers(y, x));
          for (Ranking::Index z = 0; z < idx; ++z)
            if (!r.prefers(x, y) && !r.prefers(y, z)) CHECK_FALSE(r.prefers(x, z));
        }
    }
  }
}

TEST_CASE("property: ordered partitions are counted by the Fubini numbers") {
  const std::size_t fubini[] = {1, 1, 3, 13, 75};
  for (std::size_t n = 1; n <= 4; ++n) CHECK(all_weak_orders(make_scope(letters(n))).size() == fubini[n]);
}

TEST_CASE("property: reverse is an involution and flipping twice restores") {
  gen::Stream s(5);
  for (int trial = 0; trial < 300; ++trial) {
    const auto n = static_cast<std::size_t>(s.between(2, 6));
    const auto nm = gen::names(n);
    const auto scope = make_scope(CandidateSet::from_names(nm));
    const auto r = parse_ranking(gen::text(gen::weak(s, n), nm), scope);
    CHECK(reverse(reverse(r)) == r);
    const auto lin = parse_ranking(gen::text(gen::linear(s, n), nm), scope);
    const auto order = lin.linear_order();
    const auto k = s.below(n - 1);
    const auto flipped = flip_adjacent(lin, order[k], order[k + 1]);
    CHECK(flip_adjacent(flipped, order[k + 1], order[k]) == lin);
  }
}

TEST_CASE("property: restriction keeps LOBI profiles LOBI") {
  gen::Stream s(17);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = static_cast<std::size_t>(s.between(2, 5));
    std::vector<oracle::Levels> ballots;
    for (int v = s.between(1, 5); v > 0; --v) {
      auto l = gen::linear(s, n);
      const int cut = s.between(0, static_cast<int>(n) - 1);
      for (auto& x : l) x = std::min(x, cut);
      ballots.push_back(l);
    }
    const auto p = gen::profile(ballots, n);
    REQUIRE(within(classify_domain(p), Domain::Lobi));
    std::vector<CandidateId> keep;
    for (const auto& c : p.candidates())
      if (s.coin()) keep.push_back(c);
    if (keep.empty()) keep.push_back(p.candidates()[0]);
    CHECK(within(classify_domain(restrict_profile(p, CandidateSet(keep))), Domain::Lobi));
  }
}

TEST_CASE("fresh_voters skips ids in use") {
  const auto scope = abc_scope();
  const Profile p(scope, {{VoterId::natural(1), Ranking::alphabetic(scope)}});
  CHECK(p.fresh_voters(2) == std::vector<VoterId>{VoterId::natural(0), VoterId::natural(2)});
  CHECK_THROWS_AS(Profile(scope, {}), EmptyProfileError);
}
