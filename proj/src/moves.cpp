#include <algorithm>
#include <numeric>

#include "marginvote/axioms.hpp"
#include "marginvote/random.hpp"

namespace marginvote {

namespace {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

std::vector<VoterId> fresh_naturals(const Profile::Ballots& ballots, std::size_t count) {
  std::vector<VoterId> out;
  out.reserve(count);
  auto it = ballots.begin();
  for (std::uint64_t n = 0; out.size() < count; ++n) {
    const auto v = VoterId::natural(n);
    while (it != ballots.end() && it->first < v) ++it;
    if (it != ballots.end() && it->first == v) continue;
    out.push_back(v);
  }
  return out;
}

const Ranking& ballot_of(const Profile::Ballots& ballots, const VoterId& v) {
  const auto it = ballots.find(v);
  if (it == ballots.end()) throw UnknownVoterError("unknown voter " + to_string(v));
  return it->second;
}

void require_absent(const Profile::Ballots& ballots, const VoterId& v) {
  if (ballots.contains(v)) throw VoterCollisionError("voter " + to_string(v) + " already votes");
}

void require_distinct(const VoterId& a, const VoterId& b) {
  if (a == b) throw VoterCollisionError("move needs two distinct voters, got " + to_string(a) + " twice");
}

Ranking rescope(const Ranking& r, const Scope& scope) {
  if (r.scope() == scope) return r;
  require_same_candidates(r.candidates(), *scope);
  return Ranking::from_indices(r.class_indices(), scope);
}

std::vector<CandidateId> reversed(std::vector<CandidateId> v) {
  std::reverse(v.begin(), v.end());
  return v;
}

std::string voters_text(const std::vector<VoterId>& vs) {
  std::string out;
  for (std::size_t i = 0; i < vs.size(); ++i) out += (i ? "," : "") + to_string(vs[i]);
  return out;
}

std::string order_text(const std::vector<CandidateId>& order) {
  std::string out;
  for (std::size_t i = 0; i < order.size(); ++i) out += (i ? ">" : "") + order[i].name;
  return out;
}

}  // namespace

Axiom sanctioning_axiom(const Move& m) {
  return std::visit(overloaded{
                        [](const PreferentialSwitch&) { return Axiom::PreferentialEquality; },
                        [](const CoalitionSwitch&) { return Axiom::CoalitionalPreferentialEquality; },
                        [](const CompensatedSwitch&) { return Axiom::PreferentialCompensation; },
                        [](const AddReversalPair& a) {
                          return a.ranking.is_linear() ? Axiom::NeutralReversal : Axiom::NonlinearNeutralReversal;
                        },
                        [](const RemoveReversalPair&) { return Axiom::NeutralReversal; },
                        [](const BreakTie&) { return Axiom::TiebreakingCompensation; },
                        [](const TiebreakPair&) { return Axiom::TiebreakingCompensation; },
                        [](const DoubleProfile&) { return Axiom::Homogeneity; },
                        [](const AddIndifferentVoter&) { return Axiom::NeutralIndifference; },
                        [](const AddBlock&) { return Axiom::BlockInvariance; },
                    },
                    m);
}

std::string describe(const Move& m) {
  return std::visit(
      overloaded{
          [](const PreferentialSwitch& s) { return "switch " + to_string(s.voter) + " " + s.x.name + ">" + s.y.name; },
          [](const CoalitionSwitch& s) {
            return "coalition-switch {" + voters_text(s.voters) + "} " + s.x.name + ">" + s.y.name;
          },
          [](const CompensatedSwitch& s) {
            return "compensated-switch " + to_string(s.first) + " " + s.x.name + ">" + s.y.name + ", " +
                   to_string(s.second) + " " + s.y.name + ">" + s.x.name;
          },
          [](const AddReversalPair& a) {
            return "add-reversal-pair " + to_string(a.first) + "=" + to_string(a.ranking) + " " + to_string(a.second) +
                   "=" + to_string(reverse(a.ranking));
          },
          [](const RemoveReversalPair& r) {
            return "remove-reversal-pair " + to_string(r.first) + " " + to_string(r.second);
          },
          [](const BreakTie& b) { return "break-tie " + to_string(b.voter) + " " + order_text(b.order); },
          [](const TiebreakPair& t) {
            return "tiebreak-pair " + to_string(t.first) + " " + order_text(t.order) + ", " + to_string(t.second) +
                   " " + order_text(reversed(t.order));
          },
          [](const DoubleProfile&) { return std::string("double"); },
          [](const AddIndifferentVoter& a) { return "add-indifferent-voter " + to_string(a.voter); },
          [](const AddBlock&) { return std::string("add-block"); },
      },
      m);
}

void apply_move(Profile::Ballots& ballots, const Scope& scope, const Move& m) {
  std::visit(
      overloaded{
          [&](const PreferentialSwitch& s) {
            auto r = flip_adjacent(ballot_of(ballots, s.voter), s.x, s.y);
            ballots.at(s.voter) = std::move(r);
          },
          [&](const CoalitionSwitch& s) {
            std::vector<Ranking> updated;
            for (std::size_t i = 0; i < s.voters.size(); ++i) {
              for (std::size_t j = 0; j < i; ++j) require_distinct(s.voters[i], s.voters[j]);
              const auto& r = ballot_of(ballots, s.voters[i]);
              try {
                updated.push_back(flip_adjacent(r, s.x, s.y));
              } catch (const NotAdjacentError& e) {
                throw NotAdjacentError("voter " + to_string(s.voters[i]) + ": " + e.what());
              }
            }
            for (std::size_t i = 0; i < s.voters.size(); ++i) ballots.at(s.voters[i]) = std::move(updated[i]);
          },
          [&](const CompensatedSwitch& s) {
            require_distinct(s.first, s.second);
            auto r1 = flip_adjacent(ballot_of(ballots, s.first), s.x, s.y);
            auto r2 = flip_adjacent(ballot_of(ballots, s.second), s.y, s.x);
            ballots.at(s.first) = std::move(r1);
            ballots.at(s.second) = std::move(r2);
          },
          [&](const AddReversalPair& a) {
            require_distinct(a.first, a.second);
            require_absent(ballots, a.first);
            require_absent(ballots, a.second);
            auto r = rescope(a.ranking, scope);
            auto inv = reverse(r);
            ballots.emplace(a.first, std::move(r));
            ballots.emplace(a.second, std::move(inv));
          },
          [&](const RemoveReversalPair& rm) {
            require_distinct(rm.first, rm.second);
            const auto& r1 = ballot_of(ballots, rm.first);
            const auto& r2 = ballot_of(ballots, rm.second);
            if (!(reverse(r1) == r2))
              throw NotReversalPairError("voters " + to_string(rm.first) + " and " + to_string(rm.second) +
                                         " do not cast reversed ballots");
            ballots.erase(rm.first);
            ballots.erase(rm.second);
          },
          [&](const BreakTie& b) {
            auto r = break_tie(ballot_of(ballots, b.voter), b.tie, b.order);
            ballots.at(b.voter) = std::move(r);
          },
          [&](const TiebreakPair& t) {
            require_distinct(t.first, t.second);
            auto r1 = break_tie(ballot_of(ballots, t.first), t.tie, t.order);
            auto r2 = break_tie(ballot_of(ballots, t.second), t.tie, reversed(t.order));
            ballots.at(t.first) = std::move(r1);
            ballots.at(t.second) = std::move(r2);
          },
          [&](const DoubleProfile&) {
            const auto fresh = fresh_naturals(ballots, ballots.size());
            std::vector<Ranking> copies;
            copies.reserve(ballots.size());
            for (const auto& [v, r] : ballots) copies.push_back(r);
            for (std::size_t i = 0; i < fresh.size(); ++i) ballots.emplace(fresh[i], std::move(copies[i]));
          },
          [&](const AddIndifferentVoter& a) {
            require_absent(ballots, a.voter);
            ballots.emplace(a.voter, Ranking::indifferent(scope));
          },
          [&](const AddBlock&) {
            if (scope->size() > 8) throw DomainError("a block of all linear orders is too large for |X| > 8");
            auto orders = all_linear_orders(scope);
            const auto fresh = fresh_naturals(ballots, orders.size());
            for (std::size_t i = 0; i < fresh.size(); ++i) ballots.emplace(fresh[i], std::move(orders[i]));
          },
      },
      m);
}

Profile apply_move(const Profile& p, const Move& m) {
  auto ballots = p.ballots();
  apply_move(ballots, p.scope(), m);
  return Profile::allow_empty(p.scope(), std::move(ballots));
}

Profile preferential_switch(const Profile& p, const VoterId& i, const CandidateId& x, const CandidateId& y) {
  return apply_move(p, PreferentialSwitch{i, x, y});
}

Profile coalition_switch(const Profile& p, const std::vector<VoterId>& voters, const CandidateId& x,
                         const CandidateId& y) {
  return apply_move(p, CoalitionSwitch{voters, x, y});
}

Profile compensated_switch(const Profile& p, const VoterId& i, const VoterId& j, const CandidateId& x,
                           const CandidateId& y) {
  return apply_move(p, CompensatedSwitch{i, j, x, y});
}

Profile add_reversal_pair(const Profile& p, const Ranking& r) {
  const auto fresh = p.fresh_voters(2);
  return apply_move(p, AddReversalPair{fresh[0], fresh[1], r});
}

Profile remove_reversal_pair(const Profile& p, const VoterId& i, const VoterId& j) {
  return apply_move(p, RemoveReversalPair{i, j});
}

Profile break_tie(const Profile& p, const VoterId& i, const CandidateSet& tie, const std::vector<CandidateId>& order) {
  return apply_move(p, BreakTie{i, tie, order});
}

Profile tiebreak_pair(const Profile& p, const VoterId& i, const VoterId& j, const CandidateSet& tie,
                      const std::vector<CandidateId>& order) {
  return apply_move(p, TiebreakPair{i, j, tie, order});
}

Profile add_indifferent_voter(const Profile& p) {
  return apply_move(p, AddIndifferentVoter{p.fresh_voters(1)[0]});
}

Profile add_block(const Profile& p) { return apply_move(p, AddBlock{}); }

}  // namespace marginvote
