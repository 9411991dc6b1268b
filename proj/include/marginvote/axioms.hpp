#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "marginvote/core.hpp"
#include "marginvote/margins.hpp"
#include "marginvote/rules.hpp"

namespace marginvote {

enum class Axiom : std::uint8_t {
  PreferentialEquality,
  PreferentialCompensation,
  CoalitionalPreferentialEquality,
  NeutralReversal,
  TiebreakingCompensation,
  PureTiebreakingCompensation,
  Homogeneity,
  NonlinearNeutralReversal,
  NeutralIndifference,
  BlockInvariance,
  ComparableCompensation,
  NeutralBlankness,
  NeutralSelfReversal,
};

std::string_view to_string(Axiom a);
/// Throws UnknownIdentifierError.
Axiom parse_axiom(std::string_view id);
const std::vector<Axiom>& profile_axioms();
bool is_relational(Axiom a);

// ---------------------------------------------------------------------------
// Moves
// ---------------------------------------------------------------------------

/// Voter switches x (immediately above y) to y immediately above x.
struct PreferentialSwitch {
  VoterId voter;
  CandidateId x, y;
};
struct CoalitionSwitch {
  std::vector<VoterId> voters;
  CandidateId x, y;
};
/// `first` switches x>y to y>x while `second` switches y>x to x>y.
struct CompensatedSwitch {
  VoterId first, second;
  CandidateId x, y;
};
/// `first` votes `ranking`, `second` its reverse.
struct AddReversalPair {
  VoterId first, second;
  Ranking ranking;
};
struct RemoveReversalPair {
  VoterId first, second;
};
struct BreakTie {
  VoterId voter;
  CandidateSet tie;
  std::vector<CandidateId> order;
};
/// `first` breaks the tie by `order`, `second` by its reverse.
struct TiebreakPair {
  VoterId first, second;
  CandidateSet tie;
  std::vector<CandidateId> order;
};
/// Copies every ballot onto the least unused Natural ids.
struct DoubleProfile {};
struct AddIndifferentVoter {
  VoterId voter;
};
/// Adds one voter per linear order of X, on the least unused Natural ids.
struct AddBlock {};

using Move = std::variant<PreferentialSwitch, CoalitionSwitch, CompensatedSwitch, AddReversalPair, RemoveReversalPair,
                          BreakTie, TiebreakPair, DoubleProfile, AddIndifferentVoter, AddBlock>;

/// The axiom that sanctions a move.
Axiom sanctioning_axiom(const Move& m);
std::string describe(const Move& m);

/// Applies a move to a ballot map in place. On error the map is unchanged.
void apply_move(Profile::Ballots& ballots, const Scope& scope, const Move& m);
Profile apply_move(const Profile& p, const Move& m);

Profile preferential_switch(const Profile& p, const VoterId& i, const CandidateId& x, const CandidateId& y);
Profile coalition_switch(const Profile& p, const std::vector<VoterId>& voters, const CandidateId& x,
                         const CandidateId& y);
Profile compensated_switch(const Profile& p, const VoterId& i, const VoterId& j, const CandidateId& x,
                           const CandidateId& y);
/// Adds r and reverse(r) on the two least unused Natural ids.
Profile add_reversal_pair(const Profile& p, const Ranking& r);
Profile remove_reversal_pair(const Profile& p, const VoterId& i, const VoterId& j);
Profile break_tie(const Profile& p, const VoterId& i, const CandidateSet& tie, const std::vector<CandidateId>& order);
Profile tiebreak_pair(const Profile& p, const VoterId& i, const VoterId& j, const CandidateSet& tie,
                      const std::vector<CandidateId>& order);
Profile add_indifferent_voter(const Profile& p);
/// Throws DomainError when |X|! exceeds 40320.
Profile add_block(const Profile& p);

// ---------------------------------------------------------------------------
// Scenarios and checking
// ---------------------------------------------------------------------------

/// Equal-effect scenarios compare the rule on after[0] and after[1]; all
/// others compare it on `before` and after[0].
struct AxiomScenario {
  Axiom axiom;
  Profile before;
  std::vector<Profile> after;
  bool equal_effect = false;
  std::string description;

  std::vector<const Profile*> compared() const;
};

struct Witness {
  AxiomScenario scenario;
  std::vector<RuleOutput> outputs;
};

struct CheckOptions {
  std::uint64_t seed = 0;
  std::size_t budget = 1000;
  std::size_t max_coalition = 3;
  std::size_t max_witnesses = 5;
  unsigned jobs = 1;
  /// Random profiles are drawn only after the pool is exhausted.
  bool random_fill = true;
};

struct AxiomReport {
  Axiom axiom;
  std::string rule;
  std::uint64_t seed = 0;
  std::size_t budget = 0;
  std::size_t tried = 0;
  std::size_t skipped = 0;
  std::size_t witness_count = 0;
  std::vector<Witness> witnesses;  // first max_witnesses, in scenario order

  bool passed() const noexcept { return witness_count == 0; }
};

/// Scenarios of `axiom` built from one base profile, in deterministic order.
std::vector<AxiomScenario> scenarios_from(const Profile& base, Axiom axiom, std::size_t max_coalition = 3);

/// Throws DomainMismatchError when the axiom cannot be instantiated inside the
/// rule's domain.
void require_applicable(const VotingRule& rule, Axiom axiom);

AxiomReport check_axiom(const VotingRule& rule, Axiom axiom, const std::vector<Profile>& pool,
                        const CheckOptions& options = {});

/// Evaluates one scenario; nullopt when a compared profile leaves the rule's
/// domain, otherwise the outputs on the compared profiles. An ambiguous tie is
/// an output like any other.
std::optional<std::vector<RuleOutput>> evaluate(const VotingRule& rule, const AxiomScenario& s);

// ---------------------------------------------------------------------------
// Invariance classification
// ---------------------------------------------------------------------------

enum class InvarianceLevel : std::uint8_t { MarginBased, HeadToHead, C2 };
std::string_view to_string(InvarianceLevel l);

struct InvariancePair {
  Profile first;
  Profile second;
  RuleOutput first_output;
  RuleOutput second_output;
};

struct LevelResult {
  InvarianceLevel level;
  std::size_t groups = 0;       // buckets holding at least two evaluated profiles
  std::size_t comparisons = 0;  // pairs inside those buckets
  std::size_t counterexample_count = 0;
  std::vector<InvariancePair> counterexamples;  // capped

  bool passed() const noexcept { return counterexample_count == 0; }
};

struct InvarianceReport {
  std::string rule;
  std::size_t profiles = 0;
  std::size_t skipped = 0;
  std::vector<LevelResult> levels;  // margin-based, head-to-head, C2

  const LevelResult& at(InvarianceLevel l) const;
};

/// Profiles sharing M (or H, or #) with `base`, built with axiom moves and the
/// canonical constructions. `domain` limits which partners are produced.
std::vector<Profile> invariance_partners(const Profile& base, Domain domain);

InvarianceReport classify_invariance(const VotingRule& rule, const std::vector<Profile>& pool,
                                     std::size_t max_counterexamples = 5);

}  // namespace marginvote
