#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "marginvote/core.hpp"
#include "marginvote/margins.hpp"

namespace marginvote {

enum class RuleFailure : std::uint8_t { TieAmbiguous, DomainError };
std::string_view to_string(RuleFailure f);

/// Either a nonempty winner set or a typed failure.
class RuleOutput {
 public:
  RuleOutput(CandidateSet winners) : winners_(std::move(winners)) {}
  static RuleOutput failure(RuleFailure f, std::string detail = {});

  bool ok() const noexcept { return winners_.has_value(); }
  const CandidateSet& winners() const;
  RuleFailure failure() const;
  const std::string& detail() const noexcept { return detail_; }

  friend bool operator==(const RuleOutput& a, const RuleOutput& b) {
    return a.winners_ == b.winners_ && a.failure_ == b.failure_;
  }

 private:
  RuleOutput() = default;
  std::optional<CandidateSet> winners_;
  RuleFailure failure_ = RuleFailure::TieAmbiguous;
  std::string detail_;
};

std::string to_string(const RuleOutput& out);

/// What a rule reads from a profile; used to pick invariance expectations.
enum class RuleInput : std::uint8_t { Margins, HeadToHead, Profile };

struct VotingRule {
  std::string name;
  Domain domain = Domain::Swo;
  RuleInput input = RuleInput::Profile;
  std::function<RuleOutput(const Profile&)> eval;

  /// Throws EmptyProfileError on a voterless profile; returns a DomainError
  /// failure when the profile lies outside the rule's domain.
  RuleOutput operator()(const Profile& p) const;
};

// Matrix-level winners, shared with relational profiles.
CandidateSet minimax_margins(const MarginMatrix& m);
CandidateSet minimax_winning_votes(const SupportMatrix& s);
CandidateSet copeland(const MarginMatrix& m);

RuleOutput minimax_margins(const Profile& p);
RuleOutput minimax_winning_votes(const Profile& p);
RuleOutput plurality(const Profile& p);
RuleOutput borda_linear(const Profile& p);
RuleOutput borda_swo(const Profile& p);
RuleOutput pareto(const Profile& p);
RuleOutput positive_negative(const Profile& p);
RuleOutput copeland(const Profile& p);
RuleOutput irv(const Profile& p);

/// Identical ballots grouped with multiplicities.
struct BallotTally {
  Scope scope;
  std::vector<std::pair<Ranking, std::int64_t>> groups;
  std::int64_t voters() const;
};
BallotTally tally(const Profile& p);

struct IrvRun {
  std::optional<CandidateId> winner;
  std::vector<CandidateId> eliminated;  // in elimination order
  std::vector<std::vector<std::int64_t>> round_counts;
  bool tied = false;
};

/// Runs IRV to the last candidate. A ballot's vote goes to its top remaining
/// class only when that class is a singleton; a tie for fewest votes stops
/// the count with `tied` set.
IrvRun irv_rounds(const BallotTally& t);
IrvRun irv_rounds(const Profile& p);
RuleOutput irv(const BallotTally& t);

/// Singleton-top counts indexed by scope position.
std::vector<std::int64_t> first_place_counts(const BallotTally& t);

// Fixture rules.
VotingRule hybrid_pc_rule();
VotingRule tie_or_last_rule();
VotingRule threshold_rule(std::int64_t lambda = 3);
VotingRule even_odd_rule();
VotingRule block_congruence_rule();
std::vector<VotingRule> fixture_rules();

/// Every registered rule, standard rules first.
const std::vector<VotingRule>& rule_registry();
/// Throws UnknownIdentifierError.
const VotingRule& find_rule(std::string_view name);

}  // namespace marginvote
