#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "marginvote/axioms.hpp"
#include "marginvote/core.hpp"
#include "marginvote/margins.hpp"
#include "marginvote/rules.hpp"

namespace marginvote {

enum class RelDomain : std::uint8_t { Losn, Wosn, Other };
std::string_view to_string(RelDomain d);
RelDomain parse_rel_domain(std::string_view text);

/// Arbitrary weak-preference relation R ⊆ X² (x R y: x at least as good as y).
class PrefRelation {
 public:
  using Index = std::uint32_t;

  PrefRelation(Scope scope, const std::vector<std::pair<CandidateId, CandidateId>>& pairs);
  /// `cells[x * n + y]` nonzero iff x R y.
  static PrefRelation from_matrix(Scope scope, std::vector<char> cells);
  /// The blank ballot: only reflexive pairs.
  static PrefRelation blank(Scope scope);
  /// Ranked classes in order; candidates not listed are unranked. A single
  /// ranked candidate carries no comparison and yields the blank ballot.
  static PrefRelation ranked(Scope scope, const std::vector<std::vector<CandidateId>>& classes);
  /// Complete weak order of a ranking (no unranked candidates).
  static PrefRelation from_ranking(const Ranking& r);
  /// R_{x>y}: the only strict preference is x over y.
  static PrefRelation strict_pair(Scope scope, const CandidateId& x, const CandidateId& y);
  /// R_{x=y}: the only nontrivial indifference is between x and y.
  static PrefRelation tie_pair(Scope scope, const CandidateId& x, const CandidateId& y);

  const Scope& scope() const noexcept { return scope_; }
  const CandidateSet& candidates() const noexcept { return *scope_; }
  std::size_t size() const noexcept { return n_; }

  bool relates(std::size_t x, std::size_t y) const { return cells_[x * n_ + y] != 0; }
  bool strictly(std::size_t x, std::size_t y) const { return relates(x, y) && !relates(y, x); }
  bool indifferent(std::size_t x, std::size_t y) const { return relates(x, y) && relates(y, x); }
  bool noncomparable(std::size_t x, std::size_t y) const { return !relates(x, y) && !relates(y, x); }

  std::vector<bool> side_mask() const;
  CandidateSet side_class() const;
  bool is_reflexive() const;
  bool is_transitive() const;
  RelDomain domain() const;

  PrefRelation inverse() const;
  bool is_self_reversing() const { return *this == inverse(); }

  /// Ranked part as ordered indifference classes. Requires a WOSN relation.
  std::vector<std::vector<CandidateId>> ranked_classes() const;

  const std::vector<char>& cells() const noexcept { return cells_; }
  friend bool operator==(const PrefRelation& a, const PrefRelation& b) {
    return a.cells_ == b.cells_ && same_scope(a.scope_, b.scope_);
  }

 private:
  PrefRelation(Scope scope, std::vector<char> cells);
  Scope scope_;
  std::size_t n_ = 0;
  std::vector<char> cells_;
};

/// "a>b~c | unranked: d,e" for WOSN relations; otherwise the explicit list
/// "{a>=b, b>=c}" of non-reflexive pairs.
std::string to_string(const PrefRelation& r);
PrefRelation parse_relation(std::string_view text, Scope scope);

class RelProfile {
 public:
  using Ballots = std::map<VoterId, PrefRelation>;

  RelProfile(Scope candidates, Ballots ballots);
  static RelProfile allow_empty(Scope candidates, Ballots ballots);

  const Scope& scope() const noexcept { return scope_; }
  const CandidateSet& candidates() const noexcept { return *scope_; }
  const Ballots& ballots() const noexcept { return ballots_; }
  std::size_t voter_count() const noexcept { return ballots_.size(); }
  bool empty() const noexcept { return ballots_.empty(); }
  const PrefRelation& ballot(const VoterId& v) const;
  std::vector<VoterId> fresh_voters(std::size_t count) const;

  friend bool operator==(const RelProfile& a, const RelProfile& b) {
    return same_scope(a.scope_, b.scope_) && a.ballots_ == b.ballots_;
  }

 private:
  RelProfile(Scope candidates, Ballots ballots, bool allow_empty);
  Scope scope_;
  Ballots ballots_;
};

/// Most specific domain covering every ballot.
RelDomain classify_rel(const RelProfile& rp);
RelDomain classify_rel(const PrefRelation& r);

struct TripleCounts {
  Scope scope;
  std::vector<std::int64_t> strict, indifferent, noncomparable;  // n×n
  std::int64_t voters = 0;

  std::int64_t p(std::size_t x, std::size_t y) const { return strict[x * scope->size() + y]; }
  std::int64_t i(std::size_t x, std::size_t y) const { return indifferent[x * scope->size() + y]; }
  std::int64_t n(std::size_t x, std::size_t y) const { return noncomparable[x * scope->size() + y]; }

  friend bool operator==(const TripleCounts& a, const TripleCounts& b) {
    return a.strict == b.strict && a.indifferent == b.indifferent && a.noncomparable == b.noncomparable &&
           a.voters == b.voters && same_scope(a.scope, b.scope);
  }
};

TripleCounts triple_counts(const RelProfile& rp);
MarginMatrix margins(const RelProfile& rp);
/// #P as a support matrix (voter count attached).
SupportMatrix strict_support(const RelProfile& rp);

/// Embeds each ranking as a complete weak order (empty side classes).
RelProfile embed(const Profile& p);

RelProfile comparable_compensation(const RelProfile& rp, const VoterId& i, const VoterId& j,
                                   const std::vector<CandidateId>& order);
RelProfile add_blank_voter(const RelProfile& rp);
/// Throws SelfReversalError unless r equals its inverse.
RelProfile add_self_reversing_voter(const RelProfile& rp, const PrefRelation& r);
RelProfile add_reversal_pair(const RelProfile& rp, const PrefRelation& r);
RelProfile double_profile(const RelProfile& rp);

/// Throws MarginMismatchError, or DomainError when a ballot lies outside
/// `domain` (which must be Losn or Wosn).
std::pair<RelProfile, RelProfile> equalize_rel(const RelProfile& r, const RelProfile& q, RelDomain domain);

/// Double, add r twice (a reversal pair since r is self-reversing), halve.
struct SelfReversalReplay {
  RelProfile doubled;    // 2R
  RelProfile with_pair;  // 2R + r + r
  RelProfile halved;     // R + r
  bool consistent = false;  // margins and head-to-head counts line up at each stage
};
SelfReversalReplay self_reversal_replay(const RelProfile& rp, const PrefRelation& r);

struct RelVotingRule {
  std::string name;
  RelDomain domain = RelDomain::Wosn;
  std::function<RuleOutput(const RelProfile&)> eval;
  RuleOutput operator()(const RelProfile& rp) const;
};

const std::vector<RelVotingRule>& rel_rule_registry();
const RelVotingRule& find_rel_rule(std::string_view name);

struct RelScenario {
  Axiom axiom;
  RelProfile before;
  RelProfile after;
  std::string description;
};

std::vector<RelScenario> rel_scenarios_from(const RelProfile& base, Axiom axiom);

struct RelWitness {
  RelScenario scenario;
  std::vector<RuleOutput> outputs;
};

struct RelAxiomReport {
  Axiom axiom;
  std::string rule;
  std::size_t tried = 0;
  std::size_t skipped = 0;
  std::size_t witness_count = 0;
  std::vector<RelWitness> witnesses;
  bool passed() const noexcept { return witness_count == 0; }
};

/// Supports ComparableCompensation, NeutralBlankness, NeutralSelfReversal,
/// NonlinearNeutralReversal and Homogeneity; other axioms raise
/// DomainMismatchError.
RelAxiomReport check_rel_axiom(const RelVotingRule& rule, Axiom axiom, const std::vector<RelProfile>& pool,
                               const CheckOptions& options = {});

}  // namespace marginvote
