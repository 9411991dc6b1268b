#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "marginvote/errors.hpp"

namespace marginvote {

// ---------------------------------------------------------------------------
// Candidates
// ---------------------------------------------------------------------------

/// A candidate token. The universe of candidates is ordered by name; that
/// order is the "alphabetic" order used by every canonical construction.
struct CandidateId {
  std::string name;

  CandidateId() = default;
  explicit CandidateId(std::string n) : name(std::move(n)) {}

  friend auto operator<=>(const CandidateId&, const CandidateId&) = default;
  friend bool operator==(const CandidateId&, const CandidateId&) = default;
};

namespace literals {
inline CandidateId operator""_cand(const char* s, std::size_t n) { return CandidateId(std::string(s, n)); }
}  // namespace literals

/// Finite, nonempty-or-empty set of candidates kept in alphabetic order.
class CandidateSet {
 public:
  CandidateSet() = default;
  explicit CandidateSet(std::vector<CandidateId> ids);
  CandidateSet(std::initializer_list<std::string_view> names);

  static CandidateSet from_names(const std::vector<std::string>& names);

  std::size_t size() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return ids_.empty(); }
  const CandidateId& operator[](std::size_t i) const { return ids_[i]; }
  const std::vector<CandidateId>& ids() const noexcept { return ids_; }
  auto begin() const noexcept { return ids_.begin(); }
  auto end() const noexcept { return ids_.end(); }

  std::optional<std::size_t> index_of(const CandidateId& c) const;
  /// Throws UnknownCandidateError when `c` is not a member.
  std::size_t require_index(const CandidateId& c) const;
  bool contains(const CandidateId& c) const { return index_of(c).has_value(); }
  bool is_subset_of(const CandidateSet& other) const;

  friend bool operator==(const CandidateSet&, const CandidateSet&) = default;

 private:
  std::vector<CandidateId> ids_;
};

std::string to_string(const CandidateSet& s, std::string_view sep = ",");

/// Candidate sets are shared between a profile and all of its ballots.
using Scope = std::shared_ptr<const CandidateSet>;
Scope make_scope(CandidateSet set);
bool same_scope(const Scope& a, const Scope& b);

// ---------------------------------------------------------------------------
// Voters
// ---------------------------------------------------------------------------

enum class Star : std::uint8_t { Top, Bottom };

/// Key (ab, star, k) of a designated McGarvey voter.
struct DesignatedVoterKey {
  CandidateId first;
  CandidateId second;
  Star star = Star::Top;
  std::uint64_t k = 1;

  DesignatedVoterKey() = default;
  /// Throws InvalidVoterIdError unless first != second and k >= 1.
  DesignatedVoterKey(CandidateId a, CandidateId b, Star s, std::uint64_t index);

  friend auto operator<=>(const DesignatedVoterKey&, const DesignatedVoterKey&) = default;
  friend bool operator==(const DesignatedVoterKey&, const DesignatedVoterKey&) = default;
};

/// Voter identity. Every Natural id precedes every Designated id.
class VoterId {
 public:
  VoterId() : id_(std::uint64_t{0}) {}
  static VoterId natural(std::uint64_t n) { return VoterId(n); }
  static VoterId designated(DesignatedVoterKey key) { return VoterId(std::move(key)); }

  bool is_natural() const noexcept { return id_.index() == 0; }
  bool is_designated() const noexcept { return id_.index() == 1; }
  std::uint64_t number() const;
  const DesignatedVoterKey& key() const;

  friend std::strong_ordering operator<=>(const VoterId& a, const VoterId& b);
  friend bool operator==(const VoterId& a, const VoterId& b) { return a.id_ == b.id_; }

 private:
  explicit VoterId(std::uint64_t n) : id_(n) {}
  explicit VoterId(DesignatedVoterKey k) : id_(std::move(k)) {}
  std::variant<std::uint64_t, DesignatedVoterKey> id_;
};

/// "7" for natural ids, "v(a,b,top,1)" for designated ones.
std::string to_string(const VoterId& v);
VoterId parse_voter_id(std::string_view text);

// ---------------------------------------------------------------------------
// Rankings
// ---------------------------------------------------------------------------

/// Profile domains, from most to least specific.
enum class Domain : std::uint8_t { Linear, Lobi, Swo };

constexpr bool within(Domain d, Domain allowed) noexcept {
  return static_cast<int>(d) <= static_cast<int>(allowed);
}
std::string_view to_string(Domain d);
Domain parse_domain(std::string_view text);

/// A strict weak order stored as its ordered sequence of indifference classes.
/// Candidates are referred to by their index in the scope.
class Ranking {
 public:
  using Index = std::uint32_t;

  /// Throws OverlapOrGapError unless the classes are nonempty, disjoint and
  /// cover the scope.
  Ranking(const std::vector<std::vector<CandidateId>>& classes, Scope scope);
  static Ranking from_indices(std::vector<std::vector<Index>> classes, Scope scope);
  static Ranking linear(const std::vector<CandidateId>& order, Scope scope);
  /// The fully indifferent ranking (one class holding every candidate).
  static Ranking indifferent(Scope scope);
  /// Alphabetic linear order of the scope.
  static Ranking alphabetic(Scope scope);

  const Scope& scope() const noexcept { return scope_; }
  const CandidateSet& candidates() const noexcept { return *scope_; }

  std::size_t class_count() const noexcept { return classes_.size(); }
  std::span<const Index> class_at(std::size_t k) const { return classes_[k]; }
  const std::vector<std::vector<Index>>& class_indices() const noexcept { return classes_; }
  std::vector<CandidateId> class_members(std::size_t k) const;
  std::vector<std::vector<CandidateId>> classes() const;

  Index level(Index candidate) const { return level_[candidate]; }
  Index level(const CandidateId& c) const;
  bool prefers(Index x, Index y) const { return level_[x] < level_[y]; }
  bool prefers(const CandidateId& x, const CandidateId& y) const;
  /// True when x and y are singleton classes at consecutive positions, x first.
  bool immediately_above(Index x, Index y) const;

  bool is_linear() const noexcept { return classes_.size() == scope_->size(); }
  bool is_lobi() const noexcept;
  Domain domain() const noexcept;

  /// Order of candidates for a linear ranking. Throws DomainError otherwise.
  std::vector<CandidateId> linear_order() const;

  friend bool operator==(const Ranking& a, const Ranking& b);

 private:
  Ranking(Scope scope, std::vector<std::vector<Index>> classes);
  Scope scope_;
  std::vector<std::vector<Index>> classes_;
  std::vector<Index> level_;
};

Ranking make_ranking(const std::vector<std::vector<CandidateId>>& classes, Scope scope);
/// Swaps x and y where x sits immediately above y. Throws NotAdjacentError.
Ranking flip_adjacent(const Ranking& r, const CandidateId& x, const CandidateId& y);
Ranking reverse(const Ranking& r);
/// Keeps only candidates of `subset`; empty classes disappear.
Ranking restrict_ranking(const Ranking& r, Scope subset);
/// Replaces the tie `tie` (a class of r) by the singletons of `order`.
/// Throws NotATieError when `tie` is not a non-singleton class of r.
Ranking break_tie(const Ranking& r, const CandidateSet& tie, const std::vector<CandidateId>& order);

/// Text form: classes separated by '>', tied members by '~' ("b>a~c").
/// A blank string denotes the fully indifferent ranking.
Ranking parse_ranking(std::string_view text, Scope scope);
std::string to_string(const Ranking& r);

// ---------------------------------------------------------------------------
// Profiles
// ---------------------------------------------------------------------------

class Profile {
 public:
  using Ballots = std::map<VoterId, Ranking>;

  /// Throws EmptyProfileError on an empty ballot map and
  /// CandidateMismatchError when a ballot has a different scope.
  Profile(Scope candidates, Ballots ballots);

  /// The voterless profile used by canonical forms. Voting rules reject it.
  static Profile empty(Scope candidates);
  /// Same checks as the constructor but an empty ballot map is accepted.
  static Profile allow_empty(Scope candidates, Ballots ballots);

  const Scope& scope() const noexcept { return scope_; }
  const CandidateSet& candidates() const noexcept { return *scope_; }
  const Ballots& ballots() const noexcept { return ballots_; }
  std::size_t voter_count() const noexcept { return ballots_.size(); }
  bool empty() const noexcept { return ballots_.empty(); }
  bool has_voter(const VoterId& v) const { return ballots_.contains(v); }
  const Ranking& ballot(const VoterId& v) const;
  std::vector<VoterId> voters() const;

  /// The `count` alphabetically least Natural ids not used by this profile.
  std::vector<VoterId> fresh_voters(std::size_t count) const;

  friend bool operator==(const Profile& a, const Profile& b);

 private:
  Profile(Scope candidates, Ballots ballots, bool allow_empty);
  Scope scope_;
  Ballots ballots_;
};

/// Scope check shared by every operation that combines two profiles.
void require_same_candidates(const CandidateSet& a, const CandidateSet& b);

Profile disjoint_union(const Profile& p, const Profile& q);
/// 2P: the profile plus a copy on the |V| least unused voter ids.
Profile double_profile(const Profile& p);
/// Throws EmptyRestrictionError when `subset` is empty or not within X(p).
Profile restrict_profile(const Profile& p, const CandidateSet& subset);
Domain classify_domain(const Profile& p);

/// Builds a profile with voters Natural(0..) from ranking strings.
Profile profile_from_strings(const CandidateSet& candidates, const std::vector<std::string>& rankings);
/// Same, but each entry is repeated `count` times.
Profile profile_from_counts(const CandidateSet& candidates,
                            const std::vector<std::pair<std::int64_t, std::string>>& groups);

}  // namespace marginvote
