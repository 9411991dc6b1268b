#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "marginvote/axioms.hpp"
#include "marginvote/core.hpp"
#include "marginvote/margins.hpp"

namespace marginvote {

/// G⊤_ab = a b L and G⊥_ab = L⁻¹ a b, L the alphabetic order of X∖{a,b}.
struct McGarveyPair {
  CandidateId a, b;
  Ranking top;
  Ranking bottom;
};

McGarveyPair mcgarvey_pair(const CandidateId& a, const CandidateId& b, const Scope& scope);
/// Ballot of the designated voter with the given key.
Ranking designated_ballot(const DesignatedVoterKey& key, const Scope& scope);

/// D(v,m): m(a,b)/2 designated ⊤ and ⊥ voters for each positive entry.
/// Throws OddMarginError when some entry is odd.
Profile debord(const MarginMatrix& m);

struct DebordCheck {
  bool ok = true;
  std::vector<std::string> problems;
  explicit operator bool() const noexcept { return ok; }
};

/// The four designated-voter conditions; `problems` names each failure.
DebordCheck is_debord_form(const Profile& p);

struct CanonicalForm {
  std::optional<std::pair<VoterId, Ranking>> held_out;
  Profile debord_part;

  /// held_out ⊎ debord_part.
  Profile profile() const;
  friend bool operator==(const CanonicalForm& a, const CanonicalForm& b) {
    return a.held_out == b.held_out && a.debord_part == b.debord_part;
  }
};

struct TraceStep {
  Move move;
  MarginMatrix margins;  // after the move
};

struct MoveTrace {
  MarginMatrix initial;
  std::vector<TraceStep> steps;
};

struct Canonicalization {
  CanonicalForm form;
  MoveTrace trace;
};

/// Rewrites a linear profile into its margin-determined canonical form using
/// only reversal-pair additions/removals and compensated switches.
/// Throws DomainError on nonlinear input.
Canonicalization canonicalize_linear(const Profile& p, bool record_trace = true);

struct TraceAudit {
  bool ok = true;
  std::size_t steps = 0;
  std::vector<std::string> problems;
  explicit operator bool() const noexcept { return ok; }
};

/// Replays the trace from `start`, checking that each move is of an allowed
/// kind, applies cleanly, and yields the recorded margins (equal to the
/// previous snapshot, or twice it for a doubling). When `end` is given the
/// final profile must equal it.
TraceAudit audit_trace(const Profile& start, const MoveTrace& trace, const Profile* end = nullptr);

struct Linearization {
  Profile profile;
  MoveTrace trace;
};

/// One doubling followed by opposite tie-breaks in every original/copy pair.
Linearization linearize_ties(const Profile& p);

/// Adds reversal pairs and indifferent voters so that both outputs share H.
/// Throws MarginMismatchError unless margins(p) = margins(q).
std::pair<Profile, Profile> equalize_h2h(const Profile& p, const Profile& q);

/// FNV-1a over the scope names and cells.
std::uint64_t margin_hash(const MarginMatrix& m);

}  // namespace marginvote
