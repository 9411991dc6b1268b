#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "marginvote/core.hpp"
#include "marginvote/noncomp.hpp"
#include "marginvote/rules.hpp"

namespace marginvote {

/// One line of an order file: `count` voters casting the same ballot. Groups
/// hold 1-based candidate indices; a group with several members is a tie.
struct BallotGroup {
  std::int64_t count = 0;
  std::vector<std::vector<std::uint32_t>> groups;
  friend bool operator==(const BallotGroup&, const BallotGroup&) = default;
};

struct RawElection {
  std::string name;
  std::vector<std::string> candidate_names;  // index i + 1 names candidate_names[i]
  std::vector<BallotGroup> ballots;

  std::int64_t voter_count() const;
  bool has_ties() const;
  friend bool operator==(const RawElection&, const RawElection&) = default;
};

/// PrefLib soi/toi text: "# ALTERNATIVE NAME i: name" headers, then lines
/// "count: i,j,{k,l}". Throws ParseError or DuplicateCandidateError.
RawElection parse_election(std::string_view text, std::string name = {});
/// One ballot per row ("b>a~c"); an optional "# candidates: a,b,c" header
/// fixes the candidate set, otherwise it is every name that appears.
RawElection parse_csv(std::string_view text, std::string name = {});
/// Dispatches on extension: .csv to parse_csv, anything else to parse_election.
RawElection load_election(const std::filesystem::path& path);
/// toi text; parse_election(serialize_election(e)) == e up to the name.
std::string serialize_election(const RawElection& e);

Scope election_scope(const RawElection& e);
/// Unlisted candidates form one tie class at the bottom; voters are
/// Natural(0), Natural(1), ... in file order.
Profile to_lobi(const RawElection& e);
BallotTally to_tally(const RawElection& e);
/// Unlisted candidates become noncomparable. Throws ToLosnTieError on ties.
RelProfile to_losn(const RawElection& e);
RelProfile to_wosn(const RawElection& e);
/// LOSN when the file has no ties, WOSN otherwise.
RelProfile to_rel(const RawElection& e);

/// Candidate with more than half of the first-place votes; only singleton
/// top classes count as first-place votes.
std::optional<CandidateId> absolute_majority_winner(const Profile& p);
std::optional<CandidateId> absolute_majority_winner(const BallotTally& t);
/// Restriction to the IRV winner and the last two eliminated candidates.
/// Throws TieAmbiguousError when the count hits a tie.
Profile top_three_restriction(const Profile& p);
BallotTally top_three_restriction(const BallotTally& t);
BallotTally restrict_tally(const BallotTally& t, const CandidateSet& subset);

enum class ScanStatus : std::uint8_t { Hit, Miss, Excluded, Skipped };
std::string_view to_string(ScanStatus s);

struct ElectionScan {
  std::string name;
  std::int64_t voters = 0;
  std::size_t candidates = 0;
  ScanStatus status = ScanStatus::Skipped;
  std::string reason;  // why excluded or skipped
  std::string detail;  // winners or witness
  bool pcv = false;    // irv scan: compensation witness found
  std::string pcv_detail;
};

struct ScanReport {
  std::string kind;  // "minimax" or "irv"
  std::string dataset;
  std::size_t budget = 0;
  std::size_t profiles = 0;     // elections read
  std::size_t relevant = 0;     // passed the scan's filters
  std::size_t denominator = 0;  // no Condorcet winner / no absolute majority winner
  std::size_t hits = 0;         // minimax: divergent; irv: equality violations
  std::size_t pcv_hits = 0;
  double average_voters = 0;  // over relevant profiles
  double frequency = 0;       // hits / denominator
  double pcv_frequency = 0;
  std::vector<ElectionScan> elections;
};

/// Elections whose file failed to parse are passed as errors.
struct ScanInput {
  std::string name;
  std::optional<RawElection> election;
  std::string error;
};

ScanReport scan_minimax_divergence(const std::vector<ScanInput>& inputs, unsigned jobs = 1,
                                   std::string dataset = {});
ScanReport scan_irv_violations(const std::vector<ScanInput>& inputs, std::size_t budget = 3, unsigned jobs = 1,
                               std::string dataset = {});
std::vector<ScanInput> scan_inputs(const std::vector<RawElection>& elections);

/// Aligned plain-text table in the layout of the published summary tables.
std::string to_table(const ScanReport& r);

}  // namespace marginvote
