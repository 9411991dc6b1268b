#include "marginvote/data.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace marginvote {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto pos = text.find('\n');
    lines.push_back(text.substr(0, pos));
    if (pos == std::string_view::npos) break;
    text.remove_prefix(pos + 1);
  }
  return lines;
}

template <class T>
std::optional<T> to_number(std::string_view s) {
  s = trim(s);
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return value;
}

bool starts_with_ci(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i)
    if (std::tolower(static_cast<unsigned char>(s[i])) != std::tolower(static_cast<unsigned char>(prefix[i]))) return false;
  return true;
}

std::vector<std::vector<std::uint32_t>> parse_order(std::string_view body, std::size_t line, std::size_t limit) {
  std::vector<std::vector<std::uint32_t>> groups;
  std::set<std::uint32_t> seen;
  auto add = [&](std::string_view token, std::vector<std::uint32_t>& group) {
    const auto idx = to_number<std::uint32_t>(token);
    if (!idx) throw ParseError("bad candidate index '" + std::string(trim(token)) + "'", line);
    if (*idx < 1 || (limit && *idx > limit))
      throw ParseError("candidate index " + std::to_string(*idx) + " out of range", line);
    if (!seen.insert(*idx).second)
      throw DuplicateCandidateError("line " + std::to_string(line) + ": candidate " + std::to_string(*idx) +
                                    " listed twice");
    group.push_back(*idx);
  };
  std::size_t pos = 0;
  body = trim(body);
  while (pos < body.size()) {
    if (body[pos] == ',' || body[pos] == ' ' || body[pos] == '\t') {
      ++pos;
      continue;
    }
    std::vector<std::uint32_t> group;
    if (body[pos] == '{') {
      const auto close = body.find('}', pos);
      if (close == std::string_view::npos) throw ParseError("unterminated '{'", line);
      auto inner = body.substr(pos + 1, close - pos - 1);
      while (!trim(inner).empty()) {
        const auto comma = inner.find(',');
        add(inner.substr(0, comma), group);
        if (comma == std::string_view::npos) break;
        inner.remove_prefix(comma + 1);
      }
      if (group.empty()) throw ParseError("empty tie group", line);
      pos = close + 1;
    } else {
      const auto comma = body.find(',', pos);
      const auto end = comma == std::string_view::npos ? body.size() : comma;
      add(body.substr(pos, end - pos), group);
      pos = end;
    }
    groups.push_back(std::move(group));
  }
  return groups;
}

}  // namespace

std::int64_t RawElection::voter_count() const {
  std::int64_t n = 0;
  for (const auto& b : ballots) n += b.count;
  return n;
}

bool RawElection::has_ties() const {
  for (const auto& b : ballots)
    for (const auto& g : b.groups)
      if (g.size() > 1) return true;
  return false;
}

RawElection parse_election(std::string_view text, std::string name) {
  RawElection e;
  e.name = std::move(name);
  std::size_t declared = 0;
  std::map<std::size_t, std::string> names;
  std::vector<std::pair<std::size_t, std::string_view>> rows;
  const auto lines = lines_of(text);
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const auto line = trim(lines[k]);
    const auto no = k + 1;
    if (line.empty()) continue;
    if (line.front() != '#') {
      rows.emplace_back(no, line);
      continue;
    }
    const auto header = trim(line.substr(1));
    const auto colon = header.find(':');
    if (colon == std::string_view::npos) continue;
    const auto key = trim(header.substr(0, colon));
    const auto value = trim(header.substr(colon + 1));
    if (starts_with_ci(key, "NUMBER ALTERNATIVES")) {
      const auto n = to_number<std::size_t>(value);
      if (!n) throw ParseError("bad alternative count '" + std::string(value) + "'", no);
      declared = *n;
    } else if (starts_with_ci(key, "ALTERNATIVE NAME")) {
      const auto idx = to_number<std::size_t>(key.substr(std::string_view("ALTERNATIVE NAME").size()));
      if (!idx || *idx == 0) throw ParseError("bad alternative index", no);
      if (!names.emplace(*idx, std::string(value)).second)
        throw DuplicateCandidateError("line " + std::to_string(no) + ": alternative " + std::to_string(*idx) +
                                      " named twice");
    } else if (starts_with_ci(key, "TITLE") && e.name.empty()) {
      e.name = std::string(value);
    }
  }
  std::size_t n = declared;
  if (!names.empty()) n = std::max(n, names.rbegin()->first);
  if (declared && n > declared) throw ParseError("alternative index exceeds the declared count", 0);

  for (const auto& [no, row] : rows) {
    const auto colon = row.find(':');
    if (colon == std::string_view::npos) throw ParseError("expected 'count: ballot'", no);
    const auto count = to_number<std::int64_t>(row.substr(0, colon));
    if (!count || *count <= 0) throw ParseError("bad ballot count '" + std::string(trim(row.substr(0, colon))) + "'", no);
    e.ballots.push_back({*count, parse_order(row.substr(colon + 1), no, n)});
  }
  if (n == 0)
    for (const auto& b : e.ballots)
      for (const auto& g : b.groups)
        for (auto c : g) n = std::max<std::size_t>(n, c);
  for (std::size_t i = 1; i <= n; ++i) {
    const auto it = names.find(i);
    e.candidate_names.push_back(it != names.end() ? it->second : "c" + std::to_string(i));
  }
  CandidateSet::from_names(e.candidate_names);  // rejects duplicate names
  return e;
}

RawElection parse_csv(std::string_view text, std::string name) {
  RawElection e;
  e.name = std::move(name);
  std::vector<std::pair<std::size_t, std::vector<std::vector<std::string>>>> rows;
  std::optional<std::vector<std::string>> declared;
  const auto lines = lines_of(text);
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const auto line = trim(lines[k]);
    const auto no = k + 1;
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto header = trim(line.substr(1));
      if (starts_with_ci(header, "candidates:")) {
        declared.emplace();
        std::stringstream ss{std::string(header.substr(std::string_view("candidates:").size()))};
        for (std::string item; std::getline(ss, item, ',');)
          if (!trim(item).empty()) declared->emplace_back(trim(item));
      }
      continue;
    }
    std::vector<std::vector<std::string>> classes;
    std::stringstream ss{std::string(line)};
    for (std::string cls; std::getline(ss, cls, '>');) {
      classes.emplace_back();
      std::stringstream cs{cls};
      for (std::string item; std::getline(cs, item, '~');) {
        const auto t = trim(item);
        if (t.empty()) throw ParseError("empty candidate name", no);
        classes.back().emplace_back(t);
      }
      if (classes.back().empty()) throw ParseError("empty ranking class", no);
    }
    rows.emplace_back(no, std::move(classes));
  }
  std::vector<std::string> names;
  if (declared) {
    names = *declared;
  } else {
    std::set<std::string> all;
    for (const auto& [no, classes] : rows)
      for (const auto& cls : classes) all.insert(cls.begin(), cls.end());
    names.assign(all.begin(), all.end());
  }
  CandidateSet::from_names(names);
  e.candidate_names = names;
  std::map<std::string, std::uint32_t> index;
  for (std::size_t i = 0; i < names.size(); ++i) index[names[i]] = static_cast<std::uint32_t>(i + 1);
  for (const auto& [no, classes] : rows) {
    BallotGroup b{1, {}};
    std::set<std::uint32_t> seen;
    for (const auto& cls : classes) {
      b.groups.emplace_back();
      for (const auto& c : cls) {
        const auto it = index.find(c);
        if (it == index.end()) throw ParseError("unknown candidate '" + c + "'", no);
        if (!seen.insert(it->second).second)
          throw DuplicateCandidateError("line " + std::to_string(no) + ": candidate '" + c + "' listed twice");
        b.groups.back().push_back(it->second);
      }
    }
    e.ballots.push_back(std::move(b));
  }
  return e;
}

RawElection load_election(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  const auto name = path.stem().string();
  if (path.extension() == ".csv") return parse_csv(ss.str(), name);
  return parse_election(ss.str(), name);
}

std::string serialize_election(const RawElection& e) {
  std::ostringstream out;
  out << "# NUMBER ALTERNATIVES: " << e.candidate_names.size() << '\n';
  for (std::size_t i = 0; i < e.candidate_names.size(); ++i)
    out << "# ALTERNATIVE NAME " << i + 1 << ": " << e.candidate_names[i] << '\n';
  out << "# NUMBER VOTERS: " << e.voter_count() << '\n';
  out << "# NUMBER UNIQUE ORDERS: " << e.ballots.size() << '\n';
  for (const auto& b : e.ballots) {
    out << b.count << ':';
    for (std::size_t k = 0; k < b.groups.size(); ++k) {
      out << (k ? "," : " ");
      const auto& g = b.groups[k];
      if (g.size() > 1) out << '{';
      for (std::size_t m = 0; m < g.size(); ++m) out << (m ? "," : "") << g[m];
      if (g.size() > 1) out << '}';
    }
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Interpretation
// ---------------------------------------------------------------------------

Scope election_scope(const RawElection& e) { return make_scope(CandidateSet::from_names(e.candidate_names)); }

namespace {

/// Scope position of each 1-based file index.
std::vector<Ranking::Index> positions(const RawElection& e, const CandidateSet& scope) {
  std::vector<Ranking::Index> pos(e.candidate_names.size() + 1, 0);
  for (std::size_t i = 0; i < e.candidate_names.size(); ++i)
    pos[i + 1] = static_cast<Ranking::Index>(scope.require_index(CandidateId(e.candidate_names[i])));
  return pos;
}

Ranking lobi_ranking(const BallotGroup& b, const std::vector<Ranking::Index>& pos, const Scope& scope) {
  std::vector<std::vector<Ranking::Index>> classes;
  std::vector<char> listed(scope->size(), 0);
  for (const auto& g : b.groups) {
    classes.emplace_back();
    for (auto c : g) {
      classes.back().push_back(pos[c]);
      listed[pos[c]] = 1;
    }
  }
  std::vector<Ranking::Index> rest;
  for (std::size_t c = 0; c < scope->size(); ++c)
    if (!listed[c]) rest.push_back(static_cast<Ranking::Index>(c));
  if (!rest.empty()) classes.push_back(std::move(rest));
  return Ranking::from_indices(std::move(classes), scope);
}

PrefRelation rel_ballot(const BallotGroup& b, const RawElection& e, const Scope& scope) {
  std::vector<std::vector<CandidateId>> classes;
  for (const auto& g : b.groups) {
    classes.emplace_back();
    for (auto c : g) classes.back().emplace_back(e.candidate_names[c - 1]);
  }
  return PrefRelation::ranked(scope, classes);
}

RelProfile rel_profile(const RawElection& e) {
  const auto scope = election_scope(e);
  RelProfile::Ballots ballots;
  std::uint64_t next = 0;
  for (const auto& b : e.ballots) {
    const auto r = rel_ballot(b, e, scope);
    for (std::int64_t k = 0; k < b.count; ++k) ballots.emplace(VoterId::natural(next++), r);
  }
  return RelProfile::allow_empty(scope, std::move(ballots));
}

}  // namespace

Profile to_lobi(const RawElection& e) {
  const auto scope = election_scope(e);
  const auto pos = positions(e, *scope);
  Profile::Ballots ballots;
  std::uint64_t next = 0;
  for (const auto& b : e.ballots) {
    const auto r = lobi_ranking(b, pos, scope);
    for (std::int64_t k = 0; k < b.count; ++k) ballots.emplace(VoterId::natural(next++), r);
  }
  return Profile::allow_empty(scope, std::move(ballots));
}

BallotTally to_tally(const RawElection& e) {
  const auto scope = election_scope(e);
  const auto pos = positions(e, *scope);
  BallotTally t{scope, {}};
  std::map<std::vector<std::vector<Ranking::Index>>, std::size_t> seen;
  for (const auto& b : e.ballots) {
    auto r = lobi_ranking(b, pos, scope);
    auto [it, inserted] = seen.emplace(r.class_indices(), t.groups.size());
    if (inserted)
      t.groups.emplace_back(std::move(r), b.count);
    else
      t.groups[it->second].second += b.count;
  }
  return t;
}

RelProfile to_losn(const RawElection& e) {
  if (e.has_ties()) throw ToLosnTieError("election '" + e.name + "' has tied ballots; read it as wosn");
  return rel_profile(e);
}

RelProfile to_wosn(const RawElection& e) { return rel_profile(e); }

RelProfile to_rel(const RawElection& e) { return e.has_ties() ? to_wosn(e) : to_losn(e); }

// ---------------------------------------------------------------------------
// Election-level helpers
// ---------------------------------------------------------------------------

std::optional<CandidateId> absolute_majority_winner(const BallotTally& t) {
  const auto counts = first_place_counts(t);
  const auto n = t.voters();
  for (std::size_t c = 0; c < counts.size(); ++c)
    if (2 * counts[c] > n) return (*t.scope)[c];
  return std::nullopt;
}

std::optional<CandidateId> absolute_majority_winner(const Profile& p) { return absolute_majority_winner(tally(p)); }

BallotTally restrict_tally(const BallotTally& t, const CandidateSet& subset) {
  if (subset.empty() || !subset.is_subset_of(*t.scope))
    throw EmptyRestrictionError("restriction must be a nonempty subset of the candidates");
  const auto scope = make_scope(subset);
  BallotTally out{scope, {}};
  std::map<std::vector<std::vector<Ranking::Index>>, std::size_t> seen;
  for (const auto& [r, count] : t.groups) {
    auto q = restrict_ranking(r, scope);
    auto [it, inserted] = seen.emplace(q.class_indices(), out.groups.size());
    if (inserted)
      out.groups.emplace_back(std::move(q), count);
    else
      out.groups[it->second].second += count;
  }
  return out;
}

namespace {

CandidateSet top_three(const BallotTally& t) {
  const auto run = irv_rounds(t);
  if (run.tied) throw TieAmbiguousError("irv count reaches a tie for fewest first-place votes");
  std::vector<CandidateId> keep{*run.winner};
  const auto& out = run.eliminated;
  for (std::size_t k = 0; k < out.size() && k < 2; ++k) keep.push_back(out[out.size() - 1 - k]);
  return CandidateSet(std::move(keep));
}

}  // namespace

BallotTally top_three_restriction(const BallotTally& t) { return restrict_tally(t, top_three(t)); }

Profile top_three_restriction(const Profile& p) { return restrict_profile(p, top_three(tally(p))); }

std::string_view to_string(ScanStatus s) {
  switch (s) {
    case ScanStatus::Hit: return "hit";
    case ScanStatus::Miss: return "miss";
    case ScanStatus::Excluded: return "excluded";
    case ScanStatus::Skipped: return "skipped";
  }
  return "skipped";
}

std::vector<ScanInput> scan_inputs(const std::vector<RawElection>& elections) {
  std::vector<ScanInput> out;
  for (const auto& e : elections) out.push_back({e.name, e, {}});
  return out;
}

}  // namespace marginvote
