#include <algorithm>
#include <map>

#include "marginvote/axioms.hpp"
#include "marginvote/canonical.hpp"

namespace marginvote {

std::string_view to_string(InvarianceLevel l) {
  switch (l) {
    case InvarianceLevel::MarginBased: return "margin-based";
    case InvarianceLevel::HeadToHead: return "head-to-head";
    case InvarianceLevel::C2: return "c2";
  }
  return "c2";
}

const LevelResult& InvarianceReport::at(InvarianceLevel l) const {
  for (const auto& r : levels)
    if (r.level == l) return r;
  throw InvariantError("invariance report lacks a level");
}

namespace {

void keep_if_in(std::vector<Profile>& out, Profile p, Domain domain) {
  if (!p.empty() && within(classify_domain(p), domain)) out.push_back(std::move(p));
}

}  // namespace

std::vector<Profile> invariance_partners(const Profile& base, Domain domain) {
  std::vector<Profile> out;
  if (base.empty()) return out;
  const auto& scope = base.scope();

  // Same margins, two more voters.
  const auto with_pair = add_reversal_pair(base, Ranking::alphabetic(scope));
  keep_if_in(out, with_pair, domain);
  std::vector<Ranking> seen;
  for (const auto& [v, r] : base.ballots()) {
    if (!r.is_linear() || std::find(seen.begin(), seen.end(), r) != seen.end()) continue;
    seen.push_back(r);
    keep_if_in(out, add_reversal_pair(base, r), domain);
    if (seen.size() == 3) break;
  }
  // Same margins through a nonlinear reversal pair.
  if (scope->size() >= 2) {
    std::vector<Ranking::Index> rest;
    for (std::size_t c = 1; c < scope->size(); ++c) rest.push_back(static_cast<Ranking::Index>(c));
    keep_if_in(out, add_reversal_pair(base, Ranking::from_indices({{0}, rest}, scope)), domain);
  }
  // Same support, one and two more voters.
  const auto with_blank = add_indifferent_voter(base);
  keep_if_in(out, with_blank, domain);
  keep_if_in(out, add_indifferent_voter(with_blank), domain);

  // Same support and voter count: compensated switches.
  for (const auto& s : scenarios_from(base, Axiom::PreferentialCompensation, 1)) {
    if (s.before == base) keep_if_in(out, s.after[0], domain);
    if (out.size() > 24) break;
  }
  // Same margins: opposite tiebreaks.
  std::size_t tiebreaks = 0;
  for (const auto& s : scenarios_from(base, Axiom::TiebreakingCompensation, 1)) {
    if (!(s.before == base)) continue;
    keep_if_in(out, s.after[0], domain);
    if (++tiebreaks == 6) break;
  }
  // Same margins: the canonical representative.
  if (classify_domain(base) == Domain::Linear) keep_if_in(out, canonicalize_linear(base, false).form.profile(), domain);
  // Same H: equalized versions of a margin-equal pair.
  const auto [q, q2] = equalize_h2h(base, with_pair);
  keep_if_in(out, q, domain);
  keep_if_in(out, q2, domain);
  return out;
}

namespace {

struct Keyed {
  std::vector<std::string> names;
  std::vector<std::int64_t> cells;
  std::int64_t voters;
  friend auto operator<=>(const Keyed&, const Keyed&) = default;
};

std::vector<std::string> names_of(const CandidateSet& s) {
  std::vector<std::string> out;
  for (const auto& c : s) out.push_back(c.name);
  return out;
}

}  // namespace

InvarianceReport classify_invariance(const VotingRule& rule, const std::vector<Profile>& pool,
                                     std::size_t max_counterexamples) {
  std::vector<Profile> profiles;
  for (const auto& p : pool) {
    if (p.empty() || !within(classify_domain(p), rule.domain)) continue;
    profiles.push_back(p);
    for (auto& partner : invariance_partners(p, rule.domain)) profiles.push_back(std::move(partner));
  }

  InvarianceReport report;
  report.rule = rule.name;
  std::vector<std::size_t> evaluated;
  std::vector<std::optional<RuleOutput>> outputs(profiles.size());
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    auto out = rule(profiles[i]);
    if (!out.ok() && out.failure() == RuleFailure::DomainError) {
      ++report.skipped;
      continue;
    }
    outputs[i] = std::move(out);
    evaluated.push_back(i);
  }
  report.profiles = evaluated.size();

  for (auto level : {InvarianceLevel::MarginBased, InvarianceLevel::HeadToHead, InvarianceLevel::C2}) {
    std::map<Keyed, std::vector<std::size_t>> buckets;
    for (auto i : evaluated) {
      const auto& p = profiles[i];
      Keyed key{names_of(p.candidates()), {}, 0};
      if (level == InvarianceLevel::MarginBased) {
        key.cells = margins(p).cells();
      } else {
        const auto s = support(p);
        key.cells = s.cells();
        if (level == InvarianceLevel::HeadToHead) key.voters = s.voters();
      }
      buckets[std::move(key)].push_back(i);
    }
    LevelResult result{level, 0, 0, 0, {}};
    for (const auto& [key, members] : buckets) {
      if (members.size() < 2) continue;
      ++result.groups;
      for (std::size_t a = 0; a < members.size(); ++a)
        for (std::size_t b = a + 1; b < members.size(); ++b) {
          ++result.comparisons;
          const auto& oa = *outputs[members[a]];
          const auto& ob = *outputs[members[b]];
          if (oa == ob) continue;
          ++result.counterexample_count;
          if (result.counterexamples.size() < max_counterexamples)
            result.counterexamples.push_back({profiles[members[a]], profiles[members[b]], oa, ob});
        }
    }
    report.levels.push_back(std::move(result));
  }
  return report;
}

}  // namespace marginvote
