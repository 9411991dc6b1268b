#include "marginvote/rules.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace marginvote {

std::string_view to_string(RuleFailure f) {
  return f == RuleFailure::TieAmbiguous ? "tie-ambiguous" : "domain-error";
}

RuleOutput RuleOutput::failure(RuleFailure f, std::string detail) {
  RuleOutput out;
  out.failure_ = f;
  out.detail_ = std::move(detail);
  return out;
}

const CandidateSet& RuleOutput::winners() const {
  if (!winners_) {
    if (failure_ == RuleFailure::TieAmbiguous) throw TieAmbiguousError(detail_.empty() ? "tie-ambiguous" : detail_);
    throw DomainError(detail_.empty() ? "profile outside the rule's domain" : detail_);
  }
  return *winners_;
}

RuleFailure RuleOutput::failure() const {
  if (winners_) throw InvariantError("rule output is not a failure");
  return failure_;
}

std::string to_string(const RuleOutput& out) {
  if (out.ok()) return to_string(out.winners());
  return std::string(to_string(out.failure()));
}

RuleOutput VotingRule::operator()(const Profile& p) const {
  if (p.empty()) throw EmptyProfileError("rule '" + name + "' needs at least one voter");
  if (!within(classify_domain(p), domain))
    return RuleOutput::failure(RuleFailure::DomainError,
                               "rule '" + name + "' is defined on " + std::string(to_string(domain)) + " profiles");
  return eval(p);
}

namespace {

template <class Score>
CandidateSet argmax(const CandidateSet& c, const std::vector<Score>& score) {
  const auto best = *std::max_element(score.begin(), score.end());
  std::vector<CandidateId> out;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (score[i] == best) out.push_back(c[i]);
  return CandidateSet(std::move(out));
}

std::optional<RuleOutput> reject(const Profile& p, Domain d, std::string_view rule) {
  if (p.empty()) throw EmptyProfileError(std::string(rule) + " needs at least one voter");
  if (!within(classify_domain(p), d))
    return RuleOutput::failure(RuleFailure::DomainError,
                               std::string(rule) + " is defined on " + std::string(to_string(d)) + " profiles");
  return std::nullopt;
}

}  // namespace

// --- Margin and support based ----------------------------------------------

CandidateSet minimax_margins(const MarginMatrix& m) {
  std::vector<std::int64_t> neg_loss(m.dim());
  for (std::size_t x = 0; x < m.dim(); ++x) {
    std::int64_t worst = std::numeric_limits<std::int64_t>::min();
    for (std::size_t y = 0; y < m.dim(); ++y)
      if (y != x) worst = std::max(worst, m(y, x));
    neg_loss[x] = m.dim() == 1 ? 0 : -worst;
  }
  return argmax(m.candidates(), neg_loss);
}

CandidateSet minimax_winning_votes(const SupportMatrix& s) {
  std::vector<std::int64_t> neg_loss(s.dim());
  for (std::size_t x = 0; x < s.dim(); ++x) {
    std::int64_t worst = std::numeric_limits<std::int64_t>::min();
    for (std::size_t y = 0; y < s.dim(); ++y)
      if (y != x) worst = std::max(worst, s(y, x));
    neg_loss[x] = s.dim() == 1 ? 0 : -worst;
  }
  return argmax(s.candidates(), neg_loss);
}

CandidateSet copeland(const MarginMatrix& m) {
  std::vector<std::int64_t> score(m.dim(), 0);
  for (std::size_t x = 0; x < m.dim(); ++x)
    for (std::size_t y = 0; y < m.dim(); ++y) score[x] += (m(x, y) > 0) - (m(x, y) < 0);
  return argmax(m.candidates(), score);
}

RuleOutput minimax_margins(const Profile& p) {
  if (auto r = reject(p, Domain::Swo, "minimax-margins")) return *r;
  return minimax_margins(margins(p));
}

RuleOutput minimax_winning_votes(const Profile& p) {
  if (auto r = reject(p, Domain::Swo, "minimax-wv")) return *r;
  return minimax_winning_votes(support(p));
}

RuleOutput copeland(const Profile& p) {
  if (auto r = reject(p, Domain::Swo, "copeland")) return *r;
  return copeland(margins(p));
}

// --- Positional ------------------------------------------------------------

BallotTally tally(const Profile& p) {
  BallotTally t{p.scope(), {}};
  std::map<std::vector<std::vector<Ranking::Index>>, std::size_t> seen;
  for (const auto& [v, r] : p.ballots()) {
    auto [it, inserted] = seen.emplace(r.class_indices(), t.groups.size());
    if (inserted)
      t.groups.emplace_back(r, 1);
    else
      ++t.groups[it->second].second;
  }
  return t;
}

std::int64_t BallotTally::voters() const {
  std::int64_t n = 0;
  for (const auto& g : groups) n += g.second;
  return n;
}

std::vector<std::int64_t> first_place_counts(const BallotTally& t) {
  std::vector<std::int64_t> counts(t.scope->size(), 0);
  for (const auto& [r, n] : t.groups)
    if (r.class_count() > 0 && r.class_at(0).size() == 1) counts[r.class_at(0)[0]] += n;
  return counts;
}

RuleOutput plurality(const Profile& p) {
  if (auto r = reject(p, Domain::Lobi, "plurality")) return *r;
  return argmax(p.candidates(), first_place_counts(tally(p)));
}

namespace {

std::vector<std::int64_t> borda_scores(const Profile& p) {
  std::vector<std::int64_t> score(p.candidates().size(), 0);
  for (const auto& [v, r] : p.ballots()) {
    std::int64_t below = static_cast<std::int64_t>(p.candidates().size());
    for (std::size_t k = 0; k < r.class_count(); ++k) {
      below -= static_cast<std::int64_t>(r.class_at(k).size());
      for (auto c : r.class_at(k)) score[c] += below;
    }
  }
  return score;
}

}  // namespace

RuleOutput borda_linear(const Profile& p) {
  if (auto r = reject(p, Domain::Linear, "borda")) return *r;
  return argmax(p.candidates(), borda_scores(p));
}

RuleOutput borda_swo(const Profile& p) {
  if (auto r = reject(p, Domain::Swo, "borda-swo")) return *r;
  return argmax(p.candidates(), borda_scores(p));
}

RuleOutput pareto(const Profile& p) {
  if (auto r = reject(p, Domain::Swo, "pareto")) return *r;
  const auto s = support(p);
  std::vector<CandidateId> out;
  for (std::size_t x = 0; x < s.dim(); ++x) {
    bool dominated = false;
    for (std::size_t y = 0; y < s.dim() && !dominated; ++y)
      dominated = y != x && s(y, x) == s.voters();
    if (!dominated) out.push_back(p.candidates()[x]);
  }
  return CandidateSet(std::move(out));
}

RuleOutput positive_negative(const Profile& p) {
  if (auto r = reject(p, Domain::Swo, "positive-negative")) return *r;
  std::vector<std::int64_t> score(p.candidates().size(), 0);
  for (const auto& [v, r] : p.ballots()) {
    if (r.class_count() < 2) continue;
    if (r.class_at(0).size() == 1) ++score[r.class_at(0)[0]];
    const auto last = r.class_count() - 1;
    if (r.class_at(last).size() == 1) --score[r.class_at(last)[0]];
  }
  return argmax(p.candidates(), score);
}

// --- IRV -------------------------------------------------------------------

IrvRun irv_rounds(const BallotTally& t) {
  const auto n = t.scope->size();
  IrvRun run;
  std::vector<char> alive(n, 1);
  std::size_t remaining = n;
  while (remaining > 1) {
    std::vector<std::int64_t> votes(n, 0);
    for (const auto& [r, count] : t.groups) {
      for (std::size_t k = 0; k < r.class_count(); ++k) {
        std::size_t live = 0;
        Ranking::Index who = 0;
        for (auto c : r.class_at(k))
          if (alive[c]) {
            ++live;
            who = c;
          }
        if (live == 0) continue;
        if (live == 1) votes[who] += count;
        break;
      }
    }
    run.round_counts.push_back(votes);
    std::int64_t fewest = std::numeric_limits<std::int64_t>::max();
    for (std::size_t c = 0; c < n; ++c)
      if (alive[c]) fewest = std::min(fewest, votes[c]);
    std::vector<std::size_t> losers;
    for (std::size_t c = 0; c < n; ++c)
      if (alive[c] && votes[c] == fewest) losers.push_back(c);
    if (losers.size() != 1) {
      run.tied = true;
      return run;
    }
    alive[losers[0]] = 0;
    --remaining;
    run.eliminated.push_back((*t.scope)[losers[0]]);
  }
  for (std::size_t c = 0; c < n; ++c)
    if (alive[c]) run.winner = (*t.scope)[c];
  return run;
}

IrvRun irv_rounds(const Profile& p) { return irv_rounds(tally(p)); }

RuleOutput irv(const BallotTally& t) {
  const auto run = irv_rounds(t);
  if (run.tied) return RuleOutput::failure(RuleFailure::TieAmbiguous, "irv: tie for fewest first-place votes");
  return CandidateSet({*run.winner});
}

RuleOutput irv(const Profile& p) {
  if (auto r = reject(p, Domain::Lobi, "irv")) return *r;
  return irv(tally(p));
}

// --- Fixture rules ----------------------------------------------------------

VotingRule hybrid_pc_rule() {
  return {"hybrid-pc", Domain::Linear, RuleInput::Profile, [](const Profile& p) -> RuleOutput {
            const auto n = p.candidates().size();
            std::vector<char> adjacent(n * n, 0);
            for (const auto& [v, r] : p.ballots())
              for (std::size_t k = 0; k + 1 < r.class_count(); ++k) adjacent[r.class_at(k)[0] * n + r.class_at(k + 1)[0]] = 1;
            for (std::size_t x = 0; x < n; ++x)
              for (std::size_t y = 0; y < n; ++y)
                if (adjacent[x * n + y] && adjacent[y * n + x]) return borda_linear(p);
            return plurality(p);
          }};
}

VotingRule tie_or_last_rule() {
  return {"tie-or-last", Domain::Lobi, RuleInput::Profile, [](const Profile& p) -> RuleOutput {
            const std::vector<Ranking::Index>* last = nullptr;
            for (const auto& [v, r] : p.ballots()) {
              if (!r.is_linear()) return p.candidates();
              const auto& bottom = r.class_indices().back();
              if (last && *last != bottom) return p.candidates();
              last = &bottom;
            }
            return plurality(p);
          }};
}

VotingRule threshold_rule(std::int64_t lambda) {
  return {"threshold", Domain::Swo, RuleInput::Margins, [lambda](const Profile& p) -> RuleOutput {
            const auto m = margins(p);
            const bool below = std::all_of(m.cells().begin(), m.cells().end(), [&](auto v) { return v < lambda; });
            return below ? minimax_margins(m) : copeland(m);
          }};
}

VotingRule even_odd_rule() {
  return {"even-odd", Domain::Swo, RuleInput::HeadToHead, [](const Profile& p) -> RuleOutput {
            const auto m = margins(p);
            return p.voter_count() % 2 == 0 ? minimax_margins(m) : copeland(m);
          }};
}

VotingRule block_congruence_rule() {
  return {"block-congruence", Domain::Swo, RuleInput::HeadToHead, [](const Profile& p) -> RuleOutput {
            std::uint64_t fact = 1;
            for (std::uint64_t k = 2; k <= p.candidates().size(); ++k) fact *= k;
            const auto k = p.voter_count() % fact;
            const auto m = margins(p);
            return k % 2 == 0 ? minimax_margins(m) : copeland(m);
          }};
}

std::vector<VotingRule> fixture_rules() {
  return {hybrid_pc_rule(), tie_or_last_rule(), threshold_rule(), even_odd_rule(), block_congruence_rule()};
}

const std::vector<VotingRule>& rule_registry() {
  static const std::vector<VotingRule> registry = [] {
    std::vector<VotingRule> rules = {
        {"minimax-margins", Domain::Swo, RuleInput::Margins, [](const Profile& p) { return minimax_margins(p); }},
        {"minimax-wv", Domain::Swo, RuleInput::HeadToHead, [](const Profile& p) { return minimax_winning_votes(p); }},
        {"copeland", Domain::Swo, RuleInput::Margins, [](const Profile& p) { return copeland(p); }},
        {"irv", Domain::Lobi, RuleInput::Profile, [](const Profile& p) { return irv(p); }},
        {"plurality", Domain::Lobi, RuleInput::Profile, [](const Profile& p) { return plurality(p); }},
        {"borda", Domain::Linear, RuleInput::Profile, [](const Profile& p) { return borda_linear(p); }},
        {"borda-swo", Domain::Swo, RuleInput::HeadToHead, [](const Profile& p) { return borda_swo(p); }},
        {"pareto", Domain::Swo, RuleInput::HeadToHead, [](const Profile& p) { return pareto(p); }},
        {"positive-negative", Domain::Swo, RuleInput::Profile, [](const Profile& p) { return positive_negative(p); }},
    };
    for (auto& r : fixture_rules()) rules.push_back(std::move(r));
    return rules;
  }();
  return registry;
}

const VotingRule& find_rule(std::string_view name) {
  for (const auto& r : rule_registry())
    if (r.name == name) return r;
  throw UnknownIdentifierError("unknown rule '" + std::string(name) + "'");
}

}  // namespace marginvote
