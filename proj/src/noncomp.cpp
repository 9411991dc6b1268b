#include "marginvote/noncomp.hpp"

#include <algorithm>
#include <limits>

#include "marginvote/random.hpp"
#include "parallel.hpp"

namespace marginvote {

std::string_view to_string(RelDomain d) {
  switch (d) {
    case RelDomain::Losn: return "losn";
    case RelDomain::Wosn: return "wosn";
    case RelDomain::Other: return "other";
  }
  return "other";
}

RelDomain parse_rel_domain(std::string_view text) {
  if (text == "losn") return RelDomain::Losn;
  if (text == "wosn") return RelDomain::Wosn;
  if (text == "other") return RelDomain::Other;
  throw UnknownIdentifierError("unknown relational domain '" + std::string(text) + "'");
}

namespace {

bool rel_within(RelDomain d, RelDomain allowed) { return static_cast<int>(d) <= static_cast<int>(allowed); }

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  for (;;) {
    const auto pos = s.find(sep);
    parts.push_back(s.substr(0, pos));
    if (pos == std::string_view::npos) return parts;
    s.remove_prefix(pos + 1);
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// PrefRelation
// ---------------------------------------------------------------------------

PrefRelation::PrefRelation(Scope scope, std::vector<char> cells)
    : scope_(std::move(scope)), n_(scope_->size()), cells_(std::move(cells)) {
  if (cells_.size() != n_ * n_) throw PreconditionError("relation matrix does not match the candidate set");
}

PrefRelation::PrefRelation(Scope scope, const std::vector<std::pair<CandidateId, CandidateId>>& pairs)
    : PrefRelation(scope, std::vector<char>(scope->size() * scope->size(), 0)) {
  for (const auto& [x, y] : pairs) cells_[scope_->require_index(x) * n_ + scope_->require_index(y)] = 1;
}

PrefRelation PrefRelation::from_matrix(Scope scope, std::vector<char> cells) {
  return PrefRelation(std::move(scope), std::move(cells));
}

PrefRelation PrefRelation::blank(Scope scope) {
  const auto n = scope->size();
  std::vector<char> cells(n * n, 0);
  for (std::size_t x = 0; x < n; ++x) cells[x * n + x] = 1;
  return PrefRelation(std::move(scope), std::move(cells));
}

PrefRelation PrefRelation::ranked(Scope scope, const std::vector<std::vector<CandidateId>>& classes) {
  const auto n = scope->size();
  std::vector<int> level(n, -1);
  for (std::size_t k = 0; k < classes.size(); ++k) {
    if (classes[k].empty()) throw OverlapOrGapError("empty ranked class");
    for (const auto& c : classes[k]) {
      const auto x = scope->require_index(c);
      if (level[x] != -1) throw OverlapOrGapError("candidate '" + c.name + "' ranked twice");
      level[x] = static_cast<int>(k);
    }
  }
  auto r = blank(scope);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (level[x] != -1 && level[y] != -1 && level[x] <= level[y]) r.cells_[x * n + y] = 1;
  return r;
}

PrefRelation PrefRelation::from_ranking(const Ranking& r) {
  const auto n = r.candidates().size();
  std::vector<char> cells(n * n, 0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      cells[x * n + y] = r.level(static_cast<Ranking::Index>(x)) <= r.level(static_cast<Ranking::Index>(y));
  return PrefRelation(r.scope(), std::move(cells));
}

PrefRelation PrefRelation::strict_pair(Scope scope, const CandidateId& x, const CandidateId& y) {
  if (x == y) throw PreconditionError("strict pair needs two distinct candidates");
  return ranked(std::move(scope), {{x}, {y}});
}

PrefRelation PrefRelation::tie_pair(Scope scope, const CandidateId& x, const CandidateId& y) {
  if (x == y) throw PreconditionError("tie pair needs two distinct candidates");
  return ranked(std::move(scope), {{x, y}});
}

std::vector<bool> PrefRelation::side_mask() const {
  std::vector<bool> side(n_, true);
  for (std::size_t x = 0; x < n_; ++x)
    for (std::size_t y = 0; y < n_; ++y)
      if (x != y && !noncomparable(x, y)) side[x] = false;
  return side;
}

CandidateSet PrefRelation::side_class() const {
  std::vector<CandidateId> ids;
  const auto side = side_mask();
  for (std::size_t x = 0; x < n_; ++x)
    if (side[x]) ids.push_back((*scope_)[x]);
  return CandidateSet(std::move(ids));
}

bool PrefRelation::is_reflexive() const {
  for (std::size_t x = 0; x < n_; ++x)
    if (!relates(x, x)) return false;
  return true;
}

bool PrefRelation::is_transitive() const {
  for (std::size_t x = 0; x < n_; ++x)
    for (std::size_t y = 0; y < n_; ++y) {
      if (!relates(x, y)) continue;
      for (std::size_t z = 0; z < n_; ++z)
        if (relates(y, z) && !relates(x, z)) return false;
    }
  return true;
}

RelDomain PrefRelation::domain() const {
  if (!is_reflexive() || !is_transitive()) return RelDomain::Other;
  const auto side = side_mask();
  bool ties = false;
  for (std::size_t x = 0; x < n_; ++x)
    for (std::size_t y = x + 1; y < n_; ++y) {
      if (side[x] || side[y]) continue;
      if (noncomparable(x, y)) return RelDomain::Other;
      if (indifferent(x, y)) ties = true;
    }
  return ties ? RelDomain::Wosn : RelDomain::Losn;
}

PrefRelation PrefRelation::inverse() const {
  std::vector<char> cells(n_ * n_, 0);
  for (std::size_t x = 0; x < n_; ++x)
    for (std::size_t y = 0; y < n_; ++y) cells[y * n_ + x] = cells_[x * n_ + y];
  return PrefRelation(scope_, std::move(cells));
}

std::vector<std::vector<CandidateId>> PrefRelation::ranked_classes() const {
  if (domain() == RelDomain::Other) throw DomainError("relation is not a weak order on its ranked part");
  const auto side = side_mask();
  std::vector<std::pair<std::size_t, std::size_t>> keyed;  // (#candidates strictly below, index)
  for (std::size_t x = 0; x < n_; ++x) {
    if (side[x]) continue;
    std::size_t below = 0;
    for (std::size_t y = 0; y < n_; ++y)
      if (!side[y] && strictly(x, y)) ++below;
    keyed.emplace_back(below, x);
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  std::vector<std::vector<CandidateId>> classes;
  std::size_t prev = n_;
  for (const auto& [below, x] : keyed) {
    if (classes.empty() || !indifferent(prev, x)) classes.emplace_back();
    classes.back().push_back((*scope_)[x]);
    prev = x;
  }
  return classes;
}

std::string to_string(const PrefRelation& r) {
  const auto& cands = r.candidates();
  if (r.domain() == RelDomain::Other) {
    std::string out = "{";
    bool first = true;
    for (std::size_t x = 0; x < r.size(); ++x)
      for (std::size_t y = 0; y < r.size(); ++y) {
        if (!r.relates(x, y)) continue;
        out += (first ? "" : ", ") + cands[x].name + ">=" + cands[y].name;
        first = false;
      }
    return out + "}";
  }
  std::string out;
  const auto classes = r.ranked_classes();
  for (std::size_t k = 0; k < classes.size(); ++k) {
    if (k) out += '>';
    for (std::size_t m = 0; m < classes[k].size(); ++m) out += (m ? "~" : "") + classes[k][m].name;
  }
  const auto side = r.side_class();
  if (!side.empty()) out += std::string(out.empty() ? "" : " ") + "| unranked: " + to_string(side);
  return out;
}

PrefRelation parse_relation(std::string_view text, Scope scope) {
  text = trim(text);
  if (!text.empty() && text.front() == '{') {
    if (text.back() != '}') throw ParseError("unterminated relation '" + std::string(text) + "'", 0);
    std::vector<std::pair<CandidateId, CandidateId>> pairs;
    const auto body = trim(text.substr(1, text.size() - 2));
    if (!body.empty())
      for (auto item : split(body, ',')) {
        item = trim(item);
        const auto pos = item.find(">=");
        if (pos == std::string_view::npos) throw ParseError("expected 'x>=y' in '" + std::string(item) + "'", 0);
        pairs.emplace_back(CandidateId(std::string(trim(item.substr(0, pos)))),
                           CandidateId(std::string(trim(item.substr(pos + 2)))));
      }
    return PrefRelation(std::move(scope), pairs);
  }
  const auto bar = text.find('|');
  const auto ranked_text = trim(text.substr(0, bar));
  std::vector<std::vector<CandidateId>> classes;
  if (!ranked_text.empty())
    for (auto cls : split(ranked_text, '>')) {
      classes.emplace_back();
      for (auto name : split(cls, '~')) {
        name = trim(name);
        if (name.empty()) throw ParseError("empty candidate name in '" + std::string(text) + "'", 0);
        classes.back().emplace_back(std::string(name));
      }
    }
  auto r = PrefRelation::ranked(scope, classes);
  if (bar != std::string_view::npos) {
    auto rest = trim(text.substr(bar + 1));
    constexpr std::string_view tag = "unranked:";
    if (rest.substr(0, tag.size()) != tag) throw ParseError("expected 'unranked:' after '|'", 0);
    rest = trim(rest.substr(tag.size()));
    std::size_t listed = 0;
    if (!rest.empty())
      for (auto name : split(rest, ',')) {
        const CandidateId c{std::string(trim(name))};
        scope->require_index(c);
        for (const auto& cls : classes)
          if (std::find(cls.begin(), cls.end(), c) != cls.end())
            throw OverlapOrGapError("candidate '" + c.name + "' both ranked and unranked");
        ++listed;
      }
    std::size_t ranked_count = 0;
    for (const auto& cls : classes) ranked_count += cls.size();
    if (listed + ranked_count != scope->size())
      throw OverlapOrGapError("ranked and unranked candidates do not cover the candidate set");
  }
  return r;
}

// ---------------------------------------------------------------------------
// RelProfile
// ---------------------------------------------------------------------------

RelProfile::RelProfile(Scope candidates, Ballots ballots, bool allow_empty)
    : scope_(std::move(candidates)), ballots_(std::move(ballots)) {
  if (!allow_empty && ballots_.empty()) throw EmptyProfileError("profile has no voters");
  for (const auto& [v, r] : ballots_)
    if (!same_scope(r.scope(), scope_))
      throw CandidateMismatchError("ballot of voter " + to_string(v) + " uses a different candidate set");
}

RelProfile::RelProfile(Scope candidates, Ballots ballots) : RelProfile(std::move(candidates), std::move(ballots), false) {}

RelProfile RelProfile::allow_empty(Scope candidates, Ballots ballots) {
  return RelProfile(std::move(candidates), std::move(ballots), true);
}

const PrefRelation& RelProfile::ballot(const VoterId& v) const {
  const auto it = ballots_.find(v);
  if (it == ballots_.end()) throw UnknownVoterError("unknown voter " + to_string(v));
  return it->second;
}

std::vector<VoterId> RelProfile::fresh_voters(std::size_t count) const {
  std::vector<VoterId> out;
  for (std::uint64_t k = 0; out.size() < count; ++k) {
    const auto v = VoterId::natural(k);
    if (!ballots_.contains(v)) out.push_back(v);
  }
  return out;
}

RelDomain classify_rel(const PrefRelation& r) { return r.domain(); }

RelDomain classify_rel(const RelProfile& rp) {
  auto d = RelDomain::Losn;
  for (const auto& [v, r] : rp.ballots()) d = std::max(d, r.domain());
  return d;
}

TripleCounts triple_counts(const RelProfile& rp) {
  const auto n = rp.candidates().size();
  TripleCounts t{rp.scope(), std::vector<std::int64_t>(n * n, 0), std::vector<std::int64_t>(n * n, 0),
                 std::vector<std::int64_t>(n * n, 0), static_cast<std::int64_t>(rp.voter_count())};
  for (const auto& [v, r] : rp.ballots())
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        if (x == y) continue;
        if (r.strictly(x, y)) ++t.strict[x * n + y];
        if (r.indifferent(x, y)) ++t.indifferent[x * n + y];
        if (r.noncomparable(x, y)) ++t.noncomparable[x * n + y];
      }
  return t;
}

SupportMatrix strict_support(const RelProfile& rp) {
  const auto t = triple_counts(rp);
  SupportMatrix s(rp.scope(), t.voters);
  const auto n = rp.candidates().size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) s(x, y) = t.p(x, y);
  return s;
}

MarginMatrix margins(const RelProfile& rp) { return margins_from_support(strict_support(rp)); }

RelProfile embed(const Profile& p) {
  RelProfile::Ballots ballots;
  for (const auto& [v, r] : p.ballots()) ballots.emplace(v, PrefRelation::from_ranking(r));
  return RelProfile::allow_empty(p.scope(), std::move(ballots));
}

// ---------------------------------------------------------------------------
// Moves
// ---------------------------------------------------------------------------

RelProfile comparable_compensation(const RelProfile& rp, const VoterId& i, const VoterId& j,
                                   const std::vector<CandidateId>& order) {
  if (i == j) throw PreconditionError("comparable compensation needs two distinct voters");
  const auto& r = rp.ballot(i);
  if (!(r == rp.ballot(j)))
    throw PreconditionError("voters " + to_string(i) + " and " + to_string(j) + " cast different ballots");
  if (r.domain() == RelDomain::Other) throw PreconditionError("ballot is not a weak order on its ranked part");
  const auto side = r.side_mask();
  const auto n = r.size();
  std::vector<std::size_t> pos(n, n);
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto x = rp.candidates().require_index(order[k]);
    if (!side[x] || pos[x] != n)
      throw PreconditionError("order must list each unranked candidate exactly once");
    pos[x] = k;
  }
  const auto side_size = static_cast<std::size_t>(std::count(side.begin(), side.end(), true));
  if (side_size == 0) throw PreconditionError("ballot has no unranked candidates");
  if (order.size() != side_size) throw PreconditionError("order must list each unranked candidate exactly once");

  auto up = r.cells();
  auto down = r.cells();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (side[x] && side[y]) {
        up[x * n + y] = pos[x] <= pos[y];
        down[x * n + y] = pos[x] >= pos[y];
      } else if (side[x] != side[y]) {
        up[x * n + y] = side[x];
        down[x * n + y] = side[y];
      }
    }
  auto ballots = rp.ballots();
  ballots.at(i) = PrefRelation::from_matrix(rp.scope(), std::move(up));
  ballots.at(j) = PrefRelation::from_matrix(rp.scope(), std::move(down));
  return RelProfile::allow_empty(rp.scope(), std::move(ballots));
}

namespace {

RelProfile with_added(const RelProfile& rp, const std::vector<PrefRelation>& extra) {
  auto ballots = rp.ballots();
  const auto ids = rp.fresh_voters(extra.size());
  for (std::size_t k = 0; k < extra.size(); ++k) ballots.emplace(ids[k], extra[k]);
  return RelProfile::allow_empty(rp.scope(), std::move(ballots));
}

}  // namespace

RelProfile add_blank_voter(const RelProfile& rp) { return with_added(rp, {PrefRelation::blank(rp.scope())}); }

RelProfile add_self_reversing_voter(const RelProfile& rp, const PrefRelation& r) {
  if (!r.is_self_reversing()) throw SelfReversalError("ballot '" + to_string(r) + "' differs from its inverse");
  return with_added(rp, {r});
}

RelProfile add_reversal_pair(const RelProfile& rp, const PrefRelation& r) { return with_added(rp, {r, r.inverse()}); }

RelProfile double_profile(const RelProfile& rp) {
  std::vector<PrefRelation> copies;
  for (const auto& [v, r] : rp.ballots()) copies.push_back(r);
  return with_added(rp, copies);
}

std::pair<RelProfile, RelProfile> equalize_rel(const RelProfile& r, const RelProfile& q, RelDomain domain) {
  require_same_candidates(r.candidates(), q.candidates());
  if (domain == RelDomain::Other) throw DomainError("equalization is defined for losn and wosn profiles");
  for (const auto* p : {&r, &q})
    if (!rel_within(classify_rel(*p), domain))
      throw DomainError("profile has a ballot outside " + std::string(to_string(domain)));
  if (!(margins(r) == margins(q))) throw MarginMismatchError("profiles have different margin matrices");

  const auto& scope = r.scope();
  const auto& cands = r.candidates();
  const auto n = cands.size();
  const auto tr = triple_counts(r);
  const auto tq = triple_counts(q);
  std::vector<PrefRelation> add_r, add_q;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      // Equal margins make the (y, x) difference the same as this one.
      const auto d = tr.p(x, y) - tq.p(x, y);
      auto& target = d > 0 ? add_q : add_r;
      for (std::int64_t k = 0; k < std::abs(d); ++k) {
        target.push_back(PrefRelation::strict_pair(scope, cands[x], cands[y]));
        target.push_back(PrefRelation::strict_pair(scope, cands[y], cands[x]));
      }
      if (domain != RelDomain::Wosn) continue;
      const auto e = tr.i(x, y) - tq.i(x, y);
      auto& tie_target = e > 0 ? add_q : add_r;
      for (std::int64_t k = 0; k < std::abs(e); ++k) tie_target.push_back(PrefRelation::tie_pair(scope, cands[x], cands[y]));
    }
  const auto size_r = r.voter_count() + add_r.size();
  const auto size_q = q.voter_count() + add_q.size();
  auto& pad = size_r < size_q ? add_r : add_q;
  for (auto k = std::min(size_r, size_q); k < std::max(size_r, size_q); ++k) pad.push_back(PrefRelation::blank(scope));

  auto out_r = with_added(r, add_r);
  auto out_q = with_added(q, add_q);
  if (!(triple_counts(out_r) == triple_counts(out_q)))
    throw InvariantError("equalized profiles disagree on their head-to-head counts");
  return {std::move(out_r), std::move(out_q)};
}

SelfReversalReplay self_reversal_replay(const RelProfile& rp, const PrefRelation& r) {
  if (!r.is_self_reversing()) throw SelfReversalError("ballot '" + to_string(r) + "' differs from its inverse");
  auto doubled = double_profile(rp);
  auto with_pair = add_reversal_pair(doubled, r);
  auto halved = add_self_reversing_voter(rp, r);
  const auto m = margins(rp);
  const bool consistent = margins(doubled) == matrix_scale(m, 2) && margins(with_pair) == margins(doubled) &&
                          triple_counts(double_profile(halved)) == triple_counts(with_pair) && margins(halved) == m;
  return {std::move(doubled), std::move(with_pair), std::move(halved), consistent};
}

// ---------------------------------------------------------------------------
// Rules
// ---------------------------------------------------------------------------

RuleOutput RelVotingRule::operator()(const RelProfile& rp) const {
  if (rp.empty()) throw EmptyProfileError("rule '" + name + "' needs at least one voter");
  if (!rel_within(classify_rel(rp), domain))
    return RuleOutput::failure(RuleFailure::DomainError,
                               "rule '" + name + "' accepts " + std::string(to_string(domain)) + " ballots");
  return eval(rp);
}

namespace {

RuleOutput strict_borda(const RelProfile& rp) {
  const auto s = strict_support(rp);
  const auto n = s.dim();
  std::vector<std::int64_t> score(n, 0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) score[x] += s(x, y);
  const auto best = *std::max_element(score.begin(), score.end());
  std::vector<CandidateId> winners;
  for (std::size_t x = 0; x < n; ++x)
    if (score[x] == best) winners.push_back(rp.candidates()[x]);
  return CandidateSet(std::move(winners));
}

}  // namespace

const std::vector<RelVotingRule>& rel_rule_registry() {
  static const std::vector<RelVotingRule> registry = {
      {"rel-minimax-margins", RelDomain::Wosn, [](const RelProfile& rp) -> RuleOutput { return minimax_margins(margins(rp)); }},
      {"rel-minimax-wv", RelDomain::Wosn,
       [](const RelProfile& rp) -> RuleOutput { return minimax_winning_votes(strict_support(rp)); }},
      {"rel-copeland", RelDomain::Wosn, [](const RelProfile& rp) -> RuleOutput { return copeland(margins(rp)); }},
      {"rel-even-odd", RelDomain::Wosn,
       [](const RelProfile& rp) -> RuleOutput {
         const auto m = margins(rp);
         return rp.voter_count() % 2 == 0 ? minimax_margins(m) : copeland(m);
       }},
      {"rel-strict-borda", RelDomain::Wosn, strict_borda},
  };
  return registry;
}

const RelVotingRule& find_rel_rule(std::string_view name) {
  for (const auto& r : rel_rule_registry())
    if (r.name == name) return r;
  throw UnknownIdentifierError("unknown relational rule '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Axiom checks
// ---------------------------------------------------------------------------

namespace {

std::vector<std::vector<CandidateId>> side_orders(const CandidateSet& side) {
  std::vector<std::vector<CandidateId>> orders;
  auto order = side.ids();
  if (order.size() <= 3) {
    do orders.push_back(order);
    while (std::next_permutation(order.begin(), order.end()));
  } else {
    orders.push_back(order);
    std::reverse(order.begin(), order.end());
    orders.push_back(order);
  }
  return orders;
}

std::vector<PrefRelation> self_reversing_ballots(const Scope& scope) {
  std::vector<PrefRelation> out{PrefRelation::blank(scope)};
  const auto n = scope->size();
  if (n > 4) {
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = x + 1; y < n; ++y) out.push_back(PrefRelation::tie_pair(scope, (*scope)[x], (*scope)[y]));
    out.push_back(PrefRelation::ranked(scope, {scope->ids()}));
    return out;
  }
  // Every tie among at least two candidates.
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<CandidateId> tie;
    for (std::size_t x = 0; x < n; ++x)
      if (mask & (1u << x)) tie.push_back((*scope)[x]);
    if (tie.size() >= 2) out.push_back(PrefRelation::ranked(scope, {tie}));
  }
  return out;
}

std::vector<RelScenario> generate_rel(const RelProfile& base, Axiom axiom, std::size_t limit) {
  std::vector<RelScenario> out;
  if (base.empty() || limit == 0) return out;
  auto push = [&](RelProfile after, std::string description) {
    if (out.size() < limit) out.push_back({axiom, base, std::move(after), std::move(description)});
  };
  const auto& scope = base.scope();

  std::vector<const PrefRelation*> types;
  std::vector<std::vector<VoterId>> holders;
  for (const auto& [v, r] : base.ballots()) {
    auto it = std::find_if(types.begin(), types.end(), [&](const PrefRelation* t) { return *t == r; });
    if (it == types.end()) {
      types.push_back(&r);
      holders.push_back({v});
    } else {
      holders[static_cast<std::size_t>(it - types.begin())].push_back(v);
    }
  }

  switch (axiom) {
    case Axiom::ComparableCompensation:
      for (std::size_t k = 0; k < types.size(); ++k) {
        const auto& r = *types[k];
        if (holders[k].size() < 2 || r.domain() == RelDomain::Other) continue;
        const auto side = r.side_class();
        if (side.empty()) continue;
        for (const auto& order : side_orders(side)) {
          std::string text;
          for (const auto& c : order) text += (text.empty() ? "" : ">") + c.name;
          push(comparable_compensation(base, holders[k][0], holders[k][1], order),
               "voters " + to_string(holders[k][0]) + "," + to_string(holders[k][1]) + " rank {" + to_string(side) +
                   "} as " + text + " above and reversed below");
        }
      }
      break;
    case Axiom::NeutralBlankness: push(add_blank_voter(base), "add blank voter"); break;
    case Axiom::NeutralSelfReversal:
      for (const auto& r : self_reversing_ballots(scope))
        push(add_self_reversing_voter(base, r), "add self-reversing voter '" + to_string(r) + "'");
      break;
    case Axiom::NonlinearNeutralReversal: {
      std::vector<PrefRelation> seeds;
      for (const auto* t : types)
        if (t->domain() != RelDomain::Other) seeds.push_back(*t);
      for (std::size_t x = 0; x < scope->size(); ++x)
        for (std::size_t y = 0; y < scope->size(); ++y)
          if (x != y) seeds.push_back(PrefRelation::strict_pair(scope, (*scope)[x], (*scope)[y]));
      for (const auto& r : seeds) push(add_reversal_pair(base, r), "add reversal pair '" + to_string(r) + "'");
      break;
    }
    case Axiom::Homogeneity: push(double_profile(base), "double"); break;
    default:
      throw DomainMismatchError("axiom '" + std::string(to_string(axiom)) + "' is not checked on relational profiles");
  }
  return out;
}

PrefRelation random_relation(Rng& rng, const Scope& scope, RelDomain domain) {
  std::vector<CandidateId> ranked;
  for (const auto& c : *scope)
    if (rng.below(3) != 0) ranked.push_back(c);
  if (ranked.size() < 2) return PrefRelation::blank(scope);
  const auto sub = make_scope(CandidateSet(ranked));
  const auto order = domain == RelDomain::Losn ? random_linear(rng, sub) : random_ranking(rng, sub, Domain::Swo);
  return PrefRelation::ranked(scope, order.classes());
}

RelProfile random_rel_base(Rng& rng, RelDomain domain) {
  static const Scope three = make_scope(letters(3));
  static const Scope four = make_scope(letters(4));
  const auto& scope = rng.coin() ? three : four;
  const auto voters = static_cast<std::size_t>(rng.range(2, 6));
  RelProfile::Ballots ballots;
  for (std::size_t v = 0; v < voters; ++v) ballots.emplace(VoterId::natural(v), random_relation(rng, scope, domain));
  if (rng.coin()) ballots.at(VoterId::natural(rng.below(voters))) = ballots.at(VoterId::natural(rng.below(voters)));
  return RelProfile(scope, std::move(ballots));
}

}  // namespace

std::vector<RelScenario> rel_scenarios_from(const RelProfile& base, Axiom axiom) {
  return generate_rel(base, axiom, std::numeric_limits<std::size_t>::max());
}

RelAxiomReport check_rel_axiom(const RelVotingRule& rule, Axiom axiom, const std::vector<RelProfile>& pool,
                               const CheckOptions& options) {
  RelAxiomReport report{axiom, rule.name, 0, 0, 0, {}};
  std::vector<RelScenario> scenarios;
  auto append = [&](const RelProfile& base) {
    auto more = generate_rel(base, axiom, options.budget - scenarios.size());
    for (auto& s : more) scenarios.push_back(std::move(s));
    return !more.empty();
  };
  if (!(axiom == Axiom::ComparableCompensation || axiom == Axiom::NeutralBlankness ||
        axiom == Axiom::NeutralSelfReversal || axiom == Axiom::NonlinearNeutralReversal || axiom == Axiom::Homogeneity))
    throw DomainMismatchError("axiom '" + std::string(to_string(axiom)) + "' is not checked on relational profiles");

  for (const auto& p : pool) {
    if (scenarios.size() >= options.budget) break;
    if (!rel_within(classify_rel(p), rule.domain)) continue;
    append(p);
  }
  if (options.random_fill) {
    Rng rng(options.seed);
    const auto domain = rule.domain == RelDomain::Other ? RelDomain::Wosn : rule.domain;
    std::size_t barren = 0;
    while (scenarios.size() < options.budget && barren < 1000) {
      const auto gen = rng.coin() ? RelDomain::Losn : domain;
      if (append(random_rel_base(rng, gen)))
        barren = 0;
      else
        ++barren;
    }
  }

  std::vector<std::optional<std::vector<RuleOutput>>> results(scenarios.size());
  detail::parallel_for(scenarios.size(), options.jobs, [&](std::size_t i) {
    const auto a = rule(scenarios[i].before);
    const auto b = rule(scenarios[i].after);
    if (a.ok() && b.ok()) results[i] = std::vector<RuleOutput>{a, b};
  });
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    if (!results[i]) {
      ++report.skipped;
      continue;
    }
    ++report.tried;
    const auto& outs = *results[i];
    if (outs[0] == outs[1]) continue;
    ++report.witness_count;
    if (report.witnesses.size() < options.max_witnesses)
      report.witnesses.push_back({std::move(scenarios[i]), std::move(*results[i])});
  }
  return report;
}

}  // namespace marginvote
