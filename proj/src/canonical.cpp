#include "marginvote/canonical.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace marginvote {

namespace {

using Index = Ranking::Index;

std::vector<Index> alphabetic_rest(std::size_t n, Index a, Index b) {
  std::vector<Index> rest;
  for (std::size_t c = 0; c < n; ++c)
    if (c != a && c != b) rest.push_back(static_cast<Index>(c));
  return rest;
}

Ranking linear_from(const std::vector<Index>& order, const Scope& scope) {
  std::vector<std::vector<Index>> classes;
  for (auto c : order) classes.push_back({c});
  return Ranking::from_indices(std::move(classes), scope);
}

Ranking top_ballot(Index a, Index b, const Scope& scope) {
  std::vector<Index> order{a, b};
  for (auto c : alphabetic_rest(scope->size(), a, b)) order.push_back(c);
  return linear_from(order, scope);
}

Ranking bottom_ballot(Index a, Index b, const Scope& scope) {
  auto rest = alphabetic_rest(scope->size(), a, b);
  std::vector<Index> order(rest.rbegin(), rest.rend());
  order.push_back(a);
  order.push_back(b);
  return linear_from(order, scope);
}

VoterId designated(const CandidateSet& s, Index a, Index b, Star star, std::uint64_t k) {
  return VoterId::designated(DesignatedVoterKey(s[a], s[b], star, k));
}

std::vector<VoterId> fresh_naturals(const Profile::Ballots& ballots, std::size_t count) {
  std::vector<VoterId> out;
  for (std::uint64_t n = 0; out.size() < count; ++n) {
    const auto v = VoterId::natural(n);
    if (!ballots.contains(v)) out.push_back(v);
  }
  return out;
}

/// Applies moves to a ballot map while keeping the margin matrix current.
class Tracker {
 public:
  Tracker(const Profile& p, bool record) : scope_(p.scope()), ballots_(p.ballots()), m_(margins(p)), record_(record) {
    trace_.initial = m_;
  }

  void apply(Move move) {
    const auto touched = touched_voters(move);
    if (touched) {
      for (const auto& v : *touched)
        if (auto it = ballots_.find(v); it != ballots_.end()) accumulate(m_, it->second, -1);
      apply_move(ballots_, scope_, move);
      for (const auto& v : *touched)
        if (auto it = ballots_.find(v); it != ballots_.end()) accumulate(m_, it->second, +1);
    } else {
      apply_move(ballots_, scope_, move);
      m_ = margins(Profile::allow_empty(scope_, ballots_));
    }
    if (record_) trace_.steps.push_back({std::move(move), m_});
  }

  /// Moves voter `from` to id `to` with one reversal-pair addition and one removal.
  void rename(const VoterId& from, const VoterId& to) {
    if (from == to) return;
    VoterId temp;
    for (const auto& v : fresh_naturals(ballots_, 2))
      if (v != to) {
        temp = v;
        break;
      }
    const Ranking r = ballots_.at(from);
    apply(AddReversalPair{to, temp, r});
    apply(RemoveReversalPair{from, temp});
  }

  const Scope& scope() const { return scope_; }
  Profile::Ballots& ballots() { return ballots_; }
  const MarginMatrix& current() const { return m_; }
  MoveTrace take_trace() { return std::move(trace_); }

 private:
  static std::optional<std::vector<VoterId>> touched_voters(const Move& m) {
    if (auto s = std::get_if<PreferentialSwitch>(&m)) return std::vector{s->voter};
    if (auto s = std::get_if<CoalitionSwitch>(&m)) return s->voters;
    if (auto s = std::get_if<CompensatedSwitch>(&m)) return std::vector{s->first, s->second};
    if (auto s = std::get_if<AddReversalPair>(&m)) return std::vector{s->first, s->second};
    if (auto s = std::get_if<RemoveReversalPair>(&m)) return std::vector{s->first, s->second};
    if (auto s = std::get_if<BreakTie>(&m)) return std::vector{s->voter};
    if (auto s = std::get_if<TiebreakPair>(&m)) return std::vector{s->first, s->second};
    if (auto s = std::get_if<AddIndifferentVoter>(&m)) return std::vector{s->voter};
    return std::nullopt;
  }

  Scope scope_;
  Profile::Ballots ballots_;
  MarginMatrix m_;
  bool record_;
  MoveTrace trace_;
};

}  // namespace

McGarveyPair mcgarvey_pair(const CandidateId& a, const CandidateId& b, const Scope& scope) {
  const auto ai = static_cast<Index>(scope->require_index(a));
  const auto bi = static_cast<Index>(scope->require_index(b));
  if (ai == bi) throw InvalidVoterIdError("a McGarvey pair needs two distinct candidates");
  return {a, b, top_ballot(ai, bi, scope), bottom_ballot(ai, bi, scope)};
}

Ranking designated_ballot(const DesignatedVoterKey& key, const Scope& scope) {
  const auto pair = mcgarvey_pair(key.first, key.second, scope);
  return key.star == Star::Top ? pair.top : pair.bottom;
}

Profile debord(const MarginMatrix& m) {
  if (!m.all_even()) throw OddMarginError("every margin must be even");
  const auto& scope = m.scope();
  Profile::Ballots ballots;
  for (std::size_t a = 0; a < m.dim(); ++a)
    for (std::size_t b = 0; b < m.dim(); ++b) {
      if (m(a, b) <= 0) continue;
      const auto ai = static_cast<Index>(a), bi = static_cast<Index>(b);
      const auto top = top_ballot(ai, bi, scope);
      const auto bottom = bottom_ballot(ai, bi, scope);
      for (std::int64_t k = 1; k <= m(a, b) / 2; ++k) {
        ballots.emplace(designated(*scope, ai, bi, Star::Top, static_cast<std::uint64_t>(k)), top);
        ballots.emplace(designated(*scope, ai, bi, Star::Bottom, static_cast<std::uint64_t>(k)), bottom);
      }
    }
  return Profile::allow_empty(scope, std::move(ballots));
}

DebordCheck is_debord_form(const Profile& p) {
  DebordCheck check;
  auto fail = [&](std::string why) {
    check.ok = false;
    check.problems.push_back(std::move(why));
  };
  const auto& s = p.candidates();
  // (first, second, star) -> present k values
  std::map<std::tuple<CandidateId, CandidateId, Star>, std::set<std::uint64_t>> present;
  for (const auto& [v, r] : p.ballots()) {
    if (!v.is_designated()) {
      fail("condition 1: voter " + to_string(v) + " is not designated");
      continue;
    }
    const auto& key = v.key();
    if (!s.contains(key.first) || !s.contains(key.second)) {
      fail("condition 1: voter " + to_string(v) + " names a candidate outside the profile");
      continue;
    }
    if (!(r == designated_ballot(key, p.scope())))
      fail("condition 1: voter " + to_string(v) + " does not cast its McGarvey ballot");
    present[{key.first, key.second, key.star}].insert(key.k);
  }
  std::set<std::pair<CandidateId, CandidateId>> pairs;
  for (const auto& [k, ks] : present) pairs.emplace(std::get<0>(k), std::get<1>(k));
  for (const auto& [a, b] : pairs) {
    const auto& tops = present[{a, b, Star::Top}];
    const auto& bottoms = present[{a, b, Star::Bottom}];
    if (tops != bottoms) fail("condition 2: " + a.name + b.name + " top and bottom voters are not paired");
    for (const auto* ks : {&tops, &bottoms})
      if (!ks->empty() && *ks->rbegin() != ks->size())
        fail("condition 3: " + a.name + b.name + " voter indices are not 1..k");
    if (pairs.contains({b, a}) && a < b) fail("condition 4: both " + a.name + b.name + " and " + b.name + a.name + " voters");
  }
  return check;
}

Profile CanonicalForm::profile() const {
  auto ballots = debord_part.ballots();
  if (held_out) ballots.emplace(held_out->first, held_out->second);
  return Profile::allow_empty(debord_part.scope(), std::move(ballots));
}

Canonicalization canonicalize_linear(const Profile& p, bool record_trace) {
  if (classify_domain(p) != Domain::Linear) throw DomainError("canonicalization needs a linear profile");
  const auto& scope = p.scope();
  const auto& cands = *scope;
  Tracker t(p, record_trace);

  auto to_pair = p.voters();
  std::optional<VoterId> held;
  const auto b0 = Ranking::alphabetic(scope);
  if (to_pair.size() % 2 == 1) {
    const auto fresh = fresh_naturals(t.ballots(), 2);
    t.apply(AddReversalPair{fresh[0], fresh[1], b0});
    held = fresh[0];
    to_pair.push_back(fresh[1]);
    std::sort(to_pair.begin(), to_pair.end());
  }

  for (std::size_t q = 0; q + 1 < to_pair.size(); q += 2) {
    const auto& i = to_pair[q];
    const auto& j = to_pair[q + 1];
    // Target: voter i casts the reverse of voter j's ballot.
    const auto target = reverse(t.ballots().at(j));
    for (;;) {
      const auto& cur = t.ballots().at(i);
      std::optional<std::pair<Index, Index>> flip;
      for (std::size_t k = 0; k + 1 < cur.class_count(); ++k) {
        const auto a = cur.class_at(k)[0], b = cur.class_at(k + 1)[0];
        if (target.level(a) > target.level(b)) {
          flip = {a, b};
          break;
        }
      }
      if (!flip) break;
      const auto [a, b] = *flip;
      std::uint64_t k = 1;
      while (t.ballots().contains(designated(cands, a, b, Star::Top, k)) ||
             t.ballots().contains(designated(cands, a, b, Star::Bottom, k)))
        ++k;
      const auto top = designated(cands, a, b, Star::Top, k);
      const auto bottom = designated(cands, a, b, Star::Bottom, k);
      t.apply(AddReversalPair{top, bottom, flip_adjacent(top_ballot(a, b, scope), cands[a], cands[b])});
      t.apply(CompensatedSwitch{i, top, cands[a], cands[b]});
    }
    t.apply(RemoveReversalPair{i, j});
  }

  // Cancel ab-voters against ba-voters, largest index first.
  auto max_k = [&](Index a, Index b) -> std::uint64_t {
    std::uint64_t best = 0;
    const auto lo = VoterId::designated(DesignatedVoterKey(cands[a], cands[b], Star::Top, 1));
    for (auto it = t.ballots().lower_bound(lo); it != t.ballots().end(); ++it) {
      const auto& key = it->first.key();
      if (key.first != cands[a] || key.second != cands[b] || key.star != Star::Top) break;
      best = std::max(best, key.k);
    }
    return best;
  };
  for (Index a = 0; a < cands.size(); ++a)
    for (Index b = a + 1; b < cands.size(); ++b)
      for (;;) {
        const auto kab = max_k(a, b), kba = max_k(b, a);
        if (kab == 0 || kba == 0) break;
        t.apply(RemoveReversalPair{designated(cands, a, b, Star::Top, kab), designated(cands, b, a, Star::Bottom, kba)});
        t.apply(RemoveReversalPair{designated(cands, a, b, Star::Bottom, kab), designated(cands, b, a, Star::Top, kba)});
      }

  // Close gaps in the designated indices (only possible when the input
  // itself held designated voters).
  for (Index a = 0; a < cands.size(); ++a)
    for (Index b = 0; b < cands.size(); ++b) {
      if (a == b) continue;
      for (auto star : {Star::Top, Star::Bottom}) {
        std::vector<std::uint64_t> ks;
        for (const auto& [v, r] : t.ballots())
          if (v.is_designated() && v.key().first == cands[a] && v.key().second == cands[b] && v.key().star == star)
            ks.push_back(v.key().k);
        for (std::size_t pos = 0; pos < ks.size(); ++pos)
          if (ks[pos] != pos + 1) t.rename(designated(cands, a, b, star, ks[pos]), designated(cands, a, b, star, pos + 1));
      }
    }

  if (held) {
    t.rename(*held, VoterId::natural(0));
    held = VoterId::natural(0);
  }

  auto ballots = t.ballots();
  std::optional<std::pair<VoterId, Ranking>> held_out;
  if (held) {
    held_out.emplace(*held, ballots.at(*held));
    ballots.erase(*held);
  }
  CanonicalForm form{std::move(held_out), Profile::allow_empty(scope, std::move(ballots))};

  auto expected = margins(p);
  if (form.held_out) {
    MarginMatrix single(scope);
    accumulate(single, b0);
    expected = matrix_subtract(expected, single);
  }
  if (!(form.debord_part == debord(expected)))
    throw InvariantError("canonicalization did not reach the Debord profile");
  return {std::move(form), t.take_trace()};
}

TraceAudit audit_trace(const Profile& start, const MoveTrace& trace, const Profile* end) {
  TraceAudit audit;
  auto fail = [&](std::string why) {
    audit.ok = false;
    audit.problems.push_back(std::move(why));
  };
  auto ballots = start.ballots();
  auto previous = margins(start);
  if (!(previous == trace.initial)) fail("initial snapshot differs from the starting margins");
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& step = trace.steps[i];
    const auto& mv = step.move;
    const bool allowed = std::holds_alternative<AddReversalPair>(mv) || std::holds_alternative<RemoveReversalPair>(mv) ||
                         std::holds_alternative<CompensatedSwitch>(mv) || std::holds_alternative<TiebreakPair>(mv) ||
                         std::holds_alternative<DoubleProfile>(mv);
    const auto label = "step " + std::to_string(i + 1) + " (" + describe(mv) + ")";
    if (!allowed) fail(label + ": move kind not allowed in a trace");
    try {
      apply_move(ballots, start.scope(), mv);
    } catch (const Error& e) {
      fail(label + ": " + e.what());
      return audit;
    }
    const auto now = margins(Profile::allow_empty(start.scope(), ballots));
    const auto expected = std::holds_alternative<DoubleProfile>(mv) ? matrix_scale(previous, 2) : previous;
    if (!(now == expected)) fail(label + ": margins changed");
    if (!(now == step.margins)) fail(label + ": recorded snapshot differs from recomputed margins");
    previous = now;
    ++audit.steps;
  }
  if (end && !(Profile::allow_empty(start.scope(), ballots) == *end)) fail("replay does not end at the stated profile");
  return audit;
}

Linearization linearize_ties(const Profile& p) {
  Tracker t(p, true);
  if (classify_domain(p) == Domain::Linear) return {p, t.take_trace()};
  const auto originals = p.voters();
  const auto copies = p.fresh_voters(originals.size());
  t.apply(DoubleProfile{});
  for (std::size_t n = 0; n < originals.size(); ++n) {
    for (;;) {
      const auto& r = t.ballots().at(originals[n]);
      std::optional<std::size_t> tie;
      for (std::size_t k = 0; k < r.class_count(); ++k)
        if (r.class_at(k).size() > 1) {
          tie = k;
          break;
        }
      if (!tie) break;
      auto members = r.class_members(*tie);
      CandidateSet tie_set(members);
      t.apply(TiebreakPair{originals[n], copies[n], tie_set, members});
    }
  }
  return {Profile::allow_empty(p.scope(), t.ballots()), t.take_trace()};
}

std::pair<Profile, Profile> equalize_h2h(const Profile& p, const Profile& q) {
  require_same_candidates(p.candidates(), q.candidates());
  const auto& scope = p.scope();
  const auto q_rescoped = Profile::allow_empty(scope, [&] {
    Profile::Ballots b;
    for (const auto& [v, r] : q.ballots()) b.emplace(v, Ranking::from_indices(r.class_indices(), scope));
    return b;
  }());
  if (!(margins(p) == margins(q_rescoped))) throw MarginMismatchError("profiles have different margins");

  const auto sp = support(p);
  const auto sq = support(q_rescoped);
  auto left = p.ballots();
  auto right = q_rescoped.ballots();
  auto add_pairs = [&](Profile::Ballots& ballots, const Ranking& r, std::int64_t count) {
    for (std::int64_t c = 0; c < count; ++c) {
      const auto fresh = fresh_naturals(ballots, 2);
      ballots.emplace(fresh[0], r);
      ballots.emplace(fresh[1], reverse(r));
    }
  };
  const auto n = scope->size();
  for (Index a = 0; a < n; ++a)
    for (Index b = a + 1; b < n; ++b) {
      const auto d = sq(a, b) - sp(a, b);
      if (d == 0) continue;
      auto rest = alphabetic_rest(n, a, b);
      std::vector<std::vector<Index>> l_classes{{a}, {b}}, t_classes{{a, b}};
      if (!rest.empty()) {
        l_classes.push_back(rest);
        t_classes.push_back(rest);
      }
      const auto l = Ranking::from_indices(l_classes, scope);
      const auto tt = Ranking::from_indices(t_classes, scope);
      if (d > 0) {
        add_pairs(left, l, d);
        add_pairs(right, tt, d);
      } else {
        add_pairs(left, tt, -d);
        add_pairs(right, l, -d);
      }
    }
  auto pad = [&](Profile::Ballots& ballots, std::size_t to) {
    while (ballots.size() < to) ballots.emplace(fresh_naturals(ballots, 1)[0], Ranking::indifferent(scope));
  };
  const auto size = std::max(left.size(), right.size());
  pad(left, size);
  pad(right, size);
  auto out = std::make_pair(Profile::allow_empty(scope, std::move(left)), Profile::allow_empty(scope, std::move(right)));
  if (!(h2h_info(out.first) == h2h_info(out.second))) throw InvariantError("head-to-head equalization failed");
  return out;
}

std::uint64_t margin_hash(const MarginMatrix& m) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
  };
  for (const auto& c : m.candidates()) {
    mix(c.name);
    mix(",");
  }
  for (auto v : m.cells()) {
    mix(std::to_string(v));
    mix(";");
  }
  return h;
}

}  // namespace marginvote
