#include "marginvote/core.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <set>

namespace marginvote {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

// --- CandidateSet ----------------------------------------------------------

CandidateSet::CandidateSet(std::vector<CandidateId> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  const auto dup = std::adjacent_find(ids_.begin(), ids_.end());
  if (dup != ids_.end()) throw DuplicateCandidateError("duplicate candidate '" + dup->name + "'");
}

CandidateSet::CandidateSet(std::initializer_list<std::string_view> names) {
  std::vector<CandidateId> ids;
  ids.reserve(names.size());
  for (auto n : names) ids.emplace_back(std::string(n));
  *this = CandidateSet(std::move(ids));
}

CandidateSet CandidateSet::from_names(const std::vector<std::string>& names) {
  std::vector<CandidateId> ids;
  ids.reserve(names.size());
  for (const auto& n : names) ids.emplace_back(n);
  return CandidateSet(std::move(ids));
}

std::optional<std::size_t> CandidateSet::index_of(const CandidateId& c) const {
  const auto it = std::lower_bound(ids_.begin(), ids_.end(), c);
  if (it == ids_.end() || *it != c) return std::nullopt;
  return static_cast<std::size_t>(it - ids_.begin());
}

std::size_t CandidateSet::require_index(const CandidateId& c) const {
  if (auto i = index_of(c)) return *i;
  throw UnknownCandidateError("unknown candidate '" + c.name + "'");
}

bool CandidateSet::is_subset_of(const CandidateSet& other) const {
  return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(), ids_.end());
}

std::string to_string(const CandidateSet& s, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += sep;
    out += s[i].name;
  }
  return out;
}

Scope make_scope(CandidateSet set) { return std::make_shared<const CandidateSet>(std::move(set)); }

bool same_scope(const Scope& a, const Scope& b) { return a == b || *a == *b; }

// --- Voters ----------------------------------------------------------------

DesignatedVoterKey::DesignatedVoterKey(CandidateId a, CandidateId b, Star s, std::uint64_t index)
    : first(std::move(a)), second(std::move(b)), star(s), k(index) {
  if (first == second) throw InvalidVoterIdError("designated voter needs two distinct candidates");
  if (k == 0) throw InvalidVoterIdError("designated voter index must be positive");
}

std::uint64_t VoterId::number() const {
  if (!is_natural()) throw InvalidVoterIdError("voter " + to_string(*this) + " is not a natural id");
  return std::get<0>(id_);
}

const DesignatedVoterKey& VoterId::key() const {
  if (!is_designated()) throw InvalidVoterIdError("voter " + to_string(*this) + " is not designated");
  return std::get<1>(id_);
}

std::strong_ordering operator<=>(const VoterId& a, const VoterId& b) {
  if (a.id_.index() != b.id_.index()) return a.id_.index() <=> b.id_.index();
  if (a.is_natural()) return std::get<0>(a.id_) <=> std::get<0>(b.id_);
  return std::get<1>(a.id_) <=> std::get<1>(b.id_);
}

std::string to_string(const VoterId& v) {
  if (v.is_natural()) return std::to_string(v.number());
  const auto& k = v.key();
  return "v(" + k.first.name + "," + k.second.name + "," + (k.star == Star::Top ? "top" : "bottom") + "," +
         std::to_string(k.k) + ")";
}

VoterId parse_voter_id(std::string_view text) {
  text = trim(text);
  auto parse_u64 = [&](std::string_view s) {
    s = trim(s);
    std::uint64_t n = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
      throw InvalidVoterIdError("bad voter id '" + std::string(text) + "'");
    return n;
  };
  if (text.size() > 3 && text.substr(0, 2) == "v(" && text.back() == ')') {
    const auto parts = split(text.substr(2, text.size() - 3), ',');
    if (parts.size() != 4) throw InvalidVoterIdError("bad voter id '" + std::string(text) + "'");
    const auto star_text = trim(parts[2]);
    Star star;
    if (star_text == "top")
      star = Star::Top;
    else if (star_text == "bottom")
      star = Star::Bottom;
    else
      throw InvalidVoterIdError("bad voter id '" + std::string(text) + "'");
    return VoterId::designated(DesignatedVoterKey(CandidateId(std::string(trim(parts[0]))),
                                                  CandidateId(std::string(trim(parts[1]))), star,
                                                  parse_u64(parts[3])));
  }
  return VoterId::natural(parse_u64(text));
}

// --- Domain ----------------------------------------------------------------

std::string_view to_string(Domain d) {
  switch (d) {
    case Domain::Linear: return "linear";
    case Domain::Lobi: return "lobi";
    case Domain::Swo: return "swo";
  }
  return "swo";
}

Domain parse_domain(std::string_view text) {
  if (text == "linear") return Domain::Linear;
  if (text == "lobi") return Domain::Lobi;
  if (text == "swo") return Domain::Swo;
  throw UnknownIdentifierError("unknown domain '" + std::string(text) + "'");
}

// --- Ranking ---------------------------------------------------------------

Ranking::Ranking(Scope scope, std::vector<std::vector<Index>> classes)
    : scope_(std::move(scope)), classes_(std::move(classes)) {
  const auto n = scope_->size();
  constexpr Index unset = ~Index{0};
  level_.assign(n, unset);
  std::size_t seen = 0;
  for (std::size_t k = 0; k < classes_.size(); ++k) {
    auto& cls = classes_[k];
    if (cls.empty()) throw OverlapOrGapError("empty indifference class");
    std::sort(cls.begin(), cls.end());
    for (Index c : cls) {
      if (c >= n) throw OverlapOrGapError("candidate index out of range");
      if (level_[c] != unset) throw OverlapOrGapError("candidate '" + (*scope_)[c].name + "' appears twice");
      level_[c] = static_cast<Index>(k);
      ++seen;
    }
  }
  if (seen != n) {
    for (std::size_t c = 0; c < n; ++c)
      if (level_[c] == unset) throw OverlapOrGapError("candidate '" + (*scope_)[c].name + "' is missing");
  }
}

Ranking::Ranking(const std::vector<std::vector<CandidateId>>& classes, Scope scope)
    : Ranking(
          [&] {
            std::vector<std::vector<Index>> idx;
            idx.reserve(classes.size());
            for (const auto& cls : classes) {
              auto& out = idx.emplace_back();
              for (const auto& c : cls) {
                auto i = scope->index_of(c);
                if (!i) throw UnknownCandidateError("candidate '" + c.name + "' is outside the scope");
                out.push_back(static_cast<Index>(*i));
              }
            }
            return Ranking(scope, std::move(idx));
          }()) {}

Ranking Ranking::from_indices(std::vector<std::vector<Index>> classes, Scope scope) {
  return Ranking(std::move(scope), std::move(classes));
}

Ranking Ranking::linear(const std::vector<CandidateId>& order, Scope scope) {
  std::vector<std::vector<CandidateId>> classes;
  classes.reserve(order.size());
  for (const auto& c : order) classes.push_back({c});
  return Ranking(classes, std::move(scope));
}

Ranking Ranking::indifferent(Scope scope) {
  std::vector<Index> all(scope->size());
  std::iota(all.begin(), all.end(), Index{0});
  std::vector<std::vector<Index>> classes;
  if (!all.empty()) classes.push_back(std::move(all));
  return Ranking(std::move(scope), std::move(classes));
}

Ranking Ranking::alphabetic(Scope scope) {
  std::vector<std::vector<Index>> classes(scope->size());
  for (std::size_t i = 0; i < classes.size(); ++i) classes[i] = {static_cast<Index>(i)};
  return Ranking(std::move(scope), std::move(classes));
}

std::vector<CandidateId> Ranking::class_members(std::size_t k) const {
  std::vector<CandidateId> out;
  for (Index c : classes_.at(k)) out.push_back((*scope_)[c]);
  return out;
}

std::vector<std::vector<CandidateId>> Ranking::classes() const {
  std::vector<std::vector<CandidateId>> out;
  for (std::size_t k = 0; k < classes_.size(); ++k) out.push_back(class_members(k));
  return out;
}

Ranking::Index Ranking::level(const CandidateId& c) const {
  return level_[scope_->require_index(c)];
}

bool Ranking::prefers(const CandidateId& x, const CandidateId& y) const {
  return prefers(static_cast<Index>(scope_->require_index(x)), static_cast<Index>(scope_->require_index(y)));
}

bool Ranking::immediately_above(Index x, Index y) const {
  const auto lx = level_[x];
  return level_[y] == lx + 1 && classes_[lx].size() == 1 && classes_[lx + 1].size() == 1;
}

bool Ranking::is_lobi() const noexcept {
  for (std::size_t k = 0; k + 1 < classes_.size(); ++k)
    if (classes_[k].size() != 1) return false;
  return true;
}

Domain Ranking::domain() const noexcept {
  if (is_linear()) return Domain::Linear;
  if (is_lobi()) return Domain::Lobi;
  return Domain::Swo;
}

std::vector<CandidateId> Ranking::linear_order() const {
  if (!is_linear()) throw DomainError("ranking " + to_string(*this) + " is not linear");
  std::vector<CandidateId> out;
  for (const auto& cls : classes_) out.push_back((*scope_)[cls.front()]);
  return out;
}

bool operator==(const Ranking& a, const Ranking& b) {
  return same_scope(a.scope_, b.scope_) && a.classes_ == b.classes_;
}

Ranking make_ranking(const std::vector<std::vector<CandidateId>>& classes, Scope scope) {
  return Ranking(classes, std::move(scope));
}

Ranking flip_adjacent(const Ranking& r, const CandidateId& x, const CandidateId& y) {
  const auto& s = r.candidates();
  const auto xi = static_cast<Ranking::Index>(s.require_index(x));
  const auto yi = static_cast<Ranking::Index>(s.require_index(y));
  if (xi == yi || !r.immediately_above(xi, yi))
    throw NotAdjacentError(x.name + " is not immediately above " + y.name + " in " + to_string(r));
  auto classes = r.class_indices();
  std::swap(classes[r.level(xi)], classes[r.level(yi)]);
  return Ranking::from_indices(std::move(classes), r.scope());
}

Ranking reverse(const Ranking& r) {
  auto classes = r.class_indices();
  std::reverse(classes.begin(), classes.end());
  return Ranking::from_indices(std::move(classes), r.scope());
}

Ranking restrict_ranking(const Ranking& r, Scope subset) {
  std::vector<std::vector<Ranking::Index>> classes;
  for (std::size_t k = 0; k < r.class_count(); ++k) {
    std::vector<Ranking::Index> cls;
    for (auto c : r.class_at(k)) {
      if (auto i = subset->index_of(r.candidates()[c])) cls.push_back(static_cast<Ranking::Index>(*i));
    }
    if (!cls.empty()) classes.push_back(std::move(cls));
  }
  return Ranking::from_indices(std::move(classes), std::move(subset));
}

Ranking break_tie(const Ranking& r, const CandidateSet& tie, const std::vector<CandidateId>& order) {
  if (tie.size() < 2) throw NotATieError("a tie needs at least two candidates");
  const auto& s = r.candidates();
  const auto first = s.require_index(tie[0]);
  const auto level = r.level(static_cast<Ranking::Index>(first));
  if (r.class_at(level).size() != tie.size())
    throw NotATieError("{" + to_string(tie) + "} is not an indifference class of " + to_string(r));
  for (const auto& c : tie) {
    if (r.level(static_cast<Ranking::Index>(s.require_index(c))) != level)
      throw NotATieError("{" + to_string(tie) + "} is not an indifference class of " + to_string(r));
  }
  std::vector<CandidateId> sorted_order = order;
  std::sort(sorted_order.begin(), sorted_order.end());
  if (sorted_order.size() != tie.size() || !std::equal(sorted_order.begin(), sorted_order.end(), tie.begin()))
    throw NotATieError("tie-break order must list exactly the tied candidates");

  std::vector<std::vector<Ranking::Index>> classes;
  for (std::size_t k = 0; k < r.class_count(); ++k) {
    if (k == level) {
      for (const auto& c : order) classes.push_back({static_cast<Ranking::Index>(s.require_index(c))});
    } else {
      auto span = r.class_at(k);
      classes.emplace_back(span.begin(), span.end());
    }
  }
  return Ranking::from_indices(std::move(classes), r.scope());
}

Ranking parse_ranking(std::string_view text, Scope scope) {
  text = trim(text);
  if (text.empty()) return Ranking::indifferent(std::move(scope));
  std::vector<std::vector<CandidateId>> classes;
  for (auto cls_text : split(text, '>')) {
    auto& cls = classes.emplace_back();
    for (auto name : split(cls_text, '~')) {
      name = trim(name);
      if (name.size() >= 2 && name.front() == '(' && name.back() == ')') name = trim(name.substr(1, name.size() - 2));
      if (!name.empty() && name.front() == '(') name = trim(name.substr(1));
      if (!name.empty() && name.back() == ')') name = trim(name.substr(0, name.size() - 1));
      if (name.empty()) throw OverlapOrGapError("empty candidate name in ranking '" + std::string(text) + "'");
      cls.emplace_back(std::string(name));
    }
  }
  return Ranking(classes, std::move(scope));
}

std::string to_string(const Ranking& r) {
  std::string out;
  for (std::size_t k = 0; k < r.class_count(); ++k) {
    if (k) out += '>';
    bool first = true;
    for (auto c : r.class_at(k)) {
      if (!first) out += '~';
      out += r.candidates()[c].name;
      first = false;
    }
  }
  return out;
}

// --- Profile ---------------------------------------------------------------

Profile::Profile(Scope candidates, Ballots ballots, bool allow_empty)
    : scope_(std::move(candidates)), ballots_(std::move(ballots)) {
  if (!scope_) throw CandidateMismatchError("profile needs a candidate set");
  if (!allow_empty && ballots_.empty()) throw EmptyProfileError("profile has no voters");
  for (const auto& [voter, ranking] : ballots_) {
    if (!same_scope(ranking.scope(), scope_))
      throw CandidateMismatchError("ballot of voter " + to_string(voter) + " ranks a different candidate set");
  }
}

Profile::Profile(Scope candidates, Ballots ballots) : Profile(std::move(candidates), std::move(ballots), false) {}

Profile Profile::empty(Scope candidates) { return Profile(std::move(candidates), {}, true); }

Profile Profile::allow_empty(Scope candidates, Ballots ballots) {
  return Profile(std::move(candidates), std::move(ballots), true);
}

const Ranking& Profile::ballot(const VoterId& v) const {
  const auto it = ballots_.find(v);
  if (it == ballots_.end()) throw UnknownVoterError("unknown voter " + to_string(v));
  return it->second;
}

std::vector<VoterId> Profile::voters() const {
  std::vector<VoterId> out;
  out.reserve(ballots_.size());
  for (const auto& [v, r] : ballots_) out.push_back(v);
  return out;
}

std::vector<VoterId> Profile::fresh_voters(std::size_t count) const {
  std::vector<VoterId> out;
  out.reserve(count);
  auto it = ballots_.begin();
  for (std::uint64_t n = 0; out.size() < count; ++n) {
    const auto candidate = VoterId::natural(n);
    while (it != ballots_.end() && it->first < candidate) ++it;
    if (it != ballots_.end() && it->first == candidate) continue;
    out.push_back(candidate);
  }
  return out;
}

bool operator==(const Profile& a, const Profile& b) {
  return same_scope(a.scope_, b.scope_) && a.ballots_ == b.ballots_;
}

void require_same_candidates(const CandidateSet& a, const CandidateSet& b) {
  if (!(a == b))
    throw CandidateMismatchError("candidate sets differ: {" + to_string(a) + "} vs {" + to_string(b) + "}");
}

Profile disjoint_union(const Profile& p, const Profile& q) {
  require_same_candidates(p.candidates(), q.candidates());
  auto ballots = p.ballots();
  for (const auto& [v, r] : q.ballots()) {
    if (!ballots.emplace(v, Ranking::from_indices(r.class_indices(), p.scope())).second)
      throw VoterCollisionError("voter " + to_string(v) + " appears in both profiles");
  }
  return Profile::allow_empty(p.scope(), std::move(ballots));
}

Profile double_profile(const Profile& p) {
  auto ballots = p.ballots();
  const auto fresh = p.fresh_voters(p.voter_count());
  std::size_t i = 0;
  for (const auto& [v, r] : p.ballots()) ballots.emplace(fresh[i++], r);
  return Profile::allow_empty(p.scope(), std::move(ballots));
}

Profile restrict_profile(const Profile& p, const CandidateSet& subset) {
  if (subset.empty()) throw EmptyRestrictionError("cannot restrict to an empty candidate set");
  if (!subset.is_subset_of(p.candidates()))
    throw EmptyRestrictionError("{" + to_string(subset) + "} is not a subset of the candidates");
  auto scope = make_scope(subset);
  Profile::Ballots ballots;
  for (const auto& [v, r] : p.ballots()) ballots.emplace(v, restrict_ranking(r, scope));
  return Profile::allow_empty(scope, std::move(ballots));
}

Domain classify_domain(const Profile& p) {
  Domain d = Domain::Linear;
  for (const auto& [v, r] : p.ballots()) {
    d = std::max(d, r.domain());
    if (d == Domain::Swo) break;
  }
  return d;
}

Profile profile_from_strings(const CandidateSet& candidates, const std::vector<std::string>& rankings) {
  auto scope = make_scope(candidates);
  Profile::Ballots ballots;
  std::uint64_t n = 0;
  for (const auto& text : rankings) ballots.emplace(VoterId::natural(n++), parse_ranking(text, scope));
  return Profile::allow_empty(scope, std::move(ballots));
}

Profile profile_from_counts(const CandidateSet& candidates,
                            const std::vector<std::pair<std::int64_t, std::string>>& groups) {
  auto scope = make_scope(candidates);
  Profile::Ballots ballots;
  std::uint64_t n = 0;
  for (const auto& [count, text] : groups) {
    const auto r = parse_ranking(text, scope);
    for (std::int64_t c = 0; c < count; ++c) ballots.emplace(VoterId::natural(n++), r);
  }
  return Profile::allow_empty(scope, std::move(ballots));
}

}  // namespace marginvote
