#include "marginvote/serialize.hpp"

#include <cstdio>

namespace marginvote {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Json names(const std::vector<CandidateId>& ids) {
  auto out = Json::array();
  for (const auto& c : ids) out.push_back(c.name);
  return out;
}

Json voters(const std::vector<VoterId>& vs) {
  auto out = Json::array();
  for (const auto& v : vs) out.push_back(to_string(v));
  return out;
}

std::string hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json scenario_profiles(const std::vector<const Profile*>& ps) {
  auto out = Json::array();
  for (const auto* p : ps) out.push_back(to_json(*p));
  return out;
}

Json outputs(const std::vector<RuleOutput>& outs) {
  auto out = Json::array();
  for (const auto& o : outs) out.push_back(to_json(o));
  return out;
}

}  // namespace

Json to_json(const CandidateSet& s) { return names(s.ids()); }

Json to_json(const Profile& p) {
  Json ballots = Json::array();
  for (const auto& [v, r] : p.ballots()) ballots.push_back({{"voter", to_string(v)}, {"ranking", to_string(r)}});
  return {{"candidates", to_json(p.candidates())}, {"ballots", std::move(ballots)}};
}

Json to_json(const RelProfile& rp) {
  Json ballots = Json::array();
  for (const auto& [v, r] : rp.ballots()) ballots.push_back({{"voter", to_string(v)}, {"relation", to_string(r)}});
  return {{"candidates", to_json(rp.candidates())}, {"ballots", std::move(ballots)}};
}

Json to_json(const PairMatrix& m) {
  Json rows = Json::array();
  for (std::size_t x = 0; x < m.dim(); ++x) {
    Json row = Json::array();
    for (std::size_t y = 0; y < m.dim(); ++y) row.push_back(m(x, y));
    rows.push_back(std::move(row));
  }
  return {{"candidates", to_json(m.candidates())}, {"matrix", std::move(rows)}};
}

Json to_json(const WeightedDigraph& g) {
  Json edges = Json::array();
  for (const auto& e : g.edges) edges.push_back({{"from", e.from.name}, {"to", e.to.name}, {"weight", e.weight}});
  return {{"nodes", to_json(g.nodes)}, {"edges", std::move(edges)}};
}

Json to_json(const RuleOutput& out) {
  if (out.ok()) return {{"winners", to_json(out.winners())}};
  return {{"failure", std::string(to_string(out.failure()))}, {"detail", out.detail()}};
}

Json to_json(const Move& m) {
  return std::visit(
      overloaded{
          [](const PreferentialSwitch& s) -> Json {
            return {{"kind", "preferential-switch"}, {"voter", to_string(s.voter)}, {"x", s.x.name}, {"y", s.y.name}};
          },
          [](const CoalitionSwitch& s) -> Json {
            return {{"kind", "coalition-switch"}, {"voters", voters(s.voters)}, {"x", s.x.name}, {"y", s.y.name}};
          },
          [](const CompensatedSwitch& s) -> Json {
            return {{"kind", "compensated-switch"},
                    {"first", to_string(s.first)},
                    {"second", to_string(s.second)},
                    {"x", s.x.name},
                    {"y", s.y.name}};
          },
          [](const AddReversalPair& a) -> Json {
            return {{"kind", "add-reversal-pair"},
                    {"first", to_string(a.first)},
                    {"second", to_string(a.second)},
                    {"ranking", to_string(a.ranking)}};
          },
          [](const RemoveReversalPair& r) -> Json {
            return {{"kind", "remove-reversal-pair"}, {"first", to_string(r.first)}, {"second", to_string(r.second)}};
          },
          [](const BreakTie& b) -> Json {
            return {{"kind", "break-tie"}, {"voter", to_string(b.voter)}, {"tie", to_json(b.tie)}, {"order", names(b.order)}};
          },
          [](const TiebreakPair& t) -> Json {
            return {{"kind", "tiebreak-pair"},
                    {"first", to_string(t.first)},
                    {"second", to_string(t.second)},
                    {"tie", to_json(t.tie)},
                    {"order", names(t.order)}};
          },
          [](const DoubleProfile&) -> Json { return {{"kind", "double"}}; },
          [](const AddIndifferentVoter& a) -> Json {
            return {{"kind", "add-indifferent-voter"}, {"voter", to_string(a.voter)}};
          },
          [](const AddBlock&) -> Json { return {{"kind", "add-block"}}; },
      },
      m);
}

Json to_json(const AxiomReport& r) {
  Json witnesses = Json::array();
  for (const auto& w : r.witnesses)
    witnesses.push_back({{"description", w.scenario.description},
                         {"equal_effect", w.scenario.equal_effect},
                         {"profiles", scenario_profiles(w.scenario.compared())},
                         {"outputs", outputs(w.outputs)}});
  return {{"axiom", std::string(to_string(r.axiom))},
          {"rule", r.rule},
          {"seed", r.seed},
          {"budget", r.budget},
          {"tried", r.tried},
          {"skipped", r.skipped},
          {"witness_count", r.witness_count},
          {"passed", r.passed()},
          {"witnesses", std::move(witnesses)}};
}

Json to_json(const RelAxiomReport& r) {
  Json witnesses = Json::array();
  for (const auto& w : r.witnesses)
    witnesses.push_back({{"description", w.scenario.description},
                         {"profiles", Json::array({to_json(w.scenario.before), to_json(w.scenario.after)})},
                         {"outputs", outputs(w.outputs)}});
  return {{"axiom", std::string(to_string(r.axiom))},
          {"rule", r.rule},
          {"tried", r.tried},
          {"skipped", r.skipped},
          {"witness_count", r.witness_count},
          {"passed", r.passed()},
          {"witnesses", std::move(witnesses)}};
}

Json to_json(const InvarianceReport& r) {
  Json levels = Json::array();
  for (const auto& l : r.levels) {
    Json examples = Json::array();
    for (const auto& c : l.counterexamples)
      examples.push_back({{"profiles", Json::array({to_json(c.first), to_json(c.second)})},
                          {"outputs", Json::array({to_json(c.first_output), to_json(c.second_output)})}});
    levels.push_back({{"level", std::string(to_string(l.level))},
                      {"groups", l.groups},
                      {"comparisons", l.comparisons},
                      {"counterexample_count", l.counterexample_count},
                      {"passed", l.passed()},
                      {"counterexamples", std::move(examples)}});
  }
  return {{"rule", r.rule}, {"profiles", r.profiles}, {"skipped", r.skipped}, {"levels", std::move(levels)}};
}

Json to_json(const CanonicalForm& f) {
  Json held = nullptr;
  if (f.held_out) held = {{"voter", to_string(f.held_out->first)}, {"ranking", to_string(f.held_out->second)}};
  return {{"held_out", std::move(held)}, {"profile", to_json(f.profile())}};
}

Json to_json(const ScanReport& r) {
  Json elections = Json::array();
  for (const auto& e : r.elections) {
    Json item = {{"name", e.name},
                 {"voters", e.voters},
                 {"candidates", e.candidates},
                 {"status", std::string(to_string(e.status))}};
    if (!e.reason.empty()) item["reason"] = e.reason;
    if (!e.detail.empty()) item["detail"] = e.detail;
    if (r.kind == "irv") {
      item["pcv"] = e.pcv;
      if (e.pcv) item["pcv_detail"] = e.pcv_detail;
    }
    elections.push_back(std::move(item));
  }
  Json out = {{"kind", r.kind},       {"dataset", r.dataset},         {"profiles", r.profiles},
              {"relevant", r.relevant}, {"denominator", r.denominator}, {"hits", r.hits},
              {"frequency", r.frequency}, {"average_voters", r.average_voters}};
  if (r.kind == "irv") {
    out["budget"] = r.budget;
    out["pcv_hits"] = r.pcv_hits;
    out["pcv_frequency"] = r.pcv_frequency;
  }
  out["elections"] = std::move(elections);
  return out;
}

Json to_json(const TripleCounts& t) {
  const auto n = t.scope->size();
  auto grid = [n](const std::vector<std::int64_t>& cells) {
    Json rows = Json::array();
    for (std::size_t x = 0; x < n; ++x) {
      Json row = Json::array();
      for (std::size_t y = 0; y < n; ++y) row.push_back(cells[x * n + y]);
      rows.push_back(std::move(row));
    }
    return rows;
  };
  return {{"candidates", to_json(*t.scope)},
          {"voters", t.voters},
          {"strict", grid(t.strict)},
          {"indifferent", grid(t.indifferent)},
          {"noncomparable", grid(t.noncomparable)}};
}

namespace {

template <class Ballot, class Parse>
std::pair<Scope, std::map<VoterId, Ballot>> ballots_from_json(const Json& j, const char* field, Parse parse) {
  try {
    std::vector<std::string> cand_names;
    for (const auto& c : j.at("candidates")) cand_names.push_back(c.get<std::string>());
    auto scope = make_scope(CandidateSet::from_names(cand_names));
    std::map<VoterId, Ballot> ballots;
    std::uint64_t next = 0;
    for (const auto& b : j.at("ballots")) {
      const auto voter = b.contains("voter") ? parse_voter_id(b.at("voter").get<std::string>()) : VoterId::natural(next);
      ++next;
      if (!ballots.emplace(voter, parse(b.at(field).template get<std::string>(), scope)).second)
        throw VoterCollisionError("voter " + to_string(voter) + " appears twice");
    }
    return {std::move(scope), std::move(ballots)};
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed profile json: ") + e.what(), 0);
  }
}

}  // namespace

Profile profile_from_json(const Json& j) {
  auto [scope, ballots] = ballots_from_json<Ranking>(j, "ranking", parse_ranking);
  return Profile::allow_empty(std::move(scope), std::move(ballots));
}

RelProfile rel_profile_from_json(const Json& j) {
  auto [scope, ballots] = ballots_from_json<PrefRelation>(j, "relation", parse_relation);
  return RelProfile::allow_empty(std::move(scope), std::move(ballots));
}

std::string trace_jsonl(const MoveTrace& trace) {
  std::string out = Json{{"initial", to_json(trace.initial)}, {"margin_hash", hex(margin_hash(trace.initial))}}.dump();
  out += '\n';
  for (std::size_t k = 0; k < trace.steps.size(); ++k) {
    const auto& s = trace.steps[k];
    out += Json{{"step", k + 1}, {"move", to_json(s.move)}, {"margin_hash", hex(margin_hash(s.margins))}}.dump();
    out += '\n';
  }
  return out;
}

}  // namespace marginvote
