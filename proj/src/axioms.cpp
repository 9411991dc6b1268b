#include "marginvote/axioms.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "marginvote/random.hpp"
#include "parallel.hpp"

namespace marginvote {

namespace {

struct AxiomName {
  Axiom axiom;
  std::string_view id;
};

constexpr AxiomName kAxiomNames[] = {
    {Axiom::PreferentialEquality, "preferential-equality"},
    {Axiom::PreferentialCompensation, "preferential-compensation"},
    {Axiom::CoalitionalPreferentialEquality, "coalitional-preferential-equality"},
    {Axiom::NeutralReversal, "neutral-reversal"},
    {Axiom::TiebreakingCompensation, "tiebreaking-compensation"},
    {Axiom::PureTiebreakingCompensation, "pure-tiebreaking-compensation"},
    {Axiom::Homogeneity, "homogeneity"},
    {Axiom::NonlinearNeutralReversal, "nonlinear-neutral-reversal"},
    {Axiom::NeutralIndifference, "neutral-indifference"},
    {Axiom::BlockInvariance, "block-invariance"},
    {Axiom::ComparableCompensation, "comparable-compensation"},
    {Axiom::NeutralBlankness, "neutral-blankness"},
    {Axiom::NeutralSelfReversal, "neutral-self-reversal"},
};

}  // namespace

std::string_view to_string(Axiom a) {
  for (const auto& n : kAxiomNames)
    if (n.axiom == a) return n.id;
  return "unknown";
}

Axiom parse_axiom(std::string_view id) {
  for (const auto& n : kAxiomNames)
    if (n.id == id) return n.axiom;
  throw UnknownIdentifierError("unknown axiom '" + std::string(id) + "'");
}

const std::vector<Axiom>& profile_axioms() {
  static const std::vector<Axiom> axioms = {
      Axiom::PreferentialEquality,     Axiom::PreferentialCompensation,    Axiom::CoalitionalPreferentialEquality,
      Axiom::NeutralReversal,          Axiom::TiebreakingCompensation,     Axiom::PureTiebreakingCompensation,
      Axiom::Homogeneity,              Axiom::NonlinearNeutralReversal,    Axiom::NeutralIndifference,
      Axiom::BlockInvariance,
  };
  return axioms;
}

bool is_relational(Axiom a) {
  return a == Axiom::ComparableCompensation || a == Axiom::NeutralBlankness || a == Axiom::NeutralSelfReversal;
}

std::vector<const Profile*> AxiomScenario::compared() const {
  if (equal_effect) return {&after.at(0), &after.at(1)};
  return {&before, &after.at(0)};
}

// ---------------------------------------------------------------------------
// Scenario generation
// ---------------------------------------------------------------------------

namespace {

using Index = Ranking::Index;

/// Voters grouped by identical ballot, groups ordered by their least voter.
struct BallotTypes {
  std::vector<const Ranking*> ranking;
  std::vector<std::vector<VoterId>> voters;
};

BallotTypes ballot_types(const Profile& p) {
  BallotTypes t;
  std::map<std::vector<std::vector<Index>>, std::size_t> seen;
  for (const auto& [v, r] : p.ballots()) {
    auto [it, inserted] = seen.emplace(r.class_indices(), t.voters.size());
    if (inserted) {
      t.ranking.push_back(&r);
      t.voters.emplace_back();
    }
    t.voters[it->second].push_back(v);
  }
  return t;
}

std::vector<std::size_t> adjacent_types(const BallotTypes& t, Index x, Index y) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < t.ranking.size(); ++k)
    if (t.ranking[k]->immediately_above(x, y)) out.push_back(k);
  return out;
}

std::vector<VoterId> first_voters(const std::vector<VoterId>& vs, std::size_t s) {
  return {vs.begin(), vs.begin() + static_cast<std::ptrdiff_t>(s)};
}

std::string voters_text(const std::vector<VoterId>& vs) {
  std::string out = "{";
  for (std::size_t i = 0; i < vs.size(); ++i) out += (i ? "," : "") + to_string(vs[i]);
  return out + "}";
}

/// I and J both rank x immediately above y.
struct SwitchPlan {
  Index x, y;
  std::vector<VoterId> first, second;
};

/// `first` switches x>y to y>x, `second` switches y>x to x>y, pairwise.
struct CompensationPlan {
  Profile before;
  Index x, y;
  std::vector<VoterId> first, second;
};

class Generator {
 public:
  Generator(const Profile& base, std::size_t max_coalition, std::size_t limit)
      : base_(base), types_(ballot_types(base)), max_coalition_(max_coalition), limit_(limit) {}

  bool full() const { return out_.size() >= limit_; }
  std::vector<AxiomScenario> take() { return std::move(out_); }

  void push(AxiomScenario s) {
    if (!full()) out_.push_back(std::move(s));
  }

  const CandidateId& name(Index c) const { return base_.candidates()[c]; }

  std::vector<SwitchPlan> switch_plans(std::size_t min_size) const {
    std::vector<SwitchPlan> plans;
    const auto n = static_cast<Index>(base_.candidates().size());
    for (Index x = 0; x < n; ++x)
      for (Index y = 0; y < n; ++y) {
        if (x == y) continue;
        const auto types = adjacent_types(types_, x, y);
        for (std::size_t s = std::max<std::size_t>(min_size, 1); s <= max_coalition_; ++s)
          for (std::size_t a = 0; a < types.size(); ++a)
            for (std::size_t b = a + 1; b < types.size(); ++b) {
              const auto& va = types_.voters[types[a]];
              const auto& vb = types_.voters[types[b]];
              if (va.size() < s || vb.size() < s) continue;
              plans.push_back({x, y, first_voters(va, s), first_voters(vb, s)});
              if (plans.size() >= limit_) return plans;
            }
      }
    return plans;
  }

  void preferential_equality(std::size_t min_size, Axiom axiom) {
    for (const auto& plan : switch_plans(min_size)) {
      if (full()) return;
      auto pi = coalition_switch(base_, plan.first, name(plan.x), name(plan.y));
      auto pj = coalition_switch(base_, plan.second, name(plan.x), name(plan.y));
      push({axiom, base_, {std::move(pi), std::move(pj)}, true,
            name(plan.x).name + ">" + name(plan.y).name + " switched by " + voters_text(plan.first) + " vs " +
                voters_text(plan.second)});
    }
  }

  std::vector<CompensationPlan> compensation_plans() const {
    std::vector<CompensationPlan> plans;
    const auto n = static_cast<Index>(base_.candidates().size());
    for (Index x = 0; x < n; ++x)
      for (Index y = x + 1; y < n; ++y) {
        const auto up = adjacent_types(types_, x, y);
        const auto down = adjacent_types(types_, y, x);
        for (std::size_t s = 1; s <= max_coalition_; ++s)
          for (auto a : up)
            for (auto b : down) {
              const auto& va = types_.voters[a];
              const auto& vb = types_.voters[b];
              if (va.size() < s || vb.size() < s) continue;
              plans.push_back({base_, x, y, first_voters(va, s), first_voters(vb, s)});
              if (plans.size() >= limit_) return plans;
            }
      }
    // Every equal-effect switch pair is also a compensation between its two
    // outcomes: I switches back while J switches.
    for (const auto& plan : switch_plans(1)) {
      if (plans.size() >= limit_) break;
      auto pi = coalition_switch(base_, plan.first, name(plan.x), name(plan.y));
      plans.push_back({std::move(pi), plan.x, plan.y, plan.second, plan.first});
    }
    return plans;
  }

  Profile apply_compensation(const CompensationPlan& c) const {
    auto q = coalition_switch(c.before, c.first, name(c.x), name(c.y));
    return coalition_switch(q, c.second, name(c.y), name(c.x));
  }

  void preferential_compensation() {
    for (const auto& c : compensation_plans()) {
      if (full()) return;
      push({Axiom::PreferentialCompensation, c.before, {apply_compensation(c)}, false,
            name(c.x).name + ">" + name(c.y).name + " switched by " + voters_text(c.first) + ", " + name(c.y).name +
                ">" + name(c.x).name + " switched by " + voters_text(c.second)});
    }
  }

  static std::vector<std::vector<CandidateId>> tie_orders(const std::vector<CandidateId>& tie) {
    std::vector<std::vector<CandidateId>> orders;
    auto order = tie;
    std::sort(order.begin(), order.end());
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

  void tiebreaking(Axiom axiom) {
    const bool pure = axiom == Axiom::PureTiebreakingCompensation;
    // Tie classes present in the profile, in order of first appearance.
    std::vector<std::vector<Index>> ties;
    for (const auto* r : types_.ranking)
      for (const auto& cls : r->class_indices())
        if (cls.size() > 1 && std::find(ties.begin(), ties.end(), cls) == ties.end()) ties.push_back(cls);

    for (const auto& tie : ties) {
      std::vector<std::size_t> holders;
      for (std::size_t k = 0; k < types_.ranking.size(); ++k) {
        const auto& r = *types_.ranking[k];
        if (r.class_at(r.level(tie[0])).size() == tie.size() &&
            std::all_of(tie.begin(), tie.end(), [&](Index c) { return r.level(c) == r.level(tie[0]); }))
          holders.push_back(k);
      }
      std::vector<CandidateId> tie_names;
      for (auto c : tie) tie_names.push_back(name(c));
      const CandidateSet tie_set(tie_names);
      std::vector<std::pair<VoterId, VoterId>> pairs;
      for (std::size_t a = 0; a < holders.size(); ++a) {
        const auto& va = types_.voters[holders[a]];
        if (va.size() >= 2) pairs.emplace_back(va[0], va[1]);
        if (pure) continue;
        for (std::size_t b = a + 1; b < holders.size(); ++b) pairs.emplace_back(va[0], types_.voters[holders[b]][0]);
      }
      for (const auto& [i, j] : pairs)
        for (const auto& order : tie_orders(tie_names)) {
          if (full()) return;
          push({axiom, base_, {tiebreak_pair(base_, i, j, tie_set, order)}, false,
                "tie {" + to_string(tie_set) + "} broken by " + to_string(i) + " and oppositely by " + to_string(j)});
        }
    }
    if (pure) return;

    // A compensated switch factors into two tiebreaks through the profile in
    // which both voters tie the pair.
    for (const auto& c : compensation_plans()) {
      auto step = c.before;
      for (std::size_t k = 0; k < c.first.size(); ++k) {
        if (full()) return;
        const auto& i = c.first[k];
        const auto& j = c.second[k];
        const CandidateSet pair({name(c.x), name(c.y)});
        auto merged = step.ballots();
        merged.at(i) = merge_adjacent(merged.at(i), c.x, c.y);
        merged.at(j) = merge_adjacent(merged.at(j), c.x, c.y);
        const auto q = Profile::allow_empty(step.scope(), std::move(merged));
        auto next = compensated_switch(step, i, j, name(c.x), name(c.y));
        push({axiom, q, {step}, false,
              "tie {" + to_string(pair) + "} of " + to_string(i) + "," + to_string(j) + " broken as before"});
        push({axiom, q, {next}, false,
              "tie {" + to_string(pair) + "} of " + to_string(i) + "," + to_string(j) + " broken as after"});
        step = std::move(next);
      }
    }
  }

  static Ranking merge_adjacent(const Ranking& r, Index x, Index y) {
    std::vector<std::vector<Index>> classes;
    for (std::size_t k = 0; k < r.class_count(); ++k) {
      auto span = r.class_at(k);
      const bool joins = span.size() == 1 && (span[0] == x || span[0] == y) && !classes.empty() &&
                         classes.back().size() == 1 && (classes.back()[0] == x || classes.back()[0] == y);
      if (joins)
        classes.back().push_back(span[0]);
      else
        classes.emplace_back(span.begin(), span.end());
    }
    return Ranking::from_indices(std::move(classes), r.scope());
  }

  void reversal(Axiom axiom) {
    const auto& scope = base_.scope();
    std::vector<Ranking> rankings;
    if (scope->size() <= 4) {
      rankings = axiom == Axiom::NeutralReversal ? all_linear_orders(scope) : all_weak_orders(scope);
    } else {
      rankings.push_back(Ranking::alphabetic(scope));
      for (const auto* r : types_.ranking)
        if (axiom != Axiom::NeutralReversal || r->is_linear()) rankings.push_back(*r);
      if (axiom == Axiom::NonlinearNeutralReversal)
        for (std::size_t c = 0; c < scope->size(); ++c) {
          std::vector<Index> rest;
          for (std::size_t d = 0; d < scope->size(); ++d)
            if (d != c) rest.push_back(static_cast<Index>(d));
          rankings.push_back(Ranking::from_indices({{static_cast<Index>(c)}, rest}, scope));
        }
    }
    for (const auto& r : rankings) {
      if (full()) return;
      push({axiom, base_, {add_reversal_pair(base_, r)}, false, "add reversal pair " + to_string(r)});
    }
  }

  void run(Axiom axiom) {
    switch (axiom) {
      case Axiom::PreferentialEquality: preferential_equality(1, axiom); break;
      case Axiom::CoalitionalPreferentialEquality: preferential_equality(2, axiom); break;
      case Axiom::PreferentialCompensation: preferential_compensation(); break;
      case Axiom::NeutralReversal:
      case Axiom::NonlinearNeutralReversal: reversal(axiom); break;
      case Axiom::TiebreakingCompensation:
      case Axiom::PureTiebreakingCompensation: tiebreaking(axiom); break;
      case Axiom::Homogeneity: push({axiom, base_, {double_profile(base_)}, false, "double"}); break;
      case Axiom::NeutralIndifference:
        push({axiom, base_, {add_indifferent_voter(base_)}, false, "add indifferent voter"});
        break;
      case Axiom::BlockInvariance:
        if (base_.candidates().size() <= 6) push({axiom, base_, {add_block(base_)}, false, "add block"});
        break;
      default:
        throw DomainMismatchError("axiom '" + std::string(to_string(axiom)) + "' applies to relational profiles");
    }
  }

 private:
  const Profile& base_;
  BallotTypes types_;
  std::size_t max_coalition_;
  std::size_t limit_;
  std::vector<AxiomScenario> out_;
};

std::vector<AxiomScenario> generate(const Profile& base, Axiom axiom, std::size_t max_coalition, std::size_t limit) {
  if (base.empty() || limit == 0) return {};
  Generator g(base, max_coalition, limit);
  g.run(axiom);
  return g.take();
}

}  // namespace

std::vector<AxiomScenario> scenarios_from(const Profile& base, Axiom axiom, std::size_t max_coalition) {
  return generate(base, axiom, max_coalition, std::numeric_limits<std::size_t>::max());
}

// ---------------------------------------------------------------------------
// Checking
// ---------------------------------------------------------------------------

void require_applicable(const VotingRule& rule, Axiom axiom) {
  auto mismatch = [&](std::string_view why) {
    throw DomainMismatchError("axiom '" + std::string(to_string(axiom)) + "' does not apply to rule '" + rule.name +
                              "': " + std::string(why));
  };
  if (is_relational(axiom)) mismatch("it is stated for relational ballots");
  switch (axiom) {
    case Axiom::TiebreakingCompensation:
    case Axiom::PureTiebreakingCompensation:
    case Axiom::NeutralIndifference:
      if (rule.domain == Domain::Linear) mismatch("it needs ballots with ties");
      break;
    case Axiom::NonlinearNeutralReversal:
      if (rule.domain != Domain::Swo) mismatch("it needs reversed weak orders with ties at the top");
      break;
    default: break;
  }
}

std::optional<std::vector<RuleOutput>> evaluate(const VotingRule& rule, const AxiomScenario& s) {
  std::vector<RuleOutput> outputs;
  for (const auto* p : s.compared()) {
    if (p->empty()) return std::nullopt;
    auto out = rule(*p);
    if (!out.ok() && out.failure() == RuleFailure::DomainError) return std::nullopt;
    outputs.push_back(std::move(out));
  }
  return outputs;
}

namespace {

Profile random_base(Rng& rng, Domain domain) {
  static const Scope three = make_scope(letters(3));
  static const Scope four = make_scope(letters(4));
  const auto& scope = rng.coin() ? three : four;
  const auto voters = static_cast<std::size_t>(rng.range(2, 6));
  auto p = random_profile(rng, scope, voters, domain);
  if (rng.coin()) {
    // Repeat a ballot so that same-ballot scenarios occur.
    auto ballots = p.ballots();
    const auto src = VoterId::natural(rng.below(voters));
    const auto dst = VoterId::natural(rng.below(voters));
    ballots.at(dst) = ballots.at(src);
    p = Profile::allow_empty(scope, std::move(ballots));
  }
  return p;
}

}  // namespace

AxiomReport check_axiom(const VotingRule& rule, Axiom axiom, const std::vector<Profile>& pool,
                        const CheckOptions& options) {
  require_applicable(rule, axiom);
  AxiomReport report{axiom, rule.name, options.seed, options.budget, 0, 0, 0, {}};

  std::vector<AxiomScenario> scenarios;
  auto append = [&](const Profile& base) {
    auto more = generate(base, axiom, options.max_coalition, options.budget - scenarios.size());
    for (auto& s : more) scenarios.push_back(std::move(s));
    return !more.empty();
  };
  for (const auto& p : pool) {
    if (scenarios.size() >= options.budget) break;
    if (!within(classify_domain(p), rule.domain)) continue;
    append(p);
  }
  if (options.random_fill) {
    Rng rng(options.seed);
    std::size_t barren = 0;
    while (scenarios.size() < options.budget && barren < 1000) {
      if (append(random_base(rng, rule.domain)))
        barren = 0;
      else
        ++barren;
    }
  }

  std::vector<std::optional<std::vector<RuleOutput>>> results(scenarios.size());
  detail::parallel_for(scenarios.size(), options.jobs, [&](std::size_t i) { results[i] = evaluate(rule, scenarios[i]); });

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
