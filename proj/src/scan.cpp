#include <cstdio>
#include <sstream>

#include "marginvote/data.hpp"
#include "parallel.hpp"

namespace marginvote {

namespace {

SupportMatrix tally_support(const BallotTally& t) {
  SupportMatrix s(t.scope, t.voters());
  const auto n = t.scope->size();
  for (const auto& [r, count] : t.groups)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (r.prefers(static_cast<Ranking::Index>(x), static_cast<Ranking::Index>(y))) s(x, y) += count;
  return s;
}

std::string braces(const CandidateSet& s) { return "{" + to_string(s) + "}"; }

ElectionScan start(const ScanInput& in) {
  ElectionScan e;
  e.name = in.name;
  if (!in.election) {
    e.reason = in.error.empty() ? "unreadable" : in.error;
    return e;
  }
  e.voters = in.election->voter_count();
  e.candidates = in.election->candidate_names.size();
  if (e.voters == 0) e.reason = "no voters";
  if (e.candidates == 0) e.reason = "no candidates";
  return e;
}

ElectionScan minimax_one(const ScanInput& in) {
  auto e = start(in);
  if (!e.reason.empty()) return e;
  const auto t = to_tally(*in.election);
  const auto s = tally_support(t);
  const auto m = margins_from_support(s);
  if (const auto cw = condorcet_winner(m)) {
    e.status = ScanStatus::Excluded;
    e.reason = "condorcet winner " + cw->name;
    return e;
  }
  const auto mm = minimax_margins(m);
  const auto wv = minimax_winning_votes(s);
  e.status = mm == wv ? ScanStatus::Miss : ScanStatus::Hit;
  e.detail = "minimax-margins " + braces(mm) + ", minimax-wv " + braces(wv);
  return e;
}

/// `count` voters of group `k` swap x and y, which they rank adjacently.
BallotTally switched(const BallotTally& t, std::size_t k, std::int64_t count, const CandidateId& x,
                     const CandidateId& y) {
  auto out = t;
  out.groups[k].second -= count;
  out.groups.emplace_back(flip_adjacent(t.groups[k].first, x, y), count);
  return out;
}

std::string coalition(std::int64_t s, const Ranking& r) {
  return std::to_string(s) + " voter" + (s == 1 ? "" : "s") + " casting " + to_string(r);
}

void search_irv(ElectionScan& e, const BallotTally& t, std::size_t budget) {
  const auto base = irv(t);
  const auto& cands = *t.scope;
  const auto n = static_cast<Ranking::Index>(cands.size());
  bool pev = false;
  for (Ranking::Index x = 0; x < n; ++x)
    for (Ranking::Index y = 0; y < n; ++y) {
      if (x == y) continue;
      std::vector<std::size_t> up, down;
      for (std::size_t k = 0; k < t.groups.size(); ++k) {
        if (t.groups[k].second == 0) continue;
        if (t.groups[k].first.immediately_above(x, y)) up.push_back(k);
        if (t.groups[k].first.immediately_above(y, x)) down.push_back(k);
      }
      for (std::size_t s = 1; s <= budget; ++s) {
        const auto size = static_cast<std::int64_t>(s);
        for (std::size_t a = 0; a < up.size() && !pev; ++a) {
          if (t.groups[up[a]].second < size) continue;
          const auto oa = irv(switched(t, up[a], size, cands[x], cands[y]));
          if (!oa.ok()) continue;
          for (std::size_t b = a + 1; b < up.size(); ++b) {
            if (t.groups[up[b]].second < size) continue;
            const auto ob = irv(switched(t, up[b], size, cands[x], cands[y]));
            if (!ob.ok() || oa == ob) continue;
            pev = true;
            e.detail = cands[x].name + ">" + cands[y].name + " switched by " + coalition(size, t.groups[up[a]].first) +
                       " gives " + braces(oa.winners()) + ", by " + coalition(size, t.groups[up[b]].first) +
                       " gives " + braces(ob.winners());
            break;
          }
        }
        // Compensation: each pair is considered once, with x before y.
        if (e.pcv || x > y || !base.ok()) continue;
        for (auto a : up) {
          if (e.pcv || t.groups[a].second < size) continue;
          for (auto b : down) {
            if (t.groups[b].second < size) continue;
            auto q = switched(t, a, size, cands[x], cands[y]);
            q = switched(q, b, size, cands[y], cands[x]);
            const auto out = irv(q);
            if (!out.ok() || out == base) continue;
            e.pcv = true;
            e.pcv_detail = coalition(size, t.groups[a].first) + " and " + coalition(size, t.groups[b].first) +
                           " swap " + cands[x].name + "," + cands[y].name + ": " + braces(base.winners()) + " becomes " +
                           braces(out.winners());
            break;
          }
        }
      }
    }
  e.status = pev ? ScanStatus::Hit : ScanStatus::Miss;
  if (!pev) e.detail = "irv " + (base.ok() ? braces(base.winners()) : to_string(base)) + ", no switch witness within budget";
}

ElectionScan irv_one(const ScanInput& in, std::size_t budget) {
  auto e = start(in);
  if (!e.reason.empty()) return e;
  if (in.election->has_ties()) {
    e.reason = "ballot with a tie";
    return e;
  }
  const auto full = to_tally(*in.election);
  if (irv_rounds(full).tied) {
    e.reason = "tie during elimination";
    return e;
  }
  const auto t = top_three_restriction(full);
  e.candidates = t.scope->size();
  if (irv_rounds(t).tied) {
    e.reason = "tie during elimination after restriction";
    return e;
  }
  if (const auto amw = absolute_majority_winner(t)) {
    e.status = ScanStatus::Excluded;
    e.reason = "absolute majority winner " + amw->name;
    return e;
  }
  search_irv(e, t, budget);
  return e;
}

template <class F>
std::vector<ElectionScan> scan_all(const std::vector<ScanInput>& inputs, unsigned jobs, F one) {
  std::vector<ElectionScan> out(inputs.size());
  detail::parallel_for(inputs.size(), jobs, [&](std::size_t i) {
    try {
      out[i] = one(inputs[i]);
    } catch (const Error& err) {
      out[i] = start(inputs[i]);
      out[i].status = ScanStatus::Skipped;
      out[i].reason = err.what();
    }
  });
  return out;
}

void summarize(ScanReport& r) {
  r.profiles = r.elections.size();
  std::int64_t voters = 0;
  for (const auto& e : r.elections) {
    if (e.status == ScanStatus::Skipped) continue;
    ++r.relevant;
    voters += e.voters;
    if (e.status == ScanStatus::Excluded) continue;
    ++r.denominator;
    if (e.status == ScanStatus::Hit) ++r.hits;
    if (e.pcv) ++r.pcv_hits;
  }
  if (r.relevant) r.average_voters = static_cast<double>(voters) / static_cast<double>(r.relevant);
  if (r.denominator) {
    r.frequency = static_cast<double>(r.hits) / static_cast<double>(r.denominator);
    r.pcv_frequency = static_cast<double>(r.pcv_hits) / static_cast<double>(r.denominator);
  }
}

}  // namespace

ScanReport scan_minimax_divergence(const std::vector<ScanInput>& inputs, unsigned jobs, std::string dataset) {
  ScanReport r;
  r.kind = "minimax";
  r.dataset = std::move(dataset);
  r.elections = scan_all(inputs, jobs, minimax_one);
  summarize(r);
  return r;
}

ScanReport scan_irv_violations(const std::vector<ScanInput>& inputs, std::size_t budget, unsigned jobs,
                               std::string dataset) {
  ScanReport r;
  r.kind = "irv";
  r.dataset = std::move(dataset);
  r.budget = budget;
  r.elections = scan_all(inputs, jobs, [budget](const ScanInput& in) { return irv_one(in, budget); });
  summarize(r);
  return r;
}

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string table(const std::vector<std::vector<std::string>>& rows, bool text_last) {
  std::vector<std::size_t> width;
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (width.size() <= c) width.push_back(0);
      width[c] = std::max(width[c], row[c].size());
    }
  std::ostringstream out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      const auto pad = std::string(width[c] - row[c].size(), ' ');
      const bool left = c == 0 || (text_last && c + 1 == row.size());
      line += (c == 0 ? "" : "  ") + (left ? row[c] + (c + 1 == row.size() ? "" : pad) : pad + row[c]);
    }
    out << line << '\n';
  }
  return out.str();
}

}  // namespace

std::string to_table(const ScanReport& r) {
  const auto name = r.dataset.empty() ? std::string("(inputs)") : r.dataset;
  std::vector<std::vector<std::string>> summary;
  if (r.kind == "minimax") {
    summary = {{"Dataset", "Profiles", "No CW", "Avg voters", "Different winners | no CW"},
               {name, std::to_string(r.relevant), std::to_string(r.denominator), fixed(r.average_voters, 2),
                fixed(r.frequency, 2)}};
  } else {
    summary = {{"Dataset", "Relevant", "Relevant, no AMW", "PEV | no AMW (>=)", "PCV | no AMW (>=)"},
               {name, std::to_string(r.relevant), std::to_string(r.denominator), fixed(r.frequency, 2),
                fixed(r.pcv_frequency, 2)}};
  }
  std::vector<std::vector<std::string>> details{{"Election", "Voters", "Status", "Detail"}};
  for (const auto& e : r.elections) {
    auto detail = e.status == ScanStatus::Excluded || e.status == ScanStatus::Skipped ? e.reason : e.detail;
    if (e.pcv) detail += (detail.empty() ? "" : "; ") + std::string("pcv: ") + e.pcv_detail;
    details.push_back({e.name, std::to_string(e.voters), std::string(to_string(e.status)), detail});
  }
  return table(summary, false) + '\n' + table(details, true);
}

}  // namespace marginvote
