#include "marginvote/margins.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace marginvote {

std::int64_t PairMatrix::at(const CandidateId& x, const CandidateId& y) const {
  return (*this)(scope_->require_index(x), scope_->require_index(y));
}

MarginMatrix MarginMatrix::from_cells(Scope scope, std::vector<std::int64_t> cells) {
  MarginMatrix m(std::move(scope));
  if (cells.size() != m.cells_.size()) throw NotAntisymmetricError("margin matrix has the wrong number of cells");
  m.cells_ = std::move(cells);
  for (std::size_t x = 0; x < m.n_; ++x) {
    if (m(x, x) != 0) throw NotAntisymmetricError("margin matrix has a nonzero diagonal");
    for (std::size_t y = x + 1; y < m.n_; ++y)
      if (m(x, y) != -m(y, x)) throw NotAntisymmetricError("margin matrix is not antisymmetric");
  }
  return m;
}

bool MarginMatrix::all_even() const {
  return std::all_of(cells_.begin(), cells_.end(), [](std::int64_t v) { return v % 2 == 0; });
}

bool MarginMatrix::is_zero() const {
  return std::all_of(cells_.begin(), cells_.end(), [](std::int64_t v) { return v == 0; });
}

void accumulate(MarginMatrix& m, const Ranking& r, int sign) {
  const auto& cls = r.class_indices();
  for (std::size_t i = 0; i < cls.size(); ++i)
    for (std::size_t j = i + 1; j < cls.size(); ++j)
      for (auto x : cls[i])
        for (auto y : cls[j]) m.add(x, y, sign);
}

void accumulate(SupportMatrix& s, const Ranking& r, int sign) {
  const auto& cls = r.class_indices();
  for (std::size_t i = 0; i < cls.size(); ++i)
    for (std::size_t j = i + 1; j < cls.size(); ++j)
      for (auto x : cls[i])
        for (auto y : cls[j]) s(x, y) += sign;
  s.set_voters(s.voters() + sign);
}

SupportMatrix support(const Profile& p) {
  SupportMatrix s(p.scope(), 0);
  for (const auto& [v, r] : p.ballots()) accumulate(s, r);
  return s;
}

MarginMatrix margins_from_support(const SupportMatrix& s) {
  MarginMatrix m(s.scope());
  for (std::size_t x = 0; x < s.dim(); ++x)
    for (std::size_t y = 0; y < s.dim(); ++y) m(x, y) = s(x, y) - s(y, x);
  return m;
}

MarginMatrix margins(const Profile& p) {
  MarginMatrix m(p.scope());
  for (const auto& [v, r] : p.ballots()) accumulate(m, r);
  return m;
}

H2HInfo h2h_info(const Profile& p) {
  auto s = support(p);
  const auto n = s.voters();
  return H2HInfo{std::move(s), n};
}

WeightedDigraph margin_graph(const MarginMatrix& m) {
  WeightedDigraph g{m.candidates(), {}};
  for (std::size_t x = 0; x < m.dim(); ++x)
    for (std::size_t y = 0; y < m.dim(); ++y)
      if (m(x, y) > 0) g.edges.push_back({m.candidates()[x], m.candidates()[y], m(x, y)});
  return g;
}

WeightedDigraph margin_graph(const Profile& p) { return margin_graph(margins(p)); }

WeightedDigraph winning_votes_graph(const SupportMatrix& s) {
  WeightedDigraph g{s.candidates(), {}};
  for (std::size_t x = 0; x < s.dim(); ++x)
    for (std::size_t y = 0; y < s.dim(); ++y)
      if (s(x, y) > s(y, x)) g.edges.push_back({s.candidates()[x], s.candidates()[y], s(x, y)});
  return g;
}

WeightedDigraph winning_votes_graph(const Profile& p) { return winning_votes_graph(support(p)); }

namespace {

std::string dot_id(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_dot(const WeightedDigraph& g, std::string_view name) {
  std::ostringstream os;
  os << "digraph " << name << " {\n";
  for (const auto& c : g.nodes) os << "  " << dot_id(c.name) << ";\n";
  for (const auto& e : g.edges)
    os << "  " << dot_id(e.from.name) << " -> " << dot_id(e.to.name) << " [label=\"" << e.weight << "\"];\n";
  os << "}\n";
  return os.str();
}

CandidateSet smith_set(const MarginMatrix& m) {
  const auto n = m.dim();
  std::vector<std::size_t> order(n);
  std::vector<std::size_t> wins(n, 0);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (m(x, y) > 0) ++wins[x];
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return wins[a] > wins[b]; });

  // Members of a dominant set beat every outsider, so they have strictly more
  // wins than any outsider: every dominant set is a prefix of this order.
  for (std::size_t k = 1; k <= n; ++k) {
    bool dominant = true;
    for (std::size_t i = 0; i < k && dominant; ++i)
      for (std::size_t j = k; j < n; ++j)
        if (m(order[i], order[j]) <= 0) {
          dominant = false;
          break;
        }
    if (dominant) {
      std::vector<CandidateId> ids;
      for (std::size_t i = 0; i < k; ++i) ids.push_back(m.candidates()[order[i]]);
      return CandidateSet(std::move(ids));
    }
  }
  return CandidateSet{};
}

CandidateSet smith_set(const Profile& p) { return smith_set(margins(p)); }

std::optional<CandidateId> condorcet_winner(const MarginMatrix& m) {
  for (std::size_t x = 0; x < m.dim(); ++x) {
    bool wins_all = true;
    for (std::size_t y = 0; y < m.dim() && wins_all; ++y)
      if (y != x && m(x, y) <= 0) wins_all = false;
    if (wins_all) return m.candidates()[x];
  }
  return std::nullopt;
}

namespace {

void require_same_scope(const MarginMatrix& a, const MarginMatrix& b) {
  if (!same_scope(a.scope(), b.scope()))
    throw ScopeMismatchError("margin matrices over different candidates: {" + to_string(a.candidates()) + "} vs {" +
                             to_string(b.candidates()) + "}");
}

}  // namespace

MarginMatrix matrix_subtract(const MarginMatrix& a, const MarginMatrix& b) {
  require_same_scope(a, b);
  MarginMatrix out(a.scope());
  for (std::size_t x = 0; x < a.dim(); ++x)
    for (std::size_t y = 0; y < a.dim(); ++y) out(x, y) = a(x, y) - b(x, y);
  return out;
}

MarginMatrix matrix_add(const MarginMatrix& a, const MarginMatrix& b) {
  require_same_scope(a, b);
  MarginMatrix out(a.scope());
  for (std::size_t x = 0; x < a.dim(); ++x)
    for (std::size_t y = 0; y < a.dim(); ++y) out(x, y) = a(x, y) + b(x, y);
  return out;
}

MarginMatrix matrix_scale(const MarginMatrix& a, std::int64_t k) {
  MarginMatrix out(a.scope());
  for (std::size_t x = 0; x < a.dim(); ++x)
    for (std::size_t y = 0; y < a.dim(); ++y) out(x, y) = a(x, y) * k;
  return out;
}

std::string to_string(const PairMatrix& m) {
  std::ostringstream os;
  const auto& c = m.candidates();
  std::size_t width = 1;
  for (const auto& id : c) width = std::max(width, id.name.size());
  for (auto v : m.cells()) width = std::max(width, std::to_string(v).size());
  auto pad = [&](const std::string& s) { return std::string(width - s.size(), ' ') + s; };
  os << pad("");
  for (const auto& id : c) os << ' ' << pad(id.name);
  os << '\n';
  for (std::size_t x = 0; x < m.dim(); ++x) {
    os << pad(c[x].name);
    for (std::size_t y = 0; y < m.dim(); ++y) os << ' ' << pad(std::to_string(m(x, y)));
    os << '\n';
  }
  return os.str();
}

}  // namespace marginvote
