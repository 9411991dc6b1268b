#include "marginvote/random.hpp"

#include <algorithm>
#include <numeric>

namespace marginvote {

CandidateSet letters(std::size_t n) {
  std::vector<CandidateId> ids;
  for (std::size_t i = 0; i < n; ++i)
    ids.emplace_back(i < 26 ? std::string(1, static_cast<char>('a' + i)) : "c" + std::to_string(i));
  return CandidateSet(std::move(ids));
}

Ranking random_linear(Rng& rng, const Scope& scope) {
  std::vector<Ranking::Index> order(scope->size());
  std::iota(order.begin(), order.end(), Ranking::Index{0});
  rng.shuffle(order);
  std::vector<std::vector<Ranking::Index>> classes;
  for (auto c : order) classes.push_back({c});
  return Ranking::from_indices(std::move(classes), scope);
}

Ranking random_ranking(Rng& rng, const Scope& scope, Domain domain) {
  std::vector<Ranking::Index> order(scope->size());
  std::iota(order.begin(), order.end(), Ranking::Index{0});
  rng.shuffle(order);
  std::vector<std::vector<Ranking::Index>> classes;
  if (domain == Domain::Linear || order.size() < 2 || rng.coin()) {
    for (auto c : order) classes.push_back({c});
  } else if (domain == Domain::Lobi) {
    const auto ranked = rng.below(order.size() - 1);  // leaves at least two tied at the bottom
    for (std::size_t i = 0; i < ranked; ++i) classes.push_back({order[i]});
    classes.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(ranked), order.end());
  } else {
    classes.push_back({order[0]});
    for (std::size_t i = 1; i < order.size(); ++i) {
      if (rng.below(3) == 0)
        classes.back().push_back(order[i]);
      else
        classes.push_back({order[i]});
    }
  }
  return Ranking::from_indices(std::move(classes), scope);
}

Profile random_profile(Rng& rng, const Scope& scope, std::size_t voters, Domain domain) {
  Profile::Ballots ballots;
  for (std::size_t v = 0; v < voters; ++v) ballots.emplace(VoterId::natural(v), random_ranking(rng, scope, domain));
  return Profile::allow_empty(scope, std::move(ballots));
}

std::vector<Ranking> all_linear_orders(const Scope& scope) {
  std::vector<Ranking::Index> order(scope->size());
  std::iota(order.begin(), order.end(), Ranking::Index{0});
  std::vector<Ranking> out;
  do {
    std::vector<std::vector<Ranking::Index>> classes;
    for (auto c : order) classes.push_back({c});
    out.push_back(Ranking::from_indices(std::move(classes), scope));
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

namespace {

void weak_orders_from(const Scope& scope, std::vector<Ranking::Index> rest,
                      std::vector<std::vector<Ranking::Index>>& prefix, std::vector<Ranking>& out) {
  if (rest.empty()) {
    out.push_back(Ranking::from_indices(prefix, scope));
    return;
  }
  // Choose the next class as any nonempty subset of the remaining candidates.
  const std::size_t n = rest.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<Ranking::Index> cls, left;
    for (std::size_t i = 0; i < n; ++i) ((mask >> i) & 1 ? cls : left).push_back(rest[i]);
    prefix.push_back(std::move(cls));
    weak_orders_from(scope, std::move(left), prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<Ranking> all_weak_orders(const Scope& scope) {
  std::vector<Ranking::Index> all(scope->size());
  std::iota(all.begin(), all.end(), Ranking::Index{0});
  std::vector<std::vector<Ranking::Index>> prefix;
  std::vector<Ranking> out;
  weak_orders_from(scope, std::move(all), prefix, out);
  return out;
}

}  // namespace marginvote
