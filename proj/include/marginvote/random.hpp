#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "marginvote/core.hpp"

namespace marginvote {

/// Seeded generator with platform-independent bounded draws. The standard
/// distributions are implementation-defined, so they are not used here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    for (;;) {
      const auto v = engine_();
      if (v < limit) return v % n;
    }
  }

  /// Uniform in [lo, hi].
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  bool coin() { return (engine_() >> 63) != 0; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

/// Candidates named a, b, c, ... (then c26, c27, ... past z).
CandidateSet letters(std::size_t n);

Ranking random_linear(Rng& rng, const Scope& scope);
/// A random ranking inside `domain`; ties are drawn with probability about 1/2.
Ranking random_ranking(Rng& rng, const Scope& scope, Domain domain);
Profile random_profile(Rng& rng, const Scope& scope, std::size_t voters, Domain domain);

/// All linear orders of the scope, in lexicographic order of candidate index.
std::vector<Ranking> all_linear_orders(const Scope& scope);
/// All strict weak orders of the scope (ordered set partitions).
std::vector<Ranking> all_weak_orders(const Scope& scope);

}  // namespace marginvote
