#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "marginvote/core.hpp"

namespace marginvote {

/// Dense |X|×|X| integer matrix indexed by candidate position in the scope.
class PairMatrix {
 public:
  PairMatrix() = default;
  explicit PairMatrix(Scope scope) : scope_(std::move(scope)), n_(scope_->size()), cells_(n_ * n_, 0) {}

  const Scope& scope() const noexcept { return scope_; }
  const CandidateSet& candidates() const noexcept { return *scope_; }
  std::size_t dim() const noexcept { return n_; }

  std::int64_t operator()(std::size_t x, std::size_t y) const { return cells_[x * n_ + y]; }
  std::int64_t& operator()(std::size_t x, std::size_t y) { return cells_[x * n_ + y]; }
  std::int64_t at(const CandidateId& x, const CandidateId& y) const;

  const std::vector<std::int64_t>& cells() const noexcept { return cells_; }

  friend bool operator==(const PairMatrix& a, const PairMatrix& b) {
    return a.n_ == b.n_ && a.cells_ == b.cells_ && same_scope(a.scope_, b.scope_);
  }

 protected:
  Scope scope_;
  std::size_t n_ = 0;
  std::vector<std::int64_t> cells_;
};

/// #(x,y): voters ranking x strictly above y.
class SupportMatrix : public PairMatrix {
 public:
  SupportMatrix() = default;
  SupportMatrix(Scope scope, std::int64_t voters) : PairMatrix(std::move(scope)), voters_(voters) {}
  std::int64_t voters() const noexcept { return voters_; }
  void set_voters(std::int64_t n) noexcept { voters_ = n; }

  friend bool operator==(const SupportMatrix& a, const SupportMatrix& b) {
    return a.voters_ == b.voters_ && static_cast<const PairMatrix&>(a) == static_cast<const PairMatrix&>(b);
  }

 private:
  std::int64_t voters_ = 0;
};

/// Antisymmetric margin matrix M(x,y) = #(x,y) - #(y,x).
class MarginMatrix : public PairMatrix {
 public:
  MarginMatrix() = default;
  explicit MarginMatrix(Scope scope) : PairMatrix(std::move(scope)) {}
  /// Throws NotAntisymmetricError when the cells are not antisymmetric.
  static MarginMatrix from_cells(Scope scope, std::vector<std::int64_t> cells);

  /// Adds w to M(x,y) and subtracts it from M(y,x).
  void add(std::size_t x, std::size_t y, std::int64_t w) {
    (*this)(x, y) += w;
    (*this)(y, x) -= w;
  }
  bool all_even() const;
  bool is_zero() const;

  friend bool operator==(const MarginMatrix& a, const MarginMatrix& b) {
    return static_cast<const PairMatrix&>(a) == static_cast<const PairMatrix&>(b);
  }
};

struct H2HInfo {
  SupportMatrix support;
  std::int64_t voters = 0;
  friend bool operator==(const H2HInfo&, const H2HInfo&) = default;
};

struct WeightedEdge {
  CandidateId from;
  CandidateId to;
  std::int64_t weight = 0;
  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

struct WeightedDigraph {
  CandidateSet nodes;
  std::vector<WeightedEdge> edges;  // sorted by (from, to)
  friend bool operator==(const WeightedDigraph&, const WeightedDigraph&) = default;
};

SupportMatrix support(const Profile& p);
MarginMatrix margins(const Profile& p);
MarginMatrix margins_from_support(const SupportMatrix& s);
H2HInfo h2h_info(const Profile& p);

/// Adds (sign = +1) or removes (sign = -1) one ballot's contribution.
void accumulate(MarginMatrix& m, const Ranking& r, int sign = 1);
void accumulate(SupportMatrix& s, const Ranking& r, int sign = 1);

WeightedDigraph margin_graph(const Profile& p);
WeightedDigraph margin_graph(const MarginMatrix& m);
WeightedDigraph winning_votes_graph(const Profile& p);
WeightedDigraph winning_votes_graph(const SupportMatrix& s);

/// Graphviz text with nodes and edges in alphabetic order.
std::string to_dot(const WeightedDigraph& g, std::string_view name = "G");

CandidateSet smith_set(const MarginMatrix& m);
CandidateSet smith_set(const Profile& p);
std::optional<CandidateId> condorcet_winner(const MarginMatrix& m);

MarginMatrix matrix_subtract(const MarginMatrix& a, const MarginMatrix& b);
MarginMatrix matrix_add(const MarginMatrix& a, const MarginMatrix& b);
MarginMatrix matrix_scale(const MarginMatrix& a, std::int64_t k);

std::string to_string(const PairMatrix& m);

}  // namespace marginvote
