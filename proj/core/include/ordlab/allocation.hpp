#pragma once

// Value types of the random-assignment model: objects, agents, lotteries,
// bistochastic allocations and Bernoulli utilities. All arithmetic is exact.

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ordlab/rational.hpp"

namespace ordlab {

struct ObjectId {
  std::size_t index = 0;

  /// 'a', 'b', 'c', ... for the first 26 objects.
  std::string label() const;
  static ObjectId from_label(char label);

  friend auto operator<=>(const ObjectId&, const ObjectId&) = default;
};

struct AgentId {
  std::size_t index = 0;

  friend auto operator<=>(const AgentId&, const AgentId&) = default;
};

/// A square economy: as many objects as agents, at least three of each.
class Economy {
 public:
  static Economy make(std::size_t n = 3);

  std::size_t agents() const { return n_; }
  std::size_t objects() const { return n_; }

  friend bool operator==(const Economy&, const Economy&) = default;

 private:
  explicit Economy(std::size_t n) : n_(n) {}
  std::size_t n_;
};

/// A probability vector over objects (a point of the simplex).
class Lottery {
 public:
  /// Throws NegativeEntry or SumNotOne.
  static Lottery make(std::vector<Rational> probs);
  static Lottery degenerate(std::size_t m, ObjectId object);
  static Lottery uniform(std::size_t m);

  std::size_t size() const { return probs_.size(); }
  const Rational& operator[](std::size_t a) const { return probs_[a]; }
  const Rational& operator[](ObjectId a) const { return probs_[a.index]; }
  std::span<const Rational> probs() const { return probs_; }

  friend bool operator==(const Lottery&, const Lottery&) = default;

 private:
  friend class Allocation;
  friend Lottery mix(const Rational&, const Lottery&, const Lottery&);
  explicit Lottery(std::vector<Rational> probs) : probs_(std::move(probs)) {}

  std::vector<Rational> probs_;
};

/// alpha * p + (1 - alpha) * q, alpha in [0, 1].
Lottery mix(const Rational& alpha, const Lottery& p, const Lottery& q);

/// Bistochastic n x n matrix; entry (i, a) is the probability agent i gets object a.
class Allocation {
 public:
  /// Throws DimensionMismatch, NegativeEntry, RowSumNotOne or ColumnSumNotOne.
  static Allocation make(const std::vector<std::vector<Rational>>& grid);
  static Allocation identity(std::size_t n);
  static Allocation uniform(std::size_t n);
  /// assignment[i] is the object given to agent i.
  static Allocation from_assignment(std::span<const std::size_t> assignment);

  std::size_t size() const { return n_; }
  const Rational& at(std::size_t agent, std::size_t object) const { return entries_[agent * n_ + object]; }
  const Rational& at(AgentId i, ObjectId a) const { return at(i.index, a.index); }
  std::span<const Rational> row_span(std::size_t agent) const {
    return std::span<const Rational>(entries_).subspan(agent * n_, n_);
  }
  Lottery row(AgentId i) const;
  Lottery row(std::size_t agent) const { return row(AgentId{agent}); }
  /// Row-major entries.
  std::span<const Rational> entries() const { return entries_; }
  std::vector<std::vector<Rational>> to_grid() const;

  friend bool operator==(const Allocation&, const Allocation&) = default;

 private:
  friend Allocation convex_combination(const Rational&, const Allocation&, const Allocation&);
  friend class AllocationBuilder;
  Allocation(std::size_t n, std::vector<Rational> entries) : n_(n), entries_(std::move(entries)) {}

  std::size_t n_ = 0;
  std::vector<Rational> entries_;
};

/// alpha * x + (1 - alpha) * y; bistochastic whenever alpha is in [0, 1].
Allocation convex_combination(const Rational& alpha, const Allocation& x, const Allocation& y);

/// Maximum absolute entry difference.
Rational max_entry_distance(const Allocation& x, const Allocation& y);

/// Accumulates a weighted sum of matrices and validates it on finish().
class AllocationBuilder {
 public:
  explicit AllocationBuilder(std::size_t n) : n_(n), entries_(n * n) {}

  void add(std::size_t agent, std::size_t object, const Rational& amount) { entries_[agent * n_ + object] += amount; }
  void add_assignment(std::span<const std::size_t> assignment, const Rational& weight);
  void scale(const Rational& factor);

  /// Validates bistochasticity exactly.
  Allocation finish() &&;

 private:
  std::size_t n_;
  std::vector<Rational> entries_;
};

/// Utility over degenerate lotteries, no two objects valued equally.
class BernoulliUtility {
 public:
  /// Throws TiesPresent.
  static BernoulliUtility make(std::vector<Rational> values);

  std::size_t size() const { return values_.size(); }
  const Rational& operator[](std::size_t a) const { return values_[a]; }
  const Rational& operator[](ObjectId a) const { return values_[a.index]; }
  std::span<const Rational> values() const { return values_; }

  friend bool operator==(const BernoulliUtility&, const BernoulliUtility&) = default;

 private:
  explicit BernoulliUtility(std::vector<Rational> values) : values_(std::move(values)) {}
  std::vector<Rational> values_;
};

using UtilityProfile = std::vector<BernoulliUtility>;

/// First pair of positions (lexicographic) holding equal values, if any.
std::optional<std::pair<std::size_t, std::size_t>> find_tie(std::span<const Rational> values);

Lottery make_lottery(std::vector<Rational> probs);
Allocation make_allocation(const std::vector<std::vector<Rational>>& grid);

/// sum_a u(a) * lot(a). Throws DimensionMismatch.
Rational expected_utility(const BernoulliUtility& u, const Lottery& lot);
Rational expected_utility(std::span<const Rational> utility, std::span<const Rational> lottery);

/// Objects with strictly positive probability, in index order.
std::vector<ObjectId> support(const Lottery& lot);

enum class SegmentKind {
  Closed,      // [x, y]
  HalfOpenX,   // (x, y]: additionally lot_x > 0
  Open,        // (x, y): both endpoints positive
};

/// Membership in the segment between degenerate lotteries x and y. Throws SameObject.
bool in_segment(const Lottery& lot, ObjectId x, ObjectId y, SegmentKind kind);

}  // namespace ordlab
