#include "ordlab/allocation.hpp"

#include "ordlab/error.hpp"

namespace ordlab {

std::string ObjectId::label() const {
  if (index < 26) return std::string(1, static_cast<char>('a' + index));
  return "o" + std::to_string(index);
}

ObjectId ObjectId::from_label(char label) {
  if (label < 'a' || label > 'z') throw Error(ErrorCode::ParseError, std::string("bad object label '") + label + "'");
  return ObjectId{static_cast<std::size_t>(label - 'a')};
}

Economy Economy::make(std::size_t n) {
  if (n < 3) throw Error(ErrorCode::InvalidEconomy, "an economy needs at least three objects, got " + std::to_string(n));
  return Economy(n);
}

Lottery Lottery::make(std::vector<Rational> probs) {
  if (probs.empty()) throw Error(ErrorCode::DimensionMismatch, "empty lottery");
  Rational total;
  for (std::size_t a = 0; a < probs.size(); ++a) {
    if (probs[a].sign() < 0) {
      throw Error(ErrorCode::NegativeEntry, "lottery entry " + std::to_string(a) + " is " + probs[a].str());
    }
    total += probs[a];
  }
  if (total != 1) throw Error(ErrorCode::SumNotOne, "lottery sums to " + total.str());
  return Lottery(std::move(probs));
}

Lottery Lottery::degenerate(std::size_t m, ObjectId object) {
  if (object.index >= m) throw Error(ErrorCode::DimensionMismatch, "object out of range");
  std::vector<Rational> probs(m);
  probs[object.index] = 1;
  return Lottery(std::move(probs));
}

Lottery Lottery::uniform(std::size_t m) {
  if (m == 0) throw Error(ErrorCode::DimensionMismatch, "empty lottery");
  return Lottery(std::vector<Rational>(m, Rational(1, static_cast<long>(m))));
}

Lottery mix(const Rational& alpha, const Lottery& p, const Lottery& q) {
  if (p.size() != q.size()) throw Error(ErrorCode::DimensionMismatch, "mixing lotteries of different sizes");
  if (alpha.sign() < 0 || alpha > 1) throw Error(ErrorCode::AlphaOutOfRange, alpha.str());
  const Rational beta = Rational(1) - alpha;
  std::vector<Rational> probs(p.size());
  for (std::size_t a = 0; a < p.size(); ++a) probs[a] = alpha * p[a] + beta * q[a];
  return Lottery(std::move(probs));
}

Allocation Allocation::make(const std::vector<std::vector<Rational>>& grid) {
  const std::size_t n = grid.size();
  if (n == 0) throw Error(ErrorCode::DimensionMismatch, "empty allocation");
  AllocationBuilder builder(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (grid[i].size() != n) {
      throw Error(ErrorCode::DimensionMismatch, "row " + std::to_string(i) + " has " + std::to_string(grid[i].size()) +
                                                    " entries, expected " + std::to_string(n));
    }
    for (std::size_t a = 0; a < n; ++a) builder.add(i, a, grid[i][a]);
  }
  return std::move(builder).finish();
}

Allocation Allocation::identity(std::size_t n) {
  std::vector<std::size_t> id(n);
  for (std::size_t i = 0; i < n; ++i) id[i] = i;
  return from_assignment(id);
}

Allocation Allocation::uniform(std::size_t n) {
  return Allocation(n, std::vector<Rational>(n * n, Rational(1, static_cast<long>(n))));
}

Allocation Allocation::from_assignment(std::span<const std::size_t> assignment) {
  AllocationBuilder builder(assignment.size());
  builder.add_assignment(assignment, Rational(1));
  return std::move(builder).finish();
}

Lottery Allocation::row(AgentId i) const {
  const auto r = row_span(i.index);
  return Lottery(std::vector<Rational>(r.begin(), r.end()));
}

std::vector<std::vector<Rational>> Allocation::to_grid() const {
  std::vector<std::vector<Rational>> grid(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    const auto r = row_span(i);
    grid[i].assign(r.begin(), r.end());
  }
  return grid;
}

Allocation convex_combination(const Rational& alpha, const Allocation& x, const Allocation& y) {
  if (x.size() != y.size()) throw Error(ErrorCode::DimensionMismatch, "allocations of different sizes");
  if (alpha.sign() < 0 || alpha > 1) throw Error(ErrorCode::AlphaOutOfRange, alpha.str());
  const Rational beta = Rational(1) - alpha;
  std::vector<Rational> entries(x.entries_.size());
  for (std::size_t k = 0; k < entries.size(); ++k) entries[k] = alpha * x.entries_[k] + beta * y.entries_[k];
  return Allocation(x.size(), std::move(entries));
}

Rational max_entry_distance(const Allocation& x, const Allocation& y) {
  if (x.size() != y.size()) throw Error(ErrorCode::DimensionMismatch, "allocations of different sizes");
  Rational best;
  const auto ex = x.entries();
  const auto ey = y.entries();
  for (std::size_t k = 0; k < ex.size(); ++k) {
    Rational d = (ex[k] - ey[k]).abs();
    if (d > best) best = std::move(d);
  }
  return best;
}

void AllocationBuilder::add_assignment(std::span<const std::size_t> assignment, const Rational& weight) {
  if (assignment.size() != n_) throw Error(ErrorCode::DimensionMismatch, "assignment size mismatch");
  for (std::size_t i = 0; i < n_; ++i) {
    if (assignment[i] >= n_) throw Error(ErrorCode::NotAPermutation, "object index out of range");
    entries_[i * n_ + assignment[i]] += weight;
  }
}

void AllocationBuilder::scale(const Rational& factor) {
  for (auto& e : entries_) e *= factor;
}

Allocation AllocationBuilder::finish() && {
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    if (entries_[k].sign() < 0) {
      throw Error(ErrorCode::NegativeEntry, "entry (" + std::to_string(k / n_) + "," + std::to_string(k % n_) +
                                                ") is " + entries_[k].str());
    }
  }
  for (std::size_t i = 0; i < n_; ++i) {
    Rational total;
    for (std::size_t a = 0; a < n_; ++a) total += entries_[i * n_ + a];
    if (total != 1) throw Error(ErrorCode::RowSumNotOne, "row " + std::to_string(i) + " sums to " + total.str());
  }
  for (std::size_t a = 0; a < n_; ++a) {
    Rational total;
    for (std::size_t i = 0; i < n_; ++i) total += entries_[i * n_ + a];
    if (total != 1) {
      throw Error(ErrorCode::ColumnSumNotOne, "column " + std::to_string(a) + " sums to " + total.str());
    }
  }
  return Allocation(n_, std::move(entries_));
}

std::optional<std::pair<std::size_t, std::size_t>> find_tie(std::span<const Rational> values) {
  for (std::size_t x = 0; x < values.size(); ++x) {
    for (std::size_t y = x + 1; y < values.size(); ++y) {
      if (values[x] == values[y]) return std::pair{x, y};
    }
  }
  return std::nullopt;
}

BernoulliUtility BernoulliUtility::make(std::vector<Rational> values) {
  if (values.empty()) throw Error(ErrorCode::DimensionMismatch, "empty utility");
  if (const auto tie = find_tie(values)) {
    throw Error(ErrorCode::TiesPresent, "objects " + ObjectId{tie->first}.label() + " and " +
                                            ObjectId{tie->second}.label() + " share value " +
                                            values[tie->first].str());
  }
  return BernoulliUtility(std::move(values));
}

Lottery make_lottery(std::vector<Rational> probs) { return Lottery::make(std::move(probs)); }

Allocation make_allocation(const std::vector<std::vector<Rational>>& grid) { return Allocation::make(grid); }

Rational expected_utility(std::span<const Rational> utility, std::span<const Rational> lottery) {
  if (utility.size() != lottery.size()) {
    throw Error(ErrorCode::DimensionMismatch, "utility over " + std::to_string(utility.size()) +
                                                  " objects, lottery over " + std::to_string(lottery.size()));
  }
  mpq_class total;
  for (std::size_t a = 0; a < utility.size(); ++a) {
    if (!lottery[a].is_zero()) total += utility[a].raw() * lottery[a].raw();
  }
  return Rational::from_mpq(std::move(total));
}

Rational expected_utility(const BernoulliUtility& u, const Lottery& lot) {
  return expected_utility(u.values(), lot.probs());
}

std::vector<ObjectId> support(const Lottery& lot) {
  std::vector<ObjectId> out;
  for (std::size_t a = 0; a < lot.size(); ++a) {
    if (lot[a].sign() > 0) out.push_back(ObjectId{a});
  }
  return out;
}

bool in_segment(const Lottery& lot, ObjectId x, ObjectId y, SegmentKind kind) {
  if (x == y) throw Error(ErrorCode::SameObject, "segment endpoints coincide at " + x.label());
  if (x.index >= lot.size() || y.index >= lot.size()) throw Error(ErrorCode::DimensionMismatch, "object out of range");
  if (lot[x] + lot[y] != 1) return false;
  switch (kind) {
    case SegmentKind::Closed: return true;
    case SegmentKind::HalfOpenX: return lot[x].sign() > 0;
    case SegmentKind::Open: return lot[x].sign() > 0 && lot[y].sign() > 0;
  }
  return false;
}

}  // namespace ordlab
