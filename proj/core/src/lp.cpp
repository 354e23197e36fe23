#include "ordlab/lp.hpp"

#include <sstream>
#include <stdexcept>

#include "ordlab/error.hpp"

namespace ordlab {

namespace {

using Row = std::vector<mpq_class>;

// Dense tableau for  A x = b, x >= 0, b >= 0  with one artificial column per
// row. Objectives are a stack of rows compared lexicographically, which is
// the same as a single objective over an ordered extension field; Bland's
// rule therefore still terminates.
class Tableau {
 public:
  Tableau(std::vector<Row> rows, std::vector<mpq_class> rhs, std::size_t structural)
      : structural_(structural), rows_count_(rows.size()), width_(structural + rows.size() + 1) {
    rows_.resize(rows_count_);
    basis_.resize(rows_count_);
    active_.assign(rows_count_, true);
    for (std::size_t i = 0; i < rows_count_; ++i) {
      rows_[i].assign(width_, mpq_class(0));
      for (std::size_t j = 0; j < structural_; ++j) rows_[i][j] = rows[i][j];
      rows_[i][structural_ + i] = 1;
      rows_[i][width_ - 1] = rhs[i];
      basis_[i] = structural_ + i;
    }
  }

  /// Returns false when the constraints are infeasible.
  bool phase_one() {
    Row cost(width_, mpq_class(0));
    for (std::size_t i = 0; i < rows_count_; ++i) cost[structural_ + i] = -1;
    set_objectives({cost});
    run(width_ - 1);
    if (sgn(objective_value(0)) < 0) return false;
    // Drive zero-level artificials out of the basis; rows where that is
    // impossible are linearly dependent on the others.
    for (std::size_t i = 0; i < rows_count_; ++i) {
      if (basis_[i] < structural_) continue;
      std::size_t entering = structural_;
      for (std::size_t j = 0; j < structural_; ++j) {
        if (sgn(rows_[i][j]) != 0) {
          entering = j;
          break;
        }
      }
      if (entering == structural_) {
        active_[i] = false;
      } else {
        pivot(i, entering);
      }
    }
    return true;
  }

  void phase_two(const std::vector<Row>& costs) {
    set_objectives(costs);
    run(structural_);
  }

  std::vector<mpq_class> solution() const {
    std::vector<mpq_class> x(structural_, mpq_class(0));
    for (std::size_t i = 0; i < rows_count_; ++i) {
      if (active_[i] && basis_[i] < structural_) x[basis_[i]] = rows_[i][width_ - 1];
    }
    return x;
  }

 private:
  mpq_class objective_value(std::size_t k) const { return -objectives_[k][width_ - 1]; }

  // Reduced-cost rows d = c - c_B B^{-1} A and -z in the last column.
  void set_objectives(const std::vector<Row>& costs) {
    objectives_.clear();
    for (const Row& c : costs) {
      Row d(width_, mpq_class(0));
      for (std::size_t j = 0; j < c.size(); ++j) d[j] = c[j];
      for (std::size_t i = 0; i < rows_count_; ++i) {
        if (!active_[i]) continue;
        const mpq_class cb = basis_[i] < c.size() ? c[basis_[i]] : mpq_class(0);
        if (sgn(cb) == 0) continue;
        for (std::size_t j = 0; j < width_; ++j) {
          if (sgn(rows_[i][j]) != 0) d[j] -= cb * rows_[i][j];
        }
      }
      objectives_.push_back(std::move(d));
    }
  }

  int lex_sign(std::size_t column) const {
    for (const Row& d : objectives_) {
      const int s = sgn(d[column]);
      if (s != 0) return s;
    }
    return 0;
  }

  // Iterates Bland's rule over columns [0, limit).
  void run(std::size_t limit) {
    for (;;) {
      std::size_t entering = limit;
      for (std::size_t j = 0; j < limit; ++j) {
        if (lex_sign(j) > 0) {
          entering = j;
          break;
        }
      }
      if (entering == limit) return;

      std::size_t leaving = rows_count_;
      mpq_class best_ratio;
      for (std::size_t i = 0; i < rows_count_; ++i) {
        if (!active_[i] || sgn(rows_[i][entering]) <= 0) continue;
        mpq_class ratio = rows_[i][width_ - 1] / rows_[i][entering];
        if (leaving == rows_count_ || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[leaving])) {
          leaving = i;
          best_ratio = std::move(ratio);
        }
      }
      if (leaving == rows_count_) throw std::logic_error("simplex: unbounded direction on a compact polytope");
      pivot(leaving, entering);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    Row& pr = rows_[r];
    const mpq_class inv = 1 / pr[c];
    std::vector<std::size_t> nonzero;
    for (std::size_t j = 0; j < width_; ++j) {
      if (sgn(pr[j]) != 0) {
        pr[j] *= inv;
        nonzero.push_back(j);
      }
    }
    auto eliminate = [&](Row& row) {
      if (sgn(row[c]) == 0) return;
      const mpq_class f = row[c];
      for (const std::size_t j : nonzero) row[j] -= f * pr[j];
    };
    for (std::size_t i = 0; i < rows_count_; ++i) {
      if (i != r) eliminate(rows_[i]);
    }
    for (Row& d : objectives_) eliminate(d);
    basis_[r] = c;
  }

  std::size_t structural_;
  std::size_t rows_count_;
  std::size_t width_;
  std::vector<Row> rows_;
  std::vector<std::size_t> basis_;
  std::vector<bool> active_;
  std::vector<Row> objectives_;
};

void validate(const LinearProgram& lp) {
  if (lp.n == 0) throw Error(ErrorCode::MalformedProgram, "empty program");
  if (lp.objective.size() != lp.n * lp.n) {
    throw Error(ErrorCode::MalformedProgram, "objective has " + std::to_string(lp.objective.size()) +
                                                 " coefficients, expected " + std::to_string(lp.n * lp.n));
  }
  for (const auto& f : lp.floors) {
    if (f.agent.index >= lp.n || f.utility.size() != lp.n) {
      throw Error(ErrorCode::MalformedProgram, "utility floor does not match the economy");
    }
  }
}

}  // namespace

LinearProgram LinearProgram::welfare(const UtilityProfile& profile) {
  LinearProgram lp;
  lp.n = profile.size();
  lp.objective.reserve(lp.n * lp.n);
  for (const auto& u : profile) {
    if (u.size() != lp.n) throw Error(ErrorCode::MalformedProgram, "profile is not square");
    for (const auto& v : u.values()) lp.objective.push_back(v);
  }
  return lp;
}

LpResult maximize(const LinearProgram& lp) {
  validate(lp);
  const std::size_t n = lp.n;
  const std::size_t cells = n * n;
  const std::size_t structural = cells + lp.floors.size();

  std::vector<Row> rows;
  std::vector<mpq_class> rhs;
  for (std::size_t i = 0; i < n; ++i) {
    Row row(structural, mpq_class(0));
    for (std::size_t a = 0; a < n; ++a) row[i * n + a] = 1;
    rows.push_back(std::move(row));
    rhs.emplace_back(1);
  }
  for (std::size_t a = 0; a < n; ++a) {
    Row row(structural, mpq_class(0));
    for (std::size_t i = 0; i < n; ++i) row[i * n + a] = 1;
    rows.push_back(std::move(row));
    rhs.emplace_back(1);
  }
  for (std::size_t k = 0; k < lp.floors.size(); ++k) {
    const auto& f = lp.floors[k];
    Row row(structural, mpq_class(0));
    for (std::size_t a = 0; a < n; ++a) row[f.agent.index * n + a] = f.utility[a].raw();
    row[cells + k] = -1;  // surplus
    mpq_class b = f.bound.raw();
    if (sgn(b) < 0) {
      for (auto& x : row) x = -x;
      b = -b;
    }
    rows.push_back(std::move(row));
    rhs.push_back(std::move(b));
  }

  Tableau tableau(std::move(rows), std::move(rhs), structural);
  LpResult result;
  if (!tableau.phase_one()) {
    result.status = LpStatus::Infeasible;
    return result;
  }

  // Primary objective, then minimize each entry in row-major order.
  std::vector<Row> costs;
  Row primary(structural, mpq_class(0));
  for (std::size_t k = 0; k < cells; ++k) primary[k] = lp.objective[k].raw();
  costs.push_back(std::move(primary));
  for (std::size_t k = 0; k < cells; ++k) {
    Row tie(structural, mpq_class(0));
    tie[k] = -1;
    costs.push_back(std::move(tie));
  }
  tableau.phase_two(costs);

  const auto x = tableau.solution();
  AllocationBuilder builder(n);
  mpq_class value;
  for (std::size_t k = 0; k < cells; ++k) {
    if (sgn(x[k]) == 0) continue;
    builder.add(k / n, k % n, Rational::from_mpq(x[k]));
    value += lp.objective[k].raw() * x[k];
  }
  result.status = LpStatus::Optimal;
  result.value = Rational::from_mpq(std::move(value));
  result.argmax = std::move(builder).finish();
  for (const auto& f : lp.floors) {
    if (expected_utility(f.utility, result.argmax->row_span(f.agent.index)) < f.bound) {
      throw std::logic_error("simplex returned a point violating a utility floor");
    }
  }
  return result;
}

std::string to_string(const LinearProgram& lp) {
  std::ostringstream os;
  const std::size_t n = lp.n;
  auto var = [n](std::size_t k) { return "x" + std::to_string(k / n + 1) + ObjectId{k % n}.label(); };
  os << "maximize";
  bool first = true;
  for (std::size_t k = 0; k < lp.objective.size(); ++k) {
    if (lp.objective[k].is_zero()) continue;
    os << (first ? " " : " + ") << lp.objective[k] << "*" << var(k);
    first = false;
  }
  if (first) os << " 0";
  os << "\nsubject to\n";
  for (std::size_t i = 0; i < n; ++i) {
    os << "  ";
    for (std::size_t a = 0; a < n; ++a) os << (a ? " + " : "") << var(i * n + a);
    os << " = 1\n";
  }
  for (std::size_t a = 0; a < n; ++a) {
    os << "  ";
    for (std::size_t i = 0; i < n; ++i) os << (i ? " + " : "") << var(i * n + a);
    os << " = 1\n";
  }
  for (const auto& f : lp.floors) {
    os << "  ";
    for (std::size_t a = 0; a < n; ++a) os << (a ? " + " : "") << f.utility[a] << "*" << var(f.agent.index * n + a);
    os << " >= " << f.bound << "\n";
  }
  os << "  x >= 0\n";
  return os.str();
}

bool dominates(const UtilityProfile& profile, const Allocation& candidate, const Allocation& status_quo) {
  if (profile.size() != candidate.size() || candidate.size() != status_quo.size()) {
    throw Error(ErrorCode::DimensionMismatch, "profile and allocations disagree on the number of agents");
  }
  bool strict = false;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const Rational gain = expected_utility(profile[i].values(), candidate.row_span(i)) -
                          expected_utility(profile[i].values(), status_quo.row_span(i));
    if (gain.sign() < 0) return false;
    if (gain.sign() > 0) strict = true;
  }
  return strict;
}

std::optional<Allocation> find_dominating(const UtilityProfile& profile, const Allocation& alloc) {
  LinearProgram lp = LinearProgram::welfare(profile);
  if (alloc.size() != lp.n) throw Error(ErrorCode::DimensionMismatch, "allocation does not match profile");
  Rational status_quo_total;
  for (std::size_t i = 0; i < lp.n; ++i) {
    Rational level = expected_utility(profile[i].values(), alloc.row_span(i));
    status_quo_total += level;
    lp.floors.push_back(UtilityFloor{AgentId{i}, {profile[i].values().begin(), profile[i].values().end()}, level});
  }
  LpResult r = maximize(lp);
  if (r.status != LpStatus::Optimal) throw std::logic_error("find_dominating: status quo must be feasible");
  if (r.value <= status_quo_total) return std::nullopt;
  if (!dominates(profile, *r.argmax, alloc)) throw std::logic_error("find_dominating: argmax does not dominate");
  return std::move(r.argmax);
}

}  // namespace ordlab
