#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "depmine/ilp_model.hpp"

namespace depmine {

enum class LpStatus : std::uint8_t { Optimal, Infeasible, IterationLimit, NumericalFailure };

struct LpResult {
  LpStatus status = LpStatus::NumericalFailure;
  std::vector<double> values;  // structural variable values (model order)
  double objective = 0.0;
  std::int64_t iterations = 0;
};

// Simplex basis snapshot for warm starts: which variable sits in each basis
// slot and which bound every nonbasic variable rests at.  Slot values index
// structurals first, then row slacks.
struct LpBasis {
  std::vector<int> basic;                // size row_count
  std::vector<std::uint8_t> at_upper;    // size structural_count + row_count
};

// Prepared continuous relaxation of a model: sparse columns, row senses, and
// the maximize objective.  Bounds are supplied per solve so branch-and-bound
// nodes can share one instance.
class LpInstance {
 public:
  explicit LpInstance(const IlpModel& model);

  int row_count() const { return m_; }
  int structural_count() const { return ns_; }

  // Appends a constraint row (cutting planes).  Bases saved before the call
  // stay usable once extended with the new rows' slacks as basic.
  void add_row(std::span<const std::pair<int, double>> terms, RowRelation rel, double rhs);

  // Floating-point bounded revised primal simplex (composite phase 1 +
  // Dantzig phase 2, Bland fallback on stalling).  Falls back to exact
  // rational pivoting on numerical failure when the instance is small enough.
  // `warm` is optional: on entry a seed basis (ignored when invalid or
  // singular), on exit the final basis of a successful float solve.
  LpResult solve(std::span<const double> lower, std::span<const double> upper,
                 LpBasis* warm = nullptr) const;

  // Exact rational bounded simplex (Bland's rule); slow, used as the fallback
  // and in tests.
  LpResult solve_exact(std::span<const double> lower, std::span<const double> upper) const;

 private:
  LpResult solve_float(std::span<const double> lower, std::span<const double> upper,
                       bool bland_from_start, LpBasis* warm) const;

  struct Column {
    std::vector<std::pair<int, double>> entries;  // (row, coefficient)
  };
  int m_ = 0;
  int ns_ = 0;
  std::vector<Column> cols_;
  std::vector<double> objective_;
  std::vector<double> rhs_;
  std::vector<RowRelation> rel_;

  friend class FloatSimplex;
  friend class RationalSimplex;
};

// Convenience wrapper: relaxation of the model with its declared bounds.
LpResult lp_relax_solve(const IlpModel& model);

}  // namespace depmine
