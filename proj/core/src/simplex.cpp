#include "depmine/simplex.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <limits>

#include "depmine/errors.hpp"

namespace depmine {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFeasTol = 1e-9;
constexpr double kCostTol = 1e-9;
constexpr double kPivotTol = 1e-10;
constexpr double kDegenStep = 1e-12;
constexpr int kRefactorInterval = 64;
constexpr int kExactRowCap = 1500;

}  // namespace

LpInstance::LpInstance(const IlpModel& model) {
  m_ = static_cast<int>(model.rows().size());
  ns_ = model.var_count();
  cols_.resize(static_cast<std::size_t>(ns_));
  objective_ = model.objective();
  rhs_.reserve(static_cast<std::size_t>(m_));
  rel_.reserve(static_cast<std::size_t>(m_));
  for (int r = 0; r < m_; ++r) {
    const LinearRow& row = model.rows()[static_cast<std::size_t>(r)];
    rhs_.push_back(row.rhs);
    rel_.push_back(row.rel);
    for (auto [var, coeff] : row.terms)
      cols_[static_cast<std::size_t>(var)].entries.emplace_back(r, coeff);
  }
}

void LpInstance::add_row(std::span<const std::pair<int, double>> terms, RowRelation rel,
                         double rhs) {
  const int r = m_++;
  rhs_.push_back(rhs);
  rel_.push_back(rel);
  for (auto [var, coeff] : terms)
    cols_[static_cast<std::size_t>(var)].entries.emplace_back(r, coeff);
}

// Bounded-variable revised primal simplex with a composite phase 1 (minimize
// total bound violation of the basic variables) and product-form eta updates
// on top of a sparse LU basis factorization.
class FloatSimplex {
 public:
  FloatSimplex(const LpInstance& inst, std::span<const double> lower,
               std::span<const double> upper, bool bland_from_start, LpBasis* warm)
      : inst_(inst),
        m_(inst.m_),
        ns_(inst.ns_),
        total_(inst.m_ + inst.ns_),
        bland_always_(bland_from_start),
        warm_(warm) {
    lo_.resize(static_cast<std::size_t>(total_));
    up_.resize(static_cast<std::size_t>(total_));
    for (int j = 0; j < ns_; ++j) {
      lo_[static_cast<std::size_t>(j)] = lower[static_cast<std::size_t>(j)];
      up_[static_cast<std::size_t>(j)] = upper[static_cast<std::size_t>(j)];
    }
    for (int r = 0; r < m_; ++r) {
      switch (inst_.rel_[static_cast<std::size_t>(r)]) {
        case RowRelation::LessEqual:
          lo_[static_cast<std::size_t>(ns_ + r)] = 0.0;
          up_[static_cast<std::size_t>(ns_ + r)] = kInf;
          break;
        case RowRelation::GreaterEqual:
          lo_[static_cast<std::size_t>(ns_ + r)] = -kInf;
          up_[static_cast<std::size_t>(ns_ + r)] = 0.0;
          break;
        case RowRelation::Equal:
          lo_[static_cast<std::size_t>(ns_ + r)] = 0.0;
          up_[static_cast<std::size_t>(ns_ + r)] = 0.0;
          break;
      }
    }
  }

  LpResult run() {
    LpResult result;
    for (int j = 0; j < ns_; ++j)
      if (lo_[static_cast<std::size_t>(j)] > up_[static_cast<std::size_t>(j)] + kFeasTol) {
        result.status = LpStatus::Infeasible;
        return result;
      }

    if (!load_basis(warm_) && !load_basis(nullptr)) {
      result.status = LpStatus::NumericalFailure;
      return result;
    }

    const std::int64_t iter_limit = 100ll * m_ + 20000;
    std::int64_t degen_streak = 0;
    std::int64_t degen_total = 0;
    bool bland = bland_always_;

    Eigen::VectorXd w(m_), y(m_), d(m_);
    while (true) {
      if (result.iterations >= iter_limit) {
        result.status = LpStatus::IterationLimit;
        return result;
      }

      // Phase selection: any basic variable outside its true bounds puts us
      // in feasibility mode.
      bool phase1 = false;
      w.setZero();
      for (int r = 0; r < m_; ++r) {
        int v = basis_[static_cast<std::size_t>(r)];
        double value = x_[static_cast<std::size_t>(v)];
        if (value < lo_[static_cast<std::size_t>(v)] - kFeasTol) {
          w[r] = -1.0;
          phase1 = true;
        } else if (value > up_[static_cast<std::size_t>(v)] + kFeasTol) {
          w[r] = 1.0;
          phase1 = true;
        }
      }
      if (!phase1)
        for (int r = 0; r < m_; ++r)
          w[r] = objective_of(basis_[static_cast<std::size_t>(r)]);

      y = w;
      btran(y);

      // Pricing: Dantzig by default, Bland when stalling.
      int enter = -1;
      int enter_dir = 0;
      double best_score = kCostTol;
      for (int j = 0; j < total_; ++j) {
        if (basis_pos_[static_cast<std::size_t>(j)] >= 0) continue;
        double span = up_[static_cast<std::size_t>(j)] - lo_[static_cast<std::size_t>(j)];
        if (!(span > 0.0)) continue;  // fixed variables never enter
        double rc = phase1 ? col_dot(y, j) : objective_of(j) - col_dot(y, j);
        int dir = 0;
        if (!at_upper_[static_cast<std::size_t>(j)] && rc > kCostTol) dir = 1;
        else if (at_upper_[static_cast<std::size_t>(j)] && rc < -kCostTol) dir = -1;
        if (dir == 0) continue;
        if (bland) {
          enter = j;
          enter_dir = dir;
          break;
        }
        double score = std::abs(rc);
        if (score > best_score) {
          best_score = score;
          enter = j;
          enter_dir = dir;
        }
      }
      if (enter < 0) {
        if (phase1) {
          result.status = LpStatus::Infeasible;
          return result;
        }
        return finalize(result);
      }

      column_dense(enter, d);
      if (!ftran(d)) {
        result.status = LpStatus::NumericalFailure;
        return result;
      }

      // Ratio test: first breakpoint along the entering direction.  In
      // feasibility mode a violated basic stops when it reaches the bound it
      // violates; feasible basics stop at whichever bound they approach.
      double sigma = static_cast<double>(enter_dir);
      double t_limit = up_[static_cast<std::size_t>(enter)] - lo_[static_cast<std::size_t>(enter)];
      int leave_pos = -1;
      double leave_bound = 0.0;
      double best_t = t_limit;  // entering bound flip as the default limit
      double best_pivot = 0.0;
      for (int r = 0; r < m_; ++r) {
        double rate = -sigma * d[r];  // movement of basic r per unit step
        if (std::abs(rate) < kPivotTol) continue;
        int v = basis_[static_cast<std::size_t>(r)];
        double value = x_[static_cast<std::size_t>(v)];
        double lov = lo_[static_cast<std::size_t>(v)];
        double upv = up_[static_cast<std::size_t>(v)];
        double target;
        if (value < lov - kFeasTol) {
          if (rate <= 0.0) continue;  // moving further below: no breakpoint
          target = lov;
        } else if (value > upv + kFeasTol) {
          if (rate >= 0.0) continue;
          target = upv;
        } else if (rate > 0.0) {
          if (upv == kInf) continue;
          target = upv;
        } else {
          if (lov == -kInf) continue;
          target = lov;
        }
        double t = (target - value) / rate;
        if (t < 0.0) t = 0.0;  // tolerance drift
        double tie_window = 1e-12 + 1e-9 * std::abs(best_t);
        if (t < best_t - tie_window ||
            (t <= best_t + tie_window && std::abs(d[r]) > best_pivot)) {
          best_t = t;
          best_pivot = std::abs(d[r]);
          leave_pos = r;
          leave_bound = target;
        }
      }

      if (best_t == kInf) {
        // A bounded model cannot have an unbounded improving ray; treat as
        // numerical breakdown.
        result.status = LpStatus::NumericalFailure;
        return result;
      }

      ++result.iterations;
      if (leave_pos < 0) {
        // Bound flip: the entering variable crosses to its other bound.
        apply_step(enter, sigma, best_t, d);
        x_[static_cast<std::size_t>(enter)] =
            enter_dir > 0 ? up_[static_cast<std::size_t>(enter)] : lo_[static_cast<std::size_t>(enter)];
        at_upper_[static_cast<std::size_t>(enter)] = enter_dir > 0 ? 1 : 0;
      } else {
        if (best_pivot < kPivotTol) {
          result.status = LpStatus::NumericalFailure;
          return result;
        }
        apply_step(enter, sigma, best_t, d);
        int leaving = basis_[static_cast<std::size_t>(leave_pos)];
        x_[static_cast<std::size_t>(leaving)] = leave_bound;
        at_upper_[static_cast<std::size_t>(leaving)] =
            leave_bound == up_[static_cast<std::size_t>(leaving)] ? 1 : 0;
        basis_pos_[static_cast<std::size_t>(leaving)] = -1;
        basis_[static_cast<std::size_t>(leave_pos)] = enter;
        basis_pos_[static_cast<std::size_t>(enter)] = leave_pos;
        etas_.push_back({leave_pos, d});
        if (static_cast<int>(etas_.size()) >= kRefactorInterval) {
          if (!refactorize()) {
            result.status = LpStatus::NumericalFailure;
            return result;
          }
        }
      }

      // Degenerate plateaus get one Bland escape attempt; a basis that keeps
      // stalling is a lost cause, and handing the solve back for the caller's
      // fresh-basis retry beats grinding the plateau from a bad corner.
      if (best_t <= kDegenStep) {
        ++degen_streak;
        ++degen_total;
        if (!bland_always_ && degen_total > 5ll * m_ + 1000) {
          result.status = LpStatus::IterationLimit;
          return result;
        }
        if (degen_streak > m_ + 200) bland = true;
      } else {
        degen_streak = 0;
        bland = bland_always_;
      }
    }
  }

 private:
  // Installs the seed basis (or the all-slack basis when `seed` is null or
  // unusable) and factorizes it.  Nonbasic variables rest on the bound their
  // at-upper flag picks, re-clamped to the current box, so a parent basis
  // stays usable after a child tightens one bound.
  bool load_basis(const LpBasis* seed) {
    x_.assign(static_cast<std::size_t>(total_), 0.0);
    at_upper_.assign(static_cast<std::size_t>(total_), 0);
    basis_pos_.assign(static_cast<std::size_t>(total_), -1);
    basis_.resize(static_cast<std::size_t>(m_));
    bool seeded = seed != nullptr && static_cast<int>(seed->basic.size()) == m_ &&
                  static_cast<int>(seed->at_upper.size()) == total_;
    if (seeded)
      for (int r = 0; r < m_ && seeded; ++r) {
        int v = seed->basic[static_cast<std::size_t>(r)];
        if (v < 0 || v >= total_ || basis_pos_[static_cast<std::size_t>(v)] >= 0) {
          seeded = false;
          break;
        }
        basis_[static_cast<std::size_t>(r)] = v;
        basis_pos_[static_cast<std::size_t>(v)] = r;
      }
    if (!seeded) {
      std::fill(basis_pos_.begin(), basis_pos_.end(), -1);
      for (int r = 0; r < m_; ++r) {
        basis_[static_cast<std::size_t>(r)] = ns_ + r;
        basis_pos_[static_cast<std::size_t>(ns_ + r)] = r;
      }
    }
    for (int j = 0; j < total_; ++j) {
      if (basis_pos_[static_cast<std::size_t>(j)] >= 0) continue;
      bool upper = seeded && seed->at_upper[static_cast<std::size_t>(j)] != 0;
      double u = up_[static_cast<std::size_t>(j)];
      double l = lo_[static_cast<std::size_t>(j)];
      double value = upper ? u : l;
      if (value == kInf || value == -kInf) value = upper ? l : u;
      if (value == kInf || value == -kInf) value = 0.0;
      x_[static_cast<std::size_t>(j)] = value;
      at_upper_[static_cast<std::size_t>(j)] = value == u ? 1 : 0;
    }
    return refactorize();
  }

  double objective_of(int v) const {
    return v < ns_ ? inst_.objective_[static_cast<std::size_t>(v)] : 0.0;
  }

  double col_dot(const Eigen::VectorXd& y, int j) const {
    if (j >= ns_) return y[j - ns_];
    double sum = 0.0;
    for (auto [row, coeff] : inst_.cols_[static_cast<std::size_t>(j)].entries)
      sum += y[row] * coeff;
    return sum;
  }

  void column_dense(int j, Eigen::VectorXd& out) const {
    out.setZero();
    if (j >= ns_) {
      out[j - ns_] = 1.0;
      return;
    }
    for (auto [row, coeff] : inst_.cols_[static_cast<std::size_t>(j)].entries) out[row] = coeff;
  }

  void apply_step(int enter, double sigma, double t, const Eigen::VectorXd& d) {
    if (t == 0.0) return;
    x_[static_cast<std::size_t>(enter)] += sigma * t;
    for (int r = 0; r < m_; ++r)
      x_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(r)])] -= sigma * t * d[r];
  }

  bool refactorize() {
    etas_.clear();
    Eigen::SparseMatrix<double> B(m_, m_);
    std::vector<Eigen::Triplet<double>> triplets;
    for (int r = 0; r < m_; ++r) {
      int v = basis_[static_cast<std::size_t>(r)];
      if (v >= ns_) {
        triplets.emplace_back(v - ns_, r, 1.0);
      } else {
        for (auto [row, coeff] : inst_.cols_[static_cast<std::size_t>(v)].entries)
          triplets.emplace_back(row, r, coeff);
      }
    }
    B.setFromTriplets(triplets.begin(), triplets.end());
    B.makeCompressed();
    lu_.compute(B);
    if (lu_.info() != Eigen::Success) return false;
    recompute_basics();
    return true;
  }

  void recompute_basics() {
    Eigen::VectorXd b(m_);
    for (int r = 0; r < m_; ++r) b[r] = inst_.rhs_[static_cast<std::size_t>(r)];
    for (int j = 0; j < total_; ++j) {
      if (basis_pos_[static_cast<std::size_t>(j)] >= 0) continue;
      double value = x_[static_cast<std::size_t>(j)];
      if (value == 0.0) continue;
      if (j >= ns_) {
        b[j - ns_] -= value;
      } else {
        for (auto [row, coeff] : inst_.cols_[static_cast<std::size_t>(j)].entries)
          b[row] -= coeff * value;
      }
    }
    Eigen::VectorXd xb = lu_.solve(b);
    for (int r = 0; r < m_; ++r) x_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(r)])] = xb[r];
  }

  bool ftran(Eigen::VectorXd& v) const {
    v = lu_.solve(v);
    for (const Eta& e : etas_) {
      double pivot = e.d[e.pos];
      double vp = v[e.pos] / pivot;
      if (vp != 0.0) {
        v -= vp * e.d;
        v[e.pos] = vp;
      } else {
        v[e.pos] = 0.0;
      }
    }
    return v.allFinite();
  }

  void btran(Eigen::VectorXd& v) {
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      double vp = v[it->pos];
      double dot = it->d.dot(v);
      v[it->pos] = (vp - (dot - it->d[it->pos] * vp)) / it->d[it->pos];
    }
    v = lu_.adjoint().solve(v);
  }

  LpResult finalize(LpResult result) {
    if (!refactorize()) {
      result.status = LpStatus::NumericalFailure;
      return result;
    }
    for (int r = 0; r < m_; ++r) {
      int v = basis_[static_cast<std::size_t>(r)];
      double value = x_[static_cast<std::size_t>(v)];
      if (value < lo_[static_cast<std::size_t>(v)] - 1e-7 ||
          value > up_[static_cast<std::size_t>(v)] + 1e-7) {
        result.status = LpStatus::NumericalFailure;
        return result;
      }
    }
    result.values.assign(static_cast<std::size_t>(ns_), 0.0);
    result.objective = 0.0;
    for (int j = 0; j < ns_; ++j) {
      result.values[static_cast<std::size_t>(j)] = x_[static_cast<std::size_t>(j)];
      result.objective += inst_.objective_[static_cast<std::size_t>(j)] * x_[static_cast<std::size_t>(j)];
    }
    result.status = LpStatus::Optimal;
    if (warm_ != nullptr) {
      warm_->basic = basis_;
      warm_->at_upper = at_upper_;
    }
    return result;
  }

  struct Eta {
    int pos;
    Eigen::VectorXd d;
  };

  const LpInstance& inst_;
  int m_;
  int ns_;
  int total_;
  bool bland_always_;
  LpBasis* warm_;
  std::vector<double> lo_, up_, x_;
  std::vector<std::uint8_t> at_upper_;
  std::vector<int> basis_;
  std::vector<int> basis_pos_;
  std::vector<Eta> etas_;
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu_;
};

LpResult LpInstance::solve_float(std::span<const double> lower, std::span<const double> upper,
                                 bool bland_from_start, LpBasis* warm) const {
  FloatSimplex simplex(*this, lower, upper, bland_from_start, warm);
  return simplex.run();
}

LpResult LpInstance::solve(std::span<const double> lower, std::span<const double> upper,
                           LpBasis* warm) const {
  LpResult result = solve_float(lower, upper, false, warm);
  if (result.status == LpStatus::Optimal || result.status == LpStatus::Infeasible) return result;
  std::int64_t spent = result.iterations;
  result = solve_float(lower, upper, true, warm);
  result.iterations += spent;
  if (result.status == LpStatus::Optimal || result.status == LpStatus::Infeasible) return result;
  if (m_ <= kExactRowCap) {
    spent = result.iterations;
    result = solve_exact(lower, upper);
    result.iterations += spent;
  }
  return result;
}

LpResult lp_relax_solve(const IlpModel& model) {
  LpInstance inst(model);
  std::vector<double> lower, upper;
  lower.reserve(model.variables().size());
  upper.reserve(model.variables().size());
  for (const VarInfo& v : model.variables()) {
    lower.push_back(v.lower);
    upper.push_back(v.upper);
  }
  return inst.solve(lower, upper);
}

}  // namespace depmine
