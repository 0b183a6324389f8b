#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <utility>
#include <vector>

#include "depmine/simplex.hpp"

namespace depmine {

namespace {

using Rational = boost::multiprecision::cpp_rational;

struct Bound {
  bool finite = false;
  Rational value;
};

}  // namespace

// Exact-arithmetic bounded simplex with Bland's rule and a dense basis
// inverse.  Slow, but immune to the roundoff failures that send us here, and
// Bland's rule guarantees termination.
class RationalSimplex {
 public:
  RationalSimplex(const LpInstance& inst, std::span<const double> lower,
                  std::span<const double> upper)
      : m_(inst.row_count()), ns_(inst.structural_count()), total_(m_ + ns_) {
    cols_.resize(static_cast<std::size_t>(ns_));
    for (int j = 0; j < ns_; ++j)
      for (auto [row, coeff] : inst.cols_[static_cast<std::size_t>(j)].entries)
        cols_[static_cast<std::size_t>(j)].emplace_back(row, Rational(coeff));
    objective_.resize(static_cast<std::size_t>(ns_));
    for (int j = 0; j < ns_; ++j) objective_[static_cast<std::size_t>(j)] = Rational(inst.objective_[static_cast<std::size_t>(j)]);
    rhs_.resize(static_cast<std::size_t>(m_));
    for (int r = 0; r < m_; ++r) rhs_[static_cast<std::size_t>(r)] = Rational(inst.rhs_[static_cast<std::size_t>(r)]);

    lo_.resize(static_cast<std::size_t>(total_));
    up_.resize(static_cast<std::size_t>(total_));
    for (int j = 0; j < ns_; ++j) {
      lo_[static_cast<std::size_t>(j)] = {true, Rational(lower[static_cast<std::size_t>(j)])};
      up_[static_cast<std::size_t>(j)] = {true, Rational(upper[static_cast<std::size_t>(j)])};
    }
    for (int r = 0; r < m_; ++r) {
      Bound& lo = lo_[static_cast<std::size_t>(ns_ + r)];
      Bound& up = up_[static_cast<std::size_t>(ns_ + r)];
      switch (inst.rel_[static_cast<std::size_t>(r)]) {
        case RowRelation::LessEqual:
          lo = {true, Rational(0)};
          up = {false, Rational(0)};
          break;
        case RowRelation::GreaterEqual:
          lo = {false, Rational(0)};
          up = {true, Rational(0)};
          break;
        case RowRelation::Equal:
          lo = {true, Rational(0)};
          up = {true, Rational(0)};
          break;
      }
    }
  }

  LpResult run() {
    LpResult result;
    for (int j = 0; j < ns_; ++j)
      if (lo_[static_cast<std::size_t>(j)].value > up_[static_cast<std::size_t>(j)].value) {
        result.status = LpStatus::Infeasible;
        return result;
      }

    x_.assign(static_cast<std::size_t>(total_), Rational(0));
    at_upper_.assign(static_cast<std::size_t>(total_), 0);
    basis_pos_.assign(static_cast<std::size_t>(total_), -1);
    basis_.resize(static_cast<std::size_t>(m_));
    for (int j = 0; j < ns_; ++j) {
      const Bound& lo = lo_[static_cast<std::size_t>(j)];
      const Bound& up = up_[static_cast<std::size_t>(j)];
      x_[static_cast<std::size_t>(j)] = lo.finite ? lo.value : (up.finite ? up.value : Rational(0));
    }
    binv_.assign(static_cast<std::size_t>(m_) * static_cast<std::size_t>(m_), Rational(0));
    for (int r = 0; r < m_; ++r) {
      basis_[static_cast<std::size_t>(r)] = ns_ + r;
      basis_pos_[static_cast<std::size_t>(ns_ + r)] = r;
      binv_[static_cast<std::size_t>(r) * static_cast<std::size_t>(m_) + static_cast<std::size_t>(r)] = 1;
    }
    for (int r = 0; r < m_; ++r) x_[static_cast<std::size_t>(ns_ + r)] = rhs_[static_cast<std::size_t>(r)];
    for (int j = 0; j < ns_; ++j) {
      if (x_[static_cast<std::size_t>(j)] == 0) continue;
      for (auto& [row, coeff] : cols_[static_cast<std::size_t>(j)])
        x_[static_cast<std::size_t>(ns_ + row)] -= coeff * x_[static_cast<std::size_t>(j)];
    }

    const std::int64_t iter_limit = 500000;
    std::vector<Rational> w(static_cast<std::size_t>(m_)), y(static_cast<std::size_t>(m_)),
        d(static_cast<std::size_t>(m_));
    while (true) {
      if (result.iterations >= iter_limit) {
        result.status = LpStatus::IterationLimit;
        return result;
      }

      bool phase1 = false;
      for (int r = 0; r < m_; ++r) {
        int v = basis_[static_cast<std::size_t>(r)];
        w[static_cast<std::size_t>(r)] = 0;
        if (lo_[static_cast<std::size_t>(v)].finite && x_[static_cast<std::size_t>(v)] < lo_[static_cast<std::size_t>(v)].value) {
          w[static_cast<std::size_t>(r)] = -1;
          phase1 = true;
        } else if (up_[static_cast<std::size_t>(v)].finite && x_[static_cast<std::size_t>(v)] > up_[static_cast<std::size_t>(v)].value) {
          w[static_cast<std::size_t>(r)] = 1;
          phase1 = true;
        }
      }
      if (!phase1)
        for (int r = 0; r < m_; ++r) {
          int v = basis_[static_cast<std::size_t>(r)];
          w[static_cast<std::size_t>(r)] = v < ns_ ? objective_[static_cast<std::size_t>(v)] : Rational(0);
        }

      for (int k = 0; k < m_; ++k) {
        Rational sum = 0;
        for (int r = 0; r < m_; ++r) {
          if (w[static_cast<std::size_t>(r)] == 0) continue;
          sum += w[static_cast<std::size_t>(r)] * binv_[static_cast<std::size_t>(r) * static_cast<std::size_t>(m_) + static_cast<std::size_t>(k)];
        }
        y[static_cast<std::size_t>(k)] = sum;
      }

      int enter = -1;
      int enter_dir = 0;
      for (int j = 0; j < total_ && enter < 0; ++j) {
        if (basis_pos_[static_cast<std::size_t>(j)] >= 0) continue;
        if (lo_[static_cast<std::size_t>(j)].finite && up_[static_cast<std::size_t>(j)].finite &&
            lo_[static_cast<std::size_t>(j)].value == up_[static_cast<std::size_t>(j)].value)
          continue;
        Rational rc = phase1 ? col_dot(y, j) : col_objective(j) - col_dot(y, j);
        if (!at_upper_[static_cast<std::size_t>(j)] && rc > 0) {
          enter = j;
          enter_dir = 1;
        } else if (at_upper_[static_cast<std::size_t>(j)] && rc < 0) {
          enter = j;
          enter_dir = -1;
        }
      }
      if (enter < 0) {
        if (phase1) {
          result.status = LpStatus::Infeasible;
          return result;
        }
        return finalize(result);
      }

      for (int r = 0; r < m_; ++r) d[static_cast<std::size_t>(r)] = 0;
      if (enter >= ns_) {
        for (int r = 0; r < m_; ++r)
          d[static_cast<std::size_t>(r)] = binv_[static_cast<std::size_t>(r) * static_cast<std::size_t>(m_) + static_cast<std::size_t>(enter - ns_)];
      } else {
        for (auto& [row, coeff] : cols_[static_cast<std::size_t>(enter)])
          for (int r = 0; r < m_; ++r)
            d[static_cast<std::size_t>(r)] += binv_[static_cast<std::size_t>(r) * static_cast<std::size_t>(m_) + static_cast<std::size_t>(row)] * coeff;
      }

      Rational sigma(enter_dir);
      bool has_limit = false;
      Rational best_t;
      if (lo_[static_cast<std::size_t>(enter)].finite && up_[static_cast<std::size_t>(enter)].finite) {
        has_limit = true;
        best_t = up_[static_cast<std::size_t>(enter)].value - lo_[static_cast<std::size_t>(enter)].value;
      }
      int leave_pos = -1;
      bool leave_at_upper = false;
      for (int r = 0; r < m_; ++r) {
        if (d[static_cast<std::size_t>(r)] == 0) continue;
        Rational rate = -sigma * d[static_cast<std::size_t>(r)];
        int v = basis_[static_cast<std::size_t>(r)];
        const Rational& value = x_[static_cast<std::size_t>(v)];
        const Bound& lov = lo_[static_cast<std::size_t>(v)];
        const Bound& upv = up_[static_cast<std::size_t>(v)];
        Rational target;
        bool to_upper;
        if (lov.finite && value < lov.value) {
          if (rate <= 0) continue;
          target = lov.value;
          to_upper = false;
        } else if (upv.finite && value > upv.value) {
          if (rate >= 0) continue;
          target = upv.value;
          to_upper = true;
        } else if (rate > 0) {
          if (!upv.finite) continue;
          target = upv.value;
          to_upper = true;
        } else {
          if (!lov.finite) continue;
          target = lov.value;
          to_upper = false;
        }
        Rational t = (target - value) / rate;
        bool better = !has_limit || t < best_t ||
                      (t == best_t && (leave_pos < 0 || v < basis_[static_cast<std::size_t>(leave_pos)]));
        if (better) {
          has_limit = true;
          best_t = t;
          leave_pos = r;
          leave_at_upper = to_upper;
        }
      }

      if (!has_limit) {
        result.status = LpStatus::NumericalFailure;
        return result;
      }

      ++result.iterations;
      if (best_t != 0) {
        x_[static_cast<std::size_t>(enter)] += sigma * best_t;
        for (int r = 0; r < m_; ++r)
          if (d[static_cast<std::size_t>(r)] != 0)
            x_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(r)])] -= sigma * best_t * d[static_cast<std::size_t>(r)];
      }
      if (leave_pos < 0) {
        at_upper_[static_cast<std::size_t>(enter)] = enter_dir > 0 ? 1 : 0;
      } else {
        int leaving = basis_[static_cast<std::size_t>(leave_pos)];
        x_[static_cast<std::size_t>(leaving)] =
            leave_at_upper ? up_[static_cast<std::size_t>(leaving)].value : lo_[static_cast<std::size_t>(leaving)].value;
        at_upper_[static_cast<std::size_t>(leaving)] = leave_at_upper ? 1 : 0;
        basis_pos_[static_cast<std::size_t>(leaving)] = -1;
        basis_[static_cast<std::size_t>(leave_pos)] = enter;
        basis_pos_[static_cast<std::size_t>(enter)] = leave_pos;
        pivot_binv(leave_pos, d);
      }
    }
  }

 private:
  Rational col_objective(int j) const {
    return j < ns_ ? objective_[static_cast<std::size_t>(j)] : Rational(0);
  }

  Rational col_dot(const std::vector<Rational>& y, int j) const {
    if (j >= ns_) return y[static_cast<std::size_t>(j - ns_)];
    Rational sum = 0;
    for (auto& [row, coeff] : cols_[static_cast<std::size_t>(j)]) sum += y[static_cast<std::size_t>(row)] * coeff;
    return sum;
  }

  void pivot_binv(int p, const std::vector<Rational>& d) {
    std::size_t stride = static_cast<std::size_t>(m_);
    std::size_t prow = static_cast<std::size_t>(p) * stride;
    Rational inv_pivot = Rational(1) / d[static_cast<std::size_t>(p)];
    for (std::size_t k = 0; k < stride; ++k) binv_[prow + k] *= inv_pivot;
    for (int r = 0; r < m_; ++r) {
      if (r == p || d[static_cast<std::size_t>(r)] == 0) continue;
      std::size_t rrow = static_cast<std::size_t>(r) * stride;
      const Rational& factor = d[static_cast<std::size_t>(r)];
      for (std::size_t k = 0; k < stride; ++k)
        if (binv_[prow + k] != 0) binv_[rrow + k] -= factor * binv_[prow + k];
    }
  }

  LpResult finalize(LpResult result) {
    result.values.assign(static_cast<std::size_t>(ns_), 0.0);
    Rational objective = 0;
    for (int j = 0; j < ns_; ++j) {
      result.values[static_cast<std::size_t>(j)] = x_[static_cast<std::size_t>(j)].convert_to<double>();
      objective += objective_[static_cast<std::size_t>(j)] * x_[static_cast<std::size_t>(j)];
    }
    result.objective = objective.convert_to<double>();
    result.status = LpStatus::Optimal;
    return result;
  }

  int m_;
  int ns_;
  int total_;
  std::vector<std::vector<std::pair<int, Rational>>> cols_;
  std::vector<Rational> objective_;
  std::vector<Rational> rhs_;
  std::vector<Bound> lo_, up_;
  std::vector<Rational> x_;
  std::vector<std::uint8_t> at_upper_;
  std::vector<int> basis_;
  std::vector<int> basis_pos_;
  std::vector<Rational> binv_;
};

LpResult LpInstance::solve_exact(std::span<const double> lower,
                                 std::span<const double> upper) const {
  RationalSimplex simplex(*this, lower, upper);
  return simplex.run();
}

}  // namespace depmine
