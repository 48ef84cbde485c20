#include "qsc/lp.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace qsc::lp {

namespace {

// Rows 0..m-1 hold constraints, row m the reduced costs of a maximization
// (entering columns have a negative entry). The last column is the RHS.
class Tableau {
 public:
  Tableau(MatrixQ table, std::vector<Eigen::Index> basis)
      : t_(std::move(table)), basis_(std::move(basis)) {}

  Eigen::Index rows() const { return t_.rows() - 1; }
  Eigen::Index rhs_col() const { return t_.cols() - 1; }
  MatrixQ& table() { return t_; }
  std::vector<Eigen::Index>& basis() { return basis_; }
  Rational value() const { return t_(t_.rows() - 1, t_.cols() - 1); }

  void pivot(Eigen::Index row, Eigen::Index col) {
    const Rational p = t_(row, col);
    t_.row(row) /= p;
    for (Eigen::Index i = 0; i < t_.rows(); ++i) {
      if (i != row && t_(i, col) != 0) {
        const Rational f = t_(i, col);
        t_.row(i) -= f * t_.row(row);
      }
    }
    basis_[static_cast<std::size_t>(row)] = col;
  }

  /// Eliminates basic columns from the objective row.
  void price_out() {
    const Eigen::Index obj = rows();
    for (Eigen::Index i = 0; i < rows(); ++i) {
      const Eigen::Index b = basis_[static_cast<std::size_t>(i)];
      if (t_(obj, b) != 0) {
        const Rational f = t_(obj, b);
        t_.row(obj) -= f * t_.row(i);
      }
    }
  }

  /// Returns false when the objective is unbounded over the allowed columns.
  bool optimize(Eigen::Index allowed_cols) {
    const Eigen::Index obj = rows();
    while (true) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < allowed_cols; ++j) {
        if (t_(obj, j) < 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) {
        return true;
      }
      Eigen::Index leave = -1;
      Rational best;
      for (Eigen::Index i = 0; i < rows(); ++i) {
        if (t_(i, enter) <= 0) {
          continue;
        }
        const Rational ratio = t_(i, rhs_col()) / t_(i, enter);
        if (leave < 0 || ratio < best ||
            (ratio == best && basis_[static_cast<std::size_t>(i)] <
                                  basis_[static_cast<std::size_t>(leave)])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) {
        return false;
      }
      pivot(leave, enter);
    }
  }

  void drop_row(Eigen::Index row) {
    const Eigen::Index last = t_.rows() - 1;
    MatrixQ next(t_.rows() - 1, t_.cols());
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i <= last; ++i) {
      if (i != row) {
        next.row(k++) = t_.row(i);
      }
    }
    t_ = std::move(next);
    basis_.erase(basis_.begin() + row);
  }

 private:
  MatrixQ t_;
  std::vector<Eigen::Index> basis_;
};

}  // namespace

Solution solve(const LinearProgram& program) {
  const Eigen::Index nvars = program.objective.size();
  const Eigen::Index m_ineq = program.ineq.rows();
  const Eigen::Index m_eq = program.eq.rows();
  if ((m_ineq > 0 && program.ineq.cols() != nvars) || (m_eq > 0 && program.eq.cols() != nvars) ||
      program.ineq_rhs.size() != m_ineq || program.eq_rhs.size() != m_eq) {
    throw std::invalid_argument("lp::solve: inconsistent dimensions");
  }
  const Eigen::Index m = m_ineq + m_eq;
  // Columns: x+ (nvars), x- (nvars), slacks (m_ineq), artificials (m), rhs.
  const Eigen::Index split = 2 * nvars;
  const Eigen::Index structural = split + m_ineq;
  const Eigen::Index cols = structural + m + 1;
  MatrixQ t = MatrixQ::Zero(m + 1, cols);
  for (Eigen::Index i = 0; i < m; ++i) {
    const bool is_ineq = i < m_ineq;
    Rational rhs = is_ineq ? program.ineq_rhs[i] : program.eq_rhs[i - m_ineq];
    const Rational sign = rhs < 0 ? Rational(-1) : Rational(1);
    for (Eigen::Index j = 0; j < nvars; ++j) {
      const Rational a = is_ineq ? program.ineq(i, j) : program.eq(i - m_ineq, j);
      t(i, j) = sign * a;
      t(i, nvars + j) = -sign * a;
    }
    if (is_ineq) {
      t(i, split + i) = sign;
    }
    t(i, structural + i) = 1;
    t(i, cols - 1) = sign * rhs;
  }
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) {
    basis[static_cast<std::size_t>(i)] = structural + i;
    t(m, structural + i) = 1;  // maximize -sum(artificials)
  }
  Tableau tab(std::move(t), std::move(basis));
  tab.price_out();
  tab.optimize(structural + m);
  Solution out;
  if (tab.value() != 0) {
    out.status = Status::infeasible;
    return out;
  }
  // Drive zero-level artificials out of the basis; rows with no structural
  // entry are linearly dependent and get dropped.
  for (Eigen::Index i = 0; i < tab.rows();) {
    if (tab.basis()[static_cast<std::size_t>(i)] < structural) {
      ++i;
      continue;
    }
    Eigen::Index col = -1;
    for (Eigen::Index j = 0; j < structural; ++j) {
      if (tab.table()(i, j) != 0) {
        col = j;
        break;
      }
    }
    if (col < 0) {
      tab.drop_row(i);
    } else {
      tab.pivot(i, col);
      ++i;
    }
  }
  MatrixQ& table = tab.table();
  const Eigen::Index obj = tab.rows();
  table.row(obj).setZero();
  for (Eigen::Index j = 0; j < nvars; ++j) {
    table(obj, j) = -program.objective[j];
    table(obj, nvars + j) = program.objective[j];
  }
  tab.price_out();
  if (!tab.optimize(structural)) {
    out.status = Status::unbounded;
    return out;
  }
  out.status = Status::optimal;
  out.value = tab.value();
  out.x = VectorQ::Zero(nvars);
  for (Eigen::Index i = 0; i < tab.rows(); ++i) {
    const Eigen::Index b = tab.basis()[static_cast<std::size_t>(i)];
    const Rational v = table(i, tab.rhs_col());
    if (b < nvars) {
      out.x[b] += v;
    } else if (b < split) {
      out.x[b - nvars] -= v;
    }
  }
  return out;
}

}  // namespace qsc::lp
