#pragma once

#include "qsc/rational.hpp"

namespace qsc::lp {

/// maximize objective . x  subject to  ineq * x <= ineq_rhs,  eq * x = eq_rhs,
/// x free. Either constraint block may have zero rows.
struct LinearProgram {
  MatrixQ ineq;
  VectorQ ineq_rhs;
  MatrixQ eq;
  VectorQ eq_rhs;
  VectorQ objective;
};

enum class Status { optimal, infeasible, unbounded };

struct Solution {
  Status status = Status::infeasible;
  Rational value;
  VectorQ x;
};

/// Two-phase dense tableau simplex over exact rationals with Bland's rule, so
/// degenerate pivots cannot cycle.
Solution solve(const LinearProgram& program);

}  // namespace qsc::lp
