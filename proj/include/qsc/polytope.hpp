#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qsc/quantum.hpp"
#include "qsc/rational.hpp"
#include "qsc/schubert.hpp"

namespace qsc {

enum class SystemKind { multiplicative, additive };

std::string to_string(SystemKind kind);
SystemKind parse_system_kind(const std::string& text);

/// sum_k sum_{i in I_k} x_{k,i} <= d, witnessed by a nonzero invariant gw.
struct Inequality {
  int n = 0;
  int l = 0;
  int r = 0;
  std::vector<SchubertIndex> subsets;
  int d = 0;
  BigInt gw;

  bool same_record(const Inequality& other) const {
    return r == other.r && subsets == other.subsets && d == other.d;
  }
  bool operator==(const Inequality&) const = default;
};

/// Canonical order: by r, then subsets lexicographically, then d.
bool canonical_less(const Inequality& a, const Inequality& b);

struct InequalitySystem {
  SystemKind kind = SystemKind::multiplicative;
  int n = 0;
  int l = 0;
  std::vector<Inequality> inequalities;

  bool operator==(const InequalitySystem&) const = default;
};

/// l eigenvalue vectors: alcove points (multiplicative) or weakly decreasing
/// vectors with total sum zero (additive).
struct EigenTuple {
  SystemKind kind = SystemKind::multiplicative;
  std::vector<VectorQ> points;

  int n() const { return points.empty() ? 0 : static_cast<int>(points.front().size()); }
  int l() const { return static_cast<int>(points.size()); }
};

/// Raised for a tuple that breaks its chamber or alcove invariants.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Throws InputError naming the failed invariant.
void validate_tuple(const EigenTuple& tuple);

/// Left-hand side of an inequality on a tuple of coordinate vectors.
template <typename Scalar>
Scalar evaluate_lhs(const Inequality& ineq, const std::vector<Vector<Scalar>>& points) {
  Scalar sum(0);
  for (std::size_t k = 0; k < ineq.subsets.size(); ++k) {
    for (int i : ineq.subsets[k].elems()) {
      sum += points[k][i - 1];
    }
  }
  return sum;
}

struct GenerateOptions {
  unsigned jobs = 1;
};

/// Every (r, I_1..I_l, d) with <sigma_I1, ..., sigma_Il>_d != 0; d is the
/// minimal (in fact the only, by grading) degree for the subsets.
InequalitySystem generate_multiplicative(int n, int l, const GenerateOptions& options = {});

/// Degree-zero system from classical intersection numbers, right-hand side 0.
InequalitySystem generate_additive(int n, int l, const GenerateOptions& options = {});

struct Violation {
  std::size_t index;
  Inequality inequality;
  Rational excess;  // lhs - d > 0
};

struct MembershipReport {
  bool member = false;
  std::vector<Violation> violations;
};

/// Exact evaluation; throws InputError for malformed tuples or a dimension
/// mismatch with the system.
MembershipReport check_membership(const InequalitySystem& sys, const EigenTuple& tuple);

/// Dense form c . x <= rhs with x flattened point-major (x_{k,i} at k*n + i - 1).
struct LinearInequality {
  VectorQ coeffs;
  Rational rhs;
};

LinearInequality to_linear(const Inequality& ineq);

/// True when target follows from `others` together with the chamber (additive)
/// or alcove (multiplicative) constraints, certified by an exact LP.
bool is_implied(const LinearInequality& target, const std::vector<LinearInequality>& others,
                SystemKind kind, int n, int l);

/// Both systems cut out the same subset of the chamber/alcove product.
bool lp_equivalent(const std::vector<LinearInequality>& a, const std::vector<LinearInequality>& b,
                   SystemKind kind, int n, int l);

/// Drops inequalities implied by the rest (sequentially, so the polytope is
/// unchanged).
InequalitySystem filter_redundant(const InequalitySystem& sys);

struct SymmetryEscape {
  Inequality source;
  std::vector<long> shifts;
  GwTuple image;
  std::string reason;
};

struct SymmetryReport {
  std::size_t checked = 0;
  std::vector<SymmetryEscape> escapes;
  bool closed() const { return escapes.empty(); }
};

/// Transports every inequality by every element of C(l) and looks the image
/// up in the system, comparing invariants.
SymmetryReport symmetry_closure_check(const InequalitySystem& sys);

/// All (m_1, ..., m_l) in [0, n)^l with sum = 0 mod n.
std::vector<std::vector<long>> center_subgroup(int n, int l);

}  // namespace qsc
