#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "qsc/littlewood_richardson.hpp"
#include "qsc/schubert.hpp"

namespace qsc {

/// Outcome of stripping n-rim hooks from a diagram with at most r rows.
struct RimHookReduction {
  Partition nu;    // fits the r x (n - r) box
  int degree = 0;  // number of hooks removed
  int sign = 1;    // product of (-1)^(r - height) over removed hooks

  bool operator==(const RimHookReduction&) const = default;
};

/// Picks which removable hook to take next; receives the candidate count.
using HookChooser = std::function<std::size_t(std::size_t)>;

/// Removes n-rim hooks until the diagram fits the box. std::nullopt means
/// the diagram is discarded (it does not fit and has no removable n-hook).
/// Throws std::invalid_argument when rho has more than r rows.
std::optional<RimHookReduction> rim_hook_reduce(const Partition& rho, const GrassmannianCtx& ctx);
std::optional<RimHookReduction> rim_hook_reduce(const Partition& rho, const GrassmannianCtx& ctx,
                                                const HookChooser& choose);

struct QuantumTerm {
  Partition partition;
  int q = 0;

  auto operator<=>(const QuantumTerm&) const = default;
  bool operator==(const QuantumTerm&) const = default;
};

/// Element of QH^*(G(r,n)) = H^*(G(r,n)) [q].
class QuantumClass {
 public:
  explicit QuantumClass(GrassmannianCtx ctx) : ctx_(ctx) {}
  QuantumClass(GrassmannianCtx ctx, const Partition& basis, int q = 0, BigInt coeff = 1);

  static QuantumClass unit(GrassmannianCtx ctx) { return {ctx, Partition{}}; }
  static QuantumClass of(const SchubertIndex& idx, GrassmannianCtx ctx) {
    return {ctx, subset_to_partition(idx, ctx)};
  }

  const GrassmannianCtx& ctx() const { return ctx_; }
  const std::map<QuantumTerm, BigInt>& terms() const { return terms_; }
  BigInt coefficient(const Partition& p, int q) const;
  bool is_zero() const { return terms_.empty(); }
  /// Terms of q-degree zero as a classical class.
  CohomologyClass degree_zero_part() const;
  /// Smallest q-degree present, or nullopt for the zero class.
  std::optional<int> min_degree() const;

  void add(const Partition& p, int q, const BigInt& coeff);

  bool operator==(const QuantumClass&) const = default;

 private:
  GrassmannianCtx ctx_;
  std::map<QuantumTerm, BigInt> terms_;
};

/// Quantum product via classical LR expansion with at most r rows followed by
/// rim-hook reduction. Terms above max_degree are dropped when max_degree >= 0.
/// Throws std::invalid_argument when the contexts differ.
QuantumClass quantum_product(const QuantumClass& a, const QuantumClass& b, int max_degree = -1);

/// sigma_c^m * a with sigma_c = sigma_(1^r), using the closed form
/// sigma_c * sigma_I = q^((|cI| + r - |I|) / n) sigma_cI. Requires m >= 0.
QuantumClass sigma_c_multiply(long m, const QuantumClass& a);

/// q-exponent of sigma_c * sigma_I: (|cI| + r - |I|) / n.
int sigma_c_exponent(const SchubertIndex& idx);

/// <sigma_I1, ..., sigma_Il>_d: coefficient of q^d sigma_{*I_l} in the product of
/// the first l - 1 classes (the empty product is the unit).
BigInt gw_invariant(const std::vector<SchubertIndex>& classes, int d, const GrassmannianCtx& ctx);

/// Degree forced by the grading, or nullopt when the codimensions do not allow
/// a nonnegative integral degree.
std::optional<int> graded_degree(const std::vector<SchubertIndex>& classes,
                                 const GrassmannianCtx& ctx);

struct GwTuple {
  std::vector<SchubertIndex> subsets;
  long d = 0;

  auto operator<=>(const GwTuple&) const = default;
  bool operator==(const GwTuple&) const = default;
};

/// Action of (c^m_1, ..., c^m_l) on (I_1, ..., I_l, d):
/// sum |c^m_k I_k| + n d' = sum |I_k| + n d. Throws std::invalid_argument unless
/// sum m_k = 0 mod n.
GwTuple symmetry_transport(const GwTuple& tuple, const std::vector<long>& shifts);

}  // namespace qsc
