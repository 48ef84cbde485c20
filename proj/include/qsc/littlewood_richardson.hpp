#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "qsc/rational.hpp"
#include "qsc/schubert.hpp"

namespace qsc {

/// c^nu_{lambda mu}: number of LR skew tableaux of shape nu/lambda and content mu.
std::uint64_t lr_coefficient(const Partition& lambda, const Partition& mu, const Partition& nu);

using LrTerms = std::vector<std::pair<Partition, BigInt>>;

/// Expansion of s_lambda * s_mu restricted to partitions with at most
/// max_rows rows; no bound on the width. Sorted by partition.
/// Results are memoized in a process-wide synchronized cache.
LrTerms lr_expand(const Partition& lambda, const Partition& mu, int max_rows);

void set_lr_cache_enabled(bool enabled);
void clear_lr_cache();

/// Element of H^*(G(r,n)) in the Schubert basis.
class CohomologyClass {
 public:
  explicit CohomologyClass(GrassmannianCtx ctx) : ctx_(ctx) {}
  CohomologyClass(GrassmannianCtx ctx, const Partition& basis, BigInt coeff = 1);

  const GrassmannianCtx& ctx() const { return ctx_; }
  const std::map<Partition, BigInt>& terms() const { return terms_; }
  BigInt coefficient(const Partition& p) const;

  void add(const Partition& p, const BigInt& coeff);
  bool is_zero() const { return terms_.empty(); }

  bool operator==(const CohomologyClass&) const = default;

 private:
  GrassmannianCtx ctx_;
  std::map<Partition, BigInt> terms_;
};

/// Cup product; throws std::invalid_argument when the contexts differ.
CohomologyClass classical_product(const CohomologyClass& a, const CohomologyClass& b);

/// Coefficient of the point class in the product of all classes.
BigInt intersection_number(const std::vector<SchubertIndex>& classes, const GrassmannianCtx& ctx);

}  // namespace qsc
