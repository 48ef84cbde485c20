#pragma once

#include <map>
#include <optional>
#include <vector>

#include "qsc/quantum.hpp"
#include "qsc/schubert.hpp"

namespace qsc {

/// Formal integer combination of weights.
using WeightSum = std::map<Partition, BigInt>;

// SU(n) weights are partitions with at most n - 1 rows (lambda_n normalized
// to 0); the level-N constraint is lambda_1 <= N.

/// Subtracts the last of n entries; throws std::invalid_argument when the
/// vector is not weakly decreasing or has more than n entries.
Partition normalize_su_weight(const std::vector<int>& weight, int n);
bool is_level_weight(const Partition& weight, int n, int level);
std::vector<Partition> level_weights(int n, int level);
/// Highest weight of the dual representation.
Partition dual_su_weight(const Partition& weight, int n);

/// Classical SU(n) tensor product decomposition.
WeightSum su_tensor_product(const Partition& a, const Partition& b, int n);

/// Level-N fusion product: classical terms reflected into the level-N alcove
/// by the shifted affine Weyl group, with sign (-1)^length; wall terms drop.
/// Throws std::invalid_argument for inputs that are not level-N weights.
WeightSum fusion_product(const Partition& a, const Partition& b, int n, int level);
BigInt fusion_coefficient(const Partition& a, const Partition& b, const Partition& c, int n,
                          int level);
/// Left-to-right product; the empty product is V_0.
WeightSum fusion_product(const std::vector<Partition>& factors, int n, int level);

/// U(r) Verlinde algebra at levels (n - r, n): quantum product at q = 1.
/// Basis weights must fit the r x (n - r) box.
WeightSum verlinde_ur_product(const WeightSum& a, const WeightSum& b, const GrassmannianCtx& ctx);

/// Same product computed directly in R(U(r)): beta = lambda + rho is reduced
/// entrywise mod n (each subtraction of n contributes (-1)^(r-1)), collisions
/// vanish, and the sort permutation contributes its sign.
WeightSum verlinde_ur_product_direct(const WeightSum& a, const WeightSum& b,
                                     const GrassmannianCtx& ctx);

/// N * (xi_i - xi_n) when every entry is integral.
std::optional<Partition> alcove_to_weight(const AlcovePoint& xi, int level);
AlcovePoint weight_to_alcove(const Partition& weight, int n, int level);

enum class FusionSupport { supported, unsupported, inapplicable };

/// Whether V_{N xi_1} * ... * V_{N xi_{l-1}} contains V_{N *xi_l} at level N.
FusionSupport fusion_membership(const std::vector<AlcovePoint>& tuple, int level);

}  // namespace qsc
