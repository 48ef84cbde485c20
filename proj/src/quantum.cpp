#include "qsc/quantum.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace qsc {

namespace {

struct HookCandidate {
  std::size_t bead;
  int leg;
};

std::vector<HookCandidate> removable_hooks(const std::vector<int>& beta, int n) {
  std::vector<HookCandidate> out;
  for (std::size_t j = 0; j < beta.size(); ++j) {
    const int target = beta[j] - n;
    if (target < 0 || std::find(beta.begin(), beta.end(), target) != beta.end()) {
      continue;
    }
    const auto leg = std::count_if(beta.begin(), beta.end(),
                                   [&](int b) { return b > target && b < beta[j]; });
    out.push_back({j, static_cast<int>(leg)});
  }
  return out;
}

}  // namespace

std::optional<RimHookReduction> rim_hook_reduce(const Partition& rho, const GrassmannianCtx& ctx) {
  return rim_hook_reduce(rho, ctx, [](std::size_t) { return std::size_t{0}; });
}

std::optional<RimHookReduction> rim_hook_reduce(const Partition& rho, const GrassmannianCtx& ctx,
                                                const HookChooser& choose) {
  const int r = ctx.r;
  const int n = ctx.n;
  if (static_cast<int>(rho.length()) > r) {
    throw std::invalid_argument("rim_hook_reduce: " + to_string(rho) + " has more than r=" +
                                std::to_string(r) + " rows");
  }
  // Beta numbers rho_j + r - j: a removable n-rim hook is a bead that can
  // slide n positions down onto an empty slot; its leg length counts the
  // beads jumped over.
  std::vector<int> beta(static_cast<std::size_t>(r));
  for (int j = 0; j < r; ++j) {
    beta[static_cast<std::size_t>(j)] = rho[static_cast<std::size_t>(j)] + r - 1 - j;
  }
  RimHookReduction out;
  while (beta.front() >= n) {
    const auto hooks = removable_hooks(beta, n);
    if (hooks.empty()) {
      return std::nullopt;
    }
    const auto pick = choose(hooks.size());
    if (pick >= hooks.size()) {
      throw std::out_of_range("rim_hook_reduce: chooser returned an invalid index");
    }
    const auto& h = hooks[pick];
    const int height = h.leg + 1;
    if ((r - height) % 2 != 0) {
      out.sign = -out.sign;
    }
    beta[h.bead] -= n;
    std::sort(beta.begin(), beta.end(), std::greater<>());
    ++out.degree;
  }
  std::vector<int> parts(static_cast<std::size_t>(r));
  for (int j = 0; j < r; ++j) {
    parts[static_cast<std::size_t>(j)] = beta[static_cast<std::size_t>(j)] - (r - 1 - j);
  }
  out.nu = Partition(std::move(parts));
  return out;
}

QuantumClass::QuantumClass(GrassmannianCtx ctx, const Partition& basis, int q, BigInt coeff)
    : ctx_(ctx) {
  if (!ctx_.fits(basis)) {
    throw std::invalid_argument("partition " + to_string(basis) + " does not fit the " +
                                std::to_string(ctx_.r) + "x" + std::to_string(ctx_.cols()) +
                                " box");
  }
  if (q < 0) {
    throw std::invalid_argument("negative q-degree");
  }
  add(basis, q, coeff);
}

BigInt QuantumClass::coefficient(const Partition& p, int q) const {
  const auto it = terms_.find(QuantumTerm{p, q});
  return it == terms_.end() ? BigInt(0) : it->second;
}

CohomologyClass QuantumClass::degree_zero_part() const {
  CohomologyClass out(ctx_);
  for (const auto& [term, c] : terms_) {
    if (term.q == 0) {
      out.add(term.partition, c);
    }
  }
  return out;
}

std::optional<int> QuantumClass::min_degree() const {
  std::optional<int> best;
  for (const auto& [term, c] : terms_) {
    if (!best || term.q < *best) {
      best = term.q;
    }
  }
  return best;
}

void QuantumClass::add(const Partition& p, int q, const BigInt& coeff) {
  if (coeff == 0) {
    return;
  }
  auto [it, inserted] = terms_.try_emplace(QuantumTerm{p, q}, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) {
      terms_.erase(it);
    }
  }
}

QuantumClass quantum_product(const QuantumClass& a, const QuantumClass& b, int max_degree) {
  if (!(a.ctx() == b.ctx())) {
    throw std::invalid_argument("quantum_product: Grassmannian contexts differ");
  }
  const GrassmannianCtx& ctx = a.ctx();
  QuantumClass out(ctx);
  for (const auto& [ta, ca] : a.terms()) {
    for (const auto& [tb, cb] : b.terms()) {
      const int base = ta.q + tb.q;
      if (max_degree >= 0 && base > max_degree) {
        continue;
      }
      const BigInt scale = ca * cb;
      for (const auto& [rho, c] : lr_expand(ta.partition, tb.partition, ctx.r)) {
        const auto reduced = rim_hook_reduce(rho, ctx);
        if (!reduced) {
          continue;
        }
        const int q = base + reduced->degree;
        if (max_degree >= 0 && q > max_degree) {
          continue;
        }
        out.add(reduced->nu, q, reduced->sign > 0 ? BigInt(c * scale) : BigInt(-c * scale));
      }
    }
  }
  return out;
}

int sigma_c_exponent(const SchubertIndex& idx) {
  const SchubertIndex shifted = center_act(1, idx);
  const long num = subset_weight(shifted) + idx.rank() - subset_weight(idx);
  return static_cast<int>(num / idx.n());
}

QuantumClass sigma_c_multiply(long m, const QuantumClass& a) {
  if (m < 0) {
    throw std::invalid_argument("sigma_c_multiply: power must be nonnegative");
  }
  const GrassmannianCtx& ctx = a.ctx();
  QuantumClass out(ctx);
  for (const auto& [term, c] : a.terms()) {
    SchubertIndex idx = partition_to_subset(term.partition, ctx);
    int q = term.q;
    for (long s = 0; s < m; ++s) {
      q += sigma_c_exponent(idx);
      idx = center_act(1, idx);
    }
    out.add(subset_to_partition(idx, ctx), q, c);
  }
  return out;
}

std::optional<int> graded_degree(const std::vector<SchubertIndex>& classes,
                                 const GrassmannianCtx& ctx) {
  int codim = 0;
  for (const auto& idx : classes) {
    codim += subset_to_partition(idx, ctx).size();
  }
  const int excess = codim - ctx.dimension();
  if (excess < 0 || excess % ctx.n != 0) {
    return std::nullopt;
  }
  return excess / ctx.n;
}

BigInt gw_invariant(const std::vector<SchubertIndex>& classes, int d, const GrassmannianCtx& ctx) {
  if (classes.empty()) {
    throw std::invalid_argument("gw_invariant: empty class list");
  }
  const auto forced = graded_degree(classes, ctx);
  if (!forced || *forced != d) {
    return 0;
  }
  QuantumClass acc = QuantumClass::unit(ctx);
  for (std::size_t k = 0; k + 1 < classes.size(); ++k) {
    acc = quantum_product(acc, QuantumClass::of(classes[k], ctx), d);
  }
  return acc.coefficient(subset_to_partition(dual_subset(classes.back()), ctx), d);
}

GwTuple symmetry_transport(const GwTuple& tuple, const std::vector<long>& shifts) {
  if (shifts.size() != tuple.subsets.size()) {
    throw std::invalid_argument("symmetry_transport: one shift per subset required");
  }
  if (tuple.subsets.empty()) {
    return tuple;
  }
  const long n = tuple.subsets.front().n();
  long total = 0;
  for (long m : shifts) {
    total += m;
  }
  if (total % n != 0) {
    throw std::invalid_argument("symmetry_transport: shifts do not multiply to the identity in Z/n");
  }
  GwTuple out;
  long weight_before = 0;
  long weight_after = 0;
  for (std::size_t k = 0; k < shifts.size(); ++k) {
    out.subsets.push_back(center_act(shifts[k], tuple.subsets[k]));
    weight_before += subset_weight(tuple.subsets[k]);
    weight_after += subset_weight(out.subsets.back());
  }
  const long diff = weight_before - weight_after;
  if (diff % n != 0) {
    throw std::logic_error("symmetry_transport: non-integral degree shift");
  }
  out.d = tuple.d + diff / n;
  return out;
}

}  // namespace qsc
