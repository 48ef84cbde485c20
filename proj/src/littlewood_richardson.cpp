#include "qsc/littlewood_richardson.hpp"

#include <algorithm>
#include <atomic>
#include <shared_mutex>
#include <stdexcept>
#include <tuple>

namespace qsc {

namespace {

// Backtracking over the skew cells of nu/lambda in reverse reading order
// (rows top to bottom, right to left within a row). Rows weakly increase,
// columns strictly increase and the reading word stays a lattice word.
class TableauCounter {
 public:
  TableauCounter(const Partition& lambda, const Partition& mu, const Partition& nu)
      : lambda_(lambda), nu_(nu), content_(mu.parts()) {
    for (std::size_t i = 0; i < nu.length(); ++i) {
      for (int j = nu[i] - 1; j >= lambda[i]; --j) {
        cells_.push_back({static_cast<int>(i), j});
      }
    }
    filling_.assign(nu.length(), std::vector<int>(static_cast<std::size_t>(nu.width()), 0));
    used_.assign(content_.size() + 1, 0);
  }

  std::uint64_t count() { return search(0); }

 private:
  struct Cell {
    int row;
    int col;
  };

  std::uint64_t search(std::size_t k) {
    if (k == cells_.size()) {
      return 1;
    }
    const auto [i, j] = cells_[k];
    const auto row = static_cast<std::size_t>(i);
    const auto col = static_cast<std::size_t>(j);
    int hi = static_cast<int>(content_.size());
    if (j + 1 < nu_[row]) {
      hi = std::min(hi, filling_[row][col + 1]);
    }
    // Entries in row i never exceed i + 1 in a lattice filling.
    hi = std::min(hi, i + 1);
    int lo = 1;
    if (i > 0 && j >= lambda_[row - 1] && j < nu_[row - 1]) {
      lo = filling_[row - 1][col] + 1;
    }
    std::uint64_t total = 0;
    for (int v = lo; v <= hi; ++v) {
      const auto vi = static_cast<std::size_t>(v);
      if (used_[vi] >= content_[vi - 1]) {
        continue;
      }
      if (v > 1 && used_[vi] + 1 > used_[vi - 1]) {
        continue;
      }
      ++used_[vi];
      filling_[row][col] = v;
      total += search(k + 1);
      --used_[vi];
    }
    filling_[row][col] = 0;
    return total;
  }

  const Partition& lambda_;
  const Partition& nu_;
  std::vector<int> content_;
  std::vector<Cell> cells_;
  std::vector<std::vector<int>> filling_;
  std::vector<int> used_;
};

using CacheKey = std::tuple<std::vector<int>, std::vector<int>, int>;

struct LrCache {
  std::shared_mutex mutex;
  std::map<CacheKey, LrTerms> entries;
};

LrCache& cache() {
  static LrCache instance;
  return instance;
}

std::atomic<bool> cache_enabled{true};

// All nu containing lambda with |nu| = |lambda| + remaining, nu_i <= lambda_i + mu_1
// and at most max_rows rows.
void enumerate_shapes(const Partition& lambda, int mu_width, int max_rows, int remaining,
                      std::vector<int>& cur, std::vector<Partition>& out) {
  const std::size_t i = cur.size();
  if (remaining == 0) {
    std::vector<int> nu = cur;
    for (std::size_t k = i; k < lambda.length(); ++k) {
      nu.push_back(lambda[k]);
    }
    out.emplace_back(std::move(nu));
    return;
  }
  if (static_cast<int>(i) >= max_rows) {
    return;
  }
  const int lo = lambda[i];
  int hi = lambda[i] + mu_width;
  if (i > 0) {
    hi = std::min(hi, cur.back());
  }
  for (int v = std::max(lo, 1); v <= hi && v - lo <= remaining; ++v) {
    cur.push_back(v);
    enumerate_shapes(lambda, mu_width, max_rows, remaining - (v - lo), cur, out);
    cur.pop_back();
  }
}

LrTerms compute_expansion(const Partition& lambda, const Partition& mu, int max_rows) {
  LrTerms out;
  if (static_cast<int>(lambda.length()) > max_rows || static_cast<int>(mu.length()) > max_rows) {
    return out;
  }
  std::vector<Partition> shapes;
  std::vector<int> cur;
  enumerate_shapes(lambda, mu.width(), max_rows, mu.size(), cur, shapes);
  for (const auto& nu : shapes) {
    if (!nu.contains(mu)) {
      continue;
    }
    const std::uint64_t c = lr_coefficient(lambda, mu, nu);
    if (c != 0) {
      out.emplace_back(nu, BigInt(c));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

}  // namespace

std::uint64_t lr_coefficient(const Partition& lambda, const Partition& mu, const Partition& nu) {
  if (nu.size() != lambda.size() + mu.size() || !nu.contains(lambda)) {
    return 0;
  }
  if (mu.empty()) {
    return 1;
  }
  TableauCounter counter(lambda, mu, nu);
  return counter.count();
}

LrTerms lr_expand(const Partition& lambda, const Partition& mu, int max_rows) {
  // Symmetric in the factors; enumerate against the smaller content.
  const bool swap = mu.size() > lambda.size() || (mu.size() == lambda.size() && mu > lambda);
  const Partition& outer = swap ? mu : lambda;
  const Partition& inner = swap ? lambda : mu;
  if (!cache_enabled.load(std::memory_order_relaxed)) {
    return compute_expansion(outer, inner, max_rows);
  }
  CacheKey key{outer.parts(), inner.parts(), max_rows};
  auto& c = cache();
  {
    std::shared_lock lock(c.mutex);
    if (auto it = c.entries.find(key); it != c.entries.end()) {
      return it->second;
    }
  }
  LrTerms terms = compute_expansion(outer, inner, max_rows);
  std::unique_lock lock(c.mutex);
  c.entries.emplace(std::move(key), terms);
  return terms;
}

void set_lr_cache_enabled(bool enabled) { cache_enabled.store(enabled); }

void clear_lr_cache() {
  auto& c = cache();
  std::unique_lock lock(c.mutex);
  c.entries.clear();
}

CohomologyClass::CohomologyClass(GrassmannianCtx ctx, const Partition& basis, BigInt coeff)
    : ctx_(ctx) {
  if (!ctx_.fits(basis)) {
    throw std::invalid_argument("partition " + to_string(basis) + " does not fit the box");
  }
  add(basis, coeff);
}

BigInt CohomologyClass::coefficient(const Partition& p) const {
  const auto it = terms_.find(p);
  return it == terms_.end() ? BigInt(0) : it->second;
}

void CohomologyClass::add(const Partition& p, const BigInt& coeff) {
  if (coeff == 0) {
    return;
  }
  auto [it, inserted] = terms_.try_emplace(p, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) {
      terms_.erase(it);
    }
  }
}

CohomologyClass classical_product(const CohomologyClass& a, const CohomologyClass& b) {
  if (!(a.ctx() == b.ctx())) {
    throw std::invalid_argument("classical_product: Grassmannian contexts differ");
  }
  const GrassmannianCtx& ctx = a.ctx();
  CohomologyClass out(ctx);
  for (const auto& [lambda, ca] : a.terms()) {
    for (const auto& [mu, cb] : b.terms()) {
      if (lambda.size() + mu.size() > ctx.dimension()) {
        continue;
      }
      for (const auto& [nu, c] : lr_expand(lambda, mu, ctx.r)) {
        if (ctx.fits(nu)) {
          out.add(nu, c * ca * cb);
        }
      }
    }
  }
  return out;
}

BigInt intersection_number(const std::vector<SchubertIndex>& classes, const GrassmannianCtx& ctx) {
  if (classes.empty()) {
    throw std::invalid_argument("intersection_number: empty class list");
  }
  int codim = 0;
  for (const auto& idx : classes) {
    codim += subset_to_partition(idx, ctx).size();
  }
  if (codim != ctx.dimension()) {
    return 0;
  }
  CohomologyClass acc(ctx, Partition{});
  for (const auto& idx : classes) {
    acc = classical_product(acc, CohomologyClass(ctx, subset_to_partition(idx, ctx)));
  }
  return acc.coefficient(ctx.point_class());
}

}  // namespace qsc
