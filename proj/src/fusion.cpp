#include "qsc/fusion.hpp"

#include <algorithm>
#include <stdexcept>

namespace qsc {

namespace {

void add_term(WeightSum& sum, const Partition& p, const BigInt& c) {
  if (c == 0) {
    return;
  }
  auto [it, inserted] = sum.try_emplace(p, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) {
      sum.erase(it);
    }
  }
}

// Sorts descending and returns the permutation sign, or 0 on a repeated entry.
int sort_with_sign(std::vector<long>& v) {
  int sign = 1;
  for (std::size_t i = 1; i < v.size(); ++i) {
    for (std::size_t j = i; j > 0 && v[j - 1] < v[j]; --j) {
      std::swap(v[j - 1], v[j]);
      sign = -sign;
    }
  }
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] == v[i - 1]) {
      return 0;
    }
  }
  return sign;
}

void require_level_weight(const Partition& w, int n, int level) {
  if (!is_level_weight(w, n, level)) {
    throw std::invalid_argument("weight " + to_string(w) + " is not a dominant SU(" +
                                std::to_string(n) + ") weight at level " + std::to_string(level));
  }
}

// Reflects the shifted weight into the open level-k alcove. Returns the
// weight and sign, or nullopt for a weight fixed by a reflection.
std::optional<std::pair<Partition, int>> affine_reflect(const Partition& w, int n, int level) {
  const long k = level + n;
  std::vector<long> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    v[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(i)] + (n - 1 - i);
  }
  int sign = 1;
  while (true) {
    const int s = sort_with_sign(v);
    if (s == 0) {
      return std::nullopt;
    }
    sign *= s;
    const long spread = v.front() - v.back();
    if (spread < k) {
      break;
    }
    if (spread == k) {
      return std::nullopt;
    }
    const long top = v.front();
    v.front() = v.back() + k;
    v.back() = top - k;
    sign = -sign;
  }
  std::vector<int> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] =
        static_cast<int>(v[static_cast<std::size_t>(i)] - v.back() - (n - 1 - i));
  }
  return std::pair{normalize_su_weight(out, n), sign};
}

}  // namespace

Partition normalize_su_weight(const std::vector<int>& weight, int n) {
  if (static_cast<int>(weight.size()) > n) {
    throw std::invalid_argument("SU(n) weight has more than n entries");
  }
  std::vector<int> w = weight;
  w.resize(static_cast<std::size_t>(n), 0);
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (w[i] > w[i - 1]) {
      throw std::invalid_argument("SU(n) weight is not dominant");
    }
  }
  const int last = w.back();
  for (auto& x : w) {
    x -= last;
  }
  return Partition(std::move(w));
}

bool is_level_weight(const Partition& weight, int n, int level) {
  return static_cast<int>(weight.length()) <= n - 1 && weight.width() <= level;
}

std::vector<Partition> level_weights(int n, int level) {
  std::vector<Partition> out;
  std::vector<int> cur;
  auto gen = [&](auto&& self, int hi) -> void {
    if (static_cast<int>(cur.size()) == n - 1) {
      out.emplace_back(cur);
      return;
    }
    for (int v = 0; v <= hi; ++v) {
      cur.push_back(v);
      self(self, v);
      cur.pop_back();
    }
  };
  gen(gen, level);
  std::sort(out.begin(), out.end());
  return out;
}

Partition dual_su_weight(const Partition& weight, int n) {
  std::vector<int> w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    w[static_cast<std::size_t>(i)] = weight[0] - weight[static_cast<std::size_t>(n - 1 - i)];
  }
  return Partition(std::move(w));
}

WeightSum su_tensor_product(const Partition& a, const Partition& b, int n) {
  WeightSum out;
  for (const auto& [nu, c] : lr_expand(a, b, n)) {
    add_term(out, normalize_su_weight(nu.parts(), n), c);
  }
  return out;
}

WeightSum fusion_product(const Partition& a, const Partition& b, int n, int level) {
  require_level_weight(a, n, level);
  require_level_weight(b, n, level);
  WeightSum out;
  for (const auto& [nu, c] : su_tensor_product(a, b, n)) {
    if (const auto reflected = affine_reflect(nu, n, level)) {
      add_term(out, reflected->first, reflected->second > 0 ? c : BigInt(-c));
    }
  }
  return out;
}

BigInt fusion_coefficient(const Partition& a, const Partition& b, const Partition& c, int n,
                          int level) {
  require_level_weight(c, n, level);
  const WeightSum prod = fusion_product(a, b, n, level);
  const auto it = prod.find(c);
  return it == prod.end() ? BigInt(0) : it->second;
}

WeightSum fusion_product(const std::vector<Partition>& factors, int n, int level) {
  WeightSum acc{{Partition{}, BigInt(1)}};
  for (const auto& f : factors) {
    WeightSum next;
    for (const auto& [w, c] : acc) {
      for (const auto& [v, k] : fusion_product(w, f, n, level)) {
        add_term(next, v, c * k);
      }
    }
    acc = std::move(next);
  }
  return acc;
}

WeightSum verlinde_ur_product(const WeightSum& a, const WeightSum& b, const GrassmannianCtx& ctx) {
  QuantumClass qa(ctx);
  QuantumClass qb(ctx);
  for (const auto& [w, c] : a) {
    if (!ctx.fits(w)) {
      throw std::invalid_argument("U(r) weight outside the level box");
    }
    qa.add(w, 0, c);
  }
  for (const auto& [w, c] : b) {
    if (!ctx.fits(w)) {
      throw std::invalid_argument("U(r) weight outside the level box");
    }
    qb.add(w, 0, c);
  }
  WeightSum out;
  const QuantumClass prod = quantum_product(qa, qb);
  for (const auto& [term, c] : prod.terms()) {
    add_term(out, term.partition, c);
  }
  return out;
}

WeightSum verlinde_ur_product_direct(const WeightSum& a, const WeightSum& b,
                                     const GrassmannianCtx& ctx) {
  const int r = ctx.r;
  const int n = ctx.n;
  WeightSum out;
  for (const auto& [wa, ca] : a) {
    for (const auto& [wb, cb] : b) {
      if (!ctx.fits(wa) || !ctx.fits(wb)) {
        throw std::invalid_argument("U(r) weight outside the level box");
      }
      for (const auto& [rho, c] : lr_expand(wa, wb, r)) {
        std::vector<long> beta(static_cast<std::size_t>(r));
        long shifts = 0;
        for (int j = 0; j < r; ++j) {
          const long bj = rho[static_cast<std::size_t>(j)] + r - 1 - j;
          shifts += bj / n;
          beta[static_cast<std::size_t>(j)] = bj % n;
        }
        int sign = sort_with_sign(beta);
        if (sign == 0) {
          continue;
        }
        if ((r - 1) % 2 != 0 && shifts % 2 != 0) {
          sign = -sign;
        }
        std::vector<int> nu(static_cast<std::size_t>(r));
        for (int j = 0; j < r; ++j) {
          nu[static_cast<std::size_t>(j)] = static_cast<int>(beta[static_cast<std::size_t>(j)]) - (r - 1 - j);
        }
        const BigInt term = c * ca * cb;
        add_term(out, Partition(std::move(nu)), sign > 0 ? term : BigInt(-term));
      }
    }
  }
  return out;
}

std::optional<Partition> alcove_to_weight(const AlcovePoint& xi, int level) {
  const int n = xi.n();
  std::vector<int> w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const Rational v = (xi[i] - xi[n - 1]) * level;
    if (boost::multiprecision::denominator(v) != 1) {
      return std::nullopt;
    }
    w[static_cast<std::size_t>(i)] = boost::multiprecision::numerator(v).convert_to<int>();
  }
  return Partition(std::move(w));
}

AlcovePoint weight_to_alcove(const Partition& weight, int n, int level) {
  if (level <= 0) {
    throw std::invalid_argument("level must be positive");
  }
  Rational mean = 0;
  for (int i = 0; i < n; ++i) {
    mean += weight[static_cast<std::size_t>(i)];
  }
  mean /= n;
  VectorQ v(n);
  for (int i = 0; i < n; ++i) {
    v[i] = (Rational(weight[static_cast<std::size_t>(i)]) - mean) / level;
  }
  return AlcovePoint(std::move(v));
}

FusionSupport fusion_membership(const std::vector<AlcovePoint>& tuple, int level) {
  if (tuple.empty() || level <= 0) {
    return FusionSupport::inapplicable;
  }
  const int n = tuple.front().n();
  std::vector<Partition> weights;
  for (const auto& xi : tuple) {
    if (xi.n() != n) {
      throw std::invalid_argument("fusion_membership: points of different dimension");
    }
    auto w = alcove_to_weight(xi, level);
    if (!w) {
      return FusionSupport::inapplicable;
    }
    weights.push_back(std::move(*w));
  }
  const Partition target = dual_su_weight(weights.back(), n);
  weights.pop_back();
  const WeightSum prod = fusion_product(weights, n, level);
  const auto it = prod.find(target);
  return it != prod.end() && it->second > 0 ? FusionSupport::supported : FusionSupport::unsupported;
}

}  // namespace qsc
