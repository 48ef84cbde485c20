#include "qsc/schubert.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace qsc {

namespace {

void canonicalize(std::vector<int>& parts) {
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (parts[k] < 0) {
      throw std::invalid_argument("partition has a negative part");
    }
    if (k > 0 && parts[k] > parts[k - 1]) {
      throw std::invalid_argument("partition is not weakly decreasing");
    }
  }
  while (!parts.empty() && parts.back() == 0) {
    parts.pop_back();
  }
}

long positive_mod(long a, long n) {
  const long m = a % n;
  return m < 0 ? m + n : m;
}

}  // namespace

Partition::Partition(std::initializer_list<int> parts) : parts_(parts) {
  canonicalize(parts_);
}

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  canonicalize(parts_);
}

int Partition::size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

bool Partition::contains(const Partition& other) const {
  if (other.length() > length()) {
    return false;
  }
  for (std::size_t k = 0; k < other.length(); ++k) {
    if (other.parts_[k] > parts_[k]) {
      return false;
    }
  }
  return true;
}

std::string to_string(const Partition& p) {
  std::string out = "(";
  for (std::size_t k = 0; k < p.length(); ++k) {
    if (k > 0) {
      out += ",";
    }
    out += std::to_string(p[k]);
  }
  return out + ")";
}

Partition transpose(const Partition& p) {
  std::vector<int> cols(static_cast<std::size_t>(p.width()), 0);
  for (int row : p.parts()) {
    for (int j = 0; j < row; ++j) {
      ++cols[static_cast<std::size_t>(j)];
    }
  }
  return Partition(std::move(cols));
}

GrassmannianCtx::GrassmannianCtx(int rank, int dim) : r(rank), n(dim) {
  if (rank < 1 || rank > dim - 1) {
    throw std::invalid_argument("Grassmannian requires 1 <= r <= n - 1 (got r=" +
                                std::to_string(rank) + ", n=" + std::to_string(dim) + ")");
  }
}

bool GrassmannianCtx::fits(const Partition& p) const {
  return static_cast<int>(p.length()) <= r && p.width() <= cols();
}

Partition GrassmannianCtx::complement(const Partition& p) const {
  if (!fits(p)) {
    throw std::invalid_argument("partition " + to_string(p) + " does not fit the box");
  }
  std::vector<int> parts(static_cast<std::size_t>(r));
  for (int j = 0; j < r; ++j) {
    parts[static_cast<std::size_t>(j)] = cols() - p[static_cast<std::size_t>(r - 1 - j)];
  }
  return Partition(std::move(parts));
}

Partition GrassmannianCtx::point_class() const {
  return Partition(std::vector<int>(static_cast<std::size_t>(r), cols()));
}

std::vector<Partition> GrassmannianCtx::basis() const {
  std::vector<Partition> out;
  for (const auto& idx : all_subsets(r, n)) {
    out.push_back(subset_to_partition(idx, *this));
  }
  std::sort(out.begin(), out.end());
  return out;
}

SchubertIndex::SchubertIndex(int n, std::vector<int> elems) : n_(n), elems_(std::move(elems)) {
  if (elems_.empty() || static_cast<int>(elems_.size()) > n - 1) {
    throw std::invalid_argument("Schubert index must have 1 <= r <= n - 1 elements");
  }
  for (std::size_t k = 0; k < elems_.size(); ++k) {
    if (elems_[k] < 1 || elems_[k] > n) {
      throw std::invalid_argument("Schubert index element out of range 1..n");
    }
    if (k > 0 && elems_[k] <= elems_[k - 1]) {
      throw std::invalid_argument("Schubert index must be strictly increasing");
    }
  }
}

bool SchubertIndex::contains(int i) const {
  return std::binary_search(elems_.begin(), elems_.end(), i);
}

std::string to_string(const SchubertIndex& idx) {
  std::string out = "{";
  for (std::size_t k = 0; k < idx.elems().size(); ++k) {
    if (k > 0) {
      out += ",";
    }
    out += std::to_string(idx[k]);
  }
  return out + "}";
}

std::vector<SchubertIndex> all_subsets(int r, int n) {
  std::vector<SchubertIndex> out;
  std::vector<int> cur(static_cast<std::size_t>(r));
  std::iota(cur.begin(), cur.end(), 1);
  while (true) {
    out.emplace_back(n, cur);
    int k = r - 1;
    while (k >= 0 && cur[static_cast<std::size_t>(k)] == n - r + k + 1) {
      --k;
    }
    if (k < 0) {
      break;
    }
    ++cur[static_cast<std::size_t>(k)];
    for (int j = k + 1; j < r; ++j) {
      cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return out;
}

Partition subset_to_partition(const SchubertIndex& idx, const GrassmannianCtx& ctx) {
  if (idx.rank() != ctx.r || idx.n() != ctx.n) {
    throw std::invalid_argument("Schubert index " + to_string(idx) + " is not an index of G(" +
                                std::to_string(ctx.r) + "," + std::to_string(ctx.n) + ")");
  }
  std::vector<int> parts(static_cast<std::size_t>(ctx.r));
  for (int j = 1; j <= ctx.r; ++j) {
    parts[static_cast<std::size_t>(j - 1)] = ctx.n - ctx.r + j - idx[static_cast<std::size_t>(j - 1)];
  }
  return Partition(std::move(parts));
}

SchubertIndex partition_to_subset(const Partition& p, const GrassmannianCtx& ctx) {
  if (!ctx.fits(p)) {
    throw std::invalid_argument("partition " + to_string(p) + " does not fit the " +
                                std::to_string(ctx.r) + "x" + std::to_string(ctx.cols()) + " box");
  }
  std::vector<int> elems(static_cast<std::size_t>(ctx.r));
  for (int j = 1; j <= ctx.r; ++j) {
    elems[static_cast<std::size_t>(j - 1)] = ctx.n - ctx.r + j - p[static_cast<std::size_t>(j - 1)];
  }
  return SchubertIndex(ctx.n, std::move(elems));
}

SchubertIndex dual_subset(const SchubertIndex& idx) {
  std::vector<int> elems;
  elems.reserve(idx.elems().size());
  for (auto it = idx.elems().rbegin(); it != idx.elems().rend(); ++it) {
    elems.push_back(idx.n() + 1 - *it);
  }
  return SchubertIndex(idx.n(), std::move(elems));
}

SchubertIndex complement_subset(const SchubertIndex& idx) {
  const SchubertIndex dual = dual_subset(idx);
  std::vector<int> elems;
  for (int i = 1; i <= idx.n(); ++i) {
    if (!dual.contains(i)) {
      elems.push_back(i);
    }
  }
  return SchubertIndex(idx.n(), std::move(elems));
}

SchubertIndex center_act(long m, const SchubertIndex& idx) {
  const long n = idx.n();
  std::vector<int> elems;
  elems.reserve(idx.elems().size());
  for (int i : idx.elems()) {
    elems.push_back(static_cast<int>(positive_mod(i - m - 1, n) + 1));
  }
  std::sort(elems.begin(), elems.end());
  return SchubertIndex(idx.n(), std::move(elems));
}

long subset_weight(const SchubertIndex& idx) {
  return std::accumulate(idx.elems().begin(), idx.elems().end(), 0L);
}

std::string alcove_violation(const VectorQ& coords) {
  const Eigen::Index n = coords.size();
  if (n < 2) {
    return "dimension n >= 2";
  }
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (coords[k] < coords[k + 1]) {
      return "weakly decreasing (coordinate " + std::to_string(k + 1) + " < coordinate " +
             std::to_string(k + 2) + ")";
    }
  }
  Rational sum = 0;
  for (Eigen::Index k = 0; k < n; ++k) {
    sum += coords[k];
  }
  if (sum != 0) {
    return "trace zero (sum is " + to_string(sum) + ")";
  }
  if (coords[0] - coords[n - 1] > 1) {
    return "spread at most 1 (first minus last is " + to_string(coords[0] - coords[n - 1]) + ")";
  }
  return {};
}

AlcovePoint::AlcovePoint(VectorQ coords) : coords_(std::move(coords)) {
  const std::string failed = alcove_violation(coords_);
  if (!failed.empty()) {
    throw std::invalid_argument("not an alcove point: " + failed);
  }
}

AlcovePoint AlcovePoint::zero(int n) {
  VectorQ z(n);
  for (int k = 0; k < n; ++k) {
    z[k] = 0;
  }
  return AlcovePoint(std::move(z));
}

bool AlcovePoint::operator==(const AlcovePoint& other) const {
  if (coords_.size() != other.coords_.size()) {
    return false;
  }
  for (Eigen::Index k = 0; k < coords_.size(); ++k) {
    if (coords_[k] != other.coords_[k]) {
      return false;
    }
  }
  return true;
}

AlcovePoint center_act_alcove(long m, const AlcovePoint& xi) {
  const int n = xi.n();
  const long steps = positive_mod(m, n);
  VectorQ cur = xi.coords();
  const Rational shift(1, n);
  for (long s = 0; s < steps; ++s) {
    VectorQ next(n);
    for (int k = 0; k + 1 < n; ++k) {
      next[k] = cur[k + 1] + shift;
    }
    next[n - 1] = cur[0] - Rational(n - 1, n);
    cur = std::move(next);
  }
  return AlcovePoint(std::move(cur));
}

AlcovePoint dual_point(const AlcovePoint& xi) {
  const int n = xi.n();
  VectorQ out(n);
  for (int k = 0; k < n; ++k) {
    out[k] = -xi[n - 1 - k];
  }
  return AlcovePoint(std::move(out));
}

}  // namespace qsc
