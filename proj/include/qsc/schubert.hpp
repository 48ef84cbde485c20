#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "qsc/rational.hpp"

namespace qsc {

/// Weakly decreasing sequence of nonnegative integers with trailing zeros
/// trimmed. The empty sequence is the zero partition.
class Partition {
 public:
  Partition() = default;
  Partition(std::initializer_list<int> parts);
  explicit Partition(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  /// Number of nonzero rows.
  std::size_t length() const { return parts_.size(); }
  /// k-th row, 0-based; rows past the length read as zero.
  int operator[](std::size_t k) const { return k < parts_.size() ? parts_[k] : 0; }
  int width() const { return parts_.empty() ? 0 : parts_.front(); }
  int size() const;
  bool empty() const { return parts_.empty(); }

  /// Diagram containment.
  bool contains(const Partition& other) const;

  auto operator<=>(const Partition&) const = default;
  bool operator==(const Partition&) const = default;

 private:
  std::vector<int> parts_;
};

std::string to_string(const Partition& p);

/// Conjugate diagram.
Partition transpose(const Partition& p);

/// The r x (n - r) box of G(r, n).
struct GrassmannianCtx {
  int r = 1;
  int n = 2;

  GrassmannianCtx() = default;
  GrassmannianCtx(int rank, int dim);

  int rows() const { return r; }
  int cols() const { return n - r; }
  int dimension() const { return r * (n - r); }
  bool fits(const Partition& p) const;
  /// Box complement rotated by 180 degrees.
  Partition complement(const Partition& p) const;
  Partition point_class() const;
  /// G(n - r, n).
  GrassmannianCtx dual() const { return {n - r, n}; }
  /// All partitions in the box, in canonical (lexicographic) order.
  std::vector<Partition> basis() const;

  bool operator==(const GrassmannianCtx&) const = default;
};

/// Sorted r-subset of {1, ..., n}, 1-based.
class SchubertIndex {
 public:
  SchubertIndex() = default;
  SchubertIndex(int n, std::vector<int> elems);

  int n() const { return n_; }
  int rank() const { return static_cast<int>(elems_.size()); }
  const std::vector<int>& elems() const { return elems_; }
  int operator[](std::size_t k) const { return elems_[k]; }
  bool contains(int i) const;

  auto operator<=>(const SchubertIndex&) const = default;
  bool operator==(const SchubertIndex&) const = default;

 private:
  int n_ = 0;
  std::vector<int> elems_;
};

std::string to_string(const SchubertIndex& idx);

/// All r-subsets of {1..n} in lexicographic order.
std::vector<SchubertIndex> all_subsets(int r, int n);

/// lambda_j = n - r + j - i_j. Throws std::invalid_argument on a rank mismatch.
Partition subset_to_partition(const SchubertIndex& idx, const GrassmannianCtx& ctx);
/// Inverse of subset_to_partition; throws if the partition leaves the box.
SchubertIndex partition_to_subset(const Partition& p, const GrassmannianCtx& ctx);

/// *I = {n + 1 - i_r, ..., n + 1 - i_1}.
SchubertIndex dual_subset(const SchubertIndex& idx);
/// {1..n} minus *I; an (n - r)-subset.
SchubertIndex complement_subset(const SchubertIndex& idx);
/// Action of c^m: i -> ((i - m - 1) mod n) + 1, re-sorted.
SchubertIndex center_act(long m, const SchubertIndex& idx);
/// Sum of the elements.
long subset_weight(const SchubertIndex& idx);

/// A point of the fundamental alcove of SU(n).
class AlcovePoint {
 public:
  AlcovePoint() = default;
  /// Throws std::invalid_argument naming the first failed invariant.
  explicit AlcovePoint(VectorQ coords);

  static AlcovePoint zero(int n);

  int n() const { return static_cast<int>(coords_.size()); }
  const VectorQ& coords() const { return coords_; }
  const Rational& operator[](Eigen::Index k) const { return coords_[k]; }

  bool operator==(const AlcovePoint& other) const;

 private:
  VectorQ coords_;
};

/// Empty string when the vector is a valid alcove point, otherwise the name of
/// the failed invariant.
std::string alcove_violation(const VectorQ& coords);

/// c^m . (l_1, ..., l_n) = (l_2 + 1/n, ..., l_n + 1/n, l_1 - (n - 1)/n), m times.
AlcovePoint center_act_alcove(long m, const AlcovePoint& xi);

/// *xi = (-xi_n, ..., -xi_1).
AlcovePoint dual_point(const AlcovePoint& xi);

}  // namespace qsc
