#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qsc/polytope.hpp"
#include "qsc/schubert.hpp"

namespace qsc::numeric {

using MatrixC = Eigen::MatrixXcd;
using Rng = std::mt19937_64;

/// Generator for one trial, derived from (master seed, trial index) only.
Rng trial_rng(std::uint64_t seed, std::uint64_t index);

/// Haar-distributed unitary: complex Gaussian, QR, R-diagonal phases folded into Q.
MatrixC haar_unitary(int n, Rng& rng);
/// haar_unitary divided by a scalar n-th root of its determinant.
MatrixC haar_special_unitary(int n, Rng& rng);

double unitarity_defect(const MatrixC& u);

/// Alcove coordinates of a special unitary matrix: eigenphases in [0, 1)
/// sorted descending, with 1 subtracted from the m largest where m is the
/// (integral) phase sum. Ties keep a stable order. Throws InputError when the
/// matrix is not unitary with determinant 1 to within `tol`.
Eigen::VectorXd eigen_alcove(const MatrixC& a, double tol = 1e-9);

/// Rounds to multiples of 1/denominator; throws InputError when the rounded
/// vector is not an alcove point.
AlcovePoint rationalize(const Eigen::VectorXd& coords, long denominator);

MatrixC alcove_diagonal(const AlcovePoint& xi);

/// Q diag(exp(2 pi i xi)) Q^* with Q Haar, drawn from `seed`.
MatrixC sample_conjugacy_class(const AlcovePoint& xi, std::uint64_t seed);

struct SampleViolation {
  std::uint64_t trial = 0;
  std::size_t inequality = 0;
  double excess = 0;

  bool operator==(const SampleViolation&) const = default;
};

struct SampleReport {
  std::size_t trials = 0;
  double tolerance = 0;
  std::size_t violation_count = 0;
  std::vector<SampleViolation> violations;  // first max_recorded, by trial order
  double max_violation = 0;                 // max(0, lhs - d) over all samples

  bool operator==(const SampleReport&) const = default;
};

struct VerifyOptions {
  std::size_t trials = 10000;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  unsigned jobs = 1;
  std::size_t max_recorded = 1000;
};

/// Alcove coordinates of (A_1, ..., A_l) with A_1..A_{l-1} Haar in SU(n) and
/// A_l = (A_1 ... A_{l-1})^{-1}.
std::vector<Eigen::VectorXd> sample_product_tuple(int n, int l, Rng& rng);
/// Sorted eigenvalues of traceless Gaussian Hermitian H_1..H_{l-1} and
/// H_l = -(H_1 + ... + H_{l-1}).
std::vector<Eigen::VectorXd> sample_sum_tuple(int n, int l, Rng& rng);

/// Requires a multiplicative system.
SampleReport verify_products(const InequalitySystem& sys, const VerifyOptions& options);
/// Requires an additive system.
SampleReport verify_sums(const InequalitySystem& sys, const VerifyOptions& options);

struct RealizeOptions {
  double tol = 1e-6;
  int max_iter = 4000;
  int restarts = 8;
  std::uint64_t seed = 0;
};

struct RealizeResult {
  bool success = false;
  double residual = 0;  // best ||A_1 ... A_l - I||_F over all restarts
  int restarts_used = 0;
  std::vector<MatrixC> matrices;  // best A_k found
};

/// Searches for A_k in the conjugacy classes of the tuple with A_1 ... A_l = I
/// by gradient descent over the conjugating unitaries with QR retraction.
/// Failure does not certify non-membership.
RealizeResult realize(const std::vector<AlcovePoint>& tuple, const RealizeOptions& options);

/// Objective and its Riemannian gradient (skew-Hermitian, one per factor);
/// exposed for gradient checks.
double realize_objective(const std::vector<MatrixC>& conj, const std::vector<MatrixC>& diag,
                         std::vector<MatrixC>* gradient);

}  // namespace qsc::numeric
