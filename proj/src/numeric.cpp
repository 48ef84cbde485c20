#include "qsc/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace qsc::numeric {

namespace {

using cd = std::complex<double>;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

MatrixC gaussian(int n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  MatrixC g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      g(i, j) = cd(normal(rng), normal(rng));
    }
  }
  return g;
}

// Q factor with the phases of diag(R) absorbed, so the result does not
// depend on the QR sign convention.
MatrixC q_factor(const MatrixC& m) {
  Eigen::HouseholderQR<MatrixC> qr(m);
  MatrixC q = qr.householderQ();
  const MatrixC& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    const cd d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0) {
      q.col(j) *= d / mag;
    }
  }
  return q;
}

template <typename Sampler>
SampleReport run_trials(const InequalitySystem& sys, const VerifyOptions& options, Sampler sample) {
  const std::size_t count = sys.inequalities.size();
  struct TrialResult {
    double worst = 0;
    std::vector<SampleViolation> violations;
  };
  std::vector<TrialResult> results(options.trials);
  auto work = [&](std::size_t t) {
    Rng rng = trial_rng(options.seed, t);
    const std::vector<Eigen::VectorXd> pts = sample(rng);
    TrialResult& res = results[t];
    for (std::size_t k = 0; k < count; ++k) {
      const Inequality& ineq = sys.inequalities[k];
      const double excess = evaluate_lhs<double>(ineq, pts) - ineq.d;
      res.worst = std::max(res.worst, excess);
      if (excess > options.tol) {
        res.violations.push_back({t, k, excess});
      }
    }
  };
  const unsigned jobs =
      std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(options.trials)));
  if (jobs <= 1) {
    for (std::size_t t = 0; t < options.trials; ++t) {
      work(t);
    }
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < jobs; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t t = w; t < options.trials; t += jobs) {
          work(t);
        }
      });
    }
    for (auto& th : pool) {
      th.join();
    }
  }
  SampleReport report;
  report.trials = options.trials;
  report.tolerance = options.tol;
  for (const auto& res : results) {
    report.max_violation = std::max(report.max_violation, res.worst);
    report.violation_count += res.violations.size();
    for (const auto& v : res.violations) {
      if (report.violations.size() < options.max_recorded) {
        report.violations.push_back(v);
      }
    }
  }
  return report;
}

}  // namespace

Rng trial_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{splitmix64(seed), splitmix64(seed ^ splitmix64(index + 1))};
  return Rng(seq);
}

MatrixC haar_unitary(int n, Rng& rng) { return q_factor(gaussian(n, rng)); }

MatrixC haar_special_unitary(int n, Rng& rng) {
  MatrixC u = haar_unitary(n, rng);
  const cd det = u.determinant();
  u /= std::polar(1.0, std::arg(det) / n);
  return u;
}

double unitarity_defect(const MatrixC& u) {
  return (u.adjoint() * u - MatrixC::Identity(u.rows(), u.cols())).norm();
}

Eigen::VectorXd eigen_alcove(const MatrixC& a, double tol) {
  if (a.rows() != a.cols() || a.rows() < 2) {
    throw InputError("eigen_alcove: expected a square matrix of size at least 2");
  }
  if (unitarity_defect(a) > tol) {
    throw InputError("eigen_alcove: matrix is not unitary (defect " +
                     std::to_string(unitarity_defect(a)) + ")");
  }
  if (std::abs(a.determinant() - cd(1.0, 0.0)) > tol) {
    throw InputError("eigen_alcove: determinant is not 1");
  }
  const Eigen::Index n = a.rows();
  Eigen::ComplexEigenSolver<MatrixC> solver(a, false);
  std::vector<double> theta(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    double t = std::arg(solver.eigenvalues()[k]) / (2 * M_PI);
    if (t < 0) {
      t += 1;
    }
    if (t >= 1) {
      t -= 1;
    }
    theta[static_cast<std::size_t>(k)] = t;
  }
  std::stable_sort(theta.begin(), theta.end(), std::greater<>());
  const long m = std::lround(std::accumulate(theta.begin(), theta.end(), 0.0));
  for (long k = 0; k < m && k < n; ++k) {
    theta[static_cast<std::size_t>(k)] -= 1;
  }
  std::stable_sort(theta.begin(), theta.end(), std::greater<>());
  Eigen::VectorXd out(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out[k] = theta[static_cast<std::size_t>(k)];
  }
  return out;
}

AlcovePoint rationalize(const Eigen::VectorXd& coords, long denominator) {
  VectorQ v(coords.size());
  for (Eigen::Index k = 0; k < coords.size(); ++k) {
    v[k] = Rational(std::llround(coords[k] * static_cast<double>(denominator)), denominator);
  }
  const std::string failed = alcove_violation(v);
  if (!failed.empty()) {
    throw InputError("rationalized point is not in the alcove: " + failed);
  }
  return AlcovePoint(std::move(v));
}

MatrixC alcove_diagonal(const AlcovePoint& xi) {
  MatrixC d = MatrixC::Zero(xi.n(), xi.n());
  for (int k = 0; k < xi.n(); ++k) {
    d(k, k) = std::polar(1.0, 2 * M_PI * xi[k].convert_to<double>());
  }
  return d;
}

MatrixC sample_conjugacy_class(const AlcovePoint& xi, std::uint64_t seed) {
  Rng rng = trial_rng(seed, 0);
  const MatrixC q = haar_unitary(xi.n(), rng);
  return q * alcove_diagonal(xi) * q.adjoint();
}

std::vector<Eigen::VectorXd> sample_product_tuple(int n, int l, Rng& rng) {
  std::vector<Eigen::VectorXd> pts;
  MatrixC prod = MatrixC::Identity(n, n);
  for (int k = 0; k + 1 < l; ++k) {
    const MatrixC a = haar_special_unitary(n, rng);
    pts.push_back(eigen_alcove(a));
    prod = prod * a;
  }
  pts.push_back(eigen_alcove(prod.adjoint()));
  return pts;
}

std::vector<Eigen::VectorXd> sample_sum_tuple(int n, int l, Rng& rng) {
  std::vector<Eigen::VectorXd> pts;
  MatrixC total = MatrixC::Zero(n, n);
  auto sorted_eigs = [](const MatrixC& h) {
    Eigen::SelfAdjointEigenSolver<MatrixC> solver(h, Eigen::EigenvaluesOnly);
    return Eigen::VectorXd(solver.eigenvalues().reverse());
  };
  for (int k = 0; k + 1 < l; ++k) {
    const MatrixC g = gaussian(n, rng);
    MatrixC h = (g + g.adjoint()) / 2.0;
    h -= (h.trace() / static_cast<double>(n)) * MatrixC::Identity(n, n);
    pts.push_back(sorted_eigs(h));
    total += h;
  }
  pts.push_back(sorted_eigs(-total));
  return pts;
}

SampleReport verify_products(const InequalitySystem& sys, const VerifyOptions& options) {
  if (sys.kind != SystemKind::multiplicative) {
    throw std::invalid_argument("verify_products requires a multiplicative system");
  }
  return run_trials(sys, options,
                    [&](Rng& rng) { return sample_product_tuple(sys.n, sys.l, rng); });
}

SampleReport verify_sums(const InequalitySystem& sys, const VerifyOptions& options) {
  if (sys.kind != SystemKind::additive) {
    throw std::invalid_argument("verify_sums requires an additive system");
  }
  return run_trials(sys, options, [&](Rng& rng) { return sample_sum_tuple(sys.n, sys.l, rng); });
}

double realize_objective(const std::vector<MatrixC>& conj, const std::vector<MatrixC>& diag,
                         std::vector<MatrixC>* gradient) {
  const std::size_t l = conj.size();
  const Eigen::Index n = conj.front().rows();
  std::vector<MatrixC> a(l);
  for (std::size_t k = 0; k < l; ++k) {
    a[k] = conj[k] * diag[k] * conj[k].adjoint();
  }
  // prefix[k] = A_1 ... A_k (prefix[0] = I), suffix[k] = A_{k+1} ... A_l.
  std::vector<MatrixC> prefix(l + 1, MatrixC::Identity(n, n));
  std::vector<MatrixC> suffix(l + 1, MatrixC::Identity(n, n));
  for (std::size_t k = 0; k < l; ++k) {
    prefix[k + 1] = prefix[k] * a[k];
  }
  for (std::size_t k = l; k-- > 0;) {
    suffix[k] = a[k] * suffix[k + 1];
  }
  const MatrixC err = prefix[l] - MatrixC::Identity(n, n);
  const double f = err.squaredNorm();
  if (gradient != nullptr) {
    gradient->resize(l);
    const MatrixC err_adj = err.adjoint();
    for (std::size_t k = 0; k < l; ++k) {
      // Perturbing A_k by [W, A_k] with W skew-Hermitian changes f by
      // 2 Re tr(W M_k); the gradient is the skew part M_k^* - M_k.
      const MatrixC inner = suffix[k + 1] * err_adj * prefix[k];
      const MatrixC m = a[k] * inner - inner * a[k];
      (*gradient)[k] = m.adjoint() - m;
    }
  }
  return f;
}

RealizeResult realize(const std::vector<AlcovePoint>& tuple, const RealizeOptions& options) {
  if (tuple.empty()) {
    throw std::invalid_argument("realize: empty tuple");
  }
  const int n = tuple.front().n();
  std::vector<MatrixC> diag;
  bool all_zero = true;
  for (const auto& xi : tuple) {
    if (xi.n() != n) {
      throw InputError("realize: points of different dimension");
    }
    diag.push_back(alcove_diagonal(xi));
    for (int k = 0; k < n; ++k) {
      all_zero = all_zero && xi[k] == 0;
    }
  }
  RealizeResult best;
  best.residual = std::numeric_limits<double>::infinity();
  const std::size_t l = tuple.size();
  if (all_zero) {
    best.success = true;
    best.residual = 0;
    best.matrices.assign(l, MatrixC::Identity(n, n));
    return best;
  }
  const double target = options.tol * options.tol;
  for (int attempt = 0; attempt < options.restarts; ++attempt) {
    Rng rng = trial_rng(options.seed, static_cast<std::uint64_t>(attempt));
    std::vector<MatrixC> q(l);
    for (auto& m : q) {
      m = haar_unitary(n, rng);
    }
    std::vector<MatrixC> grad;
    double f = realize_objective(q, diag, &grad);
    double step = 0.1;
    for (int iter = 0; iter < options.max_iter && f >= target; ++iter) {
      double gnorm2 = 0;
      for (const auto& g : grad) {
        gnorm2 += g.squaredNorm();
      }
      if (gnorm2 < 1e-30) {
        break;
      }
      bool accepted = false;
      for (int bt = 0; bt < 60; ++bt) {
        std::vector<MatrixC> trial(l);
        for (std::size_t k = 0; k < l; ++k) {
          trial[k] = q_factor((MatrixC::Identity(n, n) - step * grad[k]) * q[k]);
        }
        std::vector<MatrixC> trial_grad;
        const double ft = realize_objective(trial, diag, &trial_grad);
        if (ft <= f - 1e-4 * step * gnorm2) {
          q = std::move(trial);
          grad = std::move(trial_grad);
          f = ft;
          step *= 2.0;
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      if (!accepted) {
        break;
      }
    }
    const double residual = std::sqrt(f);
    if (residual < best.residual) {
      best.residual = residual;
      best.matrices.resize(l);
      for (std::size_t k = 0; k < l; ++k) {
        best.matrices[k] = q[k] * diag[k] * q[k].adjoint();
      }
    }
    best.restarts_used = attempt + 1;
    if (f < target) {
      best.success = true;
      break;
    }
  }
  return best;
}

}  // namespace qsc::numeric
