// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.
// Tolerances and time limits are fixed below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qsc/fusion.hpp"
#include "qsc/numeric.hpp"
#include "qsc/polytope.hpp"
#include "qsc/quantum.hpp"

using namespace qsc;

namespace {

constexpr double kSampleTol = 1e-9;      // floating verification
constexpr double kRealizeTol = 1e-6;     // realizer residual for members
constexpr double kSeparation = 1e-3;     // realizer residual floor for non-members
constexpr double kInteriorSlack = 1e-2;  // interior points: every slack above this
constexpr double kOutsideExcess = 2e-2;  // non-members: some excess at least this
constexpr std::size_t kTrials = 10000;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double limit_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_s > 0 && secs > limit_s) {
    out.pass = false;
    out.detail += " [over time limit]";
  }
  if (!out.pass) {
    ++failures;
  }
  char timing[64];
  if (limit_s > 0) {
    std::snprintf(timing, sizeof timing, "%.2fs / %.0fs", secs, limit_s);
  } else {
    std::snprintf(timing, sizeof timing, "%.2fs", secs);
  }
  std::printf("%s  AC-%02d  %-34s %-16s %s\n", out.pass ? "PASS" : "FAIL", id, name, timing, out.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

std::vector<LinearInequality> linear(const InequalitySystem& sys) {
  std::vector<LinearInequality> out;
  for (const auto& q : sys.inequalities) {
    out.push_back(to_linear(q));
  }
  return out;
}

SchubertIndex complement_of(int n, int i) {
  std::vector<int> e;
  for (int k = 1; k <= n; ++k) {
    if (k != i) {
      e.push_back(k);
    }
  }
  return {n, e};
}

bool contains_record(const InequalitySystem& sys, const std::vector<SchubertIndex>& subsets, int d) {
  return std::any_of(sys.inequalities.begin(), sys.inequalities.end(),
                     [&](const Inequality& q) { return q.subsets == subsets && q.d == d; });
}

// Random alcove point with coordinates in (1/(n*den)) Z.
VectorQ random_alcove(int n, int den, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dist(-den, den);
  while (true) {
    std::vector<int> v(static_cast<std::size_t>(n));
    for (auto& x : v) {
      x = dist(rng);
    }
    std::sort(v.rbegin(), v.rend());
    int sum = 0;
    for (int x : v) {
      sum += x;
    }
    VectorQ out(n);
    for (int i = 0; i < n; ++i) {
      out[i] = Rational(n * v[static_cast<std::size_t>(i)] - sum, n * den);
    }
    if (alcove_violation(out).empty()) {
      return out;
    }
  }
}

// Smallest slack d - lhs over the system (negative when violated).
Rational min_slack(const InequalitySystem& sys, const std::vector<VectorQ>& pts) {
  Rational best = 1000;
  for (const auto& q : sys.inequalities) {
    best = std::min(best, Rational(q.d) - evaluate_lhs<Rational>(q, pts));
  }
  return best;
}

// ---------------------------------------------------------------------------

Outcome su2_three_point() {
  const auto sys = generate_multiplicative(2, 3);
  std::vector<LinearInequality> expect;
  for (int a = 0; a < 3; ++a) {
    LinearInequality q{VectorQ::Zero(6), 0};  // t_a <= t_b + t_c
    for (int k = 0; k < 3; ++k) {
      q.coeffs[2 * k] = k == a ? 1 : -1;
    }
    expect.push_back(q);
  }
  LinearInequality total{VectorQ::Zero(6), 1};  // t_1 + t_2 + t_3 <= 1
  total.coeffs[0] = total.coeffs[2] = total.coeffs[4] = 1;
  expect.push_back(total);
  const bool eq = lp_equivalent(linear(sys), expect, SystemKind::multiplicative, 2, 3);
  return {eq, std::to_string(sys.inequalities.size()) + " records, exact LP equivalence " + (eq ? "holds" : "fails")};
}

Outcome sigma_c_power() {
  std::size_t checked = 0;
  for (const auto& [r, n] : std::vector<std::pair<int, int>>{{1, 3}, {2, 4}, {2, 5}, {3, 6}}) {
    const GrassmannianCtx ctx(r, n);
    const QuantumClass c(ctx, Partition(std::vector<int>(static_cast<std::size_t>(r), 1)));
    QuantumClass power = QuantumClass::unit(ctx);
    for (int k = 0; k < n; ++k) {
      power = quantum_product(power, c);
    }
    if (power != QuantumClass(ctx, Partition{}, r)) {
      return {false, "sigma_c^n != q^r in G(" + std::to_string(r) + "," + std::to_string(n) + ")"};
    }
    for (const auto& b : ctx.basis()) {
      QuantumClass acc(ctx, b);
      for (int k = 0; k < n; ++k) {
        acc = quantum_product(acc, c);
      }
      ++checked;
      if (acc != QuantumClass(ctx, b, r)) {
        return {false, "sigma_c^n * sigma_" + to_string(b) + " != q^r sigma_" + to_string(b)};
      }
    }
  }
  return {true, "4 Grassmannians, " + std::to_string(checked) + " basis classes"};
}

Outcome sigma_c_closed_form() {
  std::size_t checked = 0;
  for (const auto& [r, n] : std::vector<std::pair<int, int>>{{2, 4}, {2, 5}, {3, 6}}) {
    const GrassmannianCtx ctx(r, n);
    const QuantumClass c(ctx, Partition(std::vector<int>(static_cast<std::size_t>(r), 1)));
    for (const auto& b : ctx.basis()) {
      ++checked;
      if (sigma_c_multiply(1, QuantumClass(ctx, b)) != quantum_product(c, QuantumClass(ctx, b))) {
        return {false, "mismatch at " + to_string(b) + " in G(" + std::to_string(r) + "," + std::to_string(n) + ")"};
      }
    }
  }
  return {true, std::to_string(checked) + " basis classes"};
}

Outcome degree_zero_classical() {
  std::size_t checked = 0;
  for (int n = 2; n <= 6; ++n) {
    for (int r = 1; r < n; ++r) {
      const GrassmannianCtx ctx(r, n);
      for (const auto& a : ctx.basis()) {
        for (const auto& b : ctx.basis()) {
          ++checked;
          if (quantum_product({ctx, a}, {ctx, b}).degree_zero_part() != classical_product({ctx, a}, {ctx, b})) {
            return {false, to_string(a) + " * " + to_string(b) + " in G(" + std::to_string(r) + "," +
                               std::to_string(n) + ")"};
          }
        }
      }
    }
  }
  return {true, std::to_string(checked) + " products, n <= 6"};
}

Outcome center_symmetry() {
  std::size_t checked = 0;
  for (int n = 2; n <= 4; ++n) {
    const auto sys = generate_multiplicative(n, 3);
    const auto group = center_subgroup(n, 3);
    for (const auto& q : sys.inequalities) {
      const GrassmannianCtx ctx(q.r, n);
      for (const auto& m : group) {
        const GwTuple image = symmetry_transport({q.subsets, q.d}, m);
        ++checked;
        if (image.d < 0 || gw_invariant(image.subsets, static_cast<int>(image.d), ctx) != q.gw) {
          return {false, "invariant changes under the center action (n = " + std::to_string(n) + ")"};
        }
      }
    }
  }
  return {true, std::to_string(checked) + " (tuple, group element) pairs, n <= 4"};
}

Outcome factorization() {
  std::mt19937_64 rng(20240611);
  std::size_t nonzero = 0;
  std::size_t terms = 0;
  for (const auto& [r, n] : std::vector<std::pair<int, int>>{{1, 3}, {2, 4}}) {
    const GrassmannianCtx ctx(r, n);
    const auto subsets = all_subsets(r, n);
    std::uniform_int_distribution<std::size_t> pick(0, subsets.size() - 1);
    int found = 0;
    for (int attempt = 0; found < 50 && attempt < 100000; ++attempt) {
      std::vector<SchubertIndex> cls;
      for (int k = 0; k < 5; ++k) {
        cls.push_back(subsets[pick(rng)]);
      }
      const auto d = graded_degree(cls, ctx);
      if (!d) {
        continue;
      }
      const BigInt whole = gw_invariant(cls, *d, ctx);
      if (whole == 0) {
        continue;
      }
      ++found;
      // split after j - 1 = 2 points: <I1, I2, K>_{d1} <*K, I3, I4, I5>_{d2}
      const std::vector<SchubertIndex> left_base(cls.begin(), cls.begin() + 2);
      const std::vector<SchubertIndex> right_base(cls.begin() + 2, cls.end());
      BigInt sum = 0;
      for (int d1 = 0; d1 <= *d; ++d1) {
        for (const auto& k : subsets) {
          auto left = left_base;
          left.push_back(k);
          const BigInt a = gw_invariant(left, d1, ctx);
          if (a == 0) {
            continue;
          }
          std::vector<SchubertIndex> right{dual_subset(k)};
          right.insert(right.end(), right_base.begin(), right_base.end());
          sum += a * gw_invariant(right, *d - d1, ctx);
          ++terms;
        }
      }
      if (sum != whole) {
        return {false, "factorization fails: " + whole.str() + " vs " + sum.str()};
      }
      ++nonzero;
    }
    if (found < 50) {
      return {false, "could not draw 50 nonzero invariants"};
    }
  }
  return {true, std::to_string(nonzero) + " nonzero 5-point invariants, " + std::to_string(terms) + " split terms"};
}

Outcome quantum_weyl() {
  for (int n : {3, 4}) {
    const auto sys = generate_multiplicative(n, 3);
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        if (i + j <= n && !contains_record(sys, {{n, {i}}, {n, {j}}, {n, {n + 1 - i - j}}}, 1)) {
          return {false, "upper chain record missing"};
        }
        if (i + j - 1 <= n &&
            !contains_record(sys, {complement_of(n, i), complement_of(n, j), complement_of(n, n + 2 - i - j)}, 0)) {
          return {false, "lower chain record missing"};
        }
      }
    }
  }
  double worst = -1e300;
  for (int n : {3, 4}) {
    for (std::size_t t = 0; t < kTrials; ++t) {
      numeric::Rng rng = numeric::trial_rng(77 + static_cast<std::uint64_t>(n), t);
      const numeric::MatrixC a = numeric::haar_special_unitary(n, rng);
      const numeric::MatrixC b = numeric::haar_special_unitary(n, rng);
      const Eigen::VectorXd la = numeric::eigen_alcove(a);
      const Eigen::VectorXd lb = numeric::eigen_alcove(b);
      const Eigen::VectorXd lab = numeric::eigen_alcove(a * b);
      for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
          const double mid = la[i - 1] + lb[j - 1];
          if (i + j - 1 <= n) {
            worst = std::max(worst, lab[i + j - 2] - mid);
          }
          if (i + j <= n) {
            worst = std::max(worst, mid - lab[i + j - 1] - 1);
          }
        }
      }
    }
  }
  return {worst <= kSampleTol, "records present for n = 3, 4; worst excess over " + std::to_string(2 * kTrials) +
                                   " samples " + fmt(worst) + " (tol " + fmt(kSampleTol) + ")"};
}

Outcome monte_carlo() {
  std::string detail;
  bool ok = true;
  for (const auto& [n, l] : std::vector<std::pair<int, int>>{{2, 3}, {3, 3}, {4, 3}, {3, 4}}) {
    const auto sys = generate_multiplicative(n, l);
    numeric::VerifyOptions opts;
    opts.trials = kTrials;
    opts.seed = 1000 + static_cast<std::uint64_t>(10 * n + l);
    opts.tol = kSampleTol;
    const auto report = numeric::verify_products(sys, opts);
    ok = ok && report.violation_count == 0;
    detail += "(" + std::to_string(n) + "," + std::to_string(l) + "):" + std::to_string(report.violation_count) + " ";
  }
  return {ok, "violations per (n,l) over " + std::to_string(kTrials) + " trials: " + detail};
}

Outcome fusion_forward() {
  const auto sys = generate_multiplicative(3, 3);
  std::size_t triples = 0;
  for (int level = 1; level <= 6; ++level) {
    const auto weights = level_weights(3, level);
    for (const auto& a : weights) {
      for (const auto& b : weights) {
        for (const auto& [c, mult] : fusion_product(a, b, 3, level)) {
          ++triples;
          const EigenTuple t{SystemKind::multiplicative,
                             {weight_to_alcove(a, 3, level).coords(), weight_to_alcove(b, 3, level).coords(),
                              weight_to_alcove(dual_su_weight(c, 3), 3, level).coords()}};
          if (!check_membership(sys, t).member) {
            return {false, "level " + std::to_string(level) + ": " + to_string(a) + " x " + to_string(b) + " -> " +
                               to_string(c) + " lies outside"};
          }
        }
      }
    }
  }
  return {true, std::to_string(triples) + " nonzero fusion triples, levels 1..6"};
}

Outcome realizer() {
  std::mt19937_64 rng(314159);
  double worst_member = 0;
  double best_outside = 1e300;
  int members = 0;
  int outsiders = 0;
  std::string failure;
  for (int n : {2, 3}) {
    const auto sys = generate_multiplicative(n, 3);
    int want_in = 50;
    int want_out = 10;
    while (want_in > 0 || want_out > 0) {
      std::vector<VectorQ> pts;
      for (int k = 0; k < 3; ++k) {
        pts.push_back(random_alcove(n, 24, rng));
      }
      const double slack = min_slack(sys, pts).convert_to<double>();
      const bool inside = slack > kInteriorSlack;
      const bool outside = -slack >= kOutsideExcess;
      if ((inside && want_in == 0) || (outside && want_out == 0) || (!inside && !outside)) {
        continue;
      }
      std::vector<AlcovePoint> tuple;
      for (const auto& p : pts) {
        tuple.emplace_back(p);
      }
      numeric::RealizeOptions opts;
      opts.tol = kRealizeTol;
      opts.seed = rng();
      const auto res = numeric::realize(tuple, opts);
      if (inside) {
        --want_in;
        ++members;
        worst_member = std::max(worst_member, res.residual);
        if (!res.success && failure.empty()) {
          failure = "member not realized (n = " + std::to_string(n) + ", residual " + fmt(res.residual) + ")";
        }
      } else {
        --want_out;
        ++outsiders;
        best_outside = std::min(best_outside, res.residual);
        if (res.residual <= kSeparation && failure.empty()) {
          failure = "non-member realized to residual " + fmt(res.residual);
        }
      }
    }
  }
  std::string detail = std::to_string(members) + " interior members, worst residual " + fmt(worst_member) +
                       " (< " + fmt(kRealizeTol) + "); " + std::to_string(outsiders) +
                       " non-members, smallest residual " + fmt(best_outside) + " (> " + fmt(kSeparation) + ")";
  if (!failure.empty()) {
    detail = failure + "; " + detail;
  }
  return {failure.empty(), detail};
}

Outcome transpose_duality() {
  std::mt19937_64 rng(271828);
  int nonzero = 0;
  for (int query = 0; query < 200; ++query) {
    const int n = std::uniform_int_distribution<int>(2, 7)(rng);
    const int r = std::uniform_int_distribution<int>(1, n - 1)(rng);
    const GrassmannianCtx ctx(r, n);
    const auto basis = ctx.basis();
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
    const Partition a = basis[pick(rng)];
    const Partition b = basis[pick(rng)];
    const QuantumClass prod = quantum_product({ctx, a}, {ctx, b});
    // half the queries read a term of the product, the rest a random target
    Partition c = basis[pick(rng)];
    if (query % 2 == 0 && !prod.is_zero()) {
      auto it = prod.terms().begin();
      std::advance(it, std::uniform_int_distribution<std::size_t>(0, prod.terms().size() - 1)(rng));
      c = it->first.partition;
    }
    const int total = a.size() + b.size() - c.size();
    const int d = total >= 0 && total % n == 0 ? total / n : 0;
    const BigInt lhs = prod.coefficient(c, d);
    const GrassmannianCtx dual = ctx.dual();
    const BigInt rhs = quantum_product({dual, transpose(a)}, {dual, transpose(b)}).coefficient(transpose(c), d);
    if (lhs != rhs) {
      return {false, "coefficient differs for " + to_string(a) + " * " + to_string(b) + " -> " + to_string(c)};
    }
    nonzero += lhs != 0;
  }
  return {true, "200 queries, " + std::to_string(nonzero) + " nonzero"};
}

Outcome cone_relation() {
  std::size_t records = 0;
  for (int n = 2; n <= 4; ++n) {
    const auto mult = generate_multiplicative(n, 3);
    const auto add = generate_additive(n, 3);
    std::vector<Inequality> zero;
    for (const auto& q : mult.inequalities) {
      if (q.d == 0) {
        zero.push_back(q);
      }
    }
    if (zero.size() != add.inequalities.size()) {
      return {false, "record counts differ for n = " + std::to_string(n)};
    }
    for (std::size_t k = 0; k < zero.size(); ++k) {
      if (!zero[k].same_record(add.inequalities[k]) || zero[k].gw != add.inequalities[k].gw) {
        return {false, "record " + std::to_string(k) + " differs for n = " + std::to_string(n)};
      }
    }
    records += zero.size();
  }
  return {true, std::to_string(records) + " degree-zero records match, n <= 4"};
}

}  // namespace

int main() {
  criterion(1, "su2_three_point_system", 1, su2_three_point);
  criterion(2, "sigma_c_power_is_q_to_the_r", 5, sigma_c_power);
  criterion(3, "sigma_c_closed_form", 5, sigma_c_closed_form);
  criterion(4, "degree_zero_is_classical", 60, degree_zero_classical);
  criterion(5, "center_symmetry_invariance", 120, center_symmetry);
  criterion(6, "factorization_identity", 0, factorization);
  criterion(7, "quantum_weyl_chain", 0, quantum_weyl);
  criterion(8, "monte_carlo_necessity", 120, monte_carlo);
  criterion(9, "fusion_forward_check", 120, fusion_forward);
  criterion(10, "realizer_members_and_outsiders", 0, realizer);
  criterion(11, "transpose_duality", 0, transpose_duality);
  criterion(12, "cone_relation", 0, cone_relation);
  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
