#include <algorithm>
#include <random>

#include "doctest.h"
#include "qsc/polytope.hpp"

using namespace qsc;

namespace {

SchubertIndex idx(int n, std::vector<int> e) { return {n, std::move(e)}; }

VectorQ su2(const Rational& t) {
  VectorQ v(2);
  v << t, -t;
  return v;
}

EigenTuple su2_tuple(const Rational& a, const Rational& b, const Rational& c) {
  return {SystemKind::multiplicative, {su2(a), su2(b), su2(c)}};
}

bool has_record(const InequalitySystem& sys, const std::vector<SchubertIndex>& subsets, int d) {
  return std::any_of(sys.inequalities.begin(), sys.inequalities.end(),
                     [&](const Inequality& q) { return q.subsets == subsets && q.d == d; });
}

std::vector<LinearInequality> linear(const InequalitySystem& sys) {
  std::vector<LinearInequality> out;
  for (const auto& q : sys.inequalities) {
    out.push_back(to_linear(q));
  }
  return out;
}

// Random alcove point with denominator `den`.
VectorQ random_alcove(int n, int den, std::mt19937& rng) {
  while (true) {
    std::uniform_int_distribution<int> dist(-den, den);
    std::vector<int> v(static_cast<std::size_t>(n));
    for (auto& x : v) {
      x = dist(rng);
    }
    std::sort(v.rbegin(), v.rend());
    int sum = 0;
    for (int x : v) {
      sum += x;
    }
    // recentre, keep integrality by scaling the denominator by n
    VectorQ out(n);
    for (int i = 0; i < n; ++i) {
      out[i] = Rational(n * v[static_cast<std::size_t>(i)] - sum, n * den);
    }
    if (alcove_violation(out).empty()) {
      return out;
    }
  }
}

}  // namespace

TEST_CASE("SU(2) systems") {
  const auto three = generate_multiplicative(2, 3);
  REQUIRE(three.inequalities.size() == 4);
  CHECK(has_record(three, {idx(2, {1}), idx(2, {1}), idx(2, {1})}, 1));
  CHECK(has_record(three, {idx(2, {1}), idx(2, {2}), idx(2, {2})}, 0));
  CHECK(has_record(three, {idx(2, {2}), idx(2, {1}), idx(2, {2})}, 0));
  CHECK(has_record(three, {idx(2, {2}), idx(2, {2}), idx(2, {1})}, 0));
  for (const auto& q : three.inequalities) {
    CHECK(q.gw == 1);
    CHECK(q.r == 1);
  }
  CHECK(generate_multiplicative(2, 2).inequalities.size() == 2);
  CHECK(generate_additive(2, 3).inequalities.size() == 3);
  CHECK(std::is_sorted(three.inequalities.begin(), three.inequalities.end(), canonical_less));
}

TEST_CASE("quantum Weyl chain and its dual are generated") {
  for (int n : {3, 4}) {
    const auto sys = generate_multiplicative(n, 3);
    const auto add = generate_additive(n, 3);
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        const int k = n + 1 - i - j;
        if (k >= 1) {
          CHECK(has_record(sys, {idx(n, {i}), idx(n, {j}), idx(n, {k})}, 1));
        }
        if (i + j - 1 <= n) {
          // additive Weyl inequality, r = 1, d = 0
          CHECK(has_record(add, {idx(n, {n - i + 1}), idx(n, {n - j + 1}), idx(n, {i + j - 1})}, 0));
        }
      }
    }
  }
}

TEST_CASE("additive system is the degree-zero part") {
  for (int n = 2; n <= 4; ++n) {
    const auto mult = generate_multiplicative(n, 3);
    const auto add = generate_additive(n, 3);
    std::vector<Inequality> zero;
    for (const auto& q : mult.inequalities) {
      if (q.d == 0) {
        zero.push_back(q);
      }
    }
    REQUIRE(zero.size() == add.inequalities.size());
    for (std::size_t k = 0; k < zero.size(); ++k) {
      CHECK(zero[k].same_record(add.inequalities[k]));
      CHECK(zero[k].gw == add.inequalities[k].gw);
    }
  }
}

TEST_CASE("records respect grading and positivity") {
  for (int n = 2; n <= 4; ++n) {
    for (int l = 1; l <= 4; ++l) {
      if (n == 4 && l == 4) {
        continue;
      }
      const auto sys = generate_multiplicative(n, l);
      for (const auto& q : sys.inequalities) {
        const GrassmannianCtx ctx(q.r, n);
        CHECK(q.gw > 0);
        CHECK(graded_degree(q.subsets, ctx) == q.d);
        CHECK(gw_invariant(q.subsets, q.d, ctx) == q.gw);
      }
    }
  }
}

TEST_CASE("permuting the factors permutes the records") {
  const auto sys = generate_multiplicative(4, 3);
  for (const auto& q : sys.inequalities) {
    CHECK(has_record(sys, {q.subsets[1], q.subsets[0], q.subsets[2]}, q.d));
    CHECK(has_record(sys, {q.subsets[2], q.subsets[1], q.subsets[0]}, q.d));
  }
}

TEST_CASE("jobs do not change the result") {
  CHECK(generate_multiplicative(4, 3, {1}) == generate_multiplicative(4, 3, {4}));
  CHECK(generate_additive(4, 3, {1}) == generate_additive(4, 3, {3}));
}

TEST_CASE("membership examples") {
  const auto sys = generate_multiplicative(2, 3);
  const Rational quarter(1, 4);
  CHECK(check_membership(sys, su2_tuple(quarter, quarter, quarter)).member);
  CHECK(check_membership(sys, su2_tuple(0, 0, 0)).member);

  const Rational half(1, 2);
  const auto report = check_membership(sys, su2_tuple(half, half, half));
  CHECK_FALSE(report.member);
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0].inequality.d == 1);
  CHECK(report.violations[0].excess == half);

  const auto lopsided = check_membership(sys, su2_tuple(half, 0, 0));
  CHECK_FALSE(lopsided.member);
  CHECK(lopsided.violations.size() == 1);
}

TEST_CASE("membership input errors") {
  const auto sys = generate_multiplicative(2, 3);
  CHECK_THROWS_AS(check_membership(sys, su2_tuple(Rational(3, 4), 0, 0)), InputError);
  CHECK_THROWS_AS(check_membership(sys, {SystemKind::multiplicative, {su2(0), su2(0)}}), InputError);
  VectorQ bad(2);
  bad << Rational(1, 4), Rational(1, 4);
  CHECK_THROWS_AS(check_membership(sys, {SystemKind::multiplicative, {bad, su2(0), su2(0)}}),
                  InputError);
  CHECK_THROWS_AS(check_membership(sys, {SystemKind::additive, {su2(0), su2(0), su2(0)}}),
                  InputError);
  VectorQ three(3);
  three << 0, 0, 0;
  CHECK_THROWS_AS(check_membership(sys, {SystemKind::multiplicative, {three, three, three}}),
                  InputError);

  const auto add = generate_additive(2, 3);
  VectorQ inc(2);
  inc << -1, 1;
  CHECK_THROWS_AS(check_membership(add, {SystemKind::additive, {inc, su2(0), su2(1)}}), InputError);
  VectorQ off(2);
  off << 1, 0;
  CHECK_THROWS_AS(check_membership(add, {SystemKind::additive, {off, su2(0), su2(0)}}), InputError);
  CHECK(check_membership(add, {SystemKind::additive, {su2(2), su2(1), su2(1)}}).member);
  CHECK_FALSE(check_membership(add, {SystemKind::additive, {su2(3), su2(1), su2(1)}}).member);
}

TEST_CASE("membership is invariant under the dual involution and factor permutations") {
  std::mt19937 rng(5);
  const auto sys = generate_multiplicative(3, 3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<VectorQ> pts;
    for (int k = 0; k < 3; ++k) {
      pts.push_back(random_alcove(3, 6, rng));
    }
    const bool member = check_membership(sys, {SystemKind::multiplicative, pts}).member;
    std::vector<VectorQ> swapped = {pts[2], pts[0], pts[1]};
    CHECK(check_membership(sys, {SystemKind::multiplicative, swapped}).member == member);
    std::vector<VectorQ> dual;
    for (const auto& p : pts) {
      dual.push_back(dual_point(AlcovePoint(p)).coords());
    }
    CHECK(check_membership(sys, {SystemKind::multiplicative, dual}).member == member);
  }
}

TEST_CASE("additive membership is a cone") {
  std::mt19937 rng(9);
  const auto add = generate_additive(3, 3);
  std::uniform_int_distribution<int> dist(-5, 5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<VectorQ> pts;
    Rational total = 0;
    for (int k = 0; k < 3; ++k) {
      std::vector<int> v = {dist(rng), dist(rng), dist(rng)};
      std::sort(v.rbegin(), v.rend());
      VectorQ p(3);
      p << v[0], v[1], v[2];
      pts.push_back(p);
    }
    // make the total trace zero by shifting the last vector
    for (const auto& p : pts) {
      total += p.sum();
    }
    for (int i = 0; i < 3; ++i) {
      pts[2][i] -= total / 3;
    }
    const bool member = check_membership(add, {SystemKind::additive, pts}).member;
    for (const Rational scale : {Rational(1, 3), Rational(7, 2)}) {
      std::vector<VectorQ> scaled;
      for (const auto& p : pts) {
        scaled.push_back(p * scale);
      }
      CHECK(check_membership(add, {SystemKind::additive, scaled}).member == member);
    }
  }
}

TEST_CASE("n = 3, l = 2 forces the second point to be dual to the first") {
  const auto sys = generate_multiplicative(3, 2);
  const auto lin = linear(sys);
  for (int i = 0; i < 3; ++i) {
    // x_{1,i} + x_{2,n+1-i} = 0 in both directions
    LinearInequality up{VectorQ::Zero(6), 0};
    up.coeffs[i] = 1;
    up.coeffs[3 + (2 - i)] = 1;
    LinearInequality down{-up.coeffs, 0};
    CHECK(is_implied(up, lin, SystemKind::multiplicative, 3, 2));
    CHECK(is_implied(down, lin, SystemKind::multiplicative, 3, 2));
  }
}

TEST_CASE("redundancy filtering keeps the polytope") {
  const auto su2 = generate_multiplicative(2, 3);
  CHECK(filter_redundant(su2) == su2);

  auto padded = su2;
  padded.inequalities.push_back(su2.inequalities.front());
  Inequality loose = su2.inequalities.back();
  loose.d = 2;
  padded.inequalities.push_back(loose);
  const auto filtered = filter_redundant(padded);
  CHECK(filtered.inequalities.size() == 4);
  CHECK(lp_equivalent(linear(filtered), linear(padded), SystemKind::multiplicative, 2, 3));

  const auto three = generate_multiplicative(3, 3);
  const auto reduced = filter_redundant(three);
  CHECK(reduced.inequalities.size() <= three.inequalities.size());
  CHECK(lp_equivalent(linear(reduced), linear(three), SystemKind::multiplicative, 3, 3));
  // each survivor is essential
  for (std::size_t k = 0; k < reduced.inequalities.size(); ++k) {
    std::vector<LinearInequality> rest;
    for (std::size_t j = 0; j < reduced.inequalities.size(); ++j) {
      if (j != k) {
        rest.push_back(to_linear(reduced.inequalities[j]));
      }
    }
    CHECK_FALSE(is_implied(to_linear(reduced.inequalities[k]), rest, SystemKind::multiplicative, 3, 3));
  }

  const auto add = generate_additive(3, 3);
  CHECK(lp_equivalent(linear(filter_redundant(add)), linear(add), SystemKind::additive, 3, 3));
}

TEST_CASE("LP equivalence detects a different polytope") {
  const auto su2 = generate_multiplicative(2, 3);
  auto tighter = su2;
  REQUIRE(tighter.inequalities.front().d == 1);
  tighter.inequalities.front().d = 0;
  CHECK_FALSE(lp_equivalent(linear(tighter), linear(su2), SystemKind::multiplicative, 2, 3));
}

TEST_CASE("systems are closed under the center action") {
  for (int n = 2; n <= 4; ++n) {
    const auto report = symmetry_closure_check(generate_multiplicative(n, 3));
    CHECK(report.closed());
    CHECK(report.checked > 0);
  }
  auto broken = generate_multiplicative(3, 3);
  broken.inequalities.pop_back();
  CHECK_FALSE(symmetry_closure_check(broken).closed());
}

TEST_CASE("center subgroup") {
  const auto g = center_subgroup(3, 3);
  CHECK(g.size() == 9);
  for (const auto& m : g) {
    CHECK((m[0] + m[1] + m[2]) % 3 == 0);
  }
  CHECK(center_subgroup(4, 1) == std::vector<std::vector<long>>{{0}});
}

TEST_CASE("generation rejects small n") {
  CHECK_THROWS_AS(generate_multiplicative(1, 3), std::invalid_argument);
  CHECK_THROWS_AS(generate_additive(2, 0), std::invalid_argument);
}
