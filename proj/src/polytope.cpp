#include "qsc/polytope.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "qsc/lp.hpp"

namespace qsc {

std::string to_string(SystemKind kind) {
  return kind == SystemKind::multiplicative ? "multiplicative" : "additive";
}

SystemKind parse_system_kind(const std::string& text) {
  if (text == "multiplicative") {
    return SystemKind::multiplicative;
  }
  if (text == "additive") {
    return SystemKind::additive;
  }
  throw std::invalid_argument("unknown system kind '" + text + "'");
}

bool canonical_less(const Inequality& a, const Inequality& b) {
  if (a.r != b.r) {
    return a.r < b.r;
  }
  if (a.subsets != b.subsets) {
    return a.subsets < b.subsets;
  }
  return a.d < b.d;
}

namespace {

// Depth-first over (l-1)-prefixes of r-subsets, sharing partial products. The
// last subset is read off the accumulated product.
class Generator {
 public:
  Generator(int n, int l, int r, SystemKind kind)
      : n_(n), l_(l), ctx_(r, n), kind_(kind), subsets_(all_subsets(r, n)) {
    for (const auto& s : subsets_) {
      codims_.push_back(subset_to_partition(s, ctx_).size());
    }
  }

  std::size_t first_level_items() const { return l_ == 1 ? 1 : subsets_.size(); }

  void run_item(std::size_t item, std::vector<Inequality>& out) const {
    std::vector<std::size_t> prefix;
    if (l_ == 1) {
      finish(prefix, QuantumClass::unit(ctx_), CohomologyClass(ctx_, Partition{}), 0, out);
      return;
    }
    prefix.push_back(item);
    const Partition p = subset_to_partition(subsets_[item], ctx_);
    extend(prefix, QuantumClass(ctx_, p), CohomologyClass(ctx_, p), codims_[item], out);
  }

 private:
  void extend(std::vector<std::size_t>& prefix, const QuantumClass& qacc,
              const CohomologyClass& cacc, int codim, std::vector<Inequality>& out) const {
    if (static_cast<int>(prefix.size()) == l_ - 1) {
      finish(prefix, qacc, cacc, codim, out);
      return;
    }
    for (std::size_t k = 0; k < subsets_.size(); ++k) {
      const Partition p = subset_to_partition(subsets_[k], ctx_);
      const int next_codim = codim + codims_[k];
      prefix.push_back(k);
      if (kind_ == SystemKind::additive) {
        if (next_codim <= ctx_.dimension()) {
          extend(prefix, qacc, classical_product(cacc, CohomologyClass(ctx_, p)), next_codim, out);
        }
      } else {
        // Degrees above this bound cannot meet the grading for any completion.
        const int remaining = l_ - static_cast<int>(prefix.size());
        const int max_degree = (next_codim + (remaining - 1) * ctx_.dimension()) / n_;
        extend(prefix, quantum_product(qacc, QuantumClass(ctx_, p), max_degree), cacc, next_codim,
               out);
      }
      prefix.pop_back();
    }
  }

  void finish(const std::vector<std::size_t>& prefix, const QuantumClass& qacc,
              const CohomologyClass& cacc, int codim, std::vector<Inequality>& out) const {
    for (std::size_t k = 0; k < subsets_.size(); ++k) {
      const int total = codim + codims_[k];
      const int excess = total - ctx_.dimension();
      if (excess < 0 || excess % n_ != 0) {
        continue;
      }
      const int d = excess / n_;
      if (kind_ == SystemKind::additive && d != 0) {
        continue;
      }
      const Partition target = subset_to_partition(dual_subset(subsets_[k]), ctx_);
      const BigInt gw =
          kind_ == SystemKind::additive ? cacc.coefficient(target) : qacc.coefficient(target, d);
      if (gw == 0) {
        continue;
      }
      Inequality ineq;
      ineq.n = n_;
      ineq.l = l_;
      ineq.r = ctx_.r;
      for (std::size_t idx : prefix) {
        ineq.subsets.push_back(subsets_[idx]);
      }
      ineq.subsets.push_back(subsets_[k]);
      ineq.d = d;
      ineq.gw = gw;
      out.push_back(std::move(ineq));
    }
  }

  int n_;
  int l_;
  GrassmannianCtx ctx_;
  SystemKind kind_;
  std::vector<SchubertIndex> subsets_;
  std::vector<int> codims_;
};

InequalitySystem generate(int n, int l, SystemKind kind, const GenerateOptions& options) {
  if (n < 2 || l < 1) {
    throw std::invalid_argument("inequality generation requires n >= 2 and l >= 1");
  }
  InequalitySystem sys;
  sys.kind = kind;
  sys.n = n;
  sys.l = l;
  std::vector<Generator> gens;
  std::vector<std::pair<std::size_t, std::size_t>> items;
  for (int r = 1; r < n; ++r) {
    gens.emplace_back(n, l, r, kind);
  }
  for (std::size_t g = 0; g < gens.size(); ++g) {
    for (std::size_t k = 0; k < gens[g].first_level_items(); ++k) {
      items.emplace_back(g, k);
    }
  }
  const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(items.size())));
  std::vector<std::vector<Inequality>> results(items.size());
  if (jobs == 1) {
    for (std::size_t w = 0; w < items.size(); ++w) {
      gens[items[w].first].run_item(items[w].second, results[w]);
    }
  } else {
    std::mutex next_mutex;
    std::size_t next = 0;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) {
      pool.emplace_back([&] {
        while (true) {
          std::size_t w;
          {
            std::lock_guard lock(next_mutex);
            if (next == items.size()) {
              return;
            }
            w = next++;
          }
          gens[items[w].first].run_item(items[w].second, results[w]);
        }
      });
    }
    for (auto& th : pool) {
      th.join();
    }
  }
  for (auto& part : results) {
    for (auto& ineq : part) {
      sys.inequalities.push_back(std::move(ineq));
    }
  }
  std::sort(sys.inequalities.begin(), sys.inequalities.end(), canonical_less);
  return sys;
}

// Chamber/alcove constraints on the flattened tuple.
void chamber_constraints(SystemKind kind, int n, int l, std::vector<LinearInequality>& ineqs,
                         std::vector<LinearInequality>& eqs) {
  const Eigen::Index dim = static_cast<Eigen::Index>(n) * l;
  for (int k = 0; k < l; ++k) {
    const Eigen::Index base = static_cast<Eigen::Index>(k) * n;
    for (int i = 0; i + 1 < n; ++i) {
      LinearInequality c{VectorQ::Zero(dim), Rational(0)};
      c.coeffs[base + i + 1] = 1;
      c.coeffs[base + i] = -1;
      ineqs.push_back(std::move(c));
    }
    if (kind == SystemKind::multiplicative) {
      LinearInequality spread{VectorQ::Zero(dim), Rational(1)};
      spread.coeffs[base] = 1;
      spread.coeffs[base + n - 1] = -1;
      ineqs.push_back(std::move(spread));
      LinearInequality trace{VectorQ::Zero(dim), Rational(0)};
      for (int i = 0; i < n; ++i) {
        trace.coeffs[base + i] = 1;
      }
      eqs.push_back(std::move(trace));
    }
  }
  if (kind == SystemKind::additive) {
    LinearInequality trace{VectorQ::Zero(dim), Rational(0)};
    for (Eigen::Index j = 0; j < dim; ++j) {
      trace.coeffs[j] = 1;
    }
    eqs.push_back(std::move(trace));
  }
}

lp::LinearProgram build_program(const std::vector<const LinearInequality*>& rows,
                                const std::vector<LinearInequality>& eqs, Eigen::Index dim) {
  lp::LinearProgram prog;
  prog.ineq.resize(static_cast<Eigen::Index>(rows.size()), dim);
  prog.ineq_rhs.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t k = 0; k < rows.size(); ++k) {
    prog.ineq.row(static_cast<Eigen::Index>(k)) = rows[k]->coeffs.transpose();
    prog.ineq_rhs[static_cast<Eigen::Index>(k)] = rows[k]->rhs;
  }
  prog.eq.resize(static_cast<Eigen::Index>(eqs.size()), dim);
  prog.eq_rhs.resize(static_cast<Eigen::Index>(eqs.size()));
  for (std::size_t k = 0; k < eqs.size(); ++k) {
    prog.eq.row(static_cast<Eigen::Index>(k)) = eqs[k].coeffs.transpose();
    prog.eq_rhs[static_cast<Eigen::Index>(k)] = eqs[k].rhs;
  }
  return prog;
}

bool implied_by_rows(const LinearInequality& target, const std::vector<const LinearInequality*>& rows,
                     const std::vector<LinearInequality>& eqs, Eigen::Index dim) {
  lp::LinearProgram prog = build_program(rows, eqs, dim);
  prog.objective = target.coeffs;
  const lp::Solution sol = lp::solve(prog);
  switch (sol.status) {
    case lp::Status::infeasible:
      return true;
    case lp::Status::unbounded:
      return false;
    case lp::Status::optimal:
      return sol.value <= target.rhs;
  }
  return false;
}

}  // namespace

InequalitySystem generate_multiplicative(int n, int l, const GenerateOptions& options) {
  return generate(n, l, SystemKind::multiplicative, options);
}

InequalitySystem generate_additive(int n, int l, const GenerateOptions& options) {
  return generate(n, l, SystemKind::additive, options);
}

void validate_tuple(const EigenTuple& tuple) {
  if (tuple.points.empty()) {
    throw InputError("eigenvalue tuple has no points");
  }
  const auto n = tuple.points.front().size();
  Rational total = 0;
  for (std::size_t k = 0; k < tuple.points.size(); ++k) {
    const VectorQ& p = tuple.points[k];
    if (p.size() != n) {
      throw InputError("point " + std::to_string(k + 1) + " has the wrong dimension");
    }
    if (tuple.kind == SystemKind::multiplicative) {
      const std::string failed = alcove_violation(p);
      if (!failed.empty()) {
        throw InputError("point " + std::to_string(k + 1) + " violates alcove invariant: " + failed);
      }
    } else {
      for (Eigen::Index i = 0; i + 1 < n; ++i) {
        if (p[i] < p[i + 1]) {
          throw InputError("point " + std::to_string(k + 1) +
                           " violates chamber invariant: weakly decreasing");
        }
      }
      for (Eigen::Index i = 0; i < n; ++i) {
        total += p[i];
      }
    }
  }
  if (tuple.kind == SystemKind::additive && total != 0) {
    throw InputError("tuple violates chamber invariant: total trace zero (sum is " +
                     to_string(total) + ")");
  }
}

MembershipReport check_membership(const InequalitySystem& sys, const EigenTuple& tuple) {
  if (tuple.kind != sys.kind) {
    throw InputError("tuple kind " + to_string(tuple.kind) + " does not match system kind " +
                     to_string(sys.kind));
  }
  if (tuple.l() != sys.l || tuple.n() != sys.n) {
    throw InputError("tuple has l=" + std::to_string(tuple.l()) + ", n=" +
                     std::to_string(tuple.n()) + " but the system has l=" + std::to_string(sys.l) +
                     ", n=" + std::to_string(sys.n));
  }
  validate_tuple(tuple);
  MembershipReport report;
  for (std::size_t k = 0; k < sys.inequalities.size(); ++k) {
    const Inequality& ineq = sys.inequalities[k];
    const Rational excess = evaluate_lhs<Rational>(ineq, tuple.points) - ineq.d;
    if (excess > 0) {
      report.violations.push_back({k, ineq, excess});
    }
  }
  report.member = report.violations.empty();
  return report;
}

LinearInequality to_linear(const Inequality& ineq) {
  LinearInequality out{VectorQ::Zero(static_cast<Eigen::Index>(ineq.n) * ineq.l), Rational(ineq.d)};
  for (std::size_t k = 0; k < ineq.subsets.size(); ++k) {
    for (int i : ineq.subsets[k].elems()) {
      out.coeffs[static_cast<Eigen::Index>(k) * ineq.n + i - 1] += 1;
    }
  }
  return out;
}

bool is_implied(const LinearInequality& target, const std::vector<LinearInequality>& others,
                SystemKind kind, int n, int l) {
  std::vector<LinearInequality> cham;
  std::vector<LinearInequality> eqs;
  chamber_constraints(kind, n, l, cham, eqs);
  std::vector<const LinearInequality*> rows;
  for (const auto& c : cham) {
    rows.push_back(&c);
  }
  for (const auto& o : others) {
    rows.push_back(&o);
  }
  return implied_by_rows(target, rows, eqs, static_cast<Eigen::Index>(n) * l);
}

bool lp_equivalent(const std::vector<LinearInequality>& a, const std::vector<LinearInequality>& b,
                   SystemKind kind, int n, int l) {
  for (const auto& t : a) {
    if (!is_implied(t, b, kind, n, l)) {
      return false;
    }
  }
  for (const auto& t : b) {
    if (!is_implied(t, a, kind, n, l)) {
      return false;
    }
  }
  return true;
}

InequalitySystem filter_redundant(const InequalitySystem& sys) {
  const Eigen::Index dim = static_cast<Eigen::Index>(sys.n) * sys.l;
  std::vector<LinearInequality> cham;
  std::vector<LinearInequality> eqs;
  chamber_constraints(sys.kind, sys.n, sys.l, cham, eqs);
  std::vector<LinearInequality> lin;
  for (const auto& ineq : sys.inequalities) {
    lin.push_back(to_linear(ineq));
  }
  std::vector<bool> keep(lin.size(), true);
  for (std::size_t k = 0; k < lin.size(); ++k) {
    std::vector<const LinearInequality*> rows;
    for (const auto& c : cham) {
      rows.push_back(&c);
    }
    for (std::size_t j = 0; j < lin.size(); ++j) {
      if (j != k && keep[j]) {
        rows.push_back(&lin[j]);
      }
    }
    if (implied_by_rows(lin[k], rows, eqs, dim)) {
      keep[k] = false;
    }
  }
  InequalitySystem out = sys;
  out.inequalities.clear();
  for (std::size_t k = 0; k < lin.size(); ++k) {
    if (keep[k]) {
      out.inequalities.push_back(sys.inequalities[k]);
    }
  }
  return out;
}

std::vector<std::vector<long>> center_subgroup(int n, int l) {
  std::vector<std::vector<long>> out;
  std::vector<long> cur(static_cast<std::size_t>(l), 0);
  while (true) {
    long sum = 0;
    for (int k = 0; k + 1 < l; ++k) {
      sum += cur[static_cast<std::size_t>(k)];
    }
    cur[static_cast<std::size_t>(l - 1)] = ((-sum) % n + n) % n;
    out.push_back(cur);
    int k = l - 2;
    while (k >= 0 && cur[static_cast<std::size_t>(k)] == n - 1) {
      cur[static_cast<std::size_t>(k)] = 0;
      --k;
    }
    if (k < 0) {
      break;
    }
    ++cur[static_cast<std::size_t>(k)];
  }
  return out;
}

SymmetryReport symmetry_closure_check(const InequalitySystem& sys) {
  if (sys.kind != SystemKind::multiplicative) {
    throw std::invalid_argument("symmetry_closure_check requires a multiplicative system");
  }
  std::map<std::pair<int, GwTuple>, BigInt> index;
  for (const auto& ineq : sys.inequalities) {
    index.emplace(std::pair{ineq.r, GwTuple{ineq.subsets, ineq.d}}, ineq.gw);
  }
  SymmetryReport report;
  const auto group = center_subgroup(sys.n, sys.l);
  for (const auto& ineq : sys.inequalities) {
    const GwTuple source{ineq.subsets, ineq.d};
    for (const auto& shifts : group) {
      ++report.checked;
      const GwTuple image = symmetry_transport(source, shifts);
      const auto it = index.find({ineq.r, image});
      if (it == index.end()) {
        report.escapes.push_back({ineq, shifts, image, "image not in system"});
      } else if (it->second != ineq.gw) {
        report.escapes.push_back({ineq, shifts, image, "invariant differs"});
      }
    }
  }
  return report;
}

}  // namespace qsc
