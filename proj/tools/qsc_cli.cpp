// qsc: command-line front end.
//
// Exit codes: 0 member / pass, 1 semantic negative, 2 input error, 3 internal error.

#include <algorithm>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qsc/fusion.hpp"
#include "qsc/io.hpp"
#include "qsc/numeric.hpp"
#include "qsc/polytope.hpp"
#include "qsc/quantum.hpp"

using namespace qsc;
using io::Json;

namespace {

constexpr int kPass = 0;
constexpr int kNegative = 1;
constexpr int kInputError = 2;
constexpr int kInternalError = 3;

struct Globals {
  bool json = false;
  unsigned jobs = 1;
  bool no_cache = false;
};

void emit_json(const Json& j) { std::cout << j.dump(2) << '\n'; }

std::string join(const std::vector<int>& v) {
  std::string out;
  for (int x : v) {
    out += (out.empty() ? "" : ",") + std::to_string(x);
  }
  return out;
}

std::string subset_text(const SchubertIndex& s) { return "{" + join(s.elems()) + "}"; }

// Plain left-aligned table.
void print_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    width[c] = header[c].size();
    for (const auto& row : rows) {
      width[c] = std::max(width[c], row[c].size());
    }
  }
  auto line = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c + 1 < row.size(); ++c) {
      std::cout << std::left << std::setw(static_cast<int>(width[c]) + 2) << row[c];
    }
    std::cout << row.back();
    std::cout << '\n';
  };
  line(header);
  for (const auto& row : rows) {
    line(row);
  }
}

std::vector<std::vector<std::string>> inequality_rows(const std::vector<Inequality>& list) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& q : list) {
    std::string subsets;
    for (const auto& s : q.subsets) {
      subsets += (subsets.empty() ? "" : " ") + subset_text(s);
    }
    rows.push_back({std::to_string(q.r), subsets, std::to_string(q.d), q.gw.str()});
  }
  return rows;
}

std::string fixed(double x) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3) << x;
  return os.str();
}

InequalitySystem load_or_generate(const std::string& system_file, SystemKind kind, int n, int l,
                                  unsigned jobs) {
  if (!system_file.empty()) {
    InequalitySystem sys = io::system_from_json(io::read_json_file(system_file));
    if (sys.kind != kind || sys.n != n || sys.l != l) {
      throw InputError("system file does not match the requested kind or dimensions");
    }
    return sys;
  }
  return kind == SystemKind::multiplicative ? generate_multiplicative(n, l, {jobs})
                                            : generate_additive(n, l, {jobs});
}

// ---------------------------------------------------------------------------

struct ProductArgs {
  int n = 0;
  int r = 0;
  std::string lhs;
  std::string rhs;
  bool classical = false;
};

int cmd_product(const Globals& g, const ProductArgs& a) {
  const GrassmannianCtx ctx(a.r, a.n);
  const Partition lhs = io::parse_partition(a.lhs);
  const Partition rhs = io::parse_partition(a.rhs);
  for (const auto& p : {lhs, rhs}) {
    if (!ctx.fits(p)) {
      throw InputError("partition " + to_string(p) + " does not fit the " + std::to_string(ctx.rows()) +
                       " x " + std::to_string(ctx.cols()) + " box");
    }
  }
  QuantumClass result(ctx);
  if (a.classical) {
    const CohomologyClass prod = classical_product({ctx, lhs}, {ctx, rhs});
    for (const auto& [p, c] : prod.terms()) {
      result.add(p, 0, c);
    }
  } else if (g.no_cache) {
    result = quantum_product({ctx, lhs}, {ctx, rhs});
  } else {
    io::ProductCache cache(io::default_cache_dir());
    result = cache.product(lhs, rhs, ctx);
    cache.flush();
  }
  if (g.json) {
    emit_json(io::to_json(result));
    return kPass;
  }
  std::vector<std::vector<std::string>> rows;
  for (const auto& [t, c] : result.terms()) {
    rows.push_back({std::to_string(t.q), to_string(t.partition), c.str()});
  }
  if (rows.empty()) {
    std::cout << "0\n";
  } else {
    print_table({"q", "partition", "coeff"}, rows);
  }
  return kPass;
}

struct InequalitiesArgs {
  int n = 0;
  int l = 0;
  bool additive = false;
  bool filter = false;
  std::string out;
};

int cmd_inequalities(const Globals& g, const InequalitiesArgs& a) {
  if (a.n < 2) {
    throw InputError("--n must be at least 2");
  }
  if (a.l < 1) {
    throw InputError("--l must be at least 1");
  }
  InequalitySystem sys = a.additive ? generate_additive(a.n, a.l, {g.jobs}) : generate_multiplicative(a.n, a.l, {g.jobs});
  if (a.filter) {
    sys = filter_redundant(sys);
  }
  const Json j = io::to_json(sys);
  if (!a.out.empty()) {
    io::write_json_file(a.out, j);
    if (g.json) {
      emit_json({{"schema", io::kSchemaVersion}, {"records", sys.inequalities.size()}, {"out", a.out}});
    } else {
      std::cout << "wrote " << sys.inequalities.size() << " inequalities to " << a.out << '\n';
    }
    return kPass;
  }
  if (g.json) {
    emit_json(j);
    return kPass;
  }
  std::cout << to_string(sys.kind) << " system, n = " << sys.n << ", l = " << sys.l << ", "
            << sys.inequalities.size() << " inequalities\n";
  print_table({"r", "subsets", "d", "gw"}, inequality_rows(sys.inequalities));
  return kPass;
}

struct MemberArgs {
  std::string point;
  std::string system;
};

int cmd_member(const Globals& g, const MemberArgs& a) {
  const EigenTuple tuple = io::tuple_from_json(io::read_json_file(a.point));
  validate_tuple(tuple);
  const InequalitySystem sys = load_or_generate(a.system, tuple.kind, tuple.n(), tuple.l(), g.jobs);
  const MembershipReport report = check_membership(sys, tuple);
  if (g.json) {
    emit_json(io::to_json(report));
  } else if (report.member) {
    std::cout << "member (" << sys.inequalities.size() << " inequalities checked)\n";
  } else {
    std::cout << "not a member: " << report.violations.size() << " violated inequalities\n";
    std::vector<std::vector<std::string>> rows = [&] {
      std::vector<Inequality> list;
      for (const auto& v : report.violations) {
        list.push_back(v.inequality);
      }
      return inequality_rows(list);
    }();
    for (std::size_t k = 0; k < rows.size(); ++k) {
      rows[k].push_back(to_string(report.violations[k].excess));
    }
    print_table({"r", "subsets", "d", "gw", "excess"}, rows);
  }
  return report.member ? kPass : kNegative;
}

struct SampleArgs {
  int n = 0;
  int l = 0;
  std::size_t trials = 10000;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  bool additive = false;
  std::string system;
};

int cmd_sample(const Globals& g, const SampleArgs& a) {
  if (a.n < 2 || a.l < 1) {
    throw InputError("sampling requires --n >= 2 and --l >= 1");
  }
  const SystemKind kind = a.additive ? SystemKind::additive : SystemKind::multiplicative;
  const InequalitySystem sys = load_or_generate(a.system, kind, a.n, a.l, g.jobs);
  numeric::VerifyOptions opts;
  opts.trials = a.trials;
  opts.seed = a.seed;
  opts.tol = a.tol;
  opts.jobs = g.jobs;
  const auto report = a.additive ? numeric::verify_sums(sys, opts) : numeric::verify_products(sys, opts);
  if (g.json) {
    emit_json(io::to_json(report));
  } else {
    std::cout << "trials " << report.trials << ", inequalities " << sys.inequalities.size()
              << ", violations " << report.violation_count << ", max violation "
              << fixed(report.max_violation) << " (tolerance " << fixed(report.tolerance) << ")\n";
    if (!report.violations.empty()) {
      std::vector<std::vector<std::string>> rows;
      for (const auto& v : report.violations) {
        rows.push_back({std::to_string(v.trial), std::to_string(v.inequality), fixed(v.excess)});
      }
      print_table({"trial", "inequality", "excess"}, rows);
    }
  }
  return report.violation_count == 0 ? kPass : kNegative;
}

struct RealizeArgs {
  std::string point;
  double tol = 1e-6;
  int max_iter = 4000;
  int restarts = 8;
  std::uint64_t seed = 0;
};

int cmd_realize(const Globals& g, const RealizeArgs& a) {
  const EigenTuple tuple = io::tuple_from_json(io::read_json_file(a.point));
  if (tuple.kind != SystemKind::multiplicative) {
    throw InputError("realize needs a multiplicative tuple");
  }
  validate_tuple(tuple);
  std::vector<AlcovePoint> pts;
  for (const auto& p : tuple.points) {
    pts.emplace_back(p);
  }
  numeric::RealizeOptions opts;
  opts.tol = a.tol;
  opts.max_iter = a.max_iter;
  opts.restarts = a.restarts;
  opts.seed = a.seed;
  const auto result = numeric::realize(pts, opts);
  if (g.json) {
    emit_json(io::to_json(result));
  } else {
    std::cout << (result.success ? "realized" : "not realized") << ", residual " << fixed(result.residual)
              << " after " << result.restarts_used << " start(s)\n";
  }
  return result.success ? kPass : kNegative;
}

struct FusionArgs {
  std::string group = "su";
  int n = 0;
  int level = -1;
  int r = 0;
  std::string lhs;
  std::string rhs;
  std::string point;
};

int cmd_fusion(const Globals& g, const FusionArgs& a) {
  if (!a.point.empty()) {
    if (a.level <= 0) {
      throw InputError("--point needs a positive --level");
    }
    const EigenTuple tuple = io::tuple_from_json(io::read_json_file(a.point));
    validate_tuple(tuple);
    std::vector<AlcovePoint> pts;
    for (const auto& p : tuple.points) {
      pts.emplace_back(p);
    }
    const FusionSupport s = fusion_membership(pts, a.level);
    const char* text = s == FusionSupport::supported     ? "supported"
                       : s == FusionSupport::unsupported ? "unsupported"
                                                         : "inapplicable";
    if (g.json) {
      emit_json({{"schema", io::kSchemaVersion}, {"level", a.level}, {"result", text}});
    } else {
      std::cout << text << '\n';
    }
    if (s == FusionSupport::inapplicable) {
      std::cerr << "qsc: the tuple is not a level-" << a.level << " weight tuple\n";
      return kInputError;
    }
    return s == FusionSupport::supported ? kPass : kNegative;
  }
  if (a.n < 2) {
    throw InputError("--n must be at least 2");
  }
  const Partition lhs = io::parse_partition(a.lhs);
  const Partition rhs = io::parse_partition(a.rhs);
  WeightSum result;
  if (a.group == "su") {
    if (a.level < 0) {
      throw InputError("--level is required for --group su");
    }
    for (const auto& w : {lhs, rhs}) {
      if (!is_level_weight(w, a.n, a.level)) {
        throw InputError("weight " + to_string(w) + " is not a level-" + std::to_string(a.level) + " SU(" +
                         std::to_string(a.n) + ") weight");
      }
    }
    result = fusion_product(lhs, rhs, a.n, a.level);
  } else if (a.group == "u") {
    if (a.r < 1 || a.r >= a.n) {
      throw InputError("--group u needs 1 <= --r < --n");
    }
    if (a.level >= 0 && a.level != a.n - a.r) {
      throw InputError("--group u works at level n - r");
    }
    const GrassmannianCtx ctx(a.r, a.n);
    for (const auto& w : {lhs, rhs}) {
      if (!ctx.fits(w)) {
        throw InputError("weight " + to_string(w) + " does not fit the level box");
      }
    }
    result = verlinde_ur_product({{lhs, BigInt(1)}}, {{rhs, BigInt(1)}}, ctx);
  } else {
    throw InputError("--group must be su or u");
  }
  if (g.json) {
    emit_json(io::to_json(result));
    return kPass;
  }
  std::vector<std::vector<std::string>> rows;
  for (const auto& [w, c] : result) {
    rows.push_back({w.empty() ? "0" : to_string(w), c.str()});
  }
  print_table({"weight", "multiplicity"}, rows);
  return kPass;
}

// ---------------------------------------------------------------------------
// Self-test: a quick pass over the invariant suite.

struct Check {
  std::string name;
  bool ok;
  std::string detail;
};

std::vector<Check> run_selftest(const Globals& g) {
  std::vector<Check> out;
  auto record = [&](std::string name, const std::function<std::string()>& body) {
    try {
      const std::string failure = body();
      out.push_back({std::move(name), failure.empty(), failure});
    } catch (const std::exception& e) {
      out.push_back({std::move(name), false, std::string("exception: ") + e.what()});
    }
  };

  record("su2_three_point_system", [&]() -> std::string {
    const auto sys = generate_multiplicative(2, 3, {g.jobs});
    std::vector<LinearInequality> expect;
    for (int a = 0; a < 3; ++a) {
      LinearInequality q{VectorQ::Zero(6), 0};
      for (int k = 0; k < 3; ++k) {
        q.coeffs[2 * k] = k == a ? 1 : -1;
      }
      expect.push_back(q);
    }
    LinearInequality total{VectorQ::Zero(6), 1};
    total.coeffs[0] = total.coeffs[2] = total.coeffs[4] = 1;
    expect.push_back(total);
    std::vector<LinearInequality> got;
    for (const auto& q : sys.inequalities) {
      got.push_back(to_linear(q));
    }
    return lp_equivalent(got, expect, SystemKind::multiplicative, 2, 3) ? "" : "not LP-equivalent";
  });

  record("sigma_c_power", []() -> std::string {
    const GrassmannianCtx ctx(2, 5);
    const QuantumClass c(ctx, Partition{1, 1});
    QuantumClass acc = QuantumClass::unit(ctx);
    for (int k = 0; k < 5; ++k) {
      acc = quantum_product(acc, c);
    }
    return acc == QuantumClass(ctx, Partition{}, 2) ? "" : "sigma_c^5 != q^2 in G(2,5)";
  });

  record("degree_zero_is_classical", []() -> std::string {
    for (int n = 2; n <= 5; ++n) {
      for (int r = 1; r < n; ++r) {
        const GrassmannianCtx ctx(r, n);
        for (const auto& a : ctx.basis()) {
          for (const auto& b : ctx.basis()) {
            if (quantum_product({ctx, a}, {ctx, b}).degree_zero_part() !=
                classical_product({ctx, a}, {ctx, b})) {
              return "mismatch in G(" + std::to_string(r) + "," + std::to_string(n) + ")";
            }
          }
        }
      }
    }
    return "";
  });

  record("center_symmetry_closure", [&]() -> std::string {
    const auto report = symmetry_closure_check(generate_multiplicative(3, 3, {g.jobs}));
    return report.closed() ? "" : std::to_string(report.escapes.size()) + " escapes";
  });

  record("additive_is_degree_zero_part", [&]() -> std::string {
    const auto mult = generate_multiplicative(3, 3, {g.jobs});
    const auto add = generate_additive(3, 3, {g.jobs});
    std::vector<Inequality> zero;
    for (const auto& q : mult.inequalities) {
      if (q.d == 0) {
        zero.push_back(q);
      }
    }
    if (zero.size() != add.inequalities.size()) {
      return "different record counts";
    }
    for (std::size_t k = 0; k < zero.size(); ++k) {
      if (!zero[k].same_record(add.inequalities[k]) || zero[k].gw != add.inequalities[k].gw) {
        return "record " + std::to_string(k) + " differs";
      }
    }
    return "";
  });

  record("monte_carlo_necessity", [&]() -> std::string {
    numeric::VerifyOptions opts;
    opts.trials = 1000;
    opts.seed = 1;
    opts.jobs = g.jobs;
    const auto report = numeric::verify_products(generate_multiplicative(3, 3, {g.jobs}), opts);
    return report.violation_count == 0 ? "" : "max violation " + fixed(report.max_violation);
  });

  record("fusion_forward", [&]() -> std::string {
    const auto sys = generate_multiplicative(3, 3, {g.jobs});
    for (int level = 1; level <= 3; ++level) {
      for (const auto& a : level_weights(3, level)) {
        for (const auto& b : level_weights(3, level)) {
          for (const auto& [c, mult] : fusion_product(a, b, 3, level)) {
            const EigenTuple t{SystemKind::multiplicative,
                               {weight_to_alcove(a, 3, level).coords(), weight_to_alcove(b, 3, level).coords(),
                                weight_to_alcove(dual_su_weight(c, 3), 3, level).coords()}};
            if (!check_membership(sys, t).member) {
              return "level " + std::to_string(level) + " triple outside the polytope";
            }
          }
        }
      }
    }
    return "";
  });

  record("realize_su2_quarter", []() -> std::string {
    VectorQ v(2);
    v << Rational(1, 4), Rational(-1, 4);
    const AlcovePoint xi(v);
    const auto res = numeric::realize({xi, xi, xi}, {});
    return res.success ? "" : "residual " + fixed(res.residual);
  });

  record("json_round_trip", [&]() -> std::string {
    const auto sys = generate_multiplicative(3, 3, {g.jobs});
    return io::system_from_json(Json::parse(io::to_json(sys).dump())) == sys ? "" : "system differs";
  });

  if (!g.no_cache) {
    record("cache_transparency", []() -> std::string {
      io::ProductCache cache(io::default_cache_dir());
      const GrassmannianCtx ctx(2, 5);
      for (const auto& a : ctx.basis()) {
        for (const auto& b : ctx.basis()) {
          if (cache.product(a, b, ctx) != quantum_product({ctx, a}, {ctx, b})) {
            return "cached product differs for " + to_string(a) + " * " + to_string(b);
          }
        }
      }
      cache.flush();
      io::ProductCache reread(io::default_cache_dir());
      for (const auto& a : ctx.basis()) {
        for (const auto& b : ctx.basis()) {
          bool hit = false;
          if (reread.product(a, b, ctx, &hit) != quantum_product({ctx, a}, {ctx, b}) || !hit) {
            return "reloaded cache differs for " + to_string(a) + " * " + to_string(b);
          }
        }
      }
      return "";
    });
  }
  return out;
}

int cmd_selftest(const Globals& g) {
  const auto checks = run_selftest(g);
  const bool ok = std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok; });
  if (g.json) {
    Json list = Json::array();
    for (const auto& c : checks) {
      list.push_back({{"name", c.name}, {"pass", c.ok}, {"detail", c.detail}});
    }
    emit_json({{"schema", io::kSchemaVersion}, {"pass", ok}, {"checks", list}});
  } else {
    for (const auto& c : checks) {
      std::cout << (c.ok ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : ": " + c.detail) << '\n';
    }
  }
  return ok ? kPass : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum Schubert calculus and eigenvalue polytopes of products in SU(n)"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_flag("--json", g.json, "Machine-readable JSON output");
  app.add_option("--jobs", g.jobs, "Worker cap; output does not depend on it")->check(CLI::Range(1u, 256u));
  app.add_flag("--no-cache", g.no_cache, "Do not read or write the product cache");

  std::function<int()> run;

  ProductArgs pa;
  auto* product = app.add_subcommand("product", "Quantum (or classical) product of two Schubert classes");
  product->add_option("--n", pa.n)->required();
  product->add_option("--r", pa.r)->required();
  product->add_option("--lhs", pa.lhs, "Partition as a comma list, 0 for the unit")->required();
  product->add_option("--rhs", pa.rhs)->required();
  product->add_flag("--classical", pa.classical, "Ordinary cohomology product");
  product->callback([&] { run = [&] { return cmd_product(g, pa); }; });

  InequalitiesArgs ia;
  auto* ineq = app.add_subcommand("inequalities", "Generate the inequality system");
  ineq->add_option("--n", ia.n)->required();
  ineq->add_option("--l", ia.l)->required();
  ineq->add_flag("--additive", ia.additive, "Hermitian sum (degree-zero) system");
  ineq->add_flag("--filter-redundant", ia.filter, "Drop inequalities implied by the rest");
  ineq->add_option("--out", ia.out, "Write the system JSON here");
  ineq->callback([&] { run = [&] { return cmd_inequalities(g, ia); }; });

  MemberArgs ma;
  auto* member = app.add_subcommand("member", "Exact membership test for an eigenvalue tuple");
  member->add_option("--point", ma.point, "EigenTuple JSON")->required();
  member->add_option("--system", ma.system, "Use this system instead of generating one");
  member->callback([&] { run = [&] { return cmd_member(g, ma); }; });

  SampleArgs sa;
  auto* sample = app.add_subcommand("sample", "Monte Carlo check of the inequalities on random tuples");
  sample->add_option("--n", sa.n)->required();
  sample->add_option("--l", sa.l)->required();
  sample->add_option("--trials", sa.trials)->capture_default_str();
  sample->add_option("--seed", sa.seed)->capture_default_str();
  sample->add_option("--tol", sa.tol)->capture_default_str();
  sample->add_flag("--additive", sa.additive, "Sample Hermitian sums instead of products");
  sample->add_option("--system", sa.system);
  sample->callback([&] { run = [&] { return cmd_sample(g, sa); }; });

  RealizeArgs ra;
  auto* realize = app.add_subcommand("realize", "Search for matrices with prescribed classes and product I");
  realize->add_option("--point", ra.point, "EigenTuple JSON")->required();
  realize->add_option("--tol", ra.tol)->capture_default_str();
  realize->add_option("--max-iter", ra.max_iter)->capture_default_str();
  realize->add_option("--restarts", ra.restarts)->capture_default_str();
  realize->add_option("--seed", ra.seed)->capture_default_str();
  realize->callback([&] { run = [&] { return cmd_realize(g, ra); }; });

  FusionArgs fa;
  auto* fusion = app.add_subcommand("fusion", "Fusion products (SU(n) level N or U(r) at level n - r)");
  fusion->add_option("--group", fa.group)->check(CLI::IsMember({"su", "u"}))->capture_default_str();
  fusion->add_option("--n", fa.n);
  fusion->add_option("--level", fa.level);
  fusion->add_option("--r", fa.r);
  fusion->add_option("--lhs", fa.lhs);
  fusion->add_option("--rhs", fa.rhs);
  fusion->add_option("--point", fa.point, "Check a tuple against the fusion ring instead");
  fusion->callback([&] { run = [&] { return cmd_fusion(g, fa); }; });

  auto* selftest = app.add_subcommand("selftest", "Run the built-in invariant checks");
  selftest->callback([&] { run = [&] { return cmd_selftest(g); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kInputError;
  }

  try {
    return run();
  } catch (const std::invalid_argument& e) {  // InputError, FormatError and argument checks
    std::cerr << "qsc: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "qsc: internal error: " << e.what() << '\n';
    return kInternalError;
  }
}
