#include "qsc/io.hpp"

#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

namespace qsc::io {

namespace {

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    throw FormatError(std::string("missing field \"") + name + "\"");
  }
  return j.at(name);
}

int int_field(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_number_integer()) {
    throw FormatError(std::string("field \"") + name + "\" must be an integer");
  }
  return v.get<int>();
}

void check_schema(const Json& j) {
  if (j.is_object() && j.contains("schema")) {
    const Json& s = j.at("schema");
    if (!s.is_number_integer() || s.get<int>() != kSchemaVersion) {
      throw FormatError("unsupported schema version");
    }
  }
}

std::string comma_list(const Partition& p) {
  std::string out;
  for (int part : p.parts()) {
    out += (out.empty() ? "" : ",") + std::to_string(part);
  }
  return out.empty() ? "0" : out;
}

std::string pair_key(const Partition& a, const Partition& b) {
  return to_string(a) + "|" + to_string(b);
}

}  // namespace

Json to_json(const Partition& p) { return Json(p.parts()); }

Partition partition_from_json(const Json& j) {
  if (!j.is_array()) {
    throw FormatError("partition must be an array of integers");
  }
  std::vector<int> parts;
  for (const auto& v : j) {
    if (!v.is_number_integer()) {
      throw FormatError("partition must be an array of integers");
    }
    parts.push_back(v.get<int>());
  }
  try {
    return Partition(std::move(parts));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

Partition parse_partition(const std::string& text) {
  std::vector<int> parts;
  if (text.empty() || text == "0") {
    return Partition{};
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) {
      throw FormatError("empty entry in partition \"" + text + "\"");
    }
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw FormatError("bad partition \"" + text + "\"");
    }
    if (used != item.size()) {
      throw FormatError("bad partition \"" + text + "\"");
    }
    parts.push_back(v);
  }
  try {
    return Partition(std::move(parts));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

Json to_json(const BigInt& value) {
  if (value >= std::numeric_limits<std::int64_t>::min() &&
      value <= std::numeric_limits<std::int64_t>::max()) {
    return Json(value.convert_to<std::int64_t>());
  }
  return Json(value.str());
}

BigInt bigint_from_json(const Json& j) {
  if (j.is_number_integer()) {
    return BigInt(j.get<std::int64_t>());
  }
  if (j.is_string()) {
    try {
      return BigInt(j.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw FormatError("expected an integer");
}

Json to_json(const Rational& value) { return Json(to_string(value)); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) {
    return Rational(j.get<std::int64_t>());
  }
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw FormatError(e.what());
    }
  }
  throw FormatError("rationals must be \"p/q\" strings or integers");
}

Json to_json(const Inequality& ineq) {
  Json subsets = Json::array();
  for (const auto& s : ineq.subsets) {
    subsets.push_back(s.elems());
  }
  return {{"n", ineq.n}, {"l", ineq.l}, {"r", ineq.r},
          {"subsets", subsets}, {"d", ineq.d}, {"gw", to_json(ineq.gw)}};
}

Inequality inequality_from_json(const Json& j) {
  Inequality ineq;
  ineq.n = int_field(j, "n");
  ineq.l = int_field(j, "l");
  ineq.r = int_field(j, "r");
  ineq.d = int_field(j, "d");
  ineq.gw = bigint_from_json(field(j, "gw"));
  const Json& subsets = field(j, "subsets");
  if (!subsets.is_array() || static_cast<int>(subsets.size()) != ineq.l) {
    throw FormatError("\"subsets\" must hold l index sets");
  }
  for (const auto& s : subsets) {
    if (!s.is_array()) {
      throw FormatError("index set must be an array");
    }
    std::vector<int> elems;
    for (const auto& v : s) {
      if (!v.is_number_integer()) {
        throw FormatError("index set entries must be integers");
      }
      elems.push_back(v.get<int>());
    }
    try {
      SchubertIndex idx(ineq.n, elems);
      if (idx.rank() != ineq.r || idx.elems() != elems) {
        throw FormatError("index set must be sorted with r entries");
      }
      ineq.subsets.push_back(std::move(idx));
    } catch (const FormatError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw FormatError(e.what());
    }
  }
  return ineq;
}

Json to_json(const InequalitySystem& sys) {
  Json list = Json::array();
  for (const auto& ineq : sys.inequalities) {
    list.push_back(to_json(ineq));
  }
  return {{"schema", kSchemaVersion},
          {"kind", to_string(sys.kind)},
          {"n", sys.n},
          {"l", sys.l},
          {"inequalities", list}};
}

InequalitySystem system_from_json(const Json& j) {
  check_schema(j);
  InequalitySystem sys;
  const Json& kind = field(j, "kind");
  if (!kind.is_string()) {
    throw FormatError("\"kind\" must be a string");
  }
  try {
    sys.kind = parse_system_kind(kind.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  sys.n = int_field(j, "n");
  sys.l = int_field(j, "l");
  const Json& list = field(j, "inequalities");
  if (!list.is_array()) {
    throw FormatError("\"inequalities\" must be an array");
  }
  for (const auto& item : list) {
    Inequality ineq = inequality_from_json(item);
    if (ineq.n != sys.n || ineq.l != sys.l) {
      throw FormatError("inequality dimensions differ from the system");
    }
    sys.inequalities.push_back(std::move(ineq));
  }
  return sys;
}

Json to_json(const EigenTuple& tuple) {
  Json points = Json::array();
  for (const auto& p : tuple.points) {
    Json row = Json::array();
    for (Eigen::Index i = 0; i < p.size(); ++i) {
      row.push_back(to_json(p[i]));
    }
    points.push_back(row);
  }
  return {{"schema", kSchemaVersion}, {"kind", to_string(tuple.kind)}, {"points", points}};
}

EigenTuple tuple_from_json(const Json& j) {
  check_schema(j);
  EigenTuple tuple;
  if (j.is_object() && j.contains("kind")) {
    if (!j.at("kind").is_string()) {
      throw FormatError("\"kind\" must be a string");
    }
    try {
      tuple.kind = parse_system_kind(j.at("kind").get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw FormatError(e.what());
    }
  }
  const Json& points = field(j, "points");
  if (!points.is_array() || points.empty()) {
    throw FormatError("\"points\" must be a nonempty array");
  }
  for (const auto& row : points) {
    if (!row.is_array() || row.empty()) {
      throw FormatError("each point must be a nonempty array");
    }
    VectorQ v(static_cast<Eigen::Index>(row.size()));
    for (std::size_t i = 0; i < row.size(); ++i) {
      v[static_cast<Eigen::Index>(i)] = rational_from_json(row[i]);
    }
    if (!tuple.points.empty() && v.size() != tuple.points.front().size()) {
      throw FormatError("points have different lengths");
    }
    tuple.points.push_back(std::move(v));
  }
  return tuple;
}

Json to_json(const QuantumClass& cls) {
  Json out = Json::array();
  for (const auto& [term, coeff] : cls.terms()) {
    out.push_back({{"partition", to_json(term.partition)}, {"q", term.q}, {"coeff", to_json(coeff)}});
  }
  return out;
}

QuantumClass quantum_class_from_json(const Json& j, const GrassmannianCtx& ctx) {
  if (!j.is_array()) {
    throw FormatError("quantum class must be an array of terms");
  }
  QuantumClass cls(ctx);
  for (const auto& t : j) {
    const Partition p = partition_from_json(field(t, "partition"));
    if (!ctx.fits(p)) {
      throw FormatError("partition " + to_string(p) + " leaves the box");
    }
    cls.add(p, int_field(t, "q"), bigint_from_json(field(t, "coeff")));
  }
  return cls;
}

Json to_json(const WeightSum& sum) {
  Json out = Json::object();
  for (const auto& [w, c] : sum) {
    out[comma_list(w)] = to_json(c);
  }
  return out;
}

WeightSum weight_sum_from_json(const Json& j) {
  if (!j.is_object()) {
    throw FormatError("weight sum must be an object");
  }
  WeightSum out;
  for (const auto& [key, value] : j.items()) {
    out[parse_partition(key)] += bigint_from_json(value);
  }
  return out;
}

Json to_json(const numeric::MatrixC& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      row.push_back({m(i, k).real(), m(i, k).imag()});
    }
    rows.push_back(row);
  }
  return rows;
}

numeric::MatrixC matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) {
    throw FormatError("matrix must be an array of rows");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  numeric::MatrixC m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw FormatError("matrix rows differ in length");
    }
    for (Eigen::Index k = 0; k < cols; ++k) {
      const Json& e = row[static_cast<std::size_t>(k)];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw FormatError("matrix entries must be [re, im] pairs");
      }
      m(i, k) = {e[0].get<double>(), e[1].get<double>()};
    }
  }
  return m;
}

Json to_json(const MembershipReport& report) {
  Json violations = Json::array();
  for (const auto& v : report.violations) {
    violations.push_back(
        {{"index", v.index}, {"inequality", to_json(v.inequality)}, {"excess", to_json(v.excess)}});
  }
  return {{"schema", kSchemaVersion}, {"member", report.member}, {"violations", violations}};
}

Json to_json(const numeric::SampleReport& report) {
  Json violations = Json::array();
  for (const auto& v : report.violations) {
    violations.push_back({{"trial", v.trial}, {"inequality", v.inequality}, {"excess", v.excess}});
  }
  return {{"schema", kSchemaVersion},
          {"trials", report.trials},
          {"tolerance", report.tolerance},
          {"violation_count", report.violation_count},
          {"max_violation", report.max_violation},
          {"violations", violations}};
}

numeric::SampleReport sample_report_from_json(const Json& j) {
  check_schema(j);
  numeric::SampleReport report;
  try {
    report.trials = field(j, "trials").get<std::size_t>();
    report.tolerance = field(j, "tolerance").get<double>();
    report.violation_count = field(j, "violation_count").get<std::size_t>();
    report.max_violation = field(j, "max_violation").get<double>();
    for (const auto& v : field(j, "violations")) {
      report.violations.push_back({field(v, "trial").get<std::uint64_t>(),
                                   field(v, "inequality").get<std::size_t>(),
                                   field(v, "excess").get<double>()});
    }
  } catch (const Json::exception& e) {
    throw FormatError(e.what());
  }
  return report;
}

Json to_json(const numeric::RealizeResult& result) {
  Json matrices = Json::array();
  for (const auto& m : result.matrices) {
    matrices.push_back(to_json(m));
  }
  return {{"schema", kSchemaVersion},
          {"success", result.success},
          {"residual", result.residual},
          {"restarts_used", result.restarts_used},
          {"matrices", matrices}};
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw FormatError("cannot open " + path.string());
  }
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) {
      throw std::runtime_error("cannot write " + tmp.string());
    }
    out << j.dump(2) << '\n';
  }
  std::filesystem::rename(tmp, path);
}

std::filesystem::path default_cache_dir() {
  if (const char* dir = std::getenv("QSC_CACHE_DIR"); dir != nullptr && *dir != '\0') {
    return dir;
  }
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg != nullptr && *xdg != '\0') {
    return std::filesystem::path(xdg) / "qsc";
  }
  if (const char* home = std::getenv("HOME"); home != nullptr && *home != '\0') {
    return std::filesystem::path(home) / ".cache" / "qsc";
  }
  return ".qsc-cache";
}

ProductCache::ProductCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path ProductCache::file_for(const GrassmannianCtx& ctx) const {
  return dir_ / ("product_r" + std::to_string(ctx.r) + "_n" + std::to_string(ctx.n) + ".json");
}

ProductCache::Table& ProductCache::table(const GrassmannianCtx& ctx) {
  auto [it, inserted] = tables_.try_emplace({ctx.r, ctx.n});
  if (inserted) {
    const auto path = file_for(ctx);
    if (std::filesystem::exists(path)) {
      const Json j = read_json_file(path);
      check_schema(j);
      if (int_field(j, "r") != ctx.r || int_field(j, "n") != ctx.n) {
        throw FormatError(path.string() + ": cache file for a different Grassmannian");
      }
      for (const auto& [key, value] : field(j, "entries").items()) {
        it->second.entries[key] = value;
      }
    }
  }
  return it->second;
}

QuantumClass ProductCache::product(const Partition& a, const Partition& b,
                                   const GrassmannianCtx& ctx, bool* hit) {
  const Partition& lo = std::min(a, b);
  const Partition& hi = std::max(a, b);
  const std::string key = pair_key(lo, hi);
  {
    std::lock_guard lock(mutex_);
    Table& t = table(ctx);
    if (auto it = t.entries.find(key); it != t.entries.end()) {
      if (hit != nullptr) {
        *hit = true;
      }
      return quantum_class_from_json(it->second, ctx);
    }
  }
  QuantumClass result = quantum_product(QuantumClass(ctx, lo), QuantumClass(ctx, hi));
  std::lock_guard lock(mutex_);
  Table& t = table(ctx);
  t.entries[key] = to_json(result);
  t.dirty = true;
  if (hit != nullptr) {
    *hit = false;
  }
  return result;
}

void ProductCache::flush() {
  std::lock_guard lock(mutex_);
  for (auto& [rn, t] : tables_) {
    if (!t.dirty) {
      continue;
    }
    Json entries = Json::object();
    for (const auto& [key, value] : t.entries) {
      entries[key] = value;
    }
    write_json_file(file_for({rn.first, rn.second}),
                    {{"schema", kSchemaVersion}, {"r", rn.first}, {"n", rn.second}, {"entries", entries}});
    t.dirty = false;
  }
}

}  // namespace qsc::io
