#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <string>

#include "json.hpp"

#include "qsc/fusion.hpp"
#include "qsc/numeric.hpp"
#include "qsc/polytope.hpp"
#include "qsc/quantum.hpp"

namespace qsc::io {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Malformed or schema-violating input documents.
class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Json to_json(const Partition& p);
Partition partition_from_json(const Json& j);
/// "2,1" -> (2,1); "0" and "" give the empty partition.
Partition parse_partition(const std::string& text);

/// Small integers as numbers, anything else as a decimal string.
Json to_json(const BigInt& value);
BigInt bigint_from_json(const Json& j);

/// Rationals are always written as strings; integers are accepted on input,
/// floats are rejected.
Json to_json(const Rational& value);
Rational rational_from_json(const Json& j);

Json to_json(const Inequality& ineq);
Inequality inequality_from_json(const Json& j);
Json to_json(const InequalitySystem& sys);
InequalitySystem system_from_json(const Json& j);

Json to_json(const EigenTuple& tuple);
/// Does not validate the chamber/alcove invariants (see validate_tuple).
EigenTuple tuple_from_json(const Json& j);

/// Sorted [{"partition":[..],"q":d,"coeff":c}, ...].
Json to_json(const QuantumClass& cls);
QuantumClass quantum_class_from_json(const Json& j, const GrassmannianCtx& ctx);

/// {"2,1": 1, "0": 1}; the empty weight is keyed "0".
Json to_json(const WeightSum& sum);
WeightSum weight_sum_from_json(const Json& j);

Json to_json(const numeric::MatrixC& m);
numeric::MatrixC matrix_from_json(const Json& j);

Json to_json(const MembershipReport& report);
Json to_json(const numeric::SampleReport& report);
numeric::SampleReport sample_report_from_json(const Json& j);
Json to_json(const numeric::RealizeResult& result);

Json read_json_file(const std::filesystem::path& path);
/// Writes via a temporary file and rename; output ends with a newline.
void write_json_file(const std::filesystem::path& path, const Json& j);

/// QSC_CACHE_DIR, else $XDG_CACHE_HOME/qsc, else $HOME/.cache/qsc, else ./.qsc-cache.
std::filesystem::path default_cache_dir();

/// Quantum products of basis classes memoized on disk, one JSON file per
/// (r, n). Internally synchronized.
class ProductCache {
 public:
  explicit ProductCache(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path file_for(const GrassmannianCtx& ctx) const;

  /// Product of two basis classes; `hit` reports whether the cache served it.
  QuantumClass product(const Partition& a, const Partition& b, const GrassmannianCtx& ctx,
                       bool* hit = nullptr);
  /// Persists entries added since the last flush.
  void flush();

 private:
  struct Table {
    bool dirty = false;
    std::map<std::string, Json> entries;
  };
  Table& table(const GrassmannianCtx& ctx);

  std::filesystem::path dir_;
  std::mutex mutex_;
  std::map<std::pair<int, int>, Table> tables_;
};

}  // namespace qsc::io
