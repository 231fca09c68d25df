#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ckrice/precision.hpp"
#include "ckrice/real.hpp"
#include "ckrice/zeta.hpp"

namespace ckrice {

enum class CacheKind { kZetaPrimeAtZero, kZetaEvenMinusOne, kZetaOdd, kRefinedZero };

const char* to_string(CacheKind kind);
std::optional<CacheKind> parse_cache_kind(std::string_view text);
// Number of value fields a record of this kind carries (2 for complex values).
int field_count(CacheKind kind);

// Decimal digits a context carries, used as the precision_digits of records.
int context_digits(const PrecisionContext& ctx);

// Persistent text cache of expensive values. Records live in
// <dir>/values.tsv, one per line:
//   kind<TAB>key<TAB>precision_digits<TAB>value[<TAB>value2]
// Writes append; on load the last record for a (kind, key) wins, so a
// precision upgrade overwrites earlier entries. Malformed lines are skipped
// with a warning and behave as misses.
class ValueCache {
 public:
  using Fields = std::vector<std::string>;
  using WarningSink = std::function<void(const std::string&)>;

  explicit ValueCache(std::filesystem::path dir, WarningSink warn = {});

  // --cache-dir value if nonempty, else $CK_CACHE_DIR, else ./.ck-cache.
  static std::filesystem::path resolve_dir(const std::string& flag_value);

  [[nodiscard]] const std::filesystem::path& dir() const { return dir_; }
  [[nodiscard]] std::filesystem::path file() const { return dir_ / "values.tsv"; }

  // Fields of a record at >= `digits`, if present.
  [[nodiscard]] std::optional<Fields> lookup(CacheKind kind, const std::string& key, int digits) const;
  void store(CacheKind kind, const std::string& key, int digits, const Fields& fields);
  Fields get_or_compute(CacheKind kind, const std::string& key, int digits, const std::function<Fields()>& compute);

  // Typed wrappers at context precision. The returned value is always the one
  // parsed back from its stored text, so cold and warm runs agree bit for bit.
  Real get_or_compute_real(CacheKind kind, const std::string& key, const PrecisionContext& ctx,
                           const std::function<Real()>& compute);
  Complex get_or_compute_complex(CacheKind kind, const std::string& key, const PrecisionContext& ctx,
                                 const std::function<Complex()>& compute);

  // Number of compute callbacks invoked so far.
  [[nodiscard]] long computations() const;
  [[nodiscard]] std::vector<std::string> warnings() const;

 private:
  struct Record {
    int digits;
    Fields fields;
  };

  void load();
  void warn(const std::string& message);

  std::filesystem::path dir_;
  WarningSink sink_;
  mutable std::mutex mutex_;
  std::map<std::pair<CacheKind, std::string>, Record> records_;
  std::vector<std::string> warnings_;
  long computations_ = 0;
};

// zeta(2j+2) - 1 for j = 0..j_max, reusing cached entries.
ZetaEvenTable cached_zeta_even_table(long j_max, const PrecisionContext& ctx, ValueCache* cache);

}  // namespace ckrice
