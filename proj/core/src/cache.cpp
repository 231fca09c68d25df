#include "ckrice/cache.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ckrice/errors.hpp"

namespace ckrice {

namespace {

constexpr const char* kFileName = "values.tsv";

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    out.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return out;
}

bool parses_as_number(const std::string& text) {
  if (text.empty()) return false;
  try {
    return Real::from_string(text, 64).is_finite();
  } catch (const std::invalid_argument&) {
    return false;
  }
}

std::optional<int> parse_digits(const std::string& text) {
  if (text.empty() || text.size() > 9) return std::nullopt;
  int value = 0;
  for (char c : text) {
    if (c < '0' || c > '9') return std::nullopt;
    value = value * 10 + (c - '0');
  }
  if (value <= 0) return std::nullopt;
  return value;
}

}  // namespace

const char* to_string(CacheKind kind) {
  switch (kind) {
    case CacheKind::kZetaPrimeAtZero:
      return "zeta_prime_at_zero";
    case CacheKind::kZetaEvenMinusOne:
      return "zeta_even_minus_one";
    case CacheKind::kZetaOdd:
      return "zeta_odd";
    case CacheKind::kRefinedZero:
      return "refined_zero";
  }
  return "unknown";
}

std::optional<CacheKind> parse_cache_kind(std::string_view text) {
  for (CacheKind kind : {CacheKind::kZetaPrimeAtZero, CacheKind::kZetaEvenMinusOne, CacheKind::kZetaOdd,
                         CacheKind::kRefinedZero}) {
    if (text == to_string(kind)) return kind;
  }
  return std::nullopt;
}

int field_count(CacheKind kind) { return kind == CacheKind::kZetaPrimeAtZero ? 2 : 1; }

int context_digits(const PrecisionContext& ctx) {
  return static_cast<int>(std::floor(static_cast<double>(ctx.precision_bits) * std::log10(2.0)));
}

ValueCache::ValueCache(std::filesystem::path dir, WarningSink warn) : dir_(std::move(dir)), sink_(std::move(warn)) {
  load();
}

std::filesystem::path ValueCache::resolve_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("CK_CACHE_DIR"); env != nullptr && *env != '\0') return env;
  return ".ck-cache";
}

void ValueCache::warn(const std::string& message) {
  warnings_.push_back(message);
  if (sink_) sink_(message);
}

void ValueCache::load() {
  std::ifstream in(dir_ / kFileName);
  if (!in) return;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_tabs(line);
    const auto bad = [&](const std::string& why) {
      warn("cache " + (dir_ / kFileName).string() + ":" + std::to_string(line_no) + ": ignoring corrupt entry (" +
           why + ")");
    };
    if (fields.size() < 4) {
      bad("too few fields");
      continue;
    }
    const auto kind = parse_cache_kind(fields[0]);
    if (!kind) {
      bad("unknown kind '" + fields[0] + "'");
      continue;
    }
    const auto digits = parse_digits(fields[2]);
    if (!digits) {
      bad("bad precision_digits");
      continue;
    }
    if (static_cast<int>(fields.size()) != 3 + field_count(*kind)) {
      bad("wrong number of values");
      continue;
    }
    Fields values(fields.begin() + 3, fields.end());
    bool ok = true;
    for (const auto& v : values) ok = ok && parses_as_number(v);
    if (!ok) {
      bad("unparseable value");
      continue;
    }
    records_[{*kind, fields[1]}] = Record{*digits, std::move(values)};
  }
}

std::optional<ValueCache::Fields> ValueCache::lookup(CacheKind kind, const std::string& key, int digits) const {
  std::lock_guard lock(mutex_);
  const auto it = records_.find({kind, key});
  if (it == records_.end() || it->second.digits < digits) return std::nullopt;
  return it->second.fields;
}

void ValueCache::store(CacheKind kind, const std::string& key, int digits, const Fields& fields) {
  if (static_cast<int>(fields.size()) != field_count(kind)) throw DomainError("cache record has wrong field count");
  if (key.find_first_of("\t\n") != std::string::npos) throw DomainError("cache key contains a tab or newline");
  std::ostringstream line;
  line << to_string(kind) << '\t' << key << '\t' << digits;
  for (const auto& f : fields) line << '\t' << f;
  line << '\n';

  std::lock_guard lock(mutex_);
  auto& slot = records_[{kind, key}];
  if (slot.digits > digits) return;
  slot = Record{digits, fields};
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  std::ofstream out(dir_ / kFileName, std::ios::app);
  if (!out) throw Error("cannot write cache file " + (dir_ / kFileName).string());
  out << line.str();
  if (!out) throw Error("write failed for cache file " + (dir_ / kFileName).string());
}

ValueCache::Fields ValueCache::get_or_compute(CacheKind kind, const std::string& key, int digits,
                                              const std::function<Fields()>& compute) {
  if (auto hit = lookup(kind, key, digits)) return *hit;
  Fields fresh = compute();
  {
    std::lock_guard lock(mutex_);
    ++computations_;
  }
  store(kind, key, digits, fresh);
  return fresh;
}

Real ValueCache::get_or_compute_real(CacheKind kind, const std::string& key, const PrecisionContext& ctx,
                                     const std::function<Real()>& compute) {
  const Fields f =
      get_or_compute(kind, key, context_digits(ctx), [&] { return Fields{to_shortest_string(compute())}; });
  return Real::from_string(f.at(0), ctx.bits());
}

Complex ValueCache::get_or_compute_complex(CacheKind kind, const std::string& key, const PrecisionContext& ctx,
                                           const std::function<Complex()>& compute) {
  const Fields f = get_or_compute(kind, key, context_digits(ctx), [&] {
    const Complex z = compute();
    return Fields{to_shortest_string(z.re()), to_shortest_string(z.im())};
  });
  return {Real::from_string(f.at(0), ctx.bits()), Real::from_string(f.at(1), ctx.bits())};
}

long ValueCache::computations() const {
  std::lock_guard lock(mutex_);
  return computations_;
}

std::vector<std::string> ValueCache::warnings() const {
  std::lock_guard lock(mutex_);
  return warnings_;
}

ZetaEvenTable cached_zeta_even_table(long j_max, const PrecisionContext& ctx, ValueCache* cache) {
  if (cache == nullptr) return ZetaEvenTable::build(j_max, ctx);
  const int digits = context_digits(ctx);
  std::vector<Real> values;
  values.reserve(static_cast<std::size_t>(j_max) + 1);
  long first_missing = -1;
  for (long j = 0; j <= j_max; ++j) {
    auto hit = cache->lookup(CacheKind::kZetaEvenMinusOne, std::to_string(2 * j + 2), digits);
    if (!hit) {
      first_missing = j;
      break;
    }
    values.push_back(Real::from_string(hit->at(0), ctx.bits()));
  }
  if (first_missing >= 0) {
    const ZetaEvenTable fresh = ZetaEvenTable::build(j_max, ctx);
    for (long j = first_missing; j <= j_max; ++j) {
      const std::string text = to_shortest_string(fresh.minus_one(j));
      (void)cache->get_or_compute(CacheKind::kZetaEvenMinusOne, std::to_string(2 * j + 2), digits,
                                  [&] { return ValueCache::Fields{text}; });
      values.push_back(Real::from_string(text, ctx.bits()));
    }
  }
  return {std::move(values), ctx.precision_bits};
}

}  // namespace ckrice
