#include "ckrice/zeros.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "ckrice/cache.hpp"
#include "ckrice/errors.hpp"
#include "ckrice/parallel.hpp"
#include "ckrice/zeta.hpp"

namespace ckrice {

namespace {

constexpr double kFirstZeroAnchor = 14.1347;

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Significant digits of a plain decimal such as "14.134725142".
int significant_digits(const std::string& text) {
  int digits = 0;
  bool leading = true;
  for (char c : text) {
    if (c == 'e' || c == 'E') break;
    if (c < '0' || c > '9') continue;
    if (leading && c == '0') continue;
    leading = false;
    ++digits;
  }
  return std::max(digits, 1);
}

bool is_plain_decimal(const std::string& text) {
  bool seen_digit = false;
  bool seen_point = false;
  for (char c : text) {
    if (c >= '0' && c <= '9') {
      seen_digit = true;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      return false;
    }
  }
  return seen_digit;
}

Precision precision_for_digits(int digits) {
  return std::max<Precision>(kMinPrecisionBits, static_cast<Precision>(std::ceil(digits * 3.3219280948873623)) + 8);
}

// Fixed-point text with `digits` significant digits.
std::string fixed_text(const Real& gamma, int digits) {
  const long int_digits = std::max(1L, static_cast<long>(std::floor(std::log10(gamma.to_double()))) + 1);
  const long decimals = std::max(0L, digits - int_digits);
  std::vector<char> buf(static_cast<std::size_t>(int_digits + decimals + 16));
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rf", static_cast<int>(decimals), gamma.get());
  return buf.data();
}

}  // namespace

ZeroTable::ZeroTable(std::vector<ZeroEntry> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw DomainError("zero table is empty");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (e.index != static_cast<long>(i) + 1) throw DomainError("zero indices must be contiguous from 1");
    if (e.gamma.sign() <= 0) throw DomainError("zero ordinates must be positive");
    if (i > 0 && !(e.gamma > entries_[i - 1].gamma)) throw DomainError("zero ordinates must be strictly increasing");
  }
  if (std::abs(entries_.front().gamma.to_double() - kFirstZeroAnchor) > 1e-3) {
    throw DomainError("first zero ordinate is not near 14.1347");
  }
}

const ZeroEntry& ZeroTable::at(long index) const {
  if (index < 1 || index > static_cast<long>(entries_.size())) {
    throw DomainError("zero index " + std::to_string(index) + " outside 1.." + std::to_string(entries_.size()));
  }
  return entries_[static_cast<std::size_t>(index - 1)];
}

long ZeroTable::find(const Real& gamma, double tolerance) const {
  const double g = gamma.to_double();
  long lo = 0;
  long hi = static_cast<long>(entries_.size());
  while (lo < hi) {
    const long mid = (lo + hi) / 2;
    if (entries_[mid].gamma.to_double() < g) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  long best = 0;
  double best_dist = tolerance;
  for (long i = std::max(0L, lo - 1); i <= std::min<long>(lo, static_cast<long>(entries_.size()) - 1); ++i) {
    const double d = std::abs(entries_[i].gamma.to_double() - g);
    if (d <= best_dist) {
      best = i + 1;
      best_dist = d;
    }
  }
  return best;
}

ZeroTable parse_zeros(std::istream& in) {
  std::vector<ZeroEntry> entries;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (!is_plain_decimal(line)) throw ParseError("line " + std::to_string(line_no) + ": not a decimal ordinate", line_no);
    const int digits = significant_digits(line);
    Real gamma = Real::from_string(line, precision_for_digits(digits));
    if (gamma.sign() <= 0) throw ParseError("line " + std::to_string(line_no) + ": ordinate must be positive", line_no);
    if (!entries.empty() && !(gamma > entries.back().gamma)) {
      throw ParseError("line " + std::to_string(line_no) + ": ordinates not strictly increasing", line_no);
    }
    if (entries.empty() && std::abs(gamma.to_double() - kFirstZeroAnchor) > 1e-3) {
      throw ParseError("line " + std::to_string(line_no) + ": first ordinate is not near 14.1347", line_no);
    }
    entries.push_back({static_cast<long>(entries.size()) + 1, std::move(gamma), digits, false, line});
  }
  if (entries.empty()) throw ParseError("zeros file contains no ordinates", 0);
  return ZeroTable(std::move(entries));
}

ZeroTable load_zeros(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open zeros file " + path.string());
  try {
    return parse_zeros(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.line());
  }
}

std::string serialize_zeros(const ZeroTable& table) {
  std::ostringstream out;
  for (const auto& e : table.entries()) out << e.text << '\n';
  return out.str();
}

namespace {

// zeta near a zero has absolute rounding error ~ |s| 2^-wp; the guard keeps it
// well below the 2^-bits stopping threshold.
PrecisionContext refine_context(const Real& gamma0, const PrecisionContext& ctx) {
  const long guard = 16 + static_cast<long>(std::ceil(std::log2(2.0 + gamma0.to_double())));
  return ctx.widened(guard);
}

}  // namespace

RefinedZero refine_zero(const Real& gamma0, const PrecisionContext& ctx) {
  if (gamma0.sign() <= 0) throw DomainError("refine_zero needs gamma0 > 0");
  const PrecisionContext wide = refine_context(gamma0, ctx);
  const Precision wp = wide.bits();
  // |zeta| below 2^-bits, i.e. below one unit in the last context digit.
  const Real threshold = ldexp(ctx.series_eps, -8);
  const Real half = Real::from_double(0.5, wp);
  Complex s(half, gamma0.rounded(wp));
  const Real step_floor = ldexp(abs(s), -(ctx.precision_bits + 4));
  const auto finish = [&](int iterations) {
    const bool off_line = abs(s.re() - half) > ctx.series_eps * 10;
    return RefinedZero{s.im(), off_line, iterations};
  };
  for (int it = 1; it <= 50; ++it) {
    const ZetaWithDerivative zd = zeta_and_derivative(s, wide);
    if (abs(zd.value) < threshold) return finish(it - 1);
    if (zd.derivative.is_zero()) break;
    const Complex step = zd.value / zd.derivative;
    s -= step;
    if (abs(step) < step_floor && abs(zeta_complex(s, wide)) < threshold) return finish(it);
  }
  throw ConvergenceError("Newton refinement from gamma0 = " + to_scientific(gamma0, 12) + " did not converge");
}

ZeroTable refine_table(const ZeroTable& table, long count, const PrecisionContext& ctx, ValueCache* cache,
                       int jobs) {
  std::vector<ZeroEntry> entries = table.entries();
  const int digits = context_digits(ctx);
  count = std::min<long>(count, static_cast<long>(entries.size()));
  parallel_for(count, jobs, [&](long i) {
    auto& e = entries[static_cast<std::size_t>(i)];
    if (e.refined && e.gamma.precision() >= ctx.bits()) return;
    const auto compute = [&] {
      const RefinedZero r = refine_zero(e.gamma, ctx);
      if (r.off_line) throw ConvergenceError("zero " + std::to_string(e.index) + " refined off the critical line");
      // A refinement that jumps to another zero means the input ordinate was wrong.
      if (abs(r.gamma - e.gamma) > Real::from_double(std::pow(10.0, 2 - e.digits) * 10, 64) * e.gamma) {
        throw ConvergenceError("zero " + std::to_string(e.index) + " moved during refinement");
      }
      return r.gamma;
    };
    Real gamma = cache != nullptr
                     ? cache->get_or_compute_real(CacheKind::kRefinedZero, std::to_string(e.index) + "@" + e.text,
                                                  refine_context(e.gamma, ctx), compute)
                     : compute();
    e.text = fixed_text(gamma, digits);
    e.gamma = std::move(gamma);
    e.digits = digits;
    e.refined = true;
  });
  for (long i = 1; i < count; ++i) {
    if (!(entries[static_cast<std::size_t>(i)].gamma > entries[static_cast<std::size_t>(i - 1)].gamma)) {
      throw ConvergenceError("zeros " + std::to_string(i) + " and " + std::to_string(i + 1) +
                             " refined to the same or reversed ordinates");
    }
  }
  return ZeroTable(std::move(entries));
}

}  // namespace ckrice
