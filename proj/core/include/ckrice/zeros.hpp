#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "ckrice/precision.hpp"
#include "ckrice/real.hpp"

namespace ckrice {

class ValueCache;

struct ZeroEntry {
  long index;        // 1-based
  Real gamma;        // ordinate of rho = 1/2 + i gamma
  int digits;        // significant digits of the source text
  bool refined;      // upgraded by Newton refinement
  std::string text;  // decimal text as read or produced; serialization writes it back
};

// Ordered positive ordinates of nontrivial zeros, indices contiguous from 1.
class ZeroTable {
 public:
  ZeroTable() = default;
  // Validates: nonempty, gamma > 0, strictly increasing, first entry near 14.1347.
  explicit ZeroTable(std::vector<ZeroEntry> entries);

  [[nodiscard]] std::size_t size() const { return entries_.size(); }
  [[nodiscard]] bool empty() const { return entries_.empty(); }
  // 1-based access.
  [[nodiscard]] const ZeroEntry& at(long index) const;
  [[nodiscard]] const Real& gamma(long index) const { return at(index).gamma; }
  [[nodiscard]] const std::vector<ZeroEntry>& entries() const { return entries_; }
  // Index of the entry closest to `gamma`; 0 when none is within `tolerance`.
  [[nodiscard]] long find(const Real& gamma, double tolerance = 1e-6) const;

 private:
  std::vector<ZeroEntry> entries_;
};

// One ordinate per line, '#' comment lines and blank lines ignored. Throws
// ParseError (with the line number) on malformed, nonpositive or
// non-increasing ordinates and on files with no ordinates.
ZeroTable parse_zeros(std::istream& in);
ZeroTable load_zeros(const std::filesystem::path& path);
std::string serialize_zeros(const ZeroTable& table);

struct RefinedZero {
  Real gamma;
  bool off_line;  // |Re s - 1/2| > 10 series_eps at the Newton fixed point
  int iterations;
};

// Newton iteration s <- s - zeta(s)/zeta'(s) from 1/2 + i gamma0 until
// |zeta(s)| < 2^-precision_bits (below series_eps). The ordinate is returned
// with guard bits beyond the context precision so that the residual bound
// survives rounding. Throws ConvergenceError after 50 iterations.
RefinedZero refine_zero(const Real& gamma0, const PrecisionContext& ctx);

// Copy of `table` whose first `count` entries are refined to context precision,
// reusing refined ordinates from `cache` when given. Throws ConvergenceError
// when a zero leaves the critical line, moves to a different zero, or two
// entries refine to the same ordinate.
ZeroTable refine_table(const ZeroTable& table, long count, const PrecisionContext& ctx, ValueCache* cache = nullptr,
                       int jobs = 1);

}  // namespace ckrice
