#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ckrice/decomposition.hpp"
#include "ckrice/real.hpp"

namespace ckrice::cli {

enum ExitCode : int { kExitOk = 0, kExitUsage = 2, kExitCompute = 3 };

struct RunConfig {
  int precision_digits = 50;
  std::string zeros_path;  // empty: bundled table
  long num_zeros = 30;
  std::string cache_dir;   // empty: $CK_CACHE_DIR or ./.ck-cache
  bool use_cache = true;
  std::string output_path;  // empty: stdout
  int jobs = 0;             // 0: available parallelism
};

// Parses argv and runs one subcommand, writing results to `out` (or the
// --output file) and diagnostics to `err`. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Bundled zeros file: next to the sources for a build tree, under share/ for an install.
std::string default_zeros_path();

struct PublishedRow {
  long k;
  const char* value;  // as printed, 6 significant digits
};

// The sixteen published (k, c_k) pairs, k = 1e5 .. 7e6.
const std::vector<PublishedRow>& published_table();

// Largest d <= digits(published) such that computed and published agree when both are
// rounded to d significant digits; 0 when signs or leading digits differ.
int matching_digits(const Real& computed, const std::string& published);

struct TableRow {
  long k;
  std::string published;
  Real computed;
  int digits;
};

std::vector<TableRow> compute_table(const Decomposer& decomposer, int jobs);

// CSV rendering shared by the scan command and the tests.
std::string scan_csv(const std::vector<ScanRow>& rows, int digits);

}  // namespace ckrice::cli
