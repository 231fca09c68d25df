#include "commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "ckrice/cache.hpp"
#include "ckrice/errors.hpp"
#include "ckrice/expansions.hpp"
#include "ckrice/parallel.hpp"
#include "ckrice/special.hpp"
#include "ckrice/zeros.hpp"
#include "ckrice/zeta.hpp"

#ifndef CKRICE_SOURCE_DATA_DIR
#define CKRICE_SOURCE_DATA_DIR "data"
#endif
#ifndef CKRICE_INSTALL_DATA_DIR
#define CKRICE_INSTALL_DATA_DIR "share/ckrice"
#endif

namespace ckrice::cli {

namespace {

// Raised for bad flag combinations detected after parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shared state for one invocation: context, zeros, cache, output stream.
class Session {
 public:
  Session(const RunConfig& cfg, std::ostream& out, std::ostream& err)
      : cfg_(cfg), ctx_(context_for_digits(cfg.precision_digits)), out_(&out), err_(err) {
    if (!cfg.output_path.empty()) {
      file_ = std::make_unique<std::ofstream>(cfg.output_path, std::ios::binary);
      if (!*file_) throw UsageError("cannot open output file " + cfg.output_path);
      out_ = file_.get();
    }
    if (cfg.use_cache) {
      cache_ = std::make_unique<ValueCache>(ValueCache::resolve_dir(cfg.cache_dir),
                                            [this](const std::string& w) { err_ << "warning: " << w << '\n'; });
    }
  }

  [[nodiscard]] const PrecisionContext& ctx() const { return ctx_; }
  [[nodiscard]] std::ostream& out() { return *out_; }
  [[nodiscard]] ValueCache* cache() { return cache_.get(); }
  [[nodiscard]] int jobs() const { return cfg_.jobs > 0 ? cfg_.jobs : default_jobs(); }
  [[nodiscard]] int digits() const { return cfg_.precision_digits; }
  [[nodiscard]] std::string fmt(const Real& x) const { return to_scientific(x, cfg_.precision_digits); }

  const ZeroTable& zeros() {
    if (!zeros_) {
      const std::string path = cfg_.zeros_path.empty() ? default_zeros_path() : cfg_.zeros_path;
      try {
        zeros_ = load_zeros(path);
      } catch (const Error& e) {
        throw UsageError(e.what());
      }
    }
    return *zeros_;
  }

  // Decomposer over `count` zeros (num_zeros by default).
  const Decomposer& decomposer(long count = 0) {
    if (count <= 0) count = cfg_.num_zeros;
    if (!decomposer_ || decomposer_->num_zeros() != count) {
      if (count > static_cast<long>(zeros().size())) {
        throw UsageError("requested " + std::to_string(count) + " zeros but the table has " +
                         std::to_string(zeros().size()));
      }
      decomposer_ = std::make_unique<Decomposer>(zeros(), count, ctx_, cache(), jobs());
    }
    return *decomposer_;
  }

 private:
  RunConfig cfg_;
  PrecisionContext ctx_;
  std::ostream* out_;
  std::ostream& err_;
  std::unique_ptr<std::ofstream> file_;
  std::unique_ptr<ValueCache> cache_;
  std::optional<ZeroTable> zeros_;
  std::unique_ptr<Decomposer> decomposer_;
};

void add_common_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--precision-digits", cfg.precision_digits, "Significant decimal digits (>= 20)")
      ->check(CLI::Range(20, 20000))
      ->capture_default_str();
  sub->add_option("--num-zeros", cfg.num_zeros, "Zero pairs in the oscillation sum")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--zeros", cfg.zeros_path, "Zeros file (default: bundled table)");
  sub->add_option("--cache-dir", cfg.cache_dir, "Value cache directory (default: $CK_CACHE_DIR or ./.ck-cache)");
  sub->add_flag("!--no-cache", cfg.use_cache, "Disable the persistent value cache");
  sub->add_option("--output,-o", cfg.output_path, "Write results to this file instead of stdout");
  sub->add_option("--jobs,-j", cfg.jobs, "Worker threads (default: available parallelism)")
      ->check(CLI::NonNegativeNumber);
}

Real parse_real_arg(const std::string& text, const PrecisionContext& ctx, const char* flag) {
  try {
    return Real::from_string(text, ctx.bits());
  } catch (const std::invalid_argument&) {
    throw UsageError(std::string(flag) + ": not a number: '" + text + "'");
  }
}

// ---- commands -------------------------------------------------------------

void cmd_ck(Session& s, long k, const std::string& method, long ceiling) {
  std::optional<Real> direct;
  std::optional<CkDecomposition> dec;
  if (method == "decompose" || method == "both") {
    if (k < 1) throw UsageError("the decomposition needs k >= 1");
    dec = s.decomposer().decompose(k);
  }
  if (method == "direct" || method == "both") {
    if (k > ceiling) {
      throw ResourceError("k = " + std::to_string(k) + " exceeds the direct-sum ceiling " + std::to_string(ceiling));
    }
    const long wp = direct_ck_precision(k, s.ctx());
    const ZetaEvenTable table = cached_zeta_even_table(k, make_context(wp), s.cache());
    direct = direct_ck(k, s.ctx(), &table, ceiling);
  }
  auto& out = s.out();
  out << "k = " << k << '\n';
  out << "method = " << method << '\n';
  if (dec) {
    out << "trend = " << s.fmt(dec->trend) << '\n';
    out << "oscillation = " << s.fmt(dec->oscillation) << '\n';
    out << "trend_terms = " << dec->trend_terms_used << '\n';
    out << "zeros_used = " << dec->zeros_used << '\n';
    out << "c_k_decompose = " << s.fmt(dec->total) << '\n';
  }
  if (direct) out << "c_k_direct = " << s.fmt(*direct) << '\n';
  if (dec && direct) {
    const Real rel = abs((dec->total - *direct) / *direct);
    out << "relative_discrepancy = " << to_scientific(rel, 3) << '\n';
  }
  out << "c_k = " << s.fmt(direct ? *direct : dec->total) << '\n';
}

void cmd_scan(Session& s, long k_min, long k_max, int points, const std::string& spacing) {
  if (k_min < 1 || k_min >= k_max) throw UsageError("scan needs 1 <= --k-min < --k-max");
  const Spacing sp = spacing == "linear" ? Spacing::kLinear : Spacing::kLog;
  const auto rows = criterion_scan(k_min, k_max, points, sp, s.decomposer(), s.jobs());
  s.out() << scan_csv(rows, s.digits());
}

void cmd_table(Session& s) {
  const auto rows = compute_table(s.decomposer(), s.jobs());
  auto& out = s.out();
  int good = 0;
  out << "k,computed,published,matching_digits\n";
  for (const auto& r : rows) {
    out << r.k << ',' << s.fmt(r.computed) << ',' << r.published << ',' << r.digits << '\n';
    if (r.digits >= 5) ++good;
  }
  out << "# rows matching to >= 5 significant digits: " << good << '/' << rows.size() << '\n';
}

void cmd_reconstruct(Session& s, const std::string& s_re, const std::string& s_im, long n_terms,
                     const std::string& variant_name) {
  if (n_terms < 1) throw UsageError("--N must be >= 1");
  const ExpansionVariant variant = parse_variant(variant_name);
  const Complex point(parse_real_arg(s_re, s.ctx(), "--s"), parse_real_arg(s_im, s.ctx(), "--t"));
  const Complex value = zeta_via_expansion(point, n_terms, variant, s.ctx());
  const Complex reference = zeta_complex(point, s.ctx());
  auto& out = s.out();
  out << "s = " << s.fmt(point.re()) << (point.im().is_zero() ? "" : " + " + s.fmt(point.im()) + " i") << '\n';
  out << "variant = " << to_string(variant) << '\n';
  out << "N = " << n_terms << '\n';
  out << "expansion_re = " << s.fmt(value.re()) << '\n';
  out << "expansion_im = " << s.fmt(value.im()) << '\n';
  out << "reference_re = " << s.fmt(reference.re()) << '\n';
  out << "reference_im = " << s.fmt(reference.im()) << '\n';
  out << "abs_error = " << to_scientific(abs(value - reference), 6) << '\n';
}

void cmd_residues(Session& s, long n_max, const std::string& method, long n_pairs) {
  if (n_max < 1) throw UsageError("--n-max must be >= 1");
  if (n_max > static_cast<long>(s.zeros().size())) {
    throw UsageError("--n-max exceeds the " + std::to_string(s.zeros().size()) + " zeros available");
  }
  auto& out = s.out();
  out << "index,gamma,res_re,res_im\n";
  if (method == "zeta-prime") {
    const Decomposer& d = s.decomposer(n_max);
    for (long i = 1; i <= n_max; ++i) {
      const Complex& r = d.residues()[static_cast<std::size_t>(i - 1)];
      out << i << ',' << s.fmt(d.zeros().gamma(i)) << ',' << s.fmt(r.re()) << ',' << s.fmt(r.im()) << '\n';
    }
    return;
  }
  if (n_pairs <= 0) n_pairs = static_cast<long>(s.zeros().size());
  if (n_pairs < n_max || n_pairs > static_cast<long>(s.zeros().size())) {
    throw UsageError("--N must lie between --n-max and the number of zeros");
  }
  const bool compensated = method == "hadamard";
  std::vector<Complex> res(static_cast<std::size_t>(n_max));
  parallel_for(n_max, s.jobs(), [&](long i) {
    res[static_cast<std::size_t>(i)] = residue_hadamard(s.zeros(), i + 1, n_pairs, s.ctx(), compensated);
  });
  for (long i = 1; i <= n_max; ++i) {
    const Complex& r = res[static_cast<std::size_t>(i - 1)];
    out << i << ',' << s.zeros().at(i).text << ',' << s.fmt(r.re()) << ',' << s.fmt(r.im()) << '\n';
  }
}

void cmd_amplitude(Session& s, const std::vector<std::string>& gammas) {
  auto& out = s.out();
  out << "gamma,log10_amplitude_stirling,log10_amplitude_log_gamma\n";
  for (const auto& text : gammas) {
    const Real gamma = parse_real_arg(text, s.ctx(), "--gamma");
    const LogScaled bound = amplitude_bound(gamma, s.ctx().bits());
    std::string direct = "n/a";
    // Direct evaluation only where Gamma itself is in range.
    if (gamma < 1'000'000'000L) {
      const Complex lg =
          log_gamma(Complex(Real::from_double(0.75, s.ctx().bits()), gamma / 2L), s.ctx());
      direct = to_scientific(lg.re() / log(Real(10, s.ctx().bits())), 12);
    }
    out << text << ',' << to_scientific(bound.log10_magnitude(), 12) << ',' << direct << '\n';
  }
  out << "# published estimate at gamma = 2e21: log10 amplitude ~ -3.5e21\n";
}

}  // namespace

std::string default_zeros_path() {
  const std::filesystem::path source = std::filesystem::path(CKRICE_SOURCE_DATA_DIR) / "zeros.txt";
  if (std::filesystem::exists(source)) return source.string();
  return (std::filesystem::path(CKRICE_INSTALL_DATA_DIR) / "zeros.txt").string();
}

const std::vector<PublishedRow>& published_table() {
  static const std::vector<PublishedRow> rows = {
      {100000, "1.60976e-9"},   {200000, "-7.89739e-9"},  {300000, "5.82876e-9"},   {400000, "-2.89364e-9"},
      {500000, "-3.45567e-9"},  {600000, "1.13652e-9"},   {700000, "3.14429e-9"},   {800000, "2.00526e-9"},
      {900000, "-1.70316e-10"}, {1000000, "-1.77502e-9"}, {2000000, "8.08716e-10"}, {3000000, "-8.22419e-10"},
      {4000000, "8.01923e-10"}, {5000000, "2.78245e-10"}, {6000000, "-5.00102e-10"}, {7000000, "-5.21564e-10"},
  };
  return rows;
}

int matching_digits(const Real& computed, const std::string& published) {
  const Real reference = Real::from_string(published, 128);
  const std::string mantissa = published.substr(0, published.find_first_of("eE"));
  int published_digits = 0;
  bool leading = true;
  for (char c : mantissa) {
    if (c < '0' || c > '9') continue;
    if (leading && c == '0') continue;
    leading = false;
    ++published_digits;
  }
  for (int d = published_digits; d >= 1; --d) {
    if (to_scientific(computed, d) == to_scientific(reference, d)) return d;
  }
  return 0;
}

std::vector<TableRow> compute_table(const Decomposer& decomposer, int jobs) {
  const auto& published = published_table();
  std::vector<TableRow> rows(published.size());
  parallel_for(static_cast<long>(published.size()), jobs, [&](long i) {
    const auto& p = published[static_cast<std::size_t>(i)];
    Real value = decomposer.decompose(p.k).total;
    const int d = matching_digits(value, p.value);
    rows[static_cast<std::size_t>(i)] = TableRow{p.k, p.value, std::move(value), d};
  });
  return rows;
}

std::string scan_csv(const std::vector<ScanRow>& rows, int digits) {
  std::ostringstream out;
  out << "k,c_k,trend,osc,ck_scaled,trend_scaled,osc_scaled\n";
  for (const auto& r : rows) {
    out << r.k << ',' << to_scientific(r.total, digits) << ',' << to_scientific(r.trend, digits) << ','
        << to_scientific(r.oscillation, digits) << ',' << to_scientific(r.total_scaled, digits) << ','
        << to_scientific(r.trend_scaled, digits) << ',' << to_scientific(r.osc_scaled, digits) << '\n';
  }
  return out.str();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"c_k = sum_j (-1)^j C(k,j) / zeta(2j+2) by direct binomial sums and by residue decomposition", "ckrice"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* ck = app.add_subcommand("ck", "Compute one coefficient c_k");
  long k = 0;
  std::string method = "decompose";
  long ceiling = kDefaultDirectCeiling;
  ck->add_option("--k", k, "Index k")->required()->check(CLI::NonNegativeNumber);
  ck->add_option("--method", method, "direct | decompose | both")
      ->check(CLI::IsMember({"direct", "decompose", "both"}))
      ->capture_default_str();
  ck->add_option("--direct-ceiling", ceiling, "Largest k for the direct sum")->capture_default_str();
  add_common_options(ck, cfg);

  auto* scan = app.add_subcommand("scan", "Scan trend/oscillation over a k range as CSV");
  long k_min = 0;
  long k_max = 0;
  int points = 200;
  std::string spacing = "log";
  scan->add_option("--k-min", k_min, "Smallest k")->required();
  scan->add_option("--k-max", k_max, "Largest k")->required();
  scan->add_option("--points", points, "Number of rows")->check(CLI::Range(2, 10'000'000))->capture_default_str();
  scan->add_option("--spacing", spacing, "linear | log")
      ->check(CLI::IsMember({"linear", "log"}))
      ->capture_default_str();
  add_common_options(scan, cfg);

  auto* table = app.add_subcommand("table", "Recompute the sixteen published table rows");
  add_common_options(table, cfg);

  auto* recon = app.add_subcommand("reconstruct", "Evaluate a truncated zeta expansion against zeta(s)");
  std::string s_re;
  std::string s_im = "0";
  long n_terms = 10;
  std::string variant = "base";
  recon->add_option("--s", s_re, "Real part of s")->required();
  recon->add_option("--t", s_im, "Imaginary part of s")->capture_default_str();
  recon->add_option("--N", n_terms, "Number of expansion terms")->capture_default_str();
  recon->add_option("--variant", variant, "base | pole-subtracted | regularized")
      ->check(CLI::IsMember({"base", "pole-subtracted", "regularized"}))
      ->capture_default_str();
  add_common_options(recon, cfg);

  auto* residues = app.add_subcommand("residues", "Residues of 1/zeta(2s+2) at the nontrivial zeros as CSV");
  long n_max = 0;
  std::string res_method = "zeta-prime";
  long n_pairs = 0;
  residues->add_option("--n-max", n_max, "Number of zeros (default: --num-zeros)");
  residues->add_option("--method", res_method, "zeta-prime | hadamard | hadamard-raw")
      ->check(CLI::IsMember({"zeta-prime", "hadamard", "hadamard-raw"}))
      ->capture_default_str();
  residues->add_option("--N", n_pairs, "Zero pairs in the Hadamard product (default: all)");
  add_common_options(residues, cfg);

  auto* amplitude = app.add_subcommand("amplitude", "log10 harmonic amplitude |Gamma(3/4 + i gamma/2)|");
  std::vector<std::string> gammas;
  amplitude->add_option("--gamma", gammas, "Zero heights")->required();
  add_common_options(amplitude, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Session session(cfg, out, err);
    if (*ck) cmd_ck(session, k, method, ceiling);
    if (*scan) cmd_scan(session, k_min, k_max, points, spacing);
    if (*table) cmd_table(session);
    if (*recon) cmd_reconstruct(session, s_re, s_im, n_terms, variant);
    if (*residues) cmd_residues(session, n_max > 0 ? n_max : cfg.num_zeros, res_method, n_pairs);
    if (*amplitude) cmd_amplitude(session, gammas);
    session.out().flush();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitCompute;
  }
  return kExitOk;
}

}  // namespace ckrice::cli
