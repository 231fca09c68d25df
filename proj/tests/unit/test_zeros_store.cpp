#include <doctest.h>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "ckrice/cache.hpp"
#include "ckrice/decomposition.hpp"
#include "ckrice/errors.hpp"
#include "ckrice/zeros.hpp"
#include "ckrice/zeta.hpp"
#include "test_support.hpp"

using namespace ckrice;
using namespace ckrice::testing;
namespace fs = std::filesystem;

namespace {

ZeroTable parse_text(const std::string& text) {
  std::istringstream in(text);
  return parse_zeros(in);
}

int parse_error_line(const std::string& text) {
  try {
    parse_text(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

// Fresh empty directory, removed on destruction.
struct TempDir {
  fs::path path;
  TempDir() {
    static std::atomic<int> counter{0};
    path = fs::temp_directory_path() /
           ("ckrice-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter.fetch_add(1)));
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

const char* kThree = "14.134725142\n21.022039639\n25.010857580\n";

}  // namespace

TEST_CASE("parse_zeros") {
  SUBCASE("three published ordinates") {
    const ZeroTable t = parse_text(kThree);
    REQUIRE(t.size() == 3);
    CHECK(t.gamma(1) == dec("14.134725142", t.gamma(1).precision()));
    CHECK(t.at(1).digits == 11);
    CHECK(t.at(3).index == 3);
    CHECK_FALSE(t.at(2).refined);
    const PrecisionContext ctx = make_context(128);
    for (const auto& e : t.entries()) {
      CHECK(abs(zeta_complex(Complex(dec("0.5", 128), e.gamma.rounded(128)), ctx)).to_double() < 1e-6);
    }
    CHECK_THROWS_AS((void)t.at(0), DomainError);
    CHECK_THROWS_AS((void)t.at(4), DomainError);
  }
  SUBCASE("comments and blank lines are ignored") {
    const ZeroTable t = parse_text("# header\n\n14.134725142\n  # indented comment\n21.022039639\n\n");
    CHECK(t.size() == 2);
  }
  SUBCASE("errors carry line numbers") {
    CHECK(parse_error_line("14.134725142\n25.010857580\n21.022039639\n") == 3);
    CHECK(parse_error_line("# c\n14.134725142\n14.134725142\n") == 3);
    CHECK(parse_error_line("14.134725142\nabc\n") == 2);
    CHECK(parse_error_line("14.134725142\n-3\n") == 2);
    CHECK(parse_error_line("15.5\n") == 1);
    CHECK(parse_error_line("") == 0);
    CHECK(parse_error_line("# only a comment\n\n") == 0);
  }
  SUBCASE("find") {
    const ZeroTable t = parse_text(kThree);
    CHECK(t.find(dec("21.022039639")) == 2);
    CHECK(t.find(dec("21.0220396")) == 2);
    CHECK(t.find(dec("21.03")) == 0);
    CHECK(t.find(dec("21.03"), 0.1) == 2);
  }
}

TEST_CASE("load_zeros") {
  CHECK_THROWS_AS(load_zeros("/nonexistent/zeros.txt"), Error);
  const ZeroTable bundled = load_zeros(CKRICE_ZEROS_FILE);
  CHECK(bundled.size() == 2000);
  CHECK(bundled.at(1).digits >= 15);
  CHECK(bundled.gamma(100).to_double() == doctest::Approx(236.524229665816).epsilon(1e-12));

  TempDir dir;
  fs::create_directories(dir.path);
  const fs::path bad = dir.path / "bad.txt";
  std::ofstream(bad) << "14.134725142\n21.022039639\n20.0\n";
  try {
    load_zeros(bad);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("bad.txt") != std::string::npos);
  }
}

TEST_CASE("serialization round-trips at the string level") {
  const ZeroTable t = parse_text(kThree);
  CHECK(serialize_zeros(t) == kThree);
  CHECK(serialize_zeros(parse_text(serialize_zeros(t))) == kThree);
  const ZeroTable refined = refine_table(t, 3, context_for_digits(40));
  const std::string text = serialize_zeros(refined);
  const ZeroTable again = parse_text(text);
  CHECK(serialize_zeros(again) == text);
  for (long i = 1; i <= 3; ++i) CHECK(again.gamma(i).rounded(64) == refined.gamma(i).rounded(64));
}

TEST_CASE("refine_zero") {
  const PrecisionContext ctx = context_for_digits(50);
  SUBCASE("coarse first ordinate") {
    const RefinedZero r = refine_zero(dec("14.13", 64), ctx);
    CHECK_FALSE(r.off_line);
    CHECK(abs_err(r.gamma, dec(kGamma1)) < 1e-48);
    CHECK(r.iterations <= 50);
  }
  SUBCASE("midpoint between zeros never yields a silent wrong answer") {
    try {
      const RefinedZero r = refine_zero(dec("14.6", 64), ctx);
      CHECK(abs(zeta_complex(Complex(dec("0.5", ctx.bits()), r.gamma), ctx)).to_double() < 1e-40);
      const bool neighbour = abs_err(r.gamma, dec(kGamma1)) < 1e-40 ||
                             abs_err(r.gamma, dec("21.022039638771554992628479593896902777334340524903")) < 1e-40;
      CHECK(neighbour);
    } catch (const ConvergenceError&) {
      CHECK(true);
    }
  }
  SUBCASE("idempotent") {
    const RefinedZero once = refine_zero(dec("21.02", 64), ctx);
    const RefinedZero twice = refine_zero(once.gamma, ctx);
    CHECK(abs(twice.gamma - once.gamma) < ctx.series_eps);
  }
  CHECK_THROWS_AS(refine_zero(Real(-1, 64), ctx), DomainError);
}

TEST_CASE("refine_table") {
  const PrecisionContext ctx = context_for_digits(40);
  const ZeroTable bundled = load_zeros(CKRICE_ZEROS_FILE);
  const ZeroTable refined = refine_table(bundled, 20, ctx, nullptr, 4);
  CHECK(refined.size() == bundled.size());
  for (long i = 1; i <= 20; ++i) {
    CAPTURE(i);
    const auto& e = refined.at(i);
    CHECK(e.refined);
    CHECK(e.digits == context_digits(ctx));
    const double residual = abs(zeta_complex(Complex(dec("0.5", ctx.bits()), e.gamma), ctx)).to_double();
    CHECK(residual < std::pow(10.0, -e.digits + 2));
  }
  CHECK_FALSE(refined.at(21).refined);

  // a coarse ordinate still finds its zero
  const ZeroTable coarse = refine_table(parse_text("14.134725142\n22.0\n25.010857580\n"), 3, ctx);
  CHECK(abs_err(coarse.gamma(2), dec("21.022039638771554992628479593896902777334340524903")) < 1e-38);
  // two entries landing on the same zero are reported
  CHECK_THROWS_AS(refine_table(parse_text("14.134725142\n14.2\n21.022039639\n"), 3, ctx), ConvergenceError);
}

TEST_CASE("ValueCache") {
  TempDir dir;
  const PrecisionContext ctx30 = context_for_digits(30);
  const PrecisionContext ctx50 = context_for_digits(50);

  SUBCASE("miss then hit") {
    ValueCache cache(dir.path);
    int calls = 0;
    const auto compute = [&] {
      ++calls;
      return pi(ctx50.bits());
    };
    const Real a = cache.get_or_compute_real(CacheKind::kZetaOdd, "3", ctx50, compute);
    const Real b = cache.get_or_compute_real(CacheKind::kZetaOdd, "3", ctx50, compute);
    CHECK(calls == 1);
    CHECK(cache.computations() == 1);
    CHECK(a == b);
    ValueCache reopened(dir.path);
    const Real c = reopened.get_or_compute_real(CacheKind::kZetaOdd, "3", ctx50, compute);
    CHECK(calls == 1);
    CHECK(c == a);
    CHECK(fs::exists(cache.file()));
  }
  SUBCASE("precision upgrade recomputes and overwrites") {
    ValueCache cache(dir.path);
    int calls = 0;
    const auto compute30 = [&] {
      ++calls;
      return pi(ctx30.bits());
    };
    const auto compute50 = [&] {
      ++calls;
      return pi(ctx50.bits());
    };
    cache.get_or_compute_real(CacheKind::kZetaOdd, "pi", ctx30, compute30);
    cache.get_or_compute_real(CacheKind::kZetaOdd, "pi", ctx50, compute50);
    CHECK(calls == 2);
    ValueCache reopened(dir.path);
    const auto rec = reopened.lookup(CacheKind::kZetaOdd, "pi", context_digits(ctx50));
    REQUIRE(rec.has_value());
    CHECK(rel_err(dec((*rec)[0]), pi(256)) < 1e-48);
    // a higher-precision record serves a lower-precision request, never the reverse
    CHECK(reopened.lookup(CacheKind::kZetaOdd, "pi", 20).has_value());
    CHECK_FALSE(reopened.lookup(CacheKind::kZetaOdd, "pi", context_digits(ctx50) + 1).has_value());
  }
  SUBCASE("corrupt entries are misses with a warning") {
    fs::create_directories(dir.path);
    {
      std::ofstream f(dir.path / "values.tsv");
      f << "garbage line\n";
      f << "no_such_kind\tk\t30\t1.0\n";
      f << "zeta_odd\tbad-digits\tabc\t1.0\n";
      f << "zeta_prime_at_zero\tone-field\t30\t1.0\n";
      f << "zeta_odd\tnot-a-number\t30\t1.0x\n";
      f << "zeta_odd\tgood\t30\t1.5\n";
    }
    std::vector<std::string> sunk;
    ValueCache cache(dir.path, [&](const std::string& w) { sunk.push_back(w); });
    CHECK(cache.warnings().size() == 5);
    CHECK(sunk.size() == 5);
    CHECK(cache.lookup(CacheKind::kZetaOdd, "good", 30).has_value());
    CHECK_FALSE(cache.lookup(CacheKind::kZetaOdd, "bad-digits", 0).has_value());
    CHECK_FALSE(cache.lookup(CacheKind::kZetaPrimeAtZero, "one-field", 0).has_value());
    int calls = 0;
    cache.get_or_compute_real(CacheKind::kZetaOdd, "not-a-number", ctx30, [&] {
      ++calls;
      return Real(2, ctx30.bits());
    });
    CHECK(calls == 1);
  }
  SUBCASE("complex values use two fields") {
    ValueCache cache(dir.path);
    const Complex z = Complex::from_doubles(0.25, -3.5, ctx30.bits());
    const Complex got = cache.get_or_compute_complex(CacheKind::kZetaPrimeAtZero, "z", ctx30, [&] { return z; });
    CHECK(got == z);
    const auto rec = cache.lookup(CacheKind::kZetaPrimeAtZero, "z", 0);
    REQUIRE(rec.has_value());
    CHECK(rec->size() == 2);
  }
  SUBCASE("zeta' at the first zero matches a fresh evaluation") {
    ValueCache cache(dir.path);
    const ZeroTable zeros = load_zeros(CKRICE_ZEROS_FILE);
    const Decomposer dec1(zeros, 3, ctx50, &cache, 2);
    const Real& g1 = dec1.zeros().gamma(1);
    const std::string key = "1@" + to_scientific(g1, 15);
    ValueCache reopened(dir.path);
    const auto rec = reopened.lookup(CacheKind::kZetaPrimeAtZero, key, context_digits(ctx50));
    REQUIRE(rec.has_value());
    const Complex stored(dec((*rec)[0]), dec((*rec)[1]));
    const Complex fresh = zeta_prime(Complex(dec("0.5", g1.precision()), -g1), ctx50);
    CHECK(log10_rel_err(stored, fresh) < -(context_digits(ctx50) - 1));
    // a warm decomposer reproduces the residues bit for bit without recomputation
    const long before = reopened.computations();
    const Decomposer dec2(zeros, 3, ctx50, &reopened, 2);
    CHECK(reopened.computations() == before);
    for (std::size_t i = 0; i < 3; ++i) CHECK(dec2.residues()[i] == dec1.residues()[i]);
  }
  SUBCASE("cached zeta(2j+2) - 1 table") {
    ValueCache cache(dir.path);
    const ZetaEvenTable cold = cached_zeta_even_table(40, ctx50, &cache);
    const long computed = cache.computations();
    CHECK(computed > 0);
    ValueCache reopened(dir.path);
    const ZetaEvenTable warm = cached_zeta_even_table(40, ctx50, &reopened);
    CHECK(reopened.computations() == 0);
    for (long j = 0; j <= 40; ++j) {
      CHECK(warm.minus_one(j) == cold.minus_one(j));
      CHECK(log10_rel_err(cold.minus_one(j), zeta_even(2 * j + 2, make_context(256)) - 1L) < -48);
    }
  }
}

TEST_CASE("cache helpers") {
  for (auto k : {CacheKind::kZetaPrimeAtZero, CacheKind::kZetaEvenMinusOne, CacheKind::kZetaOdd,
                 CacheKind::kRefinedZero}) {
    CHECK(parse_cache_kind(to_string(k)) == k);
  }
  CHECK_FALSE(parse_cache_kind("bogus").has_value());
  CHECK(field_count(CacheKind::kZetaPrimeAtZero) == 2);
  CHECK(field_count(CacheKind::kZetaOdd) == 1);
  CHECK(context_digits(context_for_digits(50)) >= 50);

  CHECK(ValueCache::resolve_dir("/tmp/flag") == fs::path("/tmp/flag"));
  ::setenv("CK_CACHE_DIR", "/tmp/from-env", 1);
  CHECK(ValueCache::resolve_dir("") == fs::path("/tmp/from-env"));
  CHECK(ValueCache::resolve_dir("/tmp/flag") == fs::path("/tmp/flag"));
  ::unsetenv("CK_CACHE_DIR");
  CHECK(ValueCache::resolve_dir("") == fs::path(".ck-cache"));
}
