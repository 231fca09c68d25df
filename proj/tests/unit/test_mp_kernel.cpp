#include <doctest.h>

#include <random>

#include "ckrice/errors.hpp"
#include "ckrice/log_scaled.hpp"
#include "ckrice/precision.hpp"
#include "ckrice/special.hpp"
#include "test_support.hpp"

using namespace ckrice;
using namespace ckrice::testing;

TEST_CASE("make_context sets series_eps from the precision") {
  CHECK(make_context(64).series_eps == ldexp(Real(1, 64), -56));
  CHECK(make_context(256).series_eps == ldexp(Real(1, 64), -248));
  CHECK(make_context(256).bits() == 256);
  CHECK_THROWS_AS(make_context(10), DomainError);
  CHECK_THROWS_AS(make_context(63), DomainError);
}

TEST_CASE("context_for_digits carries the requested digits") {
  for (int d : {20, 50, 100, 1000}) {
    const PrecisionContext ctx = context_for_digits(d);
    CHECK(static_cast<double>(ctx.bits()) * std::log10(2.0) >= d);
  }
  const PrecisionContext w = make_context(128).widened(32);
  CHECK(w.bits() == 160);
  CHECK(w.series_eps == make_context(160).series_eps);
}

TEST_CASE("decimal strings round-trip") {
  const Real x = pi(200) / 7;
  CHECK(Real::from_string(to_shortest_string(x), 200) == x);
  CHECK(to_scientific(Real(0, 64), 10) == "0");
  CHECK(to_scientific(dec("-1.7750244e-9"), 8) == "-1.7750244e-9");
}

TEST_CASE("log_gamma trivial values") {
  const PrecisionContext ctx = make_context(256);
  CHECK(abs(log_gamma(Complex(Real(1, 256)), ctx)) < ctx.series_eps);
  const Complex half = log_gamma(Complex(dec("0.5")), ctx);
  CHECK(abs_err(half.re(), log(pi(256)) / 2) < 1e-74);
  CHECK(abs_err(half.im(), Real(0, 256)) == 0.0);
  CHECK_THROWS_AS(log_gamma(Complex(Real(0, 256)), ctx), PoleError);
  CHECK_THROWS_AS(log_gamma(Complex(Real(-3, 256)), ctx), PoleError);
}

TEST_CASE("log_gamma matches independent mpmath values") {
  const PrecisionContext ctx = make_context(256);
  struct Case {
    const char *re, *im, *want_re, *want_im;
  };
  // 0.75 + i gamma_1 / 2 uses gamma_1 at 50 digits.
  const Case cases[] = {
      {"0.75", "7.0673625708673468952286259917812351353921285578495", "-9.693733700223724114615910990085807796902",
       "7.146949065726911837350160777073756210579"},
      {"-3.3", "0.2", "-1.080555944299959009222505865995064960926", "-11.91423800476448588008402201412872330314"},
      {"-50.7", "30", "-235.2933847804456738168942048550519508836", "-41.21302889641033512632302200521879151568"},
      {"2.5", "-100", "-146.9502287871194057239657079866707733494", "-363.6390290880104202371491183545576710504"},
  };
  for (const auto& c : cases) {
    CAPTURE(c.re);
    CAPTURE(c.im);
    const Complex got = log_gamma(cdec(c.re, c.im), ctx);
    const Complex want = cdec(c.want_re, c.want_im);
    CHECK(abs_err(got, want) < 1e-36);  // oracle printed to 40 digits
  }
}

TEST_CASE("log_gamma recurrence on random points of the strip") {
  const PrecisionContext ctx = make_context(256);
  std::mt19937_64 rng(20260114);
  std::uniform_real_distribution<double> re(-20.0, 20.0);
  std::uniform_real_distribution<double> im(-50.0, 50.0);
  for (int i = 0; i < 100; ++i) {
    Complex z = Complex::from_doubles(re(rng), im(rng), 256);
    if (abs(z.im()).to_double() < 0.1) z.im() += Real(1, 256);  // keep clear of the poles
    CAPTURE(z.re().to_double());
    CAPTURE(z.im().to_double());
    const Complex lhs = exp(log_gamma(z + 1L, ctx));
    const Complex rhs = z * exp(log_gamma(z, ctx));
    CHECK(log10_rel_err(lhs, rhs) < -70);
  }
}

TEST_CASE("log_gamma conjugation symmetry is exact") {
  const PrecisionContext ctx = make_context(192);
  for (const auto& z : {Complex::from_doubles(0.75, 7.5, 192), Complex::from_doubles(-12.25, 3.0, 192),
                        Complex::from_doubles(40.0, -0.5, 192)}) {
    CHECK(log_gamma(conj(z), ctx) == conj(log_gamma(z, ctx)));
  }
}

TEST_CASE("log_beta trivial values") {
  const PrecisionContext ctx = make_context(256);
  const Complex one(Real(1, 256));
  CHECK(abs(log_beta(one, one, ctx)).to_double() < 1e-75);
  const Complex b23 = log_beta(Complex(Real(2, 256)), Complex(Real(3, 256)), ctx);
  CHECK(abs_err(b23.re(), log(Real(1, 256) / 12)) < 1e-74);
  CHECK(beta(Complex(Real(2, 256)), Complex(Real(3, 256)), ctx).re() > Real(0, 64));
}

TEST_CASE("beta_asymptotic against exact beta") {
  const PrecisionContext ctx = make_context(256);
  SUBCASE("B(a, 1) = 1/a") {
    const Complex a(Real(1000000, 256));
    const Complex one(Real(1, 256));
    const Real got = beta_asymptotic(a, one, 1, ctx).to_real(256);
    CHECK(rel_err(got, Real(1, 256) / 1000000) < 1e-5);
  }
  SUBCASE("(k+1, 3/4) at k = 1e6") {
    const Complex a(Real(1000001, 256));
    const Complex b(dec("0.75"));
    const Complex exact = beta(a, b, ctx);
    CHECK(rel_err(beta_asymptotic(a, b, 1, ctx).to_complex(256), exact) < 1e-5);
  }
  SUBCASE("first zero: error bounds and monotone decrease") {
    const Complex b(dec("0.75"), dec(kGamma1) / 2);
    // Frozen mpmath relative errors at k = 1e4: 2.50956e-3 (order 0), 3.22682e-6 (order 1).
    const Complex a4(Real(10001, 256));
    const Complex exact4 = beta(a4, b, ctx);
    CHECK(rel_err(beta_asymptotic(a4, b, 0, ctx).to_complex(256), exact4) == doctest::Approx(2.50956e-3).epsilon(1e-4));
    CHECK(rel_err(beta_asymptotic(a4, b, 1, ctx).to_complex(256), exact4) == doctest::Approx(3.22682e-6).epsilon(1e-4));
    double prev0 = 1.0;
    double prev1 = 1.0;
    for (long k : {1000L, 10000L, 100000L, 1000000L}) {
      const Complex a(Real(k + 1, 256));
      const Complex exact = beta(a, b, ctx);
      const double e0 = rel_err(beta_asymptotic(a, b, 0, ctx).to_complex(256), exact);
      const double e1 = rel_err(beta_asymptotic(a, b, 1, ctx).to_complex(256), exact);
      CHECK(e0 < prev0);
      CHECK(e1 < prev1);
      CHECK(e1 < e0);
      prev0 = e0;
      prev1 = e1;
    }
  }
  SUBCASE("order-1 correction magnitude") {
    const Complex a(Real(5000, 256));
    const Complex b = Complex::from_doubles(0.75, 3.0, 256);
    const Complex o0 = beta_asymptotic(a, b, 0, ctx).to_complex(256);
    const Complex o1 = beta_asymptotic(a, b, 1, ctx).to_complex(256);
    const Real expected = abs(b * (b - 1L) / (a * 2L)) * abs(o0);
    CHECK(rel_err(abs(o1 - o0), expected) < 1e-60);
  }
  SUBCASE("domain error when a is too small") {
    const Complex b(dec("0.75"), dec(kGamma1) / 2);
    CHECK_THROWS_AS(beta_asymptotic(Complex(Real(100, 256)), b, 0, ctx), DomainError);
    CHECK_THROWS_AS(beta_asymptotic(Complex(Real(10000, 256)), b, 2, ctx), DomainError);
  }
}

TEST_CASE("LogScaled") {
  SUBCASE("real and complex round trips") {
    const Real x = -pi(128) * 1000;
    const LogScaled lx = LogScaled::from_real(x);
    CHECK(lx.sign() == -1);
    CHECK(rel_err(lx.to_real(128), x) < 1e-35);
    const Complex z = Complex::from_doubles(3.0, -4.0, 128);
    const LogScaled lz = LogScaled::from_complex(z);
    CHECK(abs_err(lz.log10_magnitude(), log10(Real(5, 128))) < 1e-36);
    CHECK(rel_err(lz.to_complex(128), z) < 1e-35);
    CHECK(LogScaled::from_real(Real(0, 64)).is_zero());
  }
  SUBCASE("serialization round trip") {
    const LogScaled v(dec("-3.5e21", 128), dec("1.25", 128), LogScaled::Kind::kComplex);
    const std::string text = v.serialize();
    CHECK(text.rfind("log10=", 0) == 0);
    CHECK(text.find(";phase=") != std::string::npos);
    const LogScaled back = LogScaled::parse(text, 128);
    CHECK(back.log10_magnitude() == v.log10_magnitude());
    CHECK(back.phase() == v.phase());
  }
  SUBCASE("magnitudes outside the MPFR range") {
    const LogScaled tiny(dec("-3.5e21", 128), Real(0, 128), LogScaled::Kind::kReal);
    CHECK_FALSE(tiny.representable());
    CHECK_THROWS_AS((void)tiny.to_real(128), RangeError);
    const LogScaled product = tiny * LogScaled(dec("3.5e21", 128), Real(0, 128), LogScaled::Kind::kReal);
    CHECK(product.representable());
    CHECK(abs_err(product.to_real(128), Real(1, 128)) < 1e-30);
  }
  SUBCASE("beta far below the exponent range") {
    const PrecisionContext ctx = make_context(128);
    const LogScaled b = beta_scaled(Complex(dec("1e40", 128)), Complex(dec("0.75", 128), dec("1e22", 128)), ctx);
    CHECK(b.log10_magnitude().is_finite());
    CHECK(b.log10_magnitude() < Real(-1000000, 64));
  }
}
