#include <doctest.h>

#include <random>

#include "ckrice/errors.hpp"
#include "ckrice/expansions.hpp"
#include "ckrice/zeta.hpp"
#include "test_support.hpp"

using namespace ckrice;
using namespace ckrice::testing;

TEST_CASE("binomial_transform") {
  SUBCASE("differences of a constant") {
    const std::vector<Real> ones(12, Real(1, 128));
    const auto b = binomial_transform(std::span<const Real>(ones));
    CHECK(b[0] == Real(1, 64));
    for (std::size_t i = 1; i < b.size(); ++i) CHECK(b[i].is_zero());
  }
  SUBCASE("involution on random exact rationals") {
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<long> num(-1000000, 1000000);
    std::uniform_int_distribution<long> den(1, 1000000);
    std::uniform_int_distribution<int> len(1, 64);
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<mpq_class> seq(static_cast<std::size_t>(len(rng)));
      for (auto& q : seq) {
        q = mpq_class(num(rng), den(rng));
        q.canonicalize();
      }
      const auto once = binomial_transform(std::span<const mpq_class>(seq));
      const auto twice = binomial_transform(std::span<const mpq_class>(once));
      CHECK(twice == seq);
    }
  }
  SUBCASE("1/zeta(2j+2) inputs give direct_ck") {
    const PrecisionContext ctx = make_context(512);
    std::vector<Real> a;
    for (long j = 0; j <= 40; ++j) a.push_back(Real(1, 512) / zeta_even(2 * j + 2, ctx));
    const auto b = binomial_transform(std::span<const Real>(a));
    for (long k : {0L, 1L, 7L, 40L}) {
      CAPTURE(k);
      CHECK(log10_rel_err(b[static_cast<std::size_t>(k)], direct_ck(k, make_context(256))) < -60);
    }
  }
}

TEST_CASE("compute_Ak against independent mpmath sums") {
  const PrecisionContext ctx = make_context(256);
  struct Case {
    long k;
    const char *base, *pole, *reg;
  };
  const Case cases[] = {
      {0, "1.644934066848226436472415166646025189219", "0.6449340668482264364724151666460251892189",
       "0.1535285002194404764558778469173949547481"},
      {1, "-1.602035634285188138075595922977478519105", "-0.1040558335295784217102551965618093802225",
       "0.01962655418010002552754132891726581113824"},
      {2, "0.2377099745036429859489826363536204120795", "-0.03570267192293414017840762997872342176207",
       "0.0008959476237711994820165459460753786584508"},
      {10, "-0.007514812655299404576746333960177874778301", "0.0006342713794065433400337196707817895943712",
       "0.00006466260519931901372108922655767316450219"},
  };
  for (const auto& c : cases) {
    CAPTURE(c.k);
    CHECK(log10_rel_err(compute_Ak(c.k, ExpansionVariant::kBase, ctx), dec(c.base)) < -38);
    CHECK(log10_rel_err(compute_Ak(c.k, ExpansionVariant::kPoleSubtracted, ctx), dec(c.pole)) < -38);
    CHECK(log10_rel_err(compute_Ak(c.k, ExpansionVariant::kRegularized, ctx), dec(c.reg)) < -38);
  }
  // single-term closed forms
  CHECK(rel_err(compute_Ak(0, ExpansionVariant::kBase, ctx), zeta_even(2, ctx)) < 1e-74);
  CHECK(rel_err(compute_Ak(0, ExpansionVariant::kPoleSubtracted, ctx), zeta_even(2, ctx) - 1L) < 1e-74);
  CHECK(rel_err(compute_Ak(1, ExpansionVariant::kBase, ctx), zeta_even(2, ctx) - zeta_even(4, ctx) * 3) < 1e-74);
}

TEST_CASE("A_k alternating and Bernoulli forms agree for k = 0..200 at 40 digits") {
  const PrecisionContext ctx = context_for_digits(40);
  for (long k = 0; k <= 200; ++k) {
    CAPTURE(k);
    CHECK(log10_rel_err(compute_Ak(k, ExpansionVariant::kBase, ctx), compute_Ak_bernoulli_form(k, ctx)) < -40);
  }
}

TEST_CASE("coefficient_sequence and CoefficientCache") {
  const PrecisionContext ctx = make_context(192);
  for (auto v : {ExpansionVariant::kBase, ExpansionVariant::kPoleSubtracted, ExpansionVariant::kRegularized}) {
    const CoefficientSeq seq = coefficient_sequence(25, v, ctx);
    REQUIRE(seq.values.size() == 26);
    for (long k : {0L, 5L, 25L}) CHECK(log10_rel_err(seq.values[static_cast<std::size_t>(k)], compute_Ak(k, v, ctx)) < -50);
  }
  CoefficientCache cache;
  const auto a = cache.get(10, ExpansionVariant::kBase, ctx);
  const auto b = cache.get(5, ExpansionVariant::kBase, ctx);
  CHECK(a == b);
  const auto c = cache.get(20, ExpansionVariant::kBase, ctx);
  CHECK(c->values.size() >= 21);
  CHECK(c->values[3] == a->values[3]);
}

TEST_CASE("variant names") {
  CHECK(parse_variant("base") == ExpansionVariant::kBase);
  CHECK(parse_variant("pole-subtracted") == ExpansionVariant::kPoleSubtracted);
  CHECK(parse_variant("regularized") == ExpansionVariant::kRegularized);
  CHECK(std::string(to_string(ExpansionVariant::kRegularized)) == "regularized");
  CHECK_THROWS_AS(parse_variant("nope"), DomainError);
}

TEST_CASE("f_reg") {
  const PrecisionContext ctx = make_context(256);
  const Real l2p = log_two_pi(256);
  CHECK(abs_err(f_reg(Complex(Real(1, 256)), ctx).re(), 2L - l2p) < 1e-74);
  const Real z2 = zeta_even(2, ctx);
  const Real want2 = ((z2 * 2 - 1L) / 2 + 1L - l2p) / 2;
  CHECK(abs_err(f_reg(Complex(Real(2, 256)), ctx).re(), want2) < 1e-74);
  const Real f0 = dec("0.1684793894992393676494405539187251584762");
  CHECK(abs_err(f_reg(Complex(Real(0, 256)), ctx).re(), f0) < 1e-38);
  // two approach paths to the removable singularity
  for (const char* t : {"1e-3", "1e-6", "1e-12"}) {
    CAPTURE(t);
    const Real r = dec(t);
    const Complex along_real = f_reg(Complex(r, Real(0, 256)), ctx);
    const Complex along_imag = f_reg(Complex(Real(0, 256), r), ctx);
    CHECK(abs(along_real - along_imag) < r);
    CHECK(abs(along_real - Complex(f0, Real(0, 256))) < r);
  }
  // continuity across the Taylor threshold
  const Real edge = ldexp(Real(1, 256), -10);
  const Real eps = ldexp(Real(1, 256), -60);
  CHECK(abs(f_reg(Complex(edge - eps), ctx) - f_reg(Complex(edge + eps), ctx)).to_double() < 1e-17);
}

TEST_CASE("direct_ck") {
  const PrecisionContext ctx = context_for_digits(50);
  const Real p = pi(256);
  CHECK(rel_err(direct_ck(0, ctx), Real(6, 256) / (p * p)) < 1e-48);
  CHECK(rel_err(direct_ck(1, ctx), Real(6, 256) / (p * p) - Real(90, 256) / pow(p, 4)) < 1e-48);
  CHECK(log10_rel_err(direct_ck(10, ctx), dec("-0.06913906550510960397644752671867720388195")) < -38);
  CHECK(log10_rel_err(direct_ck(100, ctx), dec("-0.001477377634159391602150758922435834445648")) < -38);
  CHECK(log10_rel_err(direct_ck(1000, ctx), dec("-1.65957646621401094610917e-5")) < -22);
  CHECK(direct_ck_precision(1000, ctx) == 1000 + 10 + 64);
  CHECK(direct_ck_precision(0, make_context(512)) == 512);
  CHECK_THROWS_AS(direct_ck(50001, ctx), ResourceError);
  CHECK_THROWS_AS(direct_ck(200, ctx, nullptr, 100), ResourceError);

  const ZetaEvenTable table = ZetaEvenTable::build(300, make_context(direct_ck_precision(300, ctx)));
  CHECK(direct_ck(300, ctx, &table) == direct_ck(300, ctx));
}

TEST_CASE("direct_ck bound shape |c_k| <= k^(-1/2)") {
  const PrecisionContext ctx = context_for_digits(30);
  for (long k : {10L, 30L, 100L, 300L, 1000L, 3000L, 5000L}) {
    CAPTURE(k);
    const Real c = direct_ck(k, ctx);
    CHECK((abs(c) * sqrt(Real(k, 64))).to_double() < 1.0);
  }
}

TEST_CASE("zeta_via_expansion") {
  const PrecisionContext ctx = make_context(256);
  SUBCASE("node exactness of the base expansion") {
    for (long s = 4, n = 3; s <= 8; s += 2, ++n) {
      CAPTURE(s);
      const Complex got = zeta_via_expansion(Complex(Real(s, 256)), n, ExpansionVariant::kBase, ctx);
      CHECK(log10_rel_err(got.re(), zeta_even(s, ctx)) < -70);
      CHECK(got.im().is_zero());
    }
    for (long n = 2; n <= 6; ++n) {
      const Complex got = zeta_via_expansion(Complex(Real(4, 256)), n, ExpansionVariant::kBase, ctx);
      CHECK(log10_rel_err(got.re(), zeta_even(4, ctx)) < -70);
    }
  }
  SUBCASE("regularized expansion at s = 0") {
    for (long n : {1L, 3L, 10L, 30L}) {
      CAPTURE(n);
      const Complex z0 = zeta_via_expansion(Complex(Real(0, 256)), n, ExpansionVariant::kRegularized, ctx);
      CHECK(abs_err(z0.re(), Real(-1, 256) / 2) < 1e-70);
      const Real h = dec("1e-20");
      const Complex fd = (zeta_via_expansion(Complex(h), n, ExpansionVariant::kRegularized, ctx) -
                          zeta_via_expansion(Complex(-h), n, ExpansionVariant::kRegularized, ctx)) /
                         (h * 2);
      CHECK(abs_err(fd.re(), -log_two_pi(256) / 2) < 1e-10);
    }
  }
  SUBCASE("base expansion converges at s = 3") {
    const Real z3 = zeta_real(Real(3, 256), ctx);
    // Frozen mpmath truncation errors: N=10 -9.17216e-5, N=20 6.82843e-6, N=40 -2.56339e-7, N=50 5.45526e-8.
    const std::pair<long, double> frozen[] = {{10, -9.17216e-5}, {20, 6.82843e-6}, {40, -2.56339e-7}, {50, 5.45526e-8}};
    double prev = 1.0;
    for (auto [n, err] : frozen) {
      CAPTURE(n);
      const Real got = zeta_via_expansion(Complex(Real(3, 256)), n, ExpansionVariant::kBase, ctx).re();
      CHECK((got - z3).to_double() == doctest::Approx(err).epsilon(1e-4));
      CHECK(std::abs(err) < prev);
      prev = std::abs(err);
    }
    const Real got50 = zeta_via_expansion(Complex(Real(3, 256)), 50, ExpansionVariant::kBase, ctx).re();
    CHECK(abs_err(got50, z3) < 1e-6);
  }
  SUBCASE("all variants converge off the nodes") {
    const Complex s = cdec("0.5", "2");
    const Complex ref = zeta_complex(s, ctx);
    for (auto v : {ExpansionVariant::kBase, ExpansionVariant::kPoleSubtracted, ExpansionVariant::kRegularized}) {
      CAPTURE(to_string(v));
      const double e20 = abs_err(zeta_via_expansion(s, 20, v, ctx), ref);
      const double e60 = abs_err(zeta_via_expansion(s, 60, v, ctx), ref);
      CHECK(e60 < e20);
    }
  }
  SUBCASE("pole") {
    CHECK_THROWS_AS(zeta_via_expansion(Complex(Real(1, 256)), 5, ExpansionVariant::kBase, ctx), PoleError);
  }
}
