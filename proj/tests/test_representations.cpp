#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "support.hpp"
#include "zetapsi/representations.hpp"
#include "zetapsi/special_fn.hpp"

#include <cmath>

using namespace zetapsi;
using namespace zetapsi::testing;

static PrecisionScope g_precision{60};

namespace {

// Special-function composition, the other path.
Approx F_composed(const Real& s, const PrecisionContext& ctx) { return zeta(s, ctx) - digamma(1 - s, ctx); }
Approx F1_composed(const Real& s, const PrecisionContext& ctx) {
  return zeta_deriv(s, 1, ctx) + polygamma(1, 1 - s, ctx);
}
Approx F2_composed(const Real& s, const PrecisionContext& ctx) {
  return zeta_deriv(s, 2, ctx) - polygamma(2, 1 - s, ctx);
}

}  // namespace

TEST_CASE("zeta from the sawtooth integral") {
  const auto ctx = default_ctx();
  CHECK_NEAR(zeta_via_stieltjes_integral(Real(2), ctx).value(), pi() * pi() / 6, R("1e-30"));
  CHECK_NEAR(zeta_via_stieltjes_integral(R("0.5"), ctx).value(), zeta(R("0.5"), ctx).value(), R("1e-30"));
  CHECK_NEAR(zeta_via_stieltjes_integral(R("-0.5"), ctx).value(), zeta(R("-0.5"), ctx).value(), R("1e-30"));
  CHECK_NEAR(zeta_via_stieltjes_integral(R("3.75"), ctx).value(), zeta(R("3.75"), ctx).value(), R("1e-30"));
  CHECK(zeta_via_stieltjes_integral(Real(0), ctx).value() == R("-0.5"));
  CHECK_THROWS_AS(zeta_via_stieltjes_integral(Real(1), ctx), NumericError);
  CHECK_THROWS_AS(zeta_via_stieltjes_integral(R("-1.5"), ctx), NumericError);
}

TEST_CASE("digamma from its integral") {
  const auto ctx = default_ctx();
  const Real g0 = stieltjes_gamma(0, ctx).value();
  CHECK_NEAR(digamma_via_integral(Real(1), ctx).value(), -g0, R("1e-30"));
  CHECK_NEAR(digamma_via_integral(Real(2), ctx).value(), 1 - g0, R("1e-30"));
  CHECK_NEAR(digamma_via_integral(R("0.5"), ctx).value(), -g0 - 2 * ln2(), R("1e-30"));
  // mpmath, 40 digits
  CHECK_NEAR(digamma_via_integral(R("0.37"), ctx).value(), R("-2.7953014108905639616277047349197"), R("1e-30"));
  for (int i = 0; i < 5; ++i) {
    const Real x(uniform(0.001, 20.0));
    const Approx a = digamma_via_integral(x, ctx);
    const Approx b = digamma(x, ctx);
    CHECK(agree(a, b, R("1e-40")));
  }
  CHECK_THROWS_AS(digamma_via_integral(Real(0), ctx), NumericError);
}

TEST_CASE("log kernel integral") {
  // 2/(s-1)^3 + K_2(s) = P(s); P(0.5) from mpmath as 2 zeta(3, 3/2), 40 digits
  CHECK_NEAR(log_kernel_integral(R("0.5"), 2, default_ctx()).value(), R("16.8287966442343199955963342611603"),
             R("1e-29"));
}

TEST_CASE("F and its derivatives at reference points") {
  const auto ctx = default_ctx();
  // mpmath, 40 digits
  CHECK_NEAR(F_direct(R("0.5"), ctx).value(), R("0.50315551721183666655147718048346"), R("1e-30"));
  CHECK_NEAR(F_prime_integral(R("0.5"), ctx).value(), R("1.0121560613355275819457140532235"), R("1e-30"));
  CHECK_NEAR(F_second_integral(R("0.1"), ctx).value(), R("0.4514996876432595937510105574117"), R("1e-30"));
  CHECK_NEAR(F_second_integral(R("0.9"), ctx).value(), R("1.8519841566248251226005682789235"), R("1e-29"));
  const SecondDerivativeParts parts = F_second_parts(R("0.5"), ctx);
  CHECK_NEAR(parts.J.value(), R("-0.0083570139286614226913065059449628"), R("1e-30"));
  CHECK_NEAR(parts.P.value(), R("0.8287966442343199955963342611603"), R("1e-30"));
}

TEST_CASE("two paths agree on a grid") {
  const auto ctx = default_ctx();
  GridSpec grid{R("0.05"), R("0.95"), 20, Real(0)};
  for (const Real& s : grid.abscissae()) {
    INFO("s = " << s.str(10));
    const Approx f = F_direct(s, ctx);
    CHECK(agree(f, F_composed(s, ctx)));
    CHECK_NEAR(F_prime_integral(s, ctx).value(), F1_composed(s, ctx).value(), R("1e-10"));
    CHECK_NEAR(F_second_integral(s, ctx).value(), F2_composed(s, ctx).value(), R("1e-10"));
    CHECK(agree(F_second_integral(s, ctx), F2_composed(s, ctx)));
  }
}

TEST_CASE("F'' matches a central difference of F") {
  const auto ctx = default_ctx();
  const Real h = R("1e-4");
  for (const char* text : {"0.2", "0.5", "0.8"}) {
    const Real s(text);
    const Real fd = (F_direct(s + h, ctx).value() - 2 * F_direct(s, ctx).value() + F_direct(s - h, ctx).value()) / (h * h);
    CHECK_NEAR(fd, F_second_integral(s, ctx).value(), R("1e-6"));
  }
}

TEST_CASE("near the endpoints") {
  const auto ctx = default_ctx();
  const Real a0 = pi() * pi() / 6 - log(2 * pi()) / 2;
  CHECK(abs(F_prime_integral(R("0.01"), ctx).value() - a0) < R("0.01"));
  for (const char* text : {"1e-6", "0.999999"}) {
    const Real s(text);
    INFO("s = " << text);
    CHECK(agree(F_direct(s, ctx), F_composed(s, ctx)));
    CHECK(agree(F_prime_integral(s, ctx), F1_composed(s, ctx)));
    const Approx f2 = F_second_integral(s, ctx);
    CHECK(agree(f2, F2_composed(s, ctx)));
    CHECK(f2.value() > 0);
  }
}

TEST_CASE("domain") {
  const auto ctx = default_ctx();
  CHECK_THROWS_AS(F_direct(Real(0), ctx), NumericError);
  CHECK_THROWS_AS(F_prime_integral(Real(1), ctx), NumericError);
  CHECK_THROWS_AS(F_second_integral(R("1.5"), ctx), NumericError);
  CHECK_THROWS_AS(FractionalPartIntegrand::checked(R("0.5"), 3), NumericError);
}

TEST_CASE("integration-by-parts identity") {
  const auto ctx = default_ctx();
  struct Case {
    const char* name;
    std::function<Real(const Real&)> f, f1, f2;
    const char* expected;  // exact value where known
  };
  const Case cases[] = {
      {"1", [](const Real&) { return Real(1); }, [](const Real&) { return Real(0); },
       [](const Real&) { return Real(0); }, "0"},
      {"u", [](const Real& u) { return u; }, [](const Real&) { return Real(1); }, [](const Real&) { return Real(0); },
       "0.0833333333333333333333333333333333333333333333333333333"},
      {"u^2", [](const Real& u) { return u * u; }, [](const Real& u) { return 2 * u; },
       [](const Real&) { return Real(2); }, "0.0833333333333333333333333333333333333333333333333333333"},
      {"u^5 - 3u^3", [](const Real& u) { return pow(u, 5) - 3 * pow(u, 3); },
       [](const Real& u) { return 5 * pow(u, 4) - 9 * u * u; }, [](const Real& u) { return 20 * pow(u, 3) - 18 * u; },
       nullptr},
      {"exp", [](const Real& u) { return exp(u); }, [](const Real& u) { return exp(u); },
       [](const Real& u) { return exp(u); }, nullptr},
      {"sin 3u", [](const Real& u) { return sin(3 * u); }, [](const Real& u) { return 3 * cos(3 * u); },
       [](const Real& u) { return -9 * sin(3 * u); }, nullptr},
  };
  for (const auto& c : cases) {
    INFO("f = " << c.name);
    const auto [lhs, rhs] = lemma_fsup_identity_check(c.f, c.f1, c.f2, ctx);
    CHECK_NEAR(lhs.value(), rhs.value(), R("1e-30"));
    if (c.expected) CHECK_NEAR(lhs.value(), R(c.expected), R("1e-30"));
  }
  // int_0^1 (u - 1/2) e^u du = 3/2 - e/2
  const auto [lhs, rhs] = lemma_fsup_identity_check([](const Real& u) { return exp(u); },
                                                    [](const Real& u) { return exp(u); },
                                                    [](const Real& u) { return exp(u); }, ctx);
  CHECK_NEAR(lhs.value(), Real(1.5) - exp(Real(1)) / 2, R("1e-30"));
}

TEST_CASE("loose tail bound dominates the truncation remainder") {
  const auto ctx = default_ctx();
  for (const char* text : {"0.1", "0.5", "0.9"}) {
    for (int order = 0; order <= 2; ++order) {
      const auto integrand = FractionalPartIntegrand::checked(R(text), order);
      const Approx full = integrand.integral(ctx);
      for (std::int64_t T : {100, 1000, 10000}) {
        INFO("s = " << text << " order " << order << " T " << T);
        const Real remainder = abs(full.value() - integrand.integral_to(T, ctx));
        CHECK(remainder <= integrand.loose_tail_bound(T));
      }
    }
  }
}

TEST_CASE("sawtooth integrand matches its closed-form integral on a unit interval") {
  const auto ctx = default_ctx();
  const auto integrand = FractionalPartIntegrand::checked(R("0.3"), 2);
  // Integrate [3, 4] by quadrature; the closed form gives the difference of
  // truncations at 4 and 3.
  const Real closed = integrand.integral_to(4, ctx) - integrand.integral_to(3, ctx);
  Real quad = 0;
  {
    // Gauss-Legendre 5-point per tenth of the interval is ample at 1e-12.
    const double x[5] = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831, 0.9061798459386640};
    const double w[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889, 0.4786286704993665,
                         0.2369268850561891};
    for (int k = 0; k < 10; ++k) {
      const Real a = Real(3) + Real(k) / 10;
      for (int i = 0; i < 5; ++i) quad += Real(w[i]) / 20 * integrand(a + Real(0.05) * (1 + x[i]));
    }
  }
  CHECK_NEAR(closed, quad, R("1e-12"));
}

TEST_CASE("error budgets hold at a loose tolerance") {
  const auto loose = default_ctx().with_tolerance(1e-12);
  const Approx f = F_direct(R("0.5"), loose);
  CHECK(abs(f.value() - R("0.50315551721183666655147718048346")) <= f.err());
  CHECK(f.err() <= R("1e-11"));
  const Approx f2 = F_second_integral(R("0.1"), loose);
  CHECK(abs(f2.value() - R("0.4514996876432595937510105574117")) <= f2.err());
}
