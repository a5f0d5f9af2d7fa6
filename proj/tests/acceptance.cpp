// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include "zetapsi/certificate.hpp"
#include "zetapsi/inequality.hpp"
#include "zetapsi/numerics.hpp"
#include "zetapsi/representations.hpp"
#include "zetapsi/special_fn.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace zetapsi;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

std::string fmt(const Real& x, int digits = 12) { return x.str(digits); }

const PrecisionContext kCtx{50, 1e-30};

void criterion_1(Outcome& o) {
  const Approx z3 = zeta(Real(3), kCtx);
  const Real p_low = 2 * (z3.value() - 1);
  const Real delta = abs(p_low - Real("0.40411380632"));
  o.detail << "2(zeta(3)-1) = " << fmt(p_low, 15) << ", |delta| = " << fmt(delta, 3);
  o.require(delta + 2 * z3.err() < Real("1e-11"), "|delta| < 1e-11");
  const Approx p0 = P_eval(Real(0), kCtx);
  o.require(abs(p0.value() - p_low) <= p0.err() + 2 * z3.err(), "P(0) = 2(zeta(3)-1)");
}

void criterion_2(Outcome& o) {
  const Approx env = I2_envelope(kCtx);
  const Real d1 = abs(env.value() - Real("7.765791"));
  const Real d2 = abs(env.value() / 48 - Real("0.161787"));
  o.detail << "envelope = " << fmt(env.value()) << " (|delta| " << fmt(d1, 3) << "), /48 = " << fmt(env.value() / 48)
           << " (|delta| " << fmt(d2, 3) << ")";
  o.require(d1 + env.err() < Real("1e-6"), "envelope |delta| < 1e-6");
  o.require(d2 + env.err() / 48 < Real("1e-6"), "envelope/48 |delta| < 1e-6");
}

void criterion_3(Outcome& o) {
  const SigmaEstimate s = sigma_eval(200, kCtx);
  const Approx i3 = Real(1) / 192 * s.upper;
  o.detail << "Sigma partial = " << fmt(s.partial.value()) << ", tail = " << fmt(s.tail_bound, 6)
           << ", upper = " << fmt(s.upper.value()) << ", I3 bound = " << fmt(i3.value());
  o.require(s.upper.value() + s.upper.err() < Real("40.697"), "Sigma < 40.697");
  o.require(i3.value() + i3.err() < Real("0.211964") + Real("1e-6"), "I3 < 0.211964 + 1e-6");
  o.require(I3_bound(kCtx, 200).pass, "I3_bound entry");
}

void criterion_4(Outcome& o) {
  const CertificateReport r = convexity_chain(kCtx);
  const BoundEntry* rounded = r.find("rounded_chain_sum");
  const BoundEntry* chain = r.find("final_chain");
  const BoundEntry* margin = r.find("final_margin");
  if (!rounded || !chain || !margin) {
    o.require(false, "chain entries present");
    return;
  }
  o.detail << "rounded sum = " << fmt(rounded->computed.value()) << ", computed |I2|+|I3| = "
           << fmt(chain->computed.value()) << " < " << fmt(chain->reference) << ", margin = "
           << fmt(margin->computed.value(), 8);
  o.require(rounded->pass, "0.161787 + 0.211964 = 0.373751");
  o.require(chain->pass, "strict chain inequality");
  o.require(margin->computed.value() > 0, "positive margin");
  o.require(margin->pass, "margin ~ 0.030363");
  std::vector<std::string> failed;
  for (const BoundEntry& e : r.entries) {
    if (!e.pass) failed.push_back(e.name);
  }
  o.detail << ", ledger entries " << r.entries.size() << " with " << failed.size() << " failed";
  for (const auto& name : failed) o.require(false, name);
}

void criterion_5(Outcome& o) {
  const MinimumReport m = find_minimum(kCtx);
  o.detail << "s0 = " << fmt(m.s0, 15) << ", G(s0) = " << fmt(m.G_at_s0.value(), 15);
  o.require(abs(m.s0 - Real("0.484993")) < Real("1e-4"), "s0 within 1e-4");
  o.require(abs(m.G_at_s0.value() - Real("0.00306469")) + m.G_at_s0.err() < Real("1e-6"), "G(s0) within 1e-6");
  o.require(m.G_at_s0.value() > m.G_at_s0.err(), "G(s0) > 0");
}

void criterion_6(Outcome& o) {
  const EndpointLimits e = endpoint_limits(kCtx);
  const Real d0 = abs(e.at0.value() - e.b.value());
  const Real d1 = abs(e.at1.value() - e.two_gamma0.value());
  o.detail << "F(0+) = " << fmt(e.at0.value(), 15) << " (|delta| " << fmt(d0, 3) << "), F(1-) = "
           << fmt(e.at1.value(), 15) << " (|delta| " << fmt(d1, 3) << ")";
  o.require(d0 + e.at0.err() < Real("1e-8"), "F(0+) = gamma0 - 1/2");
  o.require(d1 + e.at1.err() < Real("1e-8"), "F(1-) = 2 gamma0");
}

void criterion_7(Outcome& o) {
  const BoundaryLimits b = boundary_limits(kCtx);
  const Real d0 = abs(b.extrapolated0.value() - b.A0.value());
  const Real d1 = abs(b.extrapolated1.value() - b.A1.value());
  o.detail << "F'(0+) = " << fmt(b.extrapolated0.value(), 15) << " vs " << fmt(b.A0.value(), 15) << ", F'(1-) = "
           << fmt(b.extrapolated1.value(), 15) << " vs " << fmt(b.A1.value(), 15);
  o.require(d0 + b.extrapolated0.err() < Real("1e-8"), "F'(0+) within 1e-8");
  o.require(d1 + b.extrapolated1.err() < Real("1e-8"), "F'(1-) within 1e-8");
  // mpmath, 30 digits: pi^2/6 - log(2 pi)/2 and pi^2/6 - gamma_1
  o.require(abs(b.A0.value() - Real("0.72599553364355369469208543024")) < Real("1e-28"), "A0 closed form");
  o.require(abs(b.A1.value() - Real("1.71774991233190316133300154252")) < Real("1e-28"), "A1 closed form");
}

// Each part reports into the shared outcome with its own label.
void criterion_8(Outcome& o) {
  std::mt19937_64 rng(20261017);
  auto uniform = [&rng](double lo, double hi) { return Real(std::uniform_real_distribution<double>(lo, hi)(rng)); };
  auto part = [&o](const char* label, const std::function<bool(std::ostringstream&)>& body) {
    std::ostringstream note;
    bool ok = false;
    try {
      ok = body(note);
    } catch (const std::exception& e) {
      note << "threw: " << e.what();
    }
    std::printf("    8%s %s %s\n", label, ok ? "pass" : "FAIL", note.str().c_str());
    o.require(ok, std::string("8") + label);
  };

  o.detail << "parts a-g below";
  part("a", [&](std::ostringstream& note) {
    Real worst = 0;
    bool ok = true;
    for (int i = 0; i < 100; ++i) {
      const BoundEntry e = reflection_equivalence(uniform(1e-6, 1 - 1e-6), kCtx);
      worst = std::max(worst, abs(e.computed.value()));
      ok = ok && e.pass && abs(e.computed.value()) < Real("1e-12");
    }
    note << "reflection residual max " << fmt(worst, 3) << " over 100 points";
    return ok;
  });

  part("b", [&](std::ostringstream& note) {
    const auto xs = GridSpec{Real(0), Real(1), 10000, Real("1e-6")}.abscissae();
    std::int64_t bad = 0;
    Real min1 = 1e9, min2 = 1e9;
    for (const Real& s : xs) {
      for (Path p : {Path::Composed, Path::Integral}) {
        const Approx d1 = F_prime(s, kCtx, p);
        const Approx d2 = F_second(s, kCtx, p);
        if (!(d1.value() > d1.err()) || !(d2.value() > d2.err())) ++bad;
        min1 = std::min(min1, d1.value());
        min2 = std::min(min2, d2.value());
      }
    }
    note << xs.size() << " points, min F' " << fmt(min1, 8) << ", min F'' " << fmt(min2, 8) << ", violations " << bad;
    return bad == 0;
  });

  part("c", [&](std::ostringstream& note) {
    int bad = 0, total = 0;
    auto check = [&](const Approx& a, const Approx& b) {
      ++total;
      if (!agree(a, b)) ++bad;
    };
    for (int i = 0; i < 10; ++i) {
      Real z = uniform(-0.95, 4);
      if (abs(z - 1) < Real("1e-3")) z += Real("0.01");
      check(zeta(z, kCtx), zeta_via_stieltjes_integral(z, kCtx));
      const Real x = uniform(0.01, 10);
      check(digamma(x, kCtx), digamma_via_integral(x, kCtx));
      const Real s = uniform(0.001, 0.999);
      check(F(s, kCtx), F(s, kCtx, Path::Integral));
      check(F_prime(s, kCtx), F_prime(s, kCtx, Path::Integral));
      check(F_second(s, kCtx), F_second(s, kCtx, Path::Integral));
    }
    note << total << " comparisons, " << bad << " outside combined budgets";
    return bad == 0;
  });

  part("d", [&](std::ostringstream& note) {
    using Fn = std::function<Real(const Real&)>;
    struct Case {
      Fn f, f1, f2;
    };
    const std::vector<Case> cases = {
        {[](const Real&) { return Real(1); }, [](const Real&) { return Real(0); }, [](const Real&) { return Real(0); }},
        {[](const Real& u) { return u; }, [](const Real&) { return Real(1); }, [](const Real&) { return Real(0); }},
        {[](const Real& u) { return u * u; }, [](const Real& u) { return 2 * u; }, [](const Real&) { return Real(2); }},
        {[](const Real& u) { return pow(u, 5) - 3 * pow(u, 3); },
         [](const Real& u) { return 5 * pow(u, 4) - 9 * u * u; },
         [](const Real& u) { return 20 * pow(u, 3) - 18 * u; }},
        {[](const Real& u) { return exp(u); }, [](const Real& u) { return exp(u); },
         [](const Real& u) { return exp(u); }},
        {[](const Real& u) { return sin(3 * u); }, [](const Real& u) { return 3 * cos(3 * u); },
         [](const Real& u) { return -9 * sin(3 * u); }},
    };
    Real worst = 0;
    bool ok = true;
    for (const Case& c : cases) {
      const auto [lhs, rhs] = lemma_fsup_identity_check(c.f, c.f1, c.f2, kCtx);
      const Real d = abs(lhs.value() - rhs.value());
      worst = std::max(worst, d);
      ok = ok && d <= lhs.err() + rhs.err() + kCtx.tolerance();
    }
    note << "6 functions, max |lhs - rhs| " << fmt(worst, 3);
    return ok;
  });

  part("e", [&](std::ostringstream& note) {
    Real worst = 0;
    bool ok = true;
    for (const char* s : {"0.1", "0.5", "0.9"}) {
      for (std::int64_t N : {1, 10, 1000, 20000}) {
        const Approx sum = I1_partial_sum(Real(s), N, kCtx);
        const Real closed = HFamily::g(Real(s), Real(N + 1)) - HFamily::g(Real(s), Real(1));
        const Real d = abs(sum.value() - closed);
        worst = std::max(worst, d);
        ok = ok && d <= sum.err() + 4 * kCtx.epsilon();
      }
    }
    note << "max |partial - (g(N+1) - g(1))| " << fmt(worst, 3);
    return ok;
  });

  part("f", [&](std::ostringstream& note) {
    const auto xs = GridSpec{Real(2), Real(3), 50, Real("0.01")}.abscissae();
    bool ok = true;
    Approx prev[4];
    for (std::size_t i = 0; i < xs.size(); ++i) {
      Approx cur[4] = {zeta(xs[i], kCtx), zeta_deriv(xs[i], 1, kCtx), zeta_deriv(xs[i], 2, kCtx),
                       zeta_deriv(xs[i], 3, kCtx)};
      ok = ok && cur[1].value() + cur[1].err() < 0 && cur[2].value() - cur[2].err() > 0 &&
           cur[3].value() + cur[3].err() < 0;
      if (i > 0) {
        ok = ok && cur[0].value() + cur[0].err() < prev[0].value() - prev[0].err();
        ok = ok && cur[1].value() - cur[1].err() > prev[1].value() + prev[1].err();
        ok = ok && cur[2].value() + cur[2].err() < prev[2].value() - prev[2].err();
      }
      for (int k = 0; k < 4; ++k) prev[k] = cur[k];
    }
    note << xs.size() << " points in (2,3): zeta' < 0, zeta'' > 0, zeta''' < 0, zeta and zeta'' decreasing, "
         << "zeta' increasing";
    return ok;
  });

  part("g", [&](std::ostringstream& note) {
    using Eval = std::function<Approx(const PrecisionContext&)>;
    const std::vector<std::pair<const char*, Eval>> evals = {
        {"zeta(0.3)", [](const PrecisionContext& c) { return zeta(Real("0.3"), c); }},
        {"digamma(0.7)", [](const PrecisionContext& c) { return digamma(Real("0.7"), c); }},
        {"F(0.5)", [](const PrecisionContext& c) { return F_direct(Real("0.5"), c); }},
        {"F''(0.2)", [](const PrecisionContext& c) { return F_second_integral(Real("0.2"), c); }},
        {"P(0.4)", [](const PrecisionContext& c) { return P_eval(Real("0.4"), c); }},
        {"J(0.6)", [](const PrecisionContext& c) { return J_direct(Real("0.6"), c); }},
    };
    const PrecisionContext ref_ctx{90, 1e-60};
    bool ok = true;
    for (const auto& [name, eval] : evals) {
      Real ref;
      {
        PrecisionScope scope(ref_ctx);
        ref = eval(ref_ctx).value();
      }
      Real prev_err = 1;
      for (double tol : {1e-10, 1e-20, 1e-30}) {
        const PrecisionContext c = kCtx.with_tolerance(tol);
        PrecisionScope scope(c);
        const Approx v = eval(c);
        const bool honest = abs(v.value() - ref) <= v.err();
        const bool tighter = v.err() <= prev_err && v.err() <= Real(tol) * 10;
        if (!honest || !tighter) note << name << " at tol " << tol << " not honest or not tight; ";
        ok = ok && honest && tighter;
        prev_err = v.err();
      }
    }
    note << evals.size() << " quantities at tolerances 1e-10, 1e-20, 1e-30 against 90-digit references";
    return ok;
  });
}

}  // namespace

int main() {
  PrecisionScope scope(kCtx);
  struct Criterion {
    int id;
    const char* title;
    void (*run)(Outcome&);
  };
  const Criterion criteria[] = {
      {1, "P lower bound", criterion_1},
      {2, "I2 envelope", criterion_2},
      {3, "Sigma estimate and I3 bound", criterion_3},
      {4, "final chain", criterion_4},
      {5, "minimum of G", criterion_5},
      {6, "endpoint values of F", criterion_6},
      {7, "boundary derivatives of F", criterion_7},
      {8, "property suite", criterion_8},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("threw: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %d %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail.str().c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d of 8 criteria passed\n", 8 - failed);
  return failed == 0 ? 0 : 1;
}
