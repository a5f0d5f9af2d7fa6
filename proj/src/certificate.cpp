#include "zetapsi/certificate.hpp"

#include "zetapsi/numerics.hpp"
#include "zetapsi/representations.hpp"
#include "zetapsi/special_fn.hpp"

#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <sstream>

namespace zetapsi {

HFamily::HFamily(Real s, std::int64_t n) : s_(std::move(s)), n_(n) {
  if (n < 1) fail(ErrorKind::InvalidArgument, "h_n needs n >= 1");
}

Real HFamily::g(const Real& s, const Real& x) {
  const Real L = log(x);
  return (2 - s * L) * L * exp(-(s + 1) * L);
}

Real HFamily::g1(const Real& s, const Real& x) {
  const Real L = log(x);
  return (2 - (4 * s + 2) * L + s * (s + 1) * L * L) / pow(x, s + 2);
}

Real HFamily::h(const Real& t) const { return g(s_, t + n_); }

Real HFamily::h_prime(const Real& t) const { return g1(s_, t + n_); }

Real HFamily::h_second(const Real& t) const {
  const Real x = t + n_;
  const Real L = log(x);
  const Real& s = s_;
  return (-6 * (s + 1) + (6 * s * s + 12 * s + 4) * L - s * (s + 1) * (s + 2) * L * L) / pow(x, s + 3);
}

Real HFamily::majorant(std::int64_t n) {
  const Real L = log(Real(n + 1));
  const Real m(n);
  return (6 * L * L + 22 * L + 12) / (m * m * m);
}

std::string to_string(Op op) {
  switch (op) {
    case Op::Less:
      return "<";
    case Op::LessEq:
      return "<=";
    case Op::Equal:
      return "=";
    case Op::Tends:
      return "->";
    case Op::Greater:
      return ">";
    case Op::GreaterEq:
      return ">=";
  }
  return "?";
}

BoundEntry BoundEntry::make(std::string name, Approx computed, Op op, Real reference, std::string citation, Real tol) {
  BoundEntry e;
  e.name = std::move(name);
  e.op = op;
  e.citation = std::move(citation);
  e.tol = tol;
  const Real& v = computed.value();
  const Real& err = computed.err();
  switch (op) {
    case Op::Less:
      e.pass = v + err < reference + tol;
      break;
    case Op::LessEq:
      e.pass = v + err <= reference + tol;
      break;
    case Op::Greater:
      e.pass = v - err > reference - tol;
      break;
    case Op::GreaterEq:
      e.pass = v - err >= reference - tol;
      break;
    case Op::Equal:
    case Op::Tends:
      e.pass = abs(v - reference) <= err + tol;
      break;
  }
  e.computed = std::move(computed);
  e.reference = std::move(reference);
  return e;
}

void CertificateReport::add(BoundEntry entry) {
  overall_pass = overall_pass && entry.pass;
  entries.push_back(std::move(entry));
}

void CertificateReport::merge(const CertificateReport& other) {
  for (const auto& e : other.entries) add(e);
}

const BoundEntry* CertificateReport::find(const std::string& name) const {
  for (const auto& e : entries) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

CertificateReport new_report(const PrecisionContext& ctx) {
  CertificateReport report;
  report.context = ctx;
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  report.timestamp = buf;
  return report;
}

namespace {

std::string number(const Real& x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.14e", x.convert_to<double>());
  return buf;
}

std::string quoted(const std::string& s) { return nlohmann::json(s).dump(); }

}  // namespace

std::string to_json(const CertificateReport& report) {
  std::ostringstream out;
  out << "{\n  \"entries\": [";
  for (std::size_t i = 0; i < report.entries.size(); ++i) {
    const BoundEntry& e = report.entries[i];
    out << (i ? ",\n" : "\n") << "    {\"name\": " << quoted(e.name) << ", \"value\": " << number(e.computed.value())
        << ", \"err\": " << number(e.computed.err()) << ", \"op\": " << quoted(to_string(e.op))
        << ", \"reference\": " << number(e.reference) << ", \"citation\": " << quoted(e.citation)
        << ", \"pass\": " << (e.pass ? "true" : "false") << "}";
  }
  out << "\n  ],\n  \"overall_pass\": " << (report.overall_pass ? "true" : "false") << ",\n  \"precision\": {\"digits\": "
      << report.context.work_digits << ", \"target_tol\": " << number(report.context.tolerance())
      << "},\n  \"timestamp\": " << quoted(report.timestamp) << "\n}\n";
  return out.str();
}

Approx P_eval(const Real& s, const PrecisionContext& ctx) {
  ctx.validate();
  PrecisionScope scope(ctx);
  if (!(s >= 0 && s <= 1)) fail(ErrorKind::OutOfDomain, "P(s) requires 0 <= s <= 1");
  return sum_power_log_series(PowerLogTerm(Real(3), {Real(2)}, -s), ctx, 2);
}

BoundEntry P_equivalence_check(const Real& s, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  const Approx series = P_eval(s, ctx);
  const Approx integral = F_second_parts(s, ctx).P;
  return BoundEntry::make("P_identity[s=" + s.str(6) + "]", series - integral, Op::Equal, Real(0),
                          "sum_{n>=2} 2/(n-s)^3 = 2/(s-1)^3 + int_0^1 t^-s log^2 t/(1-t) dt");
}

Approx I1_partial_sum(const Real& s, std::int64_t N, const PrecisionContext& ctx) {
  ctx.validate();
  if (N < 1) fail(ErrorKind::InvalidArgument, "I1 partial sum needs N >= 1");
  PrecisionScope scope(ctx);
  Real total = 0;
  Real scale = 0;
  // h_n(0) = g(n) is h_{n-1}(1), carried over from the previous step.
  Real at_zero = HFamily::g(s, Real(1));
  for (std::int64_t n = 1; n <= N; ++n) {
    const Real at_one = HFamily::g(s, Real(n + 1));
    const Real term = at_one - at_zero;
    at_zero = at_one;
    total += term;
    scale += abs(term);
  }
  return Approx(total, scale * ctx.epsilon() * 4);
}

BoundEntry I1_check(const Real& s, std::int64_t N, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  return BoundEntry::make("I1_limit[s=" + s.str(6) + "]", I1_partial_sum(s, N, ctx), Op::Tends, Real(0),
                          "I1 telescopes: sum_{n<=N} (h_n(1) - h_n(0)) = g(N+1) - g(1), g(1) = 0; N = " +
                              std::to_string(N),
                          Real("1e-6"));
}

Approx I2_eval(const Real& s, const PrecisionContext& ctx) {
  ctx.validate();
  PrecisionScope scope(ctx);
  if (!(s >= 0 && s <= 1)) fail(ErrorKind::OutOfDomain, "I2 requires 0 <= s <= 1");
  const Real x = s + 2;
  return Approx(Real(-2)) + Real(4) * zeta(x, ctx) + (8 * s + 4) * zeta_deriv(x, 1, ctx) +
         (2 * s * (s + 1)) * zeta_deriv(x, 2, ctx);
}

Approx I2_direct(const Real& s, const PrecisionContext& ctx) {
  ctx.validate();
  PrecisionScope scope(ctx);
  if (!(s >= 0 && s <= 1)) fail(ErrorKind::OutOfDomain, "I2 requires 0 <= s <= 1");
  const PowerLogTerm g1(s + 2, {Real(2), -(4 * s + 2), s * (s + 1)});
  // g1(1) = 2
  return Approx(Real(2)) + Real(2) * sum_power_log_series(g1, ctx, 2);
}

Approx I2_envelope(const PrecisionContext& ctx) {
  ctx.validate();
  PrecisionScope scope(ctx);
  return Approx(Real(-2)) + Real(4) * zeta(Real(2), ctx) + Real(4) * zeta_deriv(Real(3), 1, ctx) +
         Real(2) * zeta_deriv(Real(2), 2, ctx);
}

SigmaEstimate sigma_eval(std::int64_t N, const PrecisionContext& ctx) {
  ctx.validate();
  if (N < 2) fail(ErrorKind::InvalidArgument, "sigma needs N >= 2");
  PrecisionScope scope(ctx);
  Real partial = 0;
  for (std::int64_t n = 1; n <= N; ++n) partial += HFamily::majorant(n);
  const Real l2 = ln2();
  const Real L = log(Real(N));
  const Real NN = Real(N) * N;
  const Real tail = (3 * L * L + (14 + 6 * l2) * L + (13 + 14 * l2 + 3 * l2 * l2)) / NN;
  const Approx p(partial, abs(partial) * ctx.epsilon() * N);
  return {p, tail, p + Approx(tail, abs(tail) * ctx.epsilon())};
}

BoundEntry I3_bound(const PrecisionContext& ctx, std::int64_t N) {
  PrecisionScope scope(ctx);
  const SigmaEstimate sigma = sigma_eval(N, ctx);
  return BoundEntry::make("I3_bound", Real(1) / 192 * sigma.upper, Op::Less, Real("0.211964"),
                          "|I3| <= Sigma/192 with (1/6) int_0^1 |(u-1/2)^3| du = 1/192; Sigma from N = " +
                              std::to_string(N),
                          Real("1e-6"));
}

Approx J_direct(const Real& s, const PrecisionContext& ctx) {
  ctx.validate();
  PrecisionScope scope(ctx);
  if (!(s > 0 && s < 1)) fail(ErrorKind::OutOfDomain, "J requires 0 < s < 1");
  const PowerLogTerm phi(s + 1, {Real(0), Real(2), -s});
  auto phi_derivative = [&phi](const Real& t, int k) { return phi.derivative(t, k); };
  constexpr int kOrder = 14;
  const Real tol = ctx.tolerance() / 4;
  std::int64_t N = 16;
  Approx tail = sawtooth_tail(phi_derivative, N, kOrder);
  while (tail.err() > tol) {
    if (N > (1 << 16)) fail(ErrorKind::TailNotConverged, "J tail did not reach the tolerance");
    N *= 2;
    tail = sawtooth_tail(phi_derivative, N, kOrder);
  }
  const PrecisionContext piece_ctx = ctx.with_tolerance(ctx.target_tol / (4.0 * static_cast<double>(N)));
  Approx total = tail;
  for (std::int64_t n = 1; n < N; ++n) {
    const HFamily h(s, n);
    total = total + adaptive_quadrature([&](const Real& t) { return (t - Real(0.5)) * h.h(t); }, Real(0), Real(1),
                                        piece_ctx);
  }
  return total;
}

BoundaryLimits boundary_limits(const PrecisionContext& ctx) {
  ctx.validate();
  PrecisionScope scope(ctx);
  const Real zeta2 = pi() * pi() / 6;
  const Approx A0(zeta2 - log(2 * pi()) / 2, ctx.epsilon() * 4);
  const Approx g1 = stieltjes_gamma(1, ctx);
  const Approx A1 = Approx(zeta2, ctx.epsilon() * 4) - g1;

  auto F1 = [&](const Real& s) { return zeta_deriv(s, 1, ctx) + polygamma(1, 1 - s, ctx); };
  std::vector<Real> lo, hi;
  Real sample_err = 0;
  for (int k = 4; k <= 20; ++k) {
    const Real eps = pow(Real(2), -k);
    const Approx a = F1(eps);
    const Approx b = F1(1 - eps);
    lo.push_back(a.value());
    hi.push_back(b.value());
    sample_err = std::max({sample_err, a.err(), b.err()});
  }
  const Approx x0 = richardson_extrapolate(lo, Real(2), 3).widen(sample_err);
  const Approx x1 = richardson_extrapolate(hi, Real(2), 3).widen(sample_err);
  return {A0, A1, x0, x1};
}

namespace {

struct GridExtreme {
  Approx value;
  Real at;
};

// Largest (sign = +1) or smallest (sign = -1) value over the grid.
template <typename Fn>
GridExtreme grid_extreme(const std::vector<Real>& xs, int sign, Fn&& fn) {
  GridExtreme best{fn(xs.front()), xs.front()};
  for (std::size_t i = 1; i < xs.size(); ++i) {
    Approx v = fn(xs[i]);
    if ((sign > 0 && v.value() > best.value.value()) || (sign < 0 && v.value() < best.value.value())) {
      best = {std::move(v), xs[i]};
    }
  }
  return best;
}

std::string at(const GridExtreme& e, std::size_t n) {
  return " (" + std::to_string(n) + "-point grid, extreme at s=" + e.at.str(8) + ")";
}

}  // namespace

CertificateReport convexity_chain(const PrecisionContext& ctx, const ChainOptions& options) {
  ctx.validate();
  options.grid_ctx.validate();
  PrecisionScope scope(ctx);
  CertificateReport report = new_report(ctx);

  // P(s) >= 2(zeta(3) - 1) and P(s) <= 2 zeta(3)
  const Approx z3 = zeta(Real(3), ctx);
  const Approx p_low = Real(2) * (z3 - Approx(Real(1)));
  const Approx p_high = Real(2) * z3;
  report.add(BoundEntry::make("P_lower_bound", p_low, Op::Equal, Real("0.40411380632"),
                              "P(s) >= 2 sum_{n>=2} n^-3 = 2(zeta(3) - 1) ~ 0.40411380632", Real("1e-11")));
  report.add(BoundEntry::make("P_at_0", P_eval(Real(0), ctx), Op::Tends, p_low.value(),
                              "P(0+) = 2(zeta(3) - 1)", p_low.err()));
  report.add(BoundEntry::make("P_at_1", P_eval(Real(1), ctx), Op::Tends, p_high.value(), "P(1-) = 2 zeta(3)",
                              p_high.err()));
  for (const char* s : {"0.1", "0.5", "0.9"}) report.add(P_equivalence_check(Real(s), ctx));

  // I1
  for (const char* s : {"0.5", "0.99"}) {
    PrecisionScope grid_scope(options.grid_ctx);
    report.add(I1_check(Real(s), options.i1_N, options.grid_ctx));
  }

  // I2
  const Approx envelope = I2_envelope(ctx);
  const Approx i2_bound = Real(1) / 48 * envelope;
  report.add(BoundEntry::make("I2_envelope", envelope, Op::Equal, Real("7.765791"),
                              "4 zeta(2) - 2 + 4 zeta'(3) + 2 zeta''(2) ~ 7.765791", Real("1e-6")));
  report.add(BoundEntry::make("I2_bound", i2_bound, Op::Equal, Real("0.161787"), "|I2| <= 7.765791/48 = 0.161787",
                              Real("1e-6")));

  // I3
  const SigmaEstimate sigma = sigma_eval(options.sigma_N, ctx);
  report.add(BoundEntry::make("sigma_upper", sigma.upper, Op::Less, Real("40.697"),
                              "Sigma <= Sigma_{<=N} + explicit tail bound < 40.697; N = " +
                                  std::to_string(options.sigma_N)));
  const Approx kernel = Real(1) / 6 * adaptive_quadrature([](const Real& u) { return abs(pow(u - Real(0.5), 3)); },
                                                          Real(0), Real(1), ctx, {});
  report.add(BoundEntry::make("I3_kernel_constant", kernel, Op::Equal, Real(1) / 192,
                              "(1/6) int_0^1 |(u - 1/2)^3| du = (1/6)(1/32) = 1/192"));
  report.add(I3_bound(ctx, options.sigma_N));
  const Approx i3_bound = Real(1) / 192 * sigma.upper;

  // The chain |J| <= |I1| + |I2| + |I3| < P
  report.add(BoundEntry::make("rounded_chain_sum", Approx(Real("0.161787") + Real("0.211964")), Op::Equal,
                              Real("0.373751"), "0.161787 + 0.211964 = 0.373751", Real("1e-12")));
  const Approx chain = i2_bound + i3_bound;
  report.add(BoundEntry::make("final_chain", chain, Op::Less, p_low.value() - p_low.err(),
                              "|J(s)| <= 0 + |I2| + |I3| < 2(zeta(3) - 1) <= P(s)"));
  report.add(BoundEntry::make("final_margin", p_low - chain, Op::Equal, Real("0.030363"),
                              "2(zeta(3) - 1) - (|I2| + |I3|) ~ 0.40411380632 - 0.373751", Real("2e-6")));

  // Pointwise checks on the grid, at the grid precision.
  const PrecisionContext& gctx = options.grid_ctx;
  const auto xs = options.grid.abscissae();
  const std::size_t n = xs.size();
  {
    PrecisionScope grid_scope(gctx);
    const Approx p_low_g = Real(2) * (zeta(Real(3), gctx) - Approx(Real(1)));
    const Approx p_high_g = Real(2) * zeta(Real(3), gctx);

    const auto i2_abs = grid_extreme(xs, +1, [&](const Real& s) {
      const Approx v = I2_eval(s, gctx);
      return Approx(abs(v.value()) / 48, v.err() / 48);
    });
    report.add(BoundEntry::make("I2_abs_grid", i2_abs.value, Op::LessEq, Real("0.161787"),
                                "|sum_n (h_n'(1) + h_n'(0))|/48 <= 0.161787" + at(i2_abs, n), Real("1e-6")));
    const auto i2_min = grid_extreme(xs, -1, [&](const Real& s) { return I2_eval(s, gctx); });
    report.add(BoundEntry::make("I2_signed_min", i2_min.value, Op::Greater, Real(0),
                                "sum_n (h_n'(1) + h_n'(0)) > 0, so an upper bound bounds |I2|" + at(i2_min, n)));
    const auto i2_max = grid_extreme(xs, +1, [&](const Real& s) { return I2_eval(s, gctx); });
    report.add(BoundEntry::make("I2_envelope_dominates", i2_max.value, Op::LessEq, envelope.value(),
                                "sum_n (h_n'(1) + h_n'(0)) with the 2 s(s+1) zeta''(s+2) term stays below 7.765791" +
                                    at(i2_max, n)));

    std::vector<Approx> P(n), J(n), F2i(n), F2c(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Real& s = xs[i];
      P[i] = P_eval(s, gctx);
      J[i] = J_direct(s, gctx);
      F2i[i] = F_second_integral(s, gctx);
      F2c[i] = zeta_deriv(s, 2, gctx) - polygamma(2, 1 - s, gctx);
    }
    auto pick = [&](const std::vector<Approx>& v, int sign) {
      std::size_t best = 0;
      for (std::size_t i = 1; i < n; ++i) {
        if ((sign > 0) ? v[i].value() > v[best].value() : v[i].value() < v[best].value()) best = i;
      }
      return GridExtreme{v[best], xs[best]};
    };
    const auto p_min = pick(P, -1);
    const auto p_max = pick(P, +1);
    report.add(BoundEntry::make("P_grid_min", p_min.value, Op::GreaterEq, p_low_g.value() - p_low_g.err(),
                                "P(s) >= 2(zeta(3) - 1)" + at(p_min, n)));
    report.add(BoundEntry::make("P_grid_max", p_max.value, Op::LessEq, p_high_g.value() + p_high_g.err(),
                                "P(s) <= 2 zeta(3)" + at(p_max, n)));

    std::vector<Approx> absJ(n), gap(n);
    for (std::size_t i = 0; i < n; ++i) {
      absJ[i] = Approx(abs(J[i].value()), J[i].err());
      gap[i] = absJ[i] - P[i];
    }
    const auto j_max = pick(absJ, +1);
    report.add(BoundEntry::make("J_pointwise", j_max.value, Op::Less, Real("0.373751"),
                                "|J(s)| <= 0.373751" + at(j_max, n)));
    const auto gap_max = pick(gap, +1);
    report.add(BoundEntry::make("J_below_P", gap_max.value, Op::Less, Real(0), "|J(s)| < P(s)" + at(gap_max, n)));
    const auto f2i = pick(F2i, -1);
    const auto f2c = pick(F2c, -1);
    report.add(BoundEntry::make("F2_positive_integral", f2i.value, Op::Greater, Real(0),
                                "F''(s) = J(s) + P(s) > 0, integral representation" + at(f2i, n)));
    report.add(BoundEntry::make("F2_positive_composed", f2c.value, Op::Greater, Real(0),
                                "F''(s) = zeta''(s) - psi''(1-s) > 0" + at(f2c, n)));
  }

  // Boundary behaviour of F'
  const BoundaryLimits limits = boundary_limits(ctx);
  report.add(BoundEntry::make("F1_limit_0", limits.extrapolated0, Op::Tends, limits.A0.value(),
                              "F'(0+) = zeta'(0) + psi'(1) = pi^2/6 - log(2 pi)/2", Real("1e-8")));
  report.add(BoundEntry::make("F1_limit_1", limits.extrapolated1, Op::Tends, limits.A1.value(),
                              "F'(1-) = finite part of zeta'(1) + zeta(2) = pi^2/6 - gamma_1", Real("1e-8")));
  report.add(BoundEntry::make("F1_boundary_order", limits.A1 - limits.A0, Op::Greater, Real(0),
                              "F'(1-) - F'(0+) = log(2 pi)/2 - gamma_1 > 0"));
  return report;
}

}  // namespace zetapsi
