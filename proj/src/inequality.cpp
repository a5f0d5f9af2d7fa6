#include "zetapsi/inequality.hpp"

#include "zetapsi/numerics.hpp"
#include "zetapsi/representations.hpp"
#include "zetapsi/special_fn.hpp"

#include <string>

namespace zetapsi {

namespace {

void check_open_unit(const Real& s) {
  if (!(s > 0 && s < 1)) fail(ErrorKind::OutOfDomain, "F is evaluated on 0 < s < 1, got s=" + s.str(10));
}

void check_grid(const GridSpec& grid) {
  grid.validate();
  if (!(grid.lo + grid.inset > 0 && grid.hi - grid.inset < 1)) {
    fail(ErrorKind::OutOfDomain, "grid must lie inside (0, 1)");
  }
}

// pi cot(pi s) with a rounding allowance.
Approx pi_cot(const Real& s, const PrecisionContext& ctx) {
  const Real x = pi() * s;
  const Real v = pi() * cos(x) / sin(x);
  return Approx(v, (abs(v) + 1 / abs(sin(x))) * ctx.epsilon() * 8);
}

std::string where(const Real& s) { return " at s=" + s.str(10); }

}  // namespace

LinearBound LinearBound::from_gamma0(const Approx& gamma0) {
  return {gamma0 + Approx(Real(0.5)), gamma0 - Approx(Real(0.5))};
}

Approx LinearBound::operator()(const Real& s) const { return s * slope + intercept; }

LinearBound linear_bound(const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  return LinearBound::from_gamma0(stieltjes_gamma(0, ctx));
}

Approx F(const Real& s, const PrecisionContext& ctx, Path path) {
  check_open_unit(s);
  PrecisionScope scope(ctx);
  if (path == Path::Integral) return F_direct(s, ctx);
  return zeta(s, ctx) - digamma(1 - s, ctx);
}

Approx F_prime(const Real& s, const PrecisionContext& ctx, Path path) {
  check_open_unit(s);
  PrecisionScope scope(ctx);
  if (path == Path::Integral) return F_prime_integral(s, ctx);
  return zeta_deriv(s, 1, ctx) + polygamma(1, 1 - s, ctx);
}

Approx F_second(const Real& s, const PrecisionContext& ctx, Path path) {
  check_open_unit(s);
  PrecisionScope scope(ctx);
  if (path == Path::Integral) return F_second_integral(s, ctx);
  return zeta_deriv(s, 2, ctx) - polygamma(2, 1 - s, ctx);
}

CertificateReport verify_bounds(const GridSpec& grid, const PrecisionContext& ctx) {
  ctx.validate();
  check_grid(grid);
  PrecisionScope scope(ctx);
  const LinearBound line = linear_bound(ctx);
  const std::vector<Real> xs = grid.abscissae();

  struct Side {
    Approx worst;
    Real at;
    std::int64_t violations = 0;
    Real first_violation;
    bool seen = false;
  };
  Side lower, upper;
  auto record = [](Side& side, Approx slack, const Real& s) {
    if (!(slack.value() > slack.err())) {
      if (side.violations++ == 0) side.first_violation = s;
    }
    if (!side.seen || slack.value() < side.worst.value()) {
      side.worst = std::move(slack);
      side.at = s;
      side.seen = true;
    }
  };
  for (const Real& s : xs) {
    const Approx f = F(s, ctx);
    record(lower, f - Approx(s), s);
    record(upper, line(s) - f, s);
  }

  CertificateReport report = new_report(ctx);
  const std::string n = std::to_string(xs.size()) + "-point grid";
  report.add(BoundEntry::make("lower_slack_min", lower.worst, Op::Greater, Real(0),
                              "min F(s) - s over the " + n + where(lower.at)));
  report.add(BoundEntry::make("upper_slack_min", upper.worst, Op::Greater, Real(0),
                              "min (b's + b) - F(s) over the " + n + where(upper.at)));
  auto violations = [&](const char* name, const Side& side, const char* claim) {
    std::string citation = std::string(claim) + " pointwise with margin err on the " + n;
    if (side.violations > 0) citation += "; first violation" + where(side.first_violation);
    report.add(BoundEntry::make(name, Approx(Real(side.violations)), Op::Equal, Real(0), citation));
  };
  violations("lower_violations", lower, "s < F(s)");
  violations("upper_violations", upper, "F(s) < b's + b");
  return report;
}

void require_pass(const CertificateReport& report) {
  for (const BoundEntry& e : report.entries) {
    if (!e.pass) fail(ErrorKind::ViolationFound, e.name + " failed: " + e.citation);
  }
}

MinimumReport find_minimum(const PrecisionContext& ctx) {
  ctx.validate();
  PrecisionScope scope(ctx);
  auto g1 = [&](const Real& s) { return F_prime(s, ctx).value() - 1; };

  const std::vector<Real> xs = GridSpec{Real(0), Real(1), 101, Real("1e-6")}.abscissae();
  MinimumReport out;
  Real prev = g1(xs.front());
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const Real cur = g1(xs[i]);
    if ((prev < 0) != (cur < 0)) {
      if (out.sign_changes++ == 0) out.bracket = {xs[i - 1], xs[i]};
    }
    prev = cur;
  }
  if (out.sign_changes == 0) fail(ErrorKind::NoBracket, "F' - 1 keeps one sign on (0, 1)");

  const Real tol = ctx.tolerance();
  out.s0 = brent_root(g1, out.bracket.first, out.bracket.second, tol);
  // G' vanishes at s0, so the location error enters G at second order.
  out.G_at_s0 = (F(out.s0, ctx) - Approx(out.s0)).widen(abs(g1(out.s0)) * tol + tol * tol);
  return out;
}

BoundEntry reflection_equivalence(const Real& s, const PrecisionContext& ctx) {
  check_open_unit(s);
  PrecisionScope scope(ctx);
  const Approx residual = pi_cot(s, ctx) - (digamma(1 - s, ctx) - digamma(s, ctx));
  return BoundEntry::make("reflection[s=" + s.str(6) + "]", residual, Op::Equal, Real(0),
                          "pi cot(pi s) = psi(1 - s) - psi(s)", Real("1e-12"));
}

CertificateReport conjecture_original_form(const GridSpec& grid, const PrecisionContext& ctx) {
  ctx.validate();
  check_grid(grid);
  PrecisionScope scope(ctx);
  const LinearBound line = linear_bound(ctx);
  const std::vector<Real> xs = grid.abscissae();

  Approx worst_lower, worst_upper;
  Real at_lower, at_upper;
  std::int64_t bad_lower = 0, bad_upper = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Real& s = xs[i];
    const Approx cot = pi_cot(s, ctx);
    const Approx middle = zeta(s, ctx) - digamma(s, ctx);
    const Approx lo = middle - (cot + Approx(s));
    const Approx hi = (cot + line(s)) - middle;
    if (!(lo.value() > lo.err())) ++bad_lower;
    if (!(hi.value() > hi.err())) ++bad_upper;
    if (i == 0 || lo.value() < worst_lower.value()) {
      worst_lower = lo;
      at_lower = s;
    }
    if (i == 0 || hi.value() < worst_upper.value()) {
      worst_upper = hi;
      at_upper = s;
    }
  }

  CertificateReport report = new_report(ctx);
  const std::string n = std::to_string(xs.size()) + "-point grid";
  report.add(BoundEntry::make("original_lower_slack_min", worst_lower, Op::Greater, Real(0),
                              "min zeta(s) - psi(s) - pi cot(pi s) - s over the " + n + where(at_lower)));
  report.add(BoundEntry::make("original_upper_slack_min", worst_upper, Op::Greater, Real(0),
                              "min pi cot(pi s) + b's + b - zeta(s) + psi(s) over the " + n + where(at_upper)));
  report.add(BoundEntry::make("original_violations", Approx(Real(bad_lower + bad_upper)), Op::Equal, Real(0),
                              "two-sided original form pointwise on the " + n));
  return report;
}

SharpnessGaps sharpness_gaps(const PrecisionContext& ctx) {
  ctx.validate();
  PrecisionScope scope(ctx);
  const LinearBound line = linear_bound(ctx);
  SharpnessGaps out;
  for (int k = 2; k <= 6; ++k) {
    const Real eps = pow(Real(10), -k);
    out.eps.push_back(eps);
    out.near_one.push_back(line(1 - eps) - F(1 - eps, ctx));
    out.near_zero.push_back(line(eps) - F(eps, ctx));
  }
  return out;
}

BoundEntry sharpness_check(const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  const SharpnessGaps gaps = sharpness_gaps(ctx);
  auto decreasing = [](const std::vector<Approx>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!(v[i].value() > v[i].err())) return false;
      if (i > 0 && !(v[i].value() + v[i].err() < v[i - 1].value() - v[i - 1].err())) return false;
    }
    return true;
  };
  BoundEntry e = BoundEntry::make("sharpness", gaps.near_one.back(), Op::Less, Real("1e-5"),
                                  "(b's + b) - F(s) at s = 1 - 1e-6; gaps at 1 - 10^-k and 10^-k, k = 2..6, "
                                  "positive and strictly decreasing");
  e.pass = e.pass && decreasing(gaps.near_one) && decreasing(gaps.near_zero);
  return e;
}

EndpointLimits endpoint_limits(const PrecisionContext& ctx) {
  ctx.validate();
  PrecisionScope scope(ctx);
  std::vector<Real> lo, hi;
  Real sample_err = 0;
  for (int k = 2; k <= 6; ++k) {
    const Real eps = pow(Real(10), -k);
    const Approx a = F(eps, ctx);
    const Approx b = F(1 - eps, ctx);
    lo.push_back(a.value());
    hi.push_back(b.value());
    sample_err = std::max({sample_err, a.err(), b.err()});
  }
  EndpointLimits out;
  out.at0 = richardson_extrapolate(lo, Real(10), 3).widen(sample_err);
  out.at1 = richardson_extrapolate(hi, Real(10), 3).widen(sample_err);
  const Approx g0 = stieltjes_gamma(0, ctx);
  out.b = g0 - Approx(Real(0.5));
  out.two_gamma0 = Real(2) * g0;
  return out;
}

CertificateReport inequality_report(const GridSpec& grid, const PrecisionContext& ctx) {
  ctx.validate();
  PrecisionScope scope(ctx);
  CertificateReport report = verify_bounds(grid, ctx);
  report.merge(conjecture_original_form(grid, ctx));

  const MinimumReport m = find_minimum(ctx);
  report.add(BoundEntry::make("s0", Approx(m.s0, ctx.tolerance()), Op::Equal, Real("0.484993"),
                              "root of F'(s) = 1, bracket [" + m.bracket.first.str(6) + ", " +
                                  m.bracket.second.str(6) + "]",
                              Real("1e-4")));
  report.add(BoundEntry::make("min_G", m.G_at_s0, Op::Equal, Real("0.00306469"), "G(s0) = F(s0) - s0",
                              Real("1e-6")));
  report.add(BoundEntry::make("min_G_positive", m.G_at_s0, Op::Greater, Real(0), "G(s0) > 0"));
  report.add(BoundEntry::make("G_prime_sign_changes", Approx(Real(m.sign_changes)), Op::Equal, Real(1),
                              "F'(s) - 1 changes sign once on a 101-point scan"));

  for (const char* s : {"0.1", "0.25", "0.5", "0.75", "0.9"}) report.add(reflection_equivalence(Real(s), ctx));
  report.add(sharpness_check(ctx));

  const EndpointLimits limits = endpoint_limits(ctx);
  report.add(BoundEntry::make("F_limit_0", limits.at0, Op::Tends, limits.b.value(), "F(0+) = gamma_0 - 1/2",
                              Real("1e-8")));
  report.add(BoundEntry::make("F_limit_1", limits.at1, Op::Tends, limits.two_gamma0.value(), "F(1-) = 2 gamma_0",
                              Real("1e-8")));
  return report;
}

}  // namespace zetapsi
