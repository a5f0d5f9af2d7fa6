#include "zetapsi/representations.hpp"

#include "zetapsi/numerics.hpp"
#include "zetapsi/special_fn.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace zetapsi {

namespace {

constexpr int kSawtoothOrder = 14;
constexpr double kExpCut = 40.0;

// Digits lost to cancellation when quantities of size dist^-(order+1) combine
// into an O(1) result, dist being the distance to the nearer endpoint of (0,1).
unsigned cancellation_digits(const Real& s, int order) {
  const double sd = s.convert_to<double>();
  double dist = std::min(std::fabs(sd), std::fabs(1.0 - sd));
  if (dist >= 1.0) return 0;
  return static_cast<unsigned>(std::ceil((order + 1) * std::log10(1.0 / dist)));
}

PrecisionContext guarded(const PrecisionContext& ctx, const Real& s, int order) {
  return ctx.with_digits(ctx.work_digits + 10 + cancellation_digits(s, order));
}

std::vector<Real> sawtooth_poly(const Real& s, int order) {
  switch (order) {
    case 0:
      return {Real(1)};
    case 1:
      return {Real(-1), s};
    default:
      return {Real(0), Real(2), -s};
  }
}

// Antiderivative of t^(beta1 - 1) p(L), L = log t, evaluated from t^beta1 and L:
//   t^beta1 sum_j p_j sum_{i<=j} (-1)^i j!/(j-i)! L^(j-i) / beta1^(i+1).
Real power_log_antiderivative(const Real& tpow, const Real& L, const Real& beta1, const std::vector<Real>& poly) {
  Real total = 0;
  for (std::size_t j = 0; j < poly.size(); ++j) {
    if (poly[j] == 0) continue;
    Real inner = 0;
    Real falling = 1;  // j!/(j-i)!
    Real beta_pow = beta1;
    for (std::size_t i = 0; i <= j; ++i) {
      const Real term = falling * pow(L, static_cast<int>(j - i)) / beta_pow;
      inner += (i % 2 == 0) ? term : Real(-term);
      falling *= static_cast<long>(j - i);
      beta_pow *= beta1;
    }
    total += poly[j] * inner;
  }
  return tpow * total;
}

// int_1^T ({t} - 1/2) t^(-s-1) p(log t) dt over whole unit intervals, in the
// precision currently in effect. `magnitude` collects the size of the
// cancelling pieces for the rounding allowance.
Real sawtooth_head(const Real& s, const std::vector<Real>& poly, std::int64_t T, Real& magnitude) {
  const Real b1 = 1 - s;  // for t^-s
  const Real b0 = -s;     // for t^(-s-1)
  auto G = [&](std::int64_t n, Real& g1, Real& g0) {
    const Real t(static_cast<long>(n));
    const Real L = log(t);
    const Real tp0 = exp(b0 * L);
    g1 = power_log_antiderivative(tp0 * t, L, b1, poly);
    g0 = power_log_antiderivative(tp0, L, b0, poly);
  };
  Real total = 0;
  magnitude = 0;
  Real g1_lo, g0_lo, g1_hi, g0_hi;
  G(1, g1_lo, g0_lo);
  for (std::int64_t n = 1; n < T; ++n) {
    G(n + 1, g1_hi, g0_hi);
    const Real mid = Real(static_cast<long>(n)) + Real(0.5);
    total += (g1_hi - g1_lo) - mid * (g0_hi - g0_lo);
    magnitude += abs(g1_hi) + mid * abs(g0_hi);
    g1_lo = g1_hi;
    g0_lo = g0_hi;
  }
  return total;
}

// int_1^inf ({t} - 1/2) t^(-s-1) p(log t) dt for s > -1, s not in {0, 1}.
Approx sawtooth_integral(const Real& s, const std::vector<Real>& poly, const PrecisionContext& ctx) {
  const PowerLogTerm phi(s + 1, poly);
  auto phi_derivative = [&phi](const Real& t, int k) { return phi.derivative(t, k); };
  const Real tol = ctx.tolerance() / 8;

  std::int64_t N = 16;
  while (sawtooth_tail(phi_derivative, N, kSawtoothOrder).err() > tol) {
    if (N > (1 << 16)) fail(ErrorKind::TailNotConverged, "sawtooth tail did not reach the tolerance");
    N *= 2;
  }

  const unsigned extra =
      10 + static_cast<unsigned>(std::ceil(3 * std::log10(static_cast<double>(N)))) +
      cancellation_digits(s, static_cast<int>(poly.size()) - 1);
  const PrecisionContext inner = ctx.with_digits(ctx.work_digits + extra);
  Approx result;
  {
    PrecisionScope scope(inner);
    const Real s_in = s;
    std::vector<Real> poly_in(poly.begin(), poly.end());
    const PowerLogTerm phi_in(s_in + 1, poly_in);
    Real magnitude;
    const Real head = sawtooth_head(s_in, poly_in, N, magnitude);
    const Approx tail = sawtooth_tail([&phi_in](const Real& t, int k) { return phi_in.derivative(t, k); }, N,
                                      kSawtoothOrder);
    result = Approx(head, magnitude * inner.epsilon() * 8) + tail;
  }
  return settle(result, ctx);
}

// E(a, j) = int_{log 2}^inf e^(-a v) v^j / (1 - e^-v) dv for a > 0: quadrature
// up to v = 40, then 1/(1 - e^-v) = sum_m e^(-m v) with each piece in closed
// form (upper incomplete gamma of integer order).
Approx exp_kernel_integral(const Real& a, int j, const PrecisionContext& ctx) {
  const Real V(kExpCut);
  const Approx head = adaptive_quadrature(
      [&](const Real& v) { return exp(-a * v) * pow(v, j) / -boost::multiprecision::expm1(-v); }, log(Real(2)), V,
      ctx.with_tolerance(ctx.target_tol / 4));

  const Real tol = ctx.tolerance() / 8;
  Real tail = 0;
  Real last = 0;
  for (int m = 0;; ++m) {
    const Real c = a + m;
    const Real x = c * V;
    Real poly = 0;
    Real fact_ratio = 1;  // j!/i!, built from i = j downwards
    for (int i = j; i >= 0; --i) {
      poly += fact_ratio * pow(x, i);
      fact_ratio *= i;
    }
    last = exp(-x) * poly / pow(c, j + 1);
    tail += last;
    if (m >= 1 && last < tol) break;
    if (m > 1000) fail(ErrorKind::TailNotConverged, "exponential kernel tail did not converge");
  }
  // Successive pieces shrink by at least e^-40; the next one is below `last`.
  return head + Approx(tail, last + abs(tail) * ctx.epsilon());
}

// int_0^(1/2) of g(delta) where t = 1 - delta; g is smooth on [0, 1/2].
Approx near_one(const RealFn& g, const PrecisionContext& ctx) {
  return adaptive_quadrature(g, Real(0), Real(0.5), ctx.with_tolerance(ctx.target_tol / 4));
}

// int_0^1 (1 - t^(x-1)) / (1 - t) dt, x > 0.
Approx psi_kernel(const Real& x, const PrecisionContext& ctx) {
  const Approx low = Approx(ln2(), ln2() * ctx.epsilon()) - exp_kernel_integral(x, 0, ctx);
  const Approx high = near_one(
      [&](const Real& d) { return -boost::multiprecision::expm1((x - 1) * boost::multiprecision::log1p(-d)) / d; }, ctx);
  return low + high;
}

Approx log_kernel_unchecked(const Real& s, int j, const PrecisionContext& ctx) {
  const Approx low = exp_kernel_integral(1 - s, j, ctx);
  const Approx high = near_one(
      [&](const Real& d) {
        const Real L = boost::multiprecision::log1p(-d);
        return exp(-s * L) * (L / d) * pow(L, j - 1);
      },
      ctx);
  return (j % 2 == 0 ? low : -low) + high;
}

void require_open_unit(const Real& s, const char* what) {
  if (!(s > 0 && s < 1)) fail(ErrorKind::OutOfDomain, std::string(what) + " requires 0 < s < 1");
}

}  // namespace

FractionalPartIntegrand FractionalPartIntegrand::checked(const Real& s, int derivative_order) {
  require_open_unit(s, "fractional-part integrand");
  if (derivative_order < 0 || derivative_order > 2) {
    fail(ErrorKind::InvalidArgument, "derivative order must be 0, 1 or 2");
  }
  return FractionalPartIntegrand(s, derivative_order);
}

Real FractionalPartIntegrand::operator()(const Real& t) const {
  const Real L = log(t);
  const auto poly = sawtooth_poly(s_, order_);
  Real p = 0;
  for (std::size_t j = poly.size(); j-- > 0;) p = p * L + poly[j];
  const Real frac = t - floor(t) - Real(0.5);
  return frac * p * exp(-(s_ + 1) * L);
}

Approx FractionalPartIntegrand::integral(const PrecisionContext& ctx) const {
  ctx.validate();
  PrecisionScope scope(ctx);
  return sawtooth_integral(s_, sawtooth_poly(s_, order_), ctx);
}

Real FractionalPartIntegrand::integral_to(std::int64_t T, const PrecisionContext& ctx) const {
  ctx.validate();
  if (T < 1) fail(ErrorKind::InvalidArgument, "truncation point must be at least 1");
  PrecisionScope outer(ctx);
  Real value;
  {
    const unsigned extra = 10 + static_cast<unsigned>(std::ceil(3 * std::log10(static_cast<double>(T)))) +
                           cancellation_digits(s_, order_);
    PrecisionScope scope(ctx.work_digits + extra);
    Real magnitude;
    const Real s_in = s_;
    value = sawtooth_head(s_in, sawtooth_poly(s_in, order_), T, magnitude);
  }
  return rounded(value);
}

Real FractionalPartIntegrand::loose_tail_bound(std::int64_t T) const {
  const Real t(static_cast<long>(T));
  const Real growth = std::max(Real(1), Real(s_ * log(t) + 1));
  return growth * pow(t, -s_) / (2 * s_);
}

Approx zeta_via_stieltjes_integral(const Real& s, const PrecisionContext& ctx) {
  ctx.validate();
  PrecisionScope scope(ctx);
  if (s == 1) fail(ErrorKind::PoleAtOne, "pole at s=1");
  if (!(s > -1)) fail(ErrorKind::OutOfDomain, "requires s > -1");
  if (s == 0) return Approx(Real(-0.5), Real(0));
  Approx result;
  {
    const PrecisionContext inner = guarded(ctx, s, 0);
    PrecisionScope guard(inner);
    const Real s_in = s;
    const Approx z0 = sawtooth_integral(s_in, {Real(1)}, inner);
    result = Approx(1 / (s_in - 1) + Real(0.5), inner.epsilon()) - s_in * z0;
  }
  return settle(result, ctx);
}

Approx digamma_via_integral(const Real& x, const PrecisionContext& ctx) {
  ctx.validate();
  PrecisionScope scope(ctx);
  if (!(x > 0)) fail(ErrorKind::OutOfDomain, "digamma requires x > 0");
  const Approx g0 = stieltjes_gamma(0, ctx);
  Approx kernel;
  {
    const PrecisionContext inner = guarded(ctx, x, 0);
    PrecisionScope guard(inner);
    kernel = psi_kernel(Real(x), inner);
  }
  return settle(kernel, ctx) - g0;
}

Approx log_kernel_integral(const Real& s, int j, const PrecisionContext& ctx) {
  ctx.validate();
  require_open_unit(s, "log kernel integral");
  if (j < 1 || j > 2) fail(ErrorKind::InvalidArgument, "log power must be 1 or 2");
  PrecisionScope scope(ctx);
  Approx result;
  {
    const PrecisionContext inner = guarded(ctx, s, j);
    PrecisionScope guard(inner);
    result = log_kernel_unchecked(Real(s), j, inner);
  }
  return settle(result, ctx);
}

Approx F_direct(const Real& s, const PrecisionContext& ctx) {
  ctx.validate();
  require_open_unit(s, "F");
  PrecisionScope scope(ctx);
  const Approx g0 = stieltjes_gamma(0, ctx);
  Approx result;
  {
    const PrecisionContext inner = guarded(ctx, s, 0);
    PrecisionScope guard(inner);
    const Real s_in = s;
    const Approx z0 = sawtooth_integral(s_in, {Real(1)}, inner);
    const Approx kernel = psi_kernel(1 - s_in, inner);
    result = Approx(Real(0.5) + 1 / (s_in - 1), inner.epsilon()) - s_in * z0 - kernel;
  }
  return settle(result, ctx) + g0;
}

Approx F_prime_integral(const Real& s, const PrecisionContext& ctx) {
  ctx.validate();
  require_open_unit(s, "F'");
  PrecisionScope scope(ctx);
  Approx result;
  {
    const PrecisionContext inner = guarded(ctx, s, 1);
    PrecisionScope guard(inner);
    const Real s_in = s;
    const Real u = s_in - 1;
    const Approx z1 = sawtooth_integral(s_in, sawtooth_poly(s_in, 1), inner);
    const Approx k1 = log_kernel_unchecked(s_in, 1, inner);
    result = z1 - Approx(1 / (u * u), inner.epsilon() / (u * u)) - k1;
  }
  return settle(result, ctx);
}

SecondDerivativeParts F_second_parts(const Real& s, const PrecisionContext& ctx) {
  ctx.validate();
  require_open_unit(s, "F''");
  PrecisionScope scope(ctx);
  Approx J, P;
  {
    const PrecisionContext inner = guarded(ctx, s, 2);
    PrecisionScope guard(inner);
    const Real s_in = s;
    const Real u = s_in - 1;
    J = sawtooth_integral(s_in, sawtooth_poly(s_in, 2), inner);
    const Real pole = 2 / (u * u * u);
    P = Approx(pole, abs(pole) * inner.epsilon()) + log_kernel_unchecked(s_in, 2, inner);
  }
  J = settle(J, ctx);
  P = settle(P, ctx);
  return {J, P, J + P};
}

Approx F_second_integral(const Real& s, const PrecisionContext& ctx) { return F_second_parts(s, ctx).total; }

std::pair<Approx, Approx> lemma_fsup_identity_check(const std::function<Real(const Real&)>& f,
                                                    const std::function<Real(const Real&)>& f_prime,
                                                    const std::function<Real(const Real&)>& f_second,
                                                    const PrecisionContext& ctx) {
  ctx.validate();
  PrecisionScope scope(ctx);
  const Real half(0.5);
  const Approx lhs = adaptive_quadrature([&](const Real& u) { return (u - half) * f(u); }, Real(0), Real(1), ctx);
  const Approx kernel = adaptive_quadrature(
      [&](const Real& u) {
        const Real c = u - half;
        return c * c * c / 6 * f_second(u);
      },
      Real(0), Real(1), ctx);
  const Real boundary = (f(Real(1)) - f(Real(0))) / 8 - (f_prime(Real(1)) + f_prime(Real(0))) / 48;
  const Approx rhs = Approx(boundary, abs(boundary) * ctx.epsilon() * 4) + kernel;
  return {lhs, rhs};
}

}  // namespace zetapsi
