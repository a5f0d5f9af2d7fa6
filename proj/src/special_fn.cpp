#include "zetapsi/special_fn.hpp"

#include "zetapsi/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace zetapsi {

ZetaDomainPoint ZetaDomainPoint::checked(const Real& s) {
  if (s == 1) fail(ErrorKind::PoleAtOne, "pole at s=1");
  if (!(s > -1)) fail(ErrorKind::OutOfDomain, "zeta requires s > -1");
  return ZetaDomainPoint(s);
}

namespace {

using CacheKey = std::tuple<int, unsigned, double>;

CacheKey key_of(int k, const PrecisionContext& ctx) { return {k, ctx.work_digits, ctx.target_tol}; }

// Returns zeta^(j)(s) for j = 0..kmax through eta = (1 - 2^(1-s)) zeta.
std::vector<Approx> zeta_via_eta(const Real& s, int kmax, const PrecisionContext& ctx) {
  const double dist = std::fabs(s.convert_to<double>() - 1.0);
  unsigned extra = 6;
  if (dist < 1.0) extra += static_cast<unsigned>(std::ceil((kmax + 1) * std::log10(1.0 / dist)));
  PrecisionContext inner = ctx.with_digits(ctx.work_digits + extra);

  std::vector<Approx> out;
  {
    PrecisionScope scope(inner);
    const Real l2 = ln2();
    const Real two_pow = pow(Real(2), 1 - s);
    // D(s) = 1 - 2^(1-s) = -expm1((1-s) log 2); D^(j) = -(-log 2)^j 2^(1-s) for j >= 1
    const Real d0 = -boost::multiprecision::expm1((1 - s) * l2);
    std::vector<Real> dj(static_cast<std::size_t>(kmax) + 1);
    dj[0] = d0;
    for (int j = 1; j <= kmax; ++j) dj[static_cast<std::size_t>(j)] = -pow(-l2, j) * two_pow;

    const double scale = std::min(1.0, std::pow(std::fabs(d0.convert_to<double>()), kmax + 1));
    inner.target_tol = ctx.target_tol * scale / 4;

    std::vector<Real> n_pow;  // n^-s
    std::vector<Real> n_log;  // log n
    auto fill = [&](std::int64_t n) {
      while (static_cast<std::int64_t>(n_pow.size()) < n) {
        const Real m = Real(static_cast<long>(n_pow.size()) + 1);
        n_pow.push_back(pow(m, -s));
        n_log.push_back(log(m));
      }
    };

    const Real eps = inner.epsilon();
    std::vector<Approx> zeta_j;
    long binom_row[4][4] = {{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};
    for (int k = 0; k <= kmax; ++k) {
      const Approx eta_k = accelerated_alternating_sum(
          [&](std::int64_t n) {
            fill(n);
            const auto i = static_cast<std::size_t>(n - 1);
            return k == 0 ? n_pow[i] : pow(-n_log[i], k) * n_pow[i];
          },
          inner);
      Approx numerator = eta_k;
      for (int j = 0; j < k; ++j) {
        numerator = numerator - Real(binom_row[k][j]) * dj[static_cast<std::size_t>(k - j)] * zeta_j[static_cast<std::size_t>(j)];
      }
      zeta_j.push_back(numerator / Approx(d0, abs(d0) * eps));
    }
    out = std::move(zeta_j);
  }
  // Back at the caller's precision.
  for (auto& z : out) z = settle(z, ctx);
  return out;
}

Approx zeta_via_dirichlet(const Real& s, int k, const PrecisionContext& ctx) {
  std::vector<Real> poly(static_cast<std::size_t>(k) + 1, Real(0));
  poly.back() = (k % 2 == 0) ? 1 : -1;
  return sum_power_log_series(PowerLogTerm(s, std::move(poly)), ctx);
}

Approx zeta_branch(const Real& s, int k, const PrecisionContext& ctx) {
  if (s > 1) return zeta_via_dirichlet(s, k, ctx);
  return zeta_via_eta(s, k, ctx)[static_cast<std::size_t>(k)];
}

Real laurent_value(const Real& s, int K, const StieltjesConstants& c) {
  const Real u = s - 1;
  Real v = 1 / u + c.gamma0.value();
  if (K >= 1) v -= c.gamma1.value() * u;
  return v;
}

// Remainder constants for the truncated Laurent series (order 0) and its
// derivative (order 1), fitted at the probe points s = 1 +- 1/4.
Real laurent_constant(int K, int derivative, const PrecisionContext& ctx) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, unsigned, double>, Real> cache;
  const auto key = std::make_tuple(K, derivative, ctx.work_digits, ctx.target_tol);
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  const StieltjesConstants c = stieltjes_constants(ctx);
  Real worst = 0;
  for (const char* probe : {"0.75", "1.25"}) {
    const Real p(probe);
    const Real u = p - 1;
    Real gap;
    if (derivative == 0) {
      gap = abs(zeta_branch(p, 0, ctx).value() - laurent_value(p, K, c));
      worst = std::max(worst, Real(gap / pow(abs(u), K + 1)));
    } else {
      gap = abs(zeta_branch(p, 1, ctx).value() - (-1 / (u * u) - c.gamma1.value()));
      worst = std::max(worst, Real(gap / abs(u)));
    }
  }
  const Real constant = 2 * worst;
  std::lock_guard<std::mutex> lock(mutex);
  cache.emplace(key, constant);
  return constant;
}

bool laurent_preferred(const Real& s, int k, const PrecisionContext& ctx) {
  if (k > 1) return false;
  const Real u = abs(s - 1);
  if (u >= kLaurentBand) return false;
  // Cheap screen: the remainder constant is never below |gamma_2|/2 ~ 5e-3.
  const Real power = k == 0 ? u * u : u;
  if (power * Real(1e-3) > ctx.tolerance()) return false;
  return laurent_constant(1, k, ctx) * power <= ctx.tolerance();
}

}  // namespace

Approx zeta(const Real& s, const PrecisionContext& ctx) {
  ctx.validate();
  PrecisionScope scope(ctx);
  const ZetaDomainPoint point = ZetaDomainPoint::checked(s);
  if (laurent_preferred(point.s(), 0, ctx)) {
    return zeta_laurent(point.s(), 1, stieltjes_constants(ctx), ctx);
  }
  return zeta_branch(point.s(), 0, ctx);
}

Approx zeta_deriv(const Real& s, int k, const PrecisionContext& ctx) {
  ctx.validate();
  if (k < 1 || k > 3) fail(ErrorKind::InvalidArgument, "zeta derivative order must be 1, 2 or 3");
  PrecisionScope scope(ctx);
  const ZetaDomainPoint point = ZetaDomainPoint::checked(s);
  if (laurent_preferred(point.s(), k, ctx)) {
    const StieltjesConstants c = stieltjes_constants(ctx);
    const Real u = point.s() - 1;
    const Real remainder = laurent_constant(1, 1, ctx) * abs(u);
    return Approx(-1 / (u * u) - c.gamma1.value(), c.gamma1.err() + remainder);
  }
  return zeta_branch(point.s(), k, ctx);
}

Approx zeta_laurent(const Real& s, int K, const StieltjesConstants& consts, const PrecisionContext& ctx) {
  ctx.validate();
  PrecisionScope scope(ctx);
  if (K < 0) fail(ErrorKind::InvalidArgument, "Laurent truncation order must be non-negative");
  if (K > 1) fail(ErrorKind::TooManyTerms, "only gamma_0 and gamma_1 are available");
  if (s == 1) fail(ErrorKind::PoleAtOne, "pole at s=1");
  const Real u = s - 1;
  if (abs(u) >= Real(0.5)) fail(ErrorKind::TooFarFromPole, "Laurent expansion needs |s-1| < 1/2");
  Real err = consts.gamma0.err();
  if (K >= 1) err += consts.gamma1.err() * abs(u);
  err += laurent_constant(K, 0, ctx) * pow(abs(u), K + 1);
  return Approx(laurent_value(s, K, consts), err);
}

Approx digamma(const Real& x, const PrecisionContext& ctx) {
  ctx.validate();
  PrecisionScope scope(ctx);
  if (!(x > 0)) fail(ErrorKind::OutOfDomain, "digamma requires x > 0");
  constexpr int kTerms = 12;
  const Real tol = ctx.tolerance() / 4;

  // psi(y) ~ log y - 1/(2y) - sum_k B_2k / (2k y^2k); the first omitted term bounds the error.
  auto omitted = [](const Real& y) { return abs(bernoulli(2 * kTerms + 2) / ((2 * kTerms + 2) * pow(y, 2 * kTerms + 2))); };
  Real lift = 20;
  while (omitted(lift) > tol) lift *= 2;

  Real y = x;
  Real shift = 0;
  long steps = 0;
  while (y < lift) {
    shift += 1 / y;
    y += 1;
    ++steps;
  }
  const Real inv2 = 1 / (y * y);
  Real series = 0;
  Real power = inv2;
  for (int k = 1; k <= kTerms; ++k) {
    series += bernoulli(2 * k) / (2 * k) * power;
    power *= inv2;
  }
  const Real value = log(y) - 1 / (2 * y) - series - shift;
  const Real rounding = (abs(value) + abs(shift)) * ctx.epsilon() * (steps + kTerms + 4);
  return Approx(value, omitted(y) + rounding);
}

Approx polygamma(int m, const Real& x, const PrecisionContext& ctx) {
  ctx.validate();
  if (m < 1 || m > 2) fail(ErrorKind::InvalidArgument, "polygamma order must be 1 or 2");
  PrecisionScope scope(ctx);
  if (!(x > 0)) fail(ErrorKind::OutOfDomain, "polygamma requires x > 0");
  const Approx sum = sum_power_log_series(PowerLogTerm(Real(m + 1), {Real(1)}, x), ctx, 0);
  const Real factor = m == 1 ? Real(1) : Real(-2);
  return factor * sum;
}

Approx psi_series(const Real& z, const PrecisionContext& ctx) {
  ctx.validate();
  PrecisionScope scope(ctx);
  if (!(abs(z) < 1)) fail(ErrorKind::OutOfDisk, "psi series requires |z| < 1");
  const Approx g0 = stieltjes_gamma(0, ctx);
  Approx total = -g0;
  if (z == 0) return total;
  const Real az = abs(z);
  const Real tol = ctx.tolerance() / 4;
  Real zpow = z;  // z^(j-1)
  for (int j = 2;; ++j) {
    const Approx zj = zeta(Real(j), ctx);
    const Real sign = (j % 2 == 0) ? 1 : -1;
    total = total + (sign * zpow) * zj;
    zpow *= z;
    // sum_{i>j} zeta(i) |z|^(i-1) <= zeta(j+1) |z|^j / (1 - |z|)
    const Real remainder = zj.value() * abs(zpow) / (1 - az);
    if (remainder < tol) return total.widen(remainder);
    if (j > ctx.max_terms) fail(ErrorKind::TailNotConverged, "psi series did not converge");
  }
}

Approx stieltjes_gamma(int k, const PrecisionContext& ctx) {
  ctx.validate();
  if (k < 0 || k > 1) fail(ErrorKind::UnsupportedIndex, "only gamma_0 and gamma_1 are supported");
  static std::mutex mutex;
  static std::map<CacheKey, Approx> cache;
  const CacheKey key = key_of(k, ctx);
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }

  PrecisionScope scope(ctx);
  std::vector<Real> poly(static_cast<std::size_t>(k) + 1, Real(0));
  poly.back() = 1;
  const PowerLogTerm term(Real(1), poly);
  SmoothFunction f = SmoothFunction::from(term);
  // Regularised tail: the divergent log^(k+1)(N)/(k+1) is the subtracted counterterm.
  f.tail_integral = [k](const Real& x) { return -pow(log(x), k + 1) / (k + 1); };

  const Real tol = ctx.tolerance() / 4;
  std::int64_t N = 16;
  Approx tail = euler_maclaurin_tail(f, N, kMaxBernoulli / 2 - 1);
  while (tail.err() > tol) {
    N *= 2;
    tail = euler_maclaurin_tail(f, N, kMaxBernoulli / 2 - 1);
  }
  Real head = 0;
  for (std::int64_t n = 1; n <= N; ++n) head += term(Real(n));
  const Approx value = Approx(head, abs(head) * ctx.epsilon() * N) + tail;

  std::lock_guard<std::mutex> lock(mutex);
  cache.emplace(key, value);
  return value;
}

StieltjesConstants stieltjes_constants(const PrecisionContext& ctx) {
  return {stieltjes_gamma(0, ctx), stieltjes_gamma(1, ctx)};
}

}  // namespace zetapsi
