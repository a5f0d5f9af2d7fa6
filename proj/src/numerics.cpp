#include "zetapsi/numerics.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace zetapsi {

namespace {

using Rational = boost::multiprecision::cpp_rational;

const std::vector<Rational>& bernoulli_table() {
  static const std::vector<Rational> table = [] {
    std::vector<Rational> b(kMaxBernoulli + 1);
    b[0] = 1;
    for (int m = 1; m <= kMaxBernoulli; ++m) {
      Rational acc = 0;
      Rational binom = 1;  // C(m+1, k)
      for (int k = 0; k < m; ++k) {
        acc += binom * b[k];
        binom = binom * (m + 1 - k) / (k + 1);
      }
      b[m] = -acc / (m + 1);
    }
    return b;
  }();
  return table;
}

// Largest derivative order PowerLogTerm precomputes; covers order-14 Euler-Maclaurin
// corrections plus the first omitted one.
constexpr int kMaxDerivative = 32;
constexpr int kMaxBernoulliOrder = kMaxBernoulli / 2 - 1;

Real factorial(int n) {
  Real r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// Bernoulli coefficient B_2k / (2k)!.
Real bernoulli_weight(int k) { return bernoulli(2 * k) / factorial(2 * k); }

}  // namespace

Real bernoulli(int n) {
  if (n < 0 || n > kMaxBernoulli) {
    fail(ErrorKind::OrderUnavailable, "Bernoulli index outside the cached table");
  }
  const Rational& q = bernoulli_table()[static_cast<std::size_t>(n)];
  return Real(boost::multiprecision::numerator(q)) / Real(boost::multiprecision::denominator(q));
}

// ---------------------------------------------------------------------------
// PowerLogTerm

PowerLogTerm::PowerLogTerm(Real exponent, std::vector<Real> poly, Real shift)
    : exponent_(std::move(exponent)), shift_(std::move(shift)) {
  if (poly.empty()) poly.push_back(Real(0));
  derived_.reserve(kMaxDerivative + 1);
  derived_.push_back(std::move(poly));
  // d/dx [y^-b p(L)] = y^-(b+1) (-b p(L) + p'(L)), y = x + shift, L = log y.
  for (int k = 1; k <= kMaxDerivative; ++k) {
    const auto& p = derived_.back();
    const Real b = exponent_ + (k - 1);
    std::vector<Real> q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      q[i] = -b * p[i];
      if (i + 1 < p.size()) q[i] += p[i + 1] * static_cast<long>(i + 1);
    }
    derived_.push_back(std::move(q));
  }
}

Real PowerLogTerm::derivative(const Real& x, int k) const {
  if (k < 0 || k > kMaxDerivative) {
    fail(ErrorKind::OrderUnavailable, "derivative order beyond the precomputed table");
  }
  const Real y = x + shift_;
  const auto& p = derived_[static_cast<std::size_t>(k)];
  Real poly = 0;
  if (p.size() > 1) {
    const Real L = log(y);
    for (std::size_t i = p.size(); i-- > 0;) poly = poly * L + p[i];
  } else {
    poly = p[0];
  }
  return poly * pow(y, -(exponent_ + k));
}

Real PowerLogTerm::tail_integral(const Real& x) const {
  if (!(exponent_ > 1)) {
    fail(ErrorKind::InvalidArgument, "tail integral diverges for exponent <= 1");
  }
  // int_y^inf t^-b L^j dt = y^(1-b) sum_i j!/(j-i)! L^(j-i) / (b-1)^(i+1)
  const Real y = x + shift_;
  const Real L = log(y);
  const Real bm1 = exponent_ - 1;
  const auto& p = derived_.front();
  Real total = 0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j] == 0) continue;
    Real inner = 0;
    Real falling = 1;
    Real bpow = bm1;
    for (std::size_t i = 0; i <= j; ++i) {
      inner += falling * pow(L, static_cast<long>(j - i)) / bpow;
      falling *= static_cast<long>(j - i);
      bpow *= bm1;
    }
    total += p[j] * inner;
  }
  return total * pow(y, 1 - exponent_);
}

SmoothFunction SmoothFunction::from(const PowerLogTerm& term) {
  SmoothFunction f;
  f.value = [term](const Real& x) { return term(x); };
  f.tail_integral = [term](const Real& x) { return term.tail_integral(x); };
  f.derivative = [term](const Real& x, int k) { return term.derivative(x, k); };
  f.max_derivative = kMaxDerivative;
  return f;
}

// ---------------------------------------------------------------------------
// Series

Approx sum_with_tail(const std::function<Real(std::int64_t)>& term,
                     const std::function<Real(std::int64_t)>& tail_bound, const PrecisionContext& ctx,
                     std::int64_t first) {
  ctx.validate();
  PrecisionScope scope(ctx);
  const Real tol = ctx.tolerance();
  Real sum = 0;
  Real magnitude = 0;
  std::int64_t count = 0;
  for (std::int64_t n = first;; ++n) {
    const Real t = term(n);
    sum += t;
    magnitude += abs(t);
    ++count;
    const Real tail = tail_bound(n);
    if (tail < tol) {
      return Approx(sum, abs(tail) + magnitude * ctx.epsilon() * count);
    }
    if (count >= ctx.max_terms) {
      fail(ErrorKind::TailNotConverged, "tail bound still above tolerance after max_terms terms");
    }
  }
}

namespace {

Real cvz_sum(const std::vector<Real>& a, int n) {
  Real d = pow(3 + sqrt(Real(8)), n);
  d = (d + 1 / d) / 2;
  Real b = -1;
  Real c = -d;
  Real s = 0;
  for (int k = 0; k < n; ++k) {
    c = b - c;
    s += c * a[static_cast<std::size_t>(k)];
    b = b * (static_cast<long>(k) + n) * (static_cast<long>(k) - n) / ((Real(k) + Real(0.5)) * (k + 1));
  }
  return s / d;
}

}  // namespace

Approx accelerated_alternating_sum(const std::function<Real(std::int64_t)>& coeff,
                                   const PrecisionContext& ctx) {
  ctx.validate();
  PrecisionScope scope(ctx);
  constexpr int kStep = 8;
  const int n_max = static_cast<int>(std::min<std::int64_t>(ctx.max_terms, 4096));
  const Real tol = ctx.tolerance();

  std::vector<Real> a;
  Real largest = 0;
  auto extend = [&](int n) {
    while (static_cast<int>(a.size()) < n) {
      a.push_back(coeff(static_cast<std::int64_t>(a.size()) + 1));
      largest = std::max(largest, abs(a.back()));
    }
  };

  extend(kStep);
  Real previous = cvz_sum(a, kStep);
  Real last_diff = -1;
  int growing = 0;
  for (int n = 2 * kStep; n <= n_max; n += kStep) {
    extend(n);
    const Real current = cvz_sum(a, n);
    const Real diff = abs(current - previous);
    const Real rounding = largest * ctx.epsilon() * 16;
    if (diff <= tol || diff <= rounding) {
      return Approx(current, diff + rounding);
    }
    if (last_diff >= 0 && diff >= last_diff) {
      if (++growing >= 3) {
        fail(ErrorKind::AccelerationStalled, "successive accelerated estimates stopped contracting");
      }
    } else {
      growing = 0;
    }
    last_diff = diff;
    previous = current;
  }
  fail(ErrorKind::AccelerationStalled, "term budget exhausted before reaching tolerance");
}

// ---------------------------------------------------------------------------
// Quadrature

namespace {

struct Node {
  Real offset;  // distance from the nearer endpoint on [0, 1]
  Real weight;  // dx/dt on [0, 1]
};

constexpr int kMaxLevel = 7;

// Nodes are cached per precision: level 0 holds t = 0, 1, 2, ..., level l > 0
// the odd multiples of 2^-l.
const std::vector<std::vector<Node>>& tanh_sinh_nodes(unsigned digits) {
  static std::mutex mutex;
  static std::map<unsigned, std::vector<std::vector<Node>>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(digits);
  if (it != cache.end()) return it->second;

  const Real p = pi();
  const Real t_max = asinh(log(Real(10)) * (digits + 10) / p);
  auto make = [&](const Real& t) {
    const Real q = exp(-p * sinh(t));
    const Real one_q = 1 + q;
    return Node{q / one_q, p * cosh(t) * q / (one_q * one_q)};
  };
  std::vector<std::vector<Node>> levels(kMaxLevel + 1);
  for (int j = 0; Real(j) <= t_max; ++j) levels[0].push_back(make(Real(j)));
  for (int level = 1; level <= kMaxLevel; ++level) {
    const Real h = pow(Real(2), -level);
    for (long j = 1; h * j <= t_max; j += 2) levels[static_cast<std::size_t>(level)].push_back(make(h * j));
  }
  return cache.emplace(digits, std::move(levels)).first->second;
}

struct PanelResult {
  Real value;
  Real err;
  bool converged;
};

PanelResult tanh_sinh_panel(const RealFn& f, const Real& a, const Real& b, const Real& tol,
                            const PrecisionContext& ctx) {
  using boost::multiprecision::isfinite;
  const auto& levels = tanh_sinh_nodes(ctx.work_digits);
  const Real width = b - a;
  Real sum = 0;
  Real magnitude = 0;
  auto eval = [&](const Real& x) {
    const Real y = f(x);
    if (!isfinite(y)) fail(ErrorKind::NonFinite, "integrand is not finite at a quadrature node");
    return y;
  };
  auto accumulate = [&](const Node& node, bool centre) {
    const Real d = width * node.offset;
    const Real left = a + d;
    Real contribution = 0;
    if (left > a && left < b) contribution += eval(left);
    if (!centre) {
      const Real right = b - d;
      if (right < b && right > a) contribution += eval(right);
    }
    sum += node.weight * contribution;
    magnitude += node.weight * abs(contribution);
  };

  for (std::size_t j = 0; j < levels[0].size(); ++j) accumulate(levels[0][j], j == 0);
  Real h = 1;
  Real previous = width * sum;
  for (int level = 1; level <= kMaxLevel; ++level) {
    for (const auto& node : levels[static_cast<std::size_t>(level)]) accumulate(node, false);
    h /= 2;
    const Real current = width * h * sum;
    const Real diff = abs(current - previous);
    const Real rounding = abs(width) * h * magnitude * ctx.epsilon() * 8;
    if (level >= 3 && (diff <= tol || diff <= rounding)) {
      return {current, diff + rounding, true};
    }
    previous = current;
  }
  return {previous, Real(0), false};
}

struct Adaptive {
  const RealFn& f;
  const PrecisionContext& ctx;
  int panels = 0;

  Approx run(const Real& a, const Real& b, const Real& tol, int depth) {
    if (++panels > 4096) fail(ErrorKind::DepthExceeded, "quadrature panel budget exhausted");
    const PanelResult r = tanh_sinh_panel(f, a, b, tol, ctx);
    if (r.converged) return Approx(r.value, r.err);
    if (depth >= ctx.quad_max_depth) {
      fail(ErrorKind::DepthExceeded, "quadrature did not converge within quad_max_depth bisections");
    }
    const Real mid = (a + b) / 2;
    return run(a, mid, tol / 2, depth + 1) + run(mid, b, tol / 2, depth + 1);
  }
};

int substitution_power(double exponent) {
  if (!(exponent > -1.0)) {
    fail(ErrorKind::InvalidArgument, "endpoint singularity is not integrable");
  }
  return exponent < 0 ? static_cast<int>(std::ceil(1.0 / (1.0 + exponent))) : 1;
}

}  // namespace

Approx adaptive_quadrature(const RealFn& f, const Real& a, const Real& b, const PrecisionContext& ctx,
                           QuadratureOptions options) {
  ctx.validate();
  PrecisionScope scope(ctx);
  if (a == b) return Approx(Real(0), Real(0));
  if (a > b) return -adaptive_quadrature(f, b, a, ctx, {options.right_exponent, options.left_exponent});

  const int kl = substitution_power(options.left_exponent);
  const int kr = substitution_power(options.right_exponent);
  const Real tol = ctx.tolerance();

  if (kl > 1 && kr > 1) {
    const Real mid = (a + b) / 2;
    return adaptive_quadrature(f, a, mid, ctx.with_tolerance(ctx.target_tol / 2), {options.left_exponent, 0}) +
           adaptive_quadrature(f, mid, b, ctx.with_tolerance(ctx.target_tol / 2), {0, options.right_exponent});
  }
  if (kl > 1 || kr > 1) {
    const int k = std::max(kl, kr);
    const bool left = kl > 1;
    const Real width = b - a;
    // t = a + w u^k (left) or t = b - w u^k (right), u in [0, 1]
    RealFn g = [&f, &a, &b, width, k, left](const Real& u) {
      const Real uk1 = pow(u, k - 1);
      const Real d = width * uk1 * u;
      const Real t = left ? a + d : b - d;
      if (t == a || t == b) return Real(0);
      return f(t) * width * k * uk1;
    };
    Adaptive adaptive{g, ctx};
    return adaptive.run(Real(0), Real(1), tol, 0);
  }
  Adaptive adaptive{f, ctx};
  return adaptive.run(a, b, tol, 0);
}

// ---------------------------------------------------------------------------
// Euler-Maclaurin and periodic Bernoulli tails

Approx euler_maclaurin_tail(const SmoothFunction& f, std::int64_t N, int order) {
  if (order < 0 || order > kMaxBernoulliOrder) {
    fail(ErrorKind::OrderUnavailable, "Euler-Maclaurin order outside the Bernoulli table");
  }
  if (!f.value || !f.tail_integral) {
    fail(ErrorKind::OrderUnavailable, "function value or tail integral not supplied");
  }
  if (order > 0 && (!f.derivative || f.max_derivative < 2 * order - 1)) {
    fail(ErrorKind::OrderUnavailable, "derivative table does not reach the requested order");
  }
  const Real x = N;
  Real total = f.tail_integral(x) - f.value(x) / 2;
  Real last = f.value(x) / 2;
  for (int j = 1; j <= order; ++j) {
    last = bernoulli_weight(j) * f.derivative(x, 2 * j - 1);
    total -= last;
  }
  // The first omitted term alone can vanish where a derivative changes sign,
  // so the last included term is kept in the estimate.
  Real err = abs(last);
  if (f.derivative && f.max_derivative >= 2 * order + 1) {
    err += abs(bernoulli_weight(order + 1) * f.derivative(x, 2 * order + 1));
  }
  return Approx(total, err);
}

Approx sawtooth_tail(const std::function<Real(const Real&, int)>& phi_derivative, std::int64_t N,
                     int order) {
  if (order < 1 || order > kMaxBernoulliOrder) {
    fail(ErrorKind::OrderUnavailable, "sawtooth expansion order outside the Bernoulli table");
  }
  const Real x = N;
  Real total = 0;
  for (int k = 1; k <= order; ++k) total -= bernoulli_weight(k) * phi_derivative(x, 2 * k - 2);
  const Real err = abs(bernoulli_weight(order + 1) * phi_derivative(x, 2 * order));
  return Approx(total, err);
}

Approx sum_power_log_series(const PowerLogTerm& term, const PrecisionContext& ctx, std::int64_t first) {
  ctx.validate();
  PrecisionScope scope(ctx);
  const SmoothFunction smooth = SmoothFunction::from(term);
  const Real tol = ctx.tolerance() / 4;
  std::int64_t N = std::max<std::int64_t>(first + 8, 16);
  Approx tail = euler_maclaurin_tail(smooth, N, kMaxBernoulliOrder);
  while (tail.err() > tol) {
    N *= 2;
    if (N > ctx.max_terms) fail(ErrorKind::TailNotConverged, "Euler-Maclaurin tail did not reach tolerance");
    tail = euler_maclaurin_tail(smooth, N, kMaxBernoulliOrder);
  }
  Real sum = 0;
  Real magnitude = 0;
  for (std::int64_t n = first; n <= N; ++n) {
    const Real t = term(Real(n));
    sum += t;
    magnitude += abs(t);
  }
  return Approx(sum, magnitude * ctx.epsilon() * (N - first + 1)) + tail;
}

// ---------------------------------------------------------------------------
// Root finding and extrapolation

Real brent_root(const RealFn& f, const Real& a_in, const Real& b_in, const Real& tol) {
  Real a = a_in, b = b_in;
  Real fa = f(a), fb = f(b);
  if (fa == 0) return a;
  if (fb == 0) return b;
  if ((fa > 0) == (fb > 0)) {
    fail(ErrorKind::NoBracket, "function has the same sign at both bracket endpoints");
  }
  const Real lo = std::min(a_in, b_in);
  const Real hi = std::max(a_in, b_in);
  Real c = a, fc = fa;
  Real d = b - a, e = d;
  for (int iter = 0; iter < 500; ++iter) {
    if ((fb > 0) == (fc > 0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (abs(fc) < abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const Real tol1 = tol / 2;
    const Real m = (c - b) / 2;
    if (abs(m) <= tol1 || fb == 0) break;
    if (abs(e) >= tol1 && abs(fa) > abs(fb)) {
      Real p, q, r;
      const Real s = fb / fa;
      if (a == c) {
        p = 2 * m * s;
        q = 1 - s;
      } else {
        q = fa / fc;
        r = fb / fc;
        p = s * (2 * m * q * (q - r) - (b - a) * (r - 1));
        q = (q - 1) * (r - 1) * (s - 1);
      }
      if (p > 0) q = -q; else p = -p;
      if (2 * p < std::min<Real>(3 * m * q - abs(tol1 * q), abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = m;
        e = m;
      }
    } else {
      d = m;
      e = m;
    }
    a = b;
    fa = fb;
    b += abs(d) > tol1 ? d : (m > 0 ? tol1 : Real(-tol1));
    fb = f(b);
  }
  return std::clamp(b, lo, hi);
}

Approx richardson_extrapolate(std::span<const Real> samples, const Real& ratio, int order) {
  if (order < 1 || samples.size() < static_cast<std::size_t>(order) + 2) {
    fail(ErrorKind::InvalidArgument, "Richardson extrapolation needs order + 2 samples");
  }
  const std::size_t n = samples.size();
  // table[i][m]: order-m estimate ending at sample i
  std::vector<std::vector<Real>> table(n);
  for (std::size_t i = 0; i < n; ++i) {
    table[i].push_back(samples[i]);
    Real factor = 1;
    for (int m = 1; m <= order && static_cast<std::size_t>(m) <= i; ++m) {
      factor *= ratio;
      table[i].push_back((factor * table[i][m - 1] - table[i - 1][m - 1]) / (factor - 1));
    }
  }
  const auto o = static_cast<std::size_t>(order);
  const Real value = table[n - 1][o];
  const Real diff = abs(value - table[n - 2][o]);
  const Real floor = abs(value) * pow(Real(10), -static_cast<int>(Real::default_precision()) / 2);
  if (n >= o + 3) {
    const Real prev = abs(table[n - 2][o] - table[n - 3][o]);
    if (diff > 10 * prev && diff > floor) {
      fail(ErrorKind::ExtrapolationDiverged, "Richardson estimates stopped contracting");
    }
  }
  return Approx(value, diff);
}

}  // namespace zetapsi
