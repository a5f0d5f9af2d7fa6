#ifndef ZETAPSI_NUMERICS_HPP
#define ZETAPSI_NUMERICS_HPP

#include "zetapsi/core.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace zetapsi {

using RealFn = std::function<Real(const Real&)>;

/// Bernoulli number B_n (B_1 = -1/2) for 0 <= n <= kMaxBernoulli, from an exact
/// rational table built once on first use.
inline constexpr int kMaxBernoulli = 30;
Real bernoulli(int n);

/// f(x) = (x + shift)^(-b) * p(log(x + shift)) with p a polynomial given by its
/// coefficients in ascending order. Every derivative has the same form, which
/// is what the Euler-Maclaurin and sawtooth tails below consume.
class PowerLogTerm {
 public:
  PowerLogTerm(Real exponent, std::vector<Real> poly, Real shift = Real(0));

  Real operator()(const Real& x) const { return derivative(x, 0); }
  Real derivative(const Real& x, int k) const;
  /// Integral of f over [x, infinity); requires exponent > 1.
  Real tail_integral(const Real& x) const;

  const Real& exponent() const { return exponent_; }
  const Real& shift() const { return shift_; }

 private:
  Real exponent_;
  Real shift_;
  // Polynomial of the k-th derivative; its power is exponent_ + k.
  std::vector<std::vector<Real>> derived_;
};

/// A smooth function handed to euler_maclaurin_tail. `derivative` may be empty,
/// in which case no Bernoulli corrections are available.
struct SmoothFunction {
  RealFn value;
  RealFn tail_integral;
  std::function<Real(const Real&, int)> derivative;
  int max_derivative = 0;

  static SmoothFunction from(const PowerLogTerm& term);
};

/// Sum of term(n) for n >= first, stopping at the first N whose tail bound drops
/// below ctx.target_tol.
Approx sum_with_tail(const std::function<Real(std::int64_t)>& term,
                     const std::function<Real(std::int64_t)>& tail_bound, const PrecisionContext& ctx,
                     std::int64_t first = 1);

/// Sum of (-1)^(n-1) coeff(n), n >= 1, by the Cohen-Rodriguez Villegas-Zagier
/// acceleration. The error budget is the last change between successive term
/// counts.
Approx accelerated_alternating_sum(const std::function<Real(std::int64_t)>& coeff,
                                   const PrecisionContext& ctx);

/// Integrand behaviour at an endpoint: f ~ (t - endpoint)^exponent. A negative
/// exponent triggers the substitution t = endpoint +- (b - a) u^k.
struct QuadratureOptions {
  double left_exponent = 0.0;
  double right_exponent = 0.0;
};

/// Adaptive tanh-sinh quadrature with bisection down to ctx.quad_max_depth.
Approx adaptive_quadrature(const RealFn& f, const Real& a, const Real& b, const PrecisionContext& ctx,
                           QuadratureOptions options = {});

/// Sum of f(n) for n > N:
///   int_N^inf f - f(N)/2 - sum_{j<=order} B_2j/(2j)! f^(2j-1)(N).
/// The error budget is the first omitted correction.
Approx euler_maclaurin_tail(const SmoothFunction& f, std::int64_t N, int order);

/// int_N^inf ({t} - 1/2) phi(t) dt from the periodic Bernoulli expansion
///   -sum_{k<=order} B_2k/(2k)! phi^(2k-2)(N).
/// `phi_derivative(t, k)` returns the k-th derivative of phi.
Approx sawtooth_tail(const std::function<Real(const Real&, int)>& phi_derivative, std::int64_t N,
                     int order);

/// Sum of term(n) for n >= first with the partial sum length chosen so that the
/// Euler-Maclaurin tail meets ctx.target_tol.
Approx sum_power_log_series(const PowerLogTerm& term, const PrecisionContext& ctx,
                            std::int64_t first = 1);

/// Brent's method on a sign-changing bracket. The result always lies in [a, b].
Real brent_root(const RealFn& f, const Real& a, const Real& b, const Real& tol);

/// Richardson extrapolation to h -> 0 of samples taken at h_0, h_0/ratio,
/// h_0/ratio^2, ... assuming an error expansion in integer powers of h.
/// Returns the highest-order estimate at the finest sample; its error budget is
/// the disagreement with the previous row.
Approx richardson_extrapolate(std::span<const Real> samples, const Real& ratio, int order);

}  // namespace zetapsi

#endif  // ZETAPSI_NUMERICS_HPP
