#ifndef ZETAPSI_REPRESENTATIONS_HPP
#define ZETAPSI_REPRESENTATIONS_HPP

// Integral representations of zeta and psi, and of F = zeta(s) - psi(1-s)
// with its first two derivatives. These share no code with special_fn beyond
// gamma_0 and serve as the second evaluation path.

#include "zetapsi/core.hpp"

#include <cstdint>
#include <functional>
#include <utility>

namespace zetapsi {

/// The sawtooth integrand ({t} - 1/2) q_k(s, log t) / t^(s+1) on [1, inf) that
/// appears in zeta (k = 0) and its s-derivatives up to sign (k = 1, 2):
///   q_0 = 1,  q_1 = s log t - 1,  q_2 = (2 - s log t) log t.
class FractionalPartIntegrand {
 public:
  /// Requires 0 < s < 1 and order in {0, 1, 2}.
  static FractionalPartIntegrand checked(const Real& s, int derivative_order);

  const Real& s() const { return s_; }
  int derivative_order() const { return order_; }

  Real operator()(const Real& t) const;

  /// Integral over [1, inf): unit intervals in closed form, then the periodic
  /// Bernoulli expansion past the cut.
  Approx integral(const PrecisionContext& ctx) const;

  /// Integral over [1, T] in closed form.
  Real integral_to(std::int64_t T, const PrecisionContext& ctx) const;

  /// Crude bound 1/2 max(1, s log T + 1) T^-s / s on the remainder past T.
  Real loose_tail_bound(std::int64_t T) const;

 private:
  FractionalPartIntegrand(Real s, int order) : s_(std::move(s)), order_(order) {}
  Real s_;
  int order_;
};

/// zeta(s) = 1/(s-1) + 1/2 - s int_1^inf ({t} - 1/2) t^(-s-1) dt, s > -1, s != 1.
Approx zeta_via_stieltjes_integral(const Real& s, const PrecisionContext& ctx);

/// psi(x) = -gamma_0 + int_0^1 (1 - t^(x-1)) / (1 - t) dt, x > 0.
Approx digamma_via_integral(const Real& x, const PrecisionContext& ctx);

/// int_0^1 t^-s log^j(t) / (1 - t) dt for 0 < s < 1, j in {1, 2}.
Approx log_kernel_integral(const Real& s, int j, const PrecisionContext& ctx);

/// F(s) = 1/2 - s int_1^inf ... + 1/(s-1) - int_0^1 (1 - t^-s)/(1 - t) dt + gamma_0.
Approx F_direct(const Real& s, const PrecisionContext& ctx);

/// F'(s) = int_1^inf ({t}-1/2)(s log t - 1)/t^(s+1) dt - 1/(s-1)^2
///         - int_0^1 t^-s log t / (1 - t) dt.
Approx F_prime_integral(const Real& s, const PrecisionContext& ctx);

/// F''(s) = J(s) + P(s) with
///   J(s) = int_1^inf ({t}-1/2)(2 - s log t)(log t)/t^(s+1) dt,
///   P(s) = 2/(s-1)^3 + int_0^1 t^-s log^2 t / (1 - t) dt.
struct SecondDerivativeParts {
  Approx J;
  Approx P;
  Approx total;
};
SecondDerivativeParts F_second_parts(const Real& s, const PrecisionContext& ctx);
Approx F_second_integral(const Real& s, const PrecisionContext& ctx);

/// Both sides of
///   int_0^1 (u - 1/2) f(u) du
///     = (f(1) - f(0))/8 - (f'(1) + f'(0))/48 + int_0^1 (u - 1/2)^3/6 f''(u) du.
std::pair<Approx, Approx> lemma_fsup_identity_check(const std::function<Real(const Real&)>& f,
                                                    const std::function<Real(const Real&)>& f_prime,
                                                    const std::function<Real(const Real&)>& f_second,
                                                    const PrecisionContext& ctx);

}  // namespace zetapsi

#endif  // ZETAPSI_REPRESENTATIONS_HPP
