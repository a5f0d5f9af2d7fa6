#ifndef ZETAPSI_SPECIAL_FN_HPP
#define ZETAPSI_SPECIAL_FN_HPP

#include "zetapsi/core.hpp"

namespace zetapsi {

/// A validated argument for zeta: s > -1 and s != 1.
class ZetaDomainPoint {
 public:
  /// Throws PoleAtOne or OutOfDomain.
  static ZetaDomainPoint checked(const Real& s);
  const Real& s() const { return s_; }

 private:
  explicit ZetaDomainPoint(Real s) : s_(std::move(s)) {}
  Real s_;
};

struct StieltjesConstants {
  Approx gamma0;
  Approx gamma1;
};

/// Laurent expansion about s = 1 is used only inside this band, and only when
/// its remainder estimate already meets the tolerance.
inline constexpr double kLaurentBand = 0.05;

/// Riemann zeta for real s > -1, s != 1.
///
/// s > 1 sums the Dirichlet series with an Euler-Maclaurin tail. Otherwise
/// zeta = eta / (1 - 2^(1-s)) with eta from the accelerated alternating series,
/// carried at extra precision near the pole to absorb the cancellation.
Approx zeta(const Real& s, const PrecisionContext& ctx);

/// k-th derivative of zeta, k in {1, 2, 3}. Same routing as zeta(); the eta
/// branch recovers zeta^(k) from eta^(k) by the Leibniz rule.
Approx zeta_deriv(const Real& s, int k, const PrecisionContext& ctx);

/// 1/(s-1) + gamma_0 - gamma_1 (s-1), truncated after K in {0, 1}. The error
/// budget carries C |s-1|^(K+1), where C is fitted against zeta() at
/// s = 1 +- 1/4 (with a safety factor of two).
Approx zeta_laurent(const Real& s, int K, const StieltjesConstants& consts, const PrecisionContext& ctx);

/// Digamma for x > 0: upward recurrence followed by the asymptotic series.
Approx digamma(const Real& x, const PrecisionContext& ctx);

/// psi^(m)(x) for m in {1, 2} as m! (-1)^(m+1) sum_n (x+n)^-(m+1).
Approx polygamma(int m, const Real& x, const PrecisionContext& ctx);

/// psi(1 + z) = -gamma_0 + sum_{j>=2} (-1)^j zeta(j) z^(j-1) for |z| < 1.
Approx psi_series(const Real& z, const PrecisionContext& ctx);

/// Stieltjes constant gamma_k, k in {0, 1}, from the limit
/// sum_{n<=N} log^k(n)/n - log^(k+1)(N)/(k+1) with Euler-Maclaurin corrections.
/// Cached per (k, precision, tolerance).
Approx stieltjes_gamma(int k, const PrecisionContext& ctx);

StieltjesConstants stieltjes_constants(const PrecisionContext& ctx);

}  // namespace zetapsi

#endif  // ZETAPSI_SPECIAL_FN_HPP
