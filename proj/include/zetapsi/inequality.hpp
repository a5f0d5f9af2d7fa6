#ifndef ZETAPSI_INEQUALITY_HPP
#define ZETAPSI_INEQUALITY_HPP

#include "zetapsi/certificate.hpp"
#include "zetapsi/core.hpp"

#include <utility>
#include <vector>

namespace zetapsi {

/// The line b's + b with b' = gamma_0 + 1/2 and b = gamma_0 - 1/2.
struct LinearBound {
  Approx slope;
  Approx intercept;

  static LinearBound from_gamma0(const Approx& gamma0);
  Approx operator()(const Real& s) const;
};

LinearBound linear_bound(const PrecisionContext& ctx);

/// Composed evaluates zeta and digamma; Integral uses the integral
/// representations of F, F' and F''.
enum class Path { Composed, Integral };

/// F(s) = zeta(s) - psi(1 - s) on (0, 1).
Approx F(const Real& s, const PrecisionContext& ctx, Path path = Path::Composed);
Approx F_prime(const Real& s, const PrecisionContext& ctx, Path path = Path::Composed);
Approx F_second(const Real& s, const PrecisionContext& ctx, Path path = Path::Composed);

/// For every abscissa requires s + err < F(s) and F(s) + err < b's + b, where
/// err is the combined budget. Entries carry the worst slack on each side with
/// its location and the number of pointwise violations.
CertificateReport verify_bounds(const GridSpec& grid, const PrecisionContext& ctx);

/// Throws ViolationFound naming the first failed entry.
void require_pass(const CertificateReport& report);

struct MinimumReport {
  Real s0;
  Approx G_at_s0;
  std::pair<Real, Real> bracket;
  /// Sign changes of G' = F' - 1 seen on the scan grid.
  int sign_changes = 0;
};

/// Minimum of G(s) = F(s) - s located as the root of G' on a 101-point scan.
MinimumReport find_minimum(const PrecisionContext& ctx);

/// pi cot(pi s) against psi(1 - s) - psi(s), to 1e-12.
BoundEntry reflection_equivalence(const Real& s, const PrecisionContext& ctx);

/// pi cot(pi s) + s < zeta(s) - psi(s) < pi cot(pi s) + b's + b, evaluated
/// as written.
CertificateReport conjecture_original_form(const GridSpec& grid, const PrecisionContext& ctx);

struct SharpnessGaps {
  std::vector<Real> eps;    // 10^-k, k = 2..6
  std::vector<Approx> near_one;   // (b'(1 - eps) + b) - F(1 - eps)
  std::vector<Approx> near_zero;  // (b' eps + b) - F(eps)
};
SharpnessGaps sharpness_gaps(const PrecisionContext& ctx);

/// Passes when both gap sequences are positive and strictly decreasing and the
/// gap at 1 - 10^-6 is below 1e-5.
BoundEntry sharpness_check(const PrecisionContext& ctx);

struct EndpointLimits {
  Approx at0;  // F(0+), extrapolated
  Approx at1;  // F(1-), extrapolated
  Approx b;    // gamma_0 - 1/2
  Approx two_gamma0;
};
/// Richardson extrapolation (ratio 10, order 3) of F(eps) and F(1 - eps) over
/// eps = 10^-k, k = 2..6.
EndpointLimits endpoint_limits(const PrecisionContext& ctx);

/// verify_bounds, the original form, the minimum, reflection at a few points,
/// sharpness and the endpoint limits in one report.
CertificateReport inequality_report(const GridSpec& grid, const PrecisionContext& ctx);

}  // namespace zetapsi

#endif  // ZETAPSI_INEQUALITY_HPP
