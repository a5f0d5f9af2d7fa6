#ifndef ZETAPSI_CERTIFICATE_HPP
#define ZETAPSI_CERTIFICATE_HPP

#include "zetapsi/core.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace zetapsi {

/// h_n(t) = (2 - s log(t+n)) log(t+n) / (t+n)^(s+1) and its first two
/// t-derivatives, together with g(x) = h_n(x - n) and g1(x) = h_n'(x - n).
class HFamily {
 public:
  HFamily(Real s, std::int64_t n);

  Real h(const Real& t) const;
  Real h_prime(const Real& t) const;
  Real h_second(const Real& t) const;

  static Real g(const Real& s, const Real& x);
  static Real g1(const Real& s, const Real& x);
  /// (6 log^2(n+1) + 22 log(n+1) + 12) / n^3, an s-uniform bound on sup |h_n''|.
  static Real majorant(std::int64_t n);

  const Real& s() const { return s_; }
  std::int64_t n() const { return n_; }

 private:
  Real s_;
  std::int64_t n_;
};

enum class Op { Less, LessEq, Equal, Tends, Greater, GreaterEq };

std::string to_string(Op op);

/// One checked claim. `tol` widens the comparison beyond the error budget and
/// is used where the reference is a rounded constant.
struct BoundEntry {
  std::string name;
  Approx computed;
  Op op = Op::Equal;
  Real reference;
  std::string citation;
  Real tol{0};
  bool pass = false;

  /// Strict comparisons need a margin larger than the error budget; equality
  /// and limits need |value - reference| <= err + tol.
  static BoundEntry make(std::string name, Approx computed, Op op, Real reference, std::string citation,
                         Real tol = Real(0));
};

struct CertificateReport {
  std::vector<BoundEntry> entries;
  bool overall_pass = true;
  PrecisionContext context;
  std::string timestamp;

  void add(BoundEntry entry);
  void merge(const CertificateReport& other);
  const BoundEntry* find(const std::string& name) const;
};

/// Creates an empty report stamped with the current UTC time.
CertificateReport new_report(const PrecisionContext& ctx);

/// JSON with fields entries[{name, value, err, op, reference, citation, pass}],
/// overall_pass, precision, timestamp. Numbers carry 15 significant digits.
std::string to_json(const CertificateReport& report);

/// P(s) = sum_{n>=2} 2/(n-s)^3 for 0 <= s <= 1, Euler-Maclaurin tail.
Approx P_eval(const Real& s, const PrecisionContext& ctx);

/// P_eval(s) against 2/(s-1)^3 + int_0^1 t^-s log^2 t / (1-t) dt.
BoundEntry P_equivalence_check(const Real& s, const PrecisionContext& ctx);

/// sum_{n<=N} (h_n(1) - h_n(0)) summed term by term; tends to 0.
Approx I1_partial_sum(const Real& s, std::int64_t N, const PrecisionContext& ctx);
/// Entry passes when |I1_partial_sum(s, N)| < 1e-6.
BoundEntry I1_check(const Real& s, std::int64_t N, const PrecisionContext& ctx);

/// sum_n (h_n'(1) + h_n'(0)) in closed form for 0 <= s <= 1:
///   4 zeta(s+2) - 2 + (8s+4) zeta'(s+2) + 2 s(s+1) zeta''(s+2).
/// The zeta'' coefficient is 2 s(s+1), not s(s+1).
Approx I2_eval(const Real& s, const PrecisionContext& ctx);
/// The same sum as g1(1) + 2 sum_{n>=2} g1(n).
Approx I2_direct(const Real& s, const PrecisionContext& ctx);
/// 4 zeta(2) - 2 + 4 zeta'(3) + 2 zeta''(2) ~ 7.765791. This is the termwise
/// envelope of the expression with s(s+1) zeta''; that it also dominates
/// I2_eval on [0, 1] is checked on the grid rather than assumed.
Approx I2_envelope(const PrecisionContext& ctx);

struct SigmaEstimate {
  Approx partial;   // sum_{n<=N} (6 log^2(n+1) + 22 log(n+1) + 12) / n^3
  Real tail_bound;  // (3 log^2 N + (14 + 6 log 2) log N + 13 + 14 log 2 + 3 log^2 2) / N^2
  Approx upper;     // partial + tail_bound
};
SigmaEstimate sigma_eval(std::int64_t N, const PrecisionContext& ctx);

/// sigma_eval(N).upper / 192 < 0.211964 (+1e-6).
BoundEntry I3_bound(const PrecisionContext& ctx, std::int64_t N = 200);

/// J(s) by quadrature of (t - 1/2) h_n(t) over [0, 1] for each n below a cut,
/// and the periodic Bernoulli expansion beyond.
Approx J_direct(const Real& s, const PrecisionContext& ctx);

struct BoundaryLimits {
  Approx A0;             // pi^2/6 - log(2 pi)/2
  Approx A1;             // pi^2/6 - gamma_1
  Approx extrapolated0;  // F'(0+)
  Approx extrapolated1;  // F'(1-)
};
/// Closed forms plus Richardson extrapolation (order 3) of F'(eps) and
/// F'(1 - eps) over eps = 2^-k, k = 4..20.
BoundaryLimits boundary_limits(const PrecisionContext& ctx);

struct ChainOptions {
  std::int64_t sigma_N = 200;
  std::int64_t i1_N = 1000000;
  /// Grid for the pointwise checks (|I2|, P bounds, J, F'' > 0).
  GridSpec grid{Real(0), Real(1), 1000, Real("1e-6")};
  /// Grid checks and the long I1 sums need only a few digits; they run in
  /// this context.
  PrecisionContext grid_ctx{30, 1e-15};
};

/// The full ledger for convexity: I1, I2, I3, the final inequality, the P
/// bounds and identity, pointwise J and F'' on the grid, and the boundary
/// limits of F'.
CertificateReport convexity_chain(const PrecisionContext& ctx, const ChainOptions& options = {});

}  // namespace zetapsi

#endif  // ZETAPSI_CERTIFICATE_HPP
