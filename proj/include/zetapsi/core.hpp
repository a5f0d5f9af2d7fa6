#ifndef ZETAPSI_CORE_HPP
#define ZETAPSI_CORE_HPP

#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace zetapsi {

/// Working real type. Precision is taken from the active PrecisionScope.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

enum class ErrorKind {
  InvalidArgument,
  NonFinite,
  TailNotConverged,
  AccelerationStalled,
  DepthExceeded,
  OrderUnavailable,
  NoBracket,
  PoleAtOne,
  OutOfDomain,
  TooFarFromPole,
  TooManyTerms,
  OutOfDisk,
  UnsupportedIndex,
  ExtrapolationDiverged,
  ViolationFound,
};

const char* to_string(ErrorKind kind);

class NumericError : public std::runtime_error {
 public:
  NumericError(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

struct PrecisionContext {
  unsigned work_digits = 50;
  double target_tol = 1e-30;
  std::int64_t max_terms = 10'000'000;
  int quad_max_depth = 40;

  /// Throws InvalidArgument unless every field is strictly positive.
  void validate() const;
  /// Non-empty when work_digits leaves fewer than ten guard digits over target_tol.
  std::optional<std::string> precision_warning() const;
  /// Unit roundoff at work_digits.
  Real epsilon() const;
  Real tolerance() const { return Real(target_tol); }

  PrecisionContext with_tolerance(double tol) const {
    PrecisionContext c = *this;
    c.target_tol = tol;
    return c;
  }
  PrecisionContext with_digits(unsigned digits) const {
    PrecisionContext c = *this;
    c.work_digits = digits;
    return c;
  }
};

/// Installs a working precision for the lifetime of the scope and restores the
/// previous one on exit.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits);
  explicit PrecisionScope(const PrecisionContext& ctx) : PrecisionScope(ctx.work_digits) {}
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

/// Rounds x to the precision currently in effect.
Real rounded(const Real& x);

/// A value with a non-negative error budget (truncation + rounding allowance).
class Approx {
 public:
  Approx() = default;
  Approx(Real value, Real err);
  explicit Approx(Real exact) : Approx(std::move(exact), Real(0)) {}

  const Real& value() const { return value_; }
  const Real& err() const { return err_; }
  double to_double() const { return value_.convert_to<double>(); }

  Approx& widen(const Real& extra);

  friend Approx operator+(const Approx& a, const Approx& b);
  friend Approx operator-(const Approx& a, const Approx& b);
  friend Approx operator-(const Approx& a);
  friend Approx operator*(const Approx& a, const Approx& b);
  friend Approx operator*(const Real& c, const Approx& a);
  friend Approx operator/(const Approx& a, const Approx& b);

 private:
  Real value_{0};
  Real err_{0};
};

/// Absolute difference of two approximations together with their combined budget.
inline bool agree(const Approx& a, const Approx& b, const Real& slack = Real(0)) {
  return abs(a.value() - b.value()) <= a.err() + b.err() + slack;
}

/// Rounds a value carried at extra precision back to the precision in effect,
/// charging the rounding to its error budget.
Approx settle(const Approx& x, const PrecisionContext& ctx);

struct GridSpec {
  Real lo{0};
  Real hi{1};
  std::int64_t n_points = 2;
  Real inset{1e-6};

  void validate() const;
  std::vector<Real> abscissae() const;
};

Real pi();
Real ln2();

}  // namespace zetapsi

#endif  // ZETAPSI_CORE_HPP
