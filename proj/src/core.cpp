#include "zetapsi/core.hpp"

#include <cmath>
#include <sstream>

namespace zetapsi {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::TailNotConverged: return "TailNotConverged";
    case ErrorKind::AccelerationStalled: return "AccelerationStalled";
    case ErrorKind::DepthExceeded: return "DepthExceeded";
    case ErrorKind::OrderUnavailable: return "OrderUnavailable";
    case ErrorKind::NoBracket: return "NoBracket";
    case ErrorKind::PoleAtOne: return "PoleAtOne";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::TooFarFromPole: return "TooFarFromPole";
    case ErrorKind::TooManyTerms: return "TooManyTerms";
    case ErrorKind::OutOfDisk: return "OutOfDisk";
    case ErrorKind::UnsupportedIndex: return "UnsupportedIndex";
    case ErrorKind::ExtrapolationDiverged: return "ExtrapolationDiverged";
    case ErrorKind::ViolationFound: return "ViolationFound";
  }
  return "Unknown";
}

void fail(ErrorKind kind, const std::string& message) {
  throw NumericError(kind, std::string(to_string(kind)) + ": " + message);
}

void PrecisionContext::validate() const {
  if (work_digits == 0 || !(target_tol > 0) || max_terms <= 0 || quad_max_depth <= 0) {
    fail(ErrorKind::InvalidArgument, "precision context fields must be strictly positive");
  }
}

std::optional<std::string> PrecisionContext::precision_warning() const {
  const double wanted = -std::log10(target_tol) + 10.0;
  if (static_cast<double>(work_digits) < wanted) {
    std::ostringstream os;
    os << "working precision of " << work_digits << " digits leaves fewer than 10 guard digits over "
       << "target tolerance " << target_tol;
    return os.str();
  }
  return std::nullopt;
}

Real PrecisionContext::epsilon() const {
  PrecisionScope scope(work_digits);
  return pow(Real(10), 1 - static_cast<int>(work_digits));
}

PrecisionScope::PrecisionScope(unsigned digits) : saved_(Real::default_precision()) {
  Real::default_precision(digits);
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_); }

Approx settle(const Approx& x, const PrecisionContext& ctx) {
  return Approx(rounded(x.value()), x.err() + abs(x.value()) * ctx.epsilon());
}

Real rounded(const Real& x) {
  Real r;
  r = x;
  return r;
}

Approx::Approx(Real value, Real err) : value_(std::move(value)), err_(std::move(err)) {
  using boost::multiprecision::isfinite;
  if (!isfinite(value_) || !isfinite(err_)) {
    fail(ErrorKind::NonFinite, "non-finite value or error budget");
  }
  if (err_ < 0) {
    fail(ErrorKind::InvalidArgument, "negative error budget");
  }
}

Approx& Approx::widen(const Real& extra) {
  err_ += abs(extra);
  return *this;
}

Approx operator+(const Approx& a, const Approx& b) {
  return Approx(a.value_ + b.value_, a.err_ + b.err_);
}

Approx operator-(const Approx& a, const Approx& b) {
  return Approx(a.value_ - b.value_, a.err_ + b.err_);
}

Approx operator-(const Approx& a) { return Approx(-a.value_, a.err_); }

Approx operator*(const Approx& a, const Approx& b) {
  return Approx(a.value_ * b.value_,
                abs(a.value_) * b.err_ + abs(b.value_) * a.err_ + a.err_ * b.err_);
}

Approx operator*(const Real& c, const Approx& a) { return Approx(c * a.value_, abs(c) * a.err_); }

Approx operator/(const Approx& a, const Approx& b) {
  const Real lo = abs(b.value_) - b.err_;
  if (lo <= 0) {
    fail(ErrorKind::NonFinite, "division by an approximation that may vanish");
  }
  const Real q = a.value_ / b.value_;
  return Approx(q, (a.err_ + abs(q) * b.err_) / lo);
}

void GridSpec::validate() const {
  if (n_points < 2) {
    fail(ErrorKind::InvalidArgument, "grid needs at least two points");
  }
  if (!(inset >= 0) || !(lo + inset < hi - inset)) {
    fail(ErrorKind::InvalidArgument, "grid inset leaves an empty interval");
  }
}

std::vector<Real> GridSpec::abscissae() const {
  validate();
  const Real a = lo + inset;
  const Real b = hi - inset;
  const Real step = (b - a) / (n_points - 1);
  std::vector<Real> xs;
  xs.reserve(static_cast<std::size_t>(n_points));
  for (std::int64_t i = 0; i < n_points; ++i) {
    xs.push_back(i + 1 == n_points ? b : a + step * i);
  }
  return xs;
}

Real pi() {
  Real r;
  mpfr_const_pi(r.backend().data(), GMP_RNDN);
  return r;
}

Real ln2() {
  Real r;
  mpfr_const_log2(r.backend().data(), GMP_RNDN);
  return r;
}

}  // namespace zetapsi
