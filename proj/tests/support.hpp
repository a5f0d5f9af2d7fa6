#ifndef ZETAPSI_TESTS_SUPPORT_HPP
#define ZETAPSI_TESTS_SUPPORT_HPP

#include "doctest.h"
#include "zetapsi/core.hpp"

#include <random>
#include <string>

namespace zetapsi::testing {

inline PrecisionContext default_ctx() { return PrecisionContext{}; }

/// Installs the default 50-digit precision for a whole test binary.
struct GlobalPrecision {
  PrecisionScope scope{50};
};

inline Real R(const char* decimal) { return Real(decimal); }

inline double to_d(const Real& x) { return x.convert_to<double>(); }

inline bool within(const Real& a, const Real& b, const Real& tol) { return abs(a - b) <= tol; }

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(20261017);
  return engine;
}

inline double uniform(double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return d(rng());
}

}  // namespace zetapsi::testing

#define CHECK_NEAR(a, b, tol)                                                              \
  do {                                                                                     \
    const ::zetapsi::Real zp_a_{a};                                                        \
    const ::zetapsi::Real zp_b_{b};                                                        \
    INFO("lhs=" << zp_a_.str(25) << " rhs=" << zp_b_.str(25) << " tol=" << ::zetapsi::Real{tol}.str(5)); \
    CHECK(abs(zp_a_ - zp_b_) <= ::zetapsi::Real{tol});                                     \
  } while (false)

#endif  // ZETAPSI_TESTS_SUPPORT_HPP
