#include "xb/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "xb/translate.hpp"

namespace xb {

void BoundParams::validate() const {
  if (d < 1) throw std::invalid_argument("BoundParams: d must be >= 1");
  if (!(c > 0.0 && c < 1.0))
    throw std::invalid_argument("BoundParams: c must lie in (0,1)");
  if (!(alpha0 > 0.0 && alpha0 <= 1.0))
    throw std::invalid_argument("BoundParams: alpha0 must lie in (0,1]");
  if (!(gamma > 0.0 && gamma <= 1.0))
    throw std::invalid_argument("BoundParams: gamma must lie in (0,1]");
  if (k < 0.0) throw std::invalid_argument("BoundParams: k must be >= 0");
}

double alpha_conf(int d, double alpha0) {
  if (d < 1) throw std::invalid_argument("alpha_conf: d must be >= 1");
  if (!(alpha0 > 0.0 && alpha0 <= 1.0))
    throw std::invalid_argument("alpha_conf: alpha0 must lie in (0,1]");
  const double dp1 = static_cast<double>(d) + 1.0;
  return alpha0 / (dp1 * dp1 * dp1 * dp1);
}

// ln( N^k * exp(-alpha m^{c/d}) ) = k ln N - alpha m^{c/d}
static double log_excess_term(const BoundParams &p, std::uint64_t n,
                              std::uint64_t m) {
  const double big_n = static_cast<double>(encoding_length(
      static_cast<std::uint32_t>(n), m));
  const double alpha = alpha_conf(p.d, p.alpha0);
  const double rate = alpha * std::pow(static_cast<double>(m),
                                       p.c / static_cast<double>(p.d));
  return p.k * std::log(big_n) - rate;
}

BoundReport success_bound(const BoundParams &p, std::uint64_t n,
                          std::uint64_t m) {
  p.validate();
  if (n < 3 || m <= n)
    throw std::invalid_argument("success_bound: need m > n >= 3");

  BoundReport r;
  r.n = n;
  r.m = m;
  r.encoding_bits = encoding_length(static_cast<std::uint32_t>(n), m);
  r.alpha_conf = alpha_conf(p.d, p.alpha0);
  r.beta_d = p.c / static_cast<double>(p.d);
  r.bottom_width_exponent = r.beta_d;
  r.live_vars = std::pow(static_cast<double>(m), 1.0 - p.c);
  r.log_excess = log_excess_term(p, n, m);

  // excess = exp(log_excess); saturate rather than overflow
  if (r.log_excess >= std::log(0.5)) {
    r.success_bound = 1.0;
    r.cap_active = true;
  } else {
    r.success_bound = 0.5 + std::exp(r.log_excess);
    r.cap_active = false;
  }
  return r;
}

KReadings k_readings(const BoundParams &p, std::uint64_t n, std::uint64_t m,
                     double epsilon) {
  p.validate();
  if (!(epsilon >= 0.0 && epsilon < 0.5))
    throw std::invalid_argument("k_readings: epsilon must lie in [0, 1/2)");

  const double log_excess = log_excess_term(p, n, m);
  KReadings out;
  // capped reading: epsilon < 1/2 - s(N) exp(-alpha m^{c/d})
  out.capped =
      log_excess < std::log(0.5) && epsilon < 0.5 - std::exp(log_excess);

  const double alpha = alpha_conf(p.d, p.alpha0);
  const double rate = alpha * std::pow(static_cast<double>(m),
                                       p.c / static_cast<double>(p.d));
  // size-parameterized reading: epsilon < 1/2 - exp(-alpha m^{c/d})
  out.size_bound_applies = epsilon < 0.5 - std::exp(-rate);
  if (out.size_bound_applies)
    out.size_lower_bound_bits = rate / std::log(2.0);
  return out;
}

}  // namespace xb
