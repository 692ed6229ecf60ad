#pragma once

#include <cstdint>

namespace xb {

struct BoundParams {
  int d = 2;              // depth >= 1
  double k = 1.0;         // size exponent, s(N) <= N^k
  double c = 1.0 / 3.0;   // exponent parameter in (0,1)
  double alpha0 = 1.0;    // universal constant in (0,1]
  double gamma = 0.2;     // window parameter in (0,1]

  void validate() const;  // throws std::invalid_argument
};

struct BoundReport {
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::uint64_t encoding_bits = 0;   // N = m * ceil(log2 n)
  double alpha_conf = 0.0;           // alpha0 / (d+1)^4
  double beta_d = 0.0;               // c / d
  double log_excess = 0.0;           // ln( s(N) * exp(-alpha m^{c/d}) )
  double success_bound = 1.0;        // min(1, 1/2 + exp(log_excess))
  bool cap_active = false;
  double live_vars = 0.0;            // m^{1-c}
  double bottom_width_exponent = 0.0;  // c/d (width m^{O(c/d)})
};

// alpha0 / (d+1)^4; throws when d < 1 or alpha0 outside (0,1].
double alpha_conf(int d, double alpha0);

// Success-probability bound min(1, 1/2 + N^k exp(-alpha_conf m^{c/d})),
// evaluated in log space so the excess term never under/overflows to NaN.
BoundReport success_bound(const BoundParams &p, std::uint64_t n,
                          std::uint64_t m);

struct KReadings {
  // True iff epsilon < 1/2 - s(N) exp(-alpha m^{c/d}): no size-capped model
  // reaches error epsilon, read as an infinite cost.
  bool capped = false;
  // True iff epsilon < 1/2 - exp(-alpha m^{c/d}); then size_lower_bound_bits
  // carries log2 of the implied size bound exp(alpha m^{c/d}), constant-1
  // instantiation of the unstated leading constant.
  bool size_bound_applies = false;
  double size_lower_bound_bits = 0.0;
};

KReadings k_readings(const BoundParams &p, std::uint64_t n, std::uint64_t m,
                     double epsilon);

}  // namespace xb
