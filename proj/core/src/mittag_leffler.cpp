#include "fractb/mittag_leffler.hpp"

#include <cmath>

#include "fractb/errors.hpp"

namespace fractb {

double mittag_leffler(double alpha, double z) {
  if (!(alpha > 0.0) || !(alpha <= 1.0))
    throw InvariantViolation("mittag_leffler: alpha must lie in (0, 1]");
  if (z == 0.0) return 1.0;

  // Term magnitudes are formed in log space: |z|^k alone would overflow long
  // before Gamma(a k + 1) tames the ratio.
  const double log_az = std::log(std::fabs(z));
  const bool negative = z < 0.0;

  double sum = 1.0;  // k = 0
  for (int k = 1; k <= 10000; ++k) {
    const double mag = std::exp(k * log_az - std::lgamma(alpha * k + 1.0));
    const double term = (negative && (k & 1)) ? -mag : mag;
    sum += term;
    if (mag <= 1e-16 * std::fabs(sum)) return sum;
  }
  throw NoConvergence("mittag_leffler: series did not converge in 10000 terms");
}

}  // namespace fractb
