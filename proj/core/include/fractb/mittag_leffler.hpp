#pragma once

namespace fractb {

// One-parameter Mittag-Leffler function E_a(z) = sum_k z^k / Gamma(a k + 1),
// summed until a term falls below 1e-16 relative to the partial sum.
// Intended for moderate arguments (|z| <= 10 suffices for the test problems);
// throws NoConvergence past 10,000 terms.
double mittag_leffler(double alpha, double z);

}  // namespace fractb
