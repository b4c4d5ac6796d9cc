#ifndef IDD_SPECIAL_HPP
#define IDD_SPECIAL_HPP

#include <cstdint>

namespace idd {

// log Gamma(x), x > 0. Thin wrapper so callers do not depend on the
// non-reentrant std::lgamma sign global.
double log_gamma(double x);

// log C(a, b) for real a > -1 and integer 0 <= b, via log-gamma.
double log_binomial(double a, std::int64_t b);

// Digamma psi0 and trigamma psi1 for x > 0: recurrence up to x >= 8,
// then the Bernoulli asymptotic series.
double digamma(double x);
double trigamma(double x);

// Principal-branch Lambert W on (-1/e, 0), Newton iteration on w e^w = y.
// Returns the root with w >= -1.
double lambert_w0(double y);

// The constant c = -W0(-2 exp(-2)) / 2 that minimises the continuum
// Cramer-Rao variance; approximately 0.20318787.
double optimal_ratio_constant();

// log of the binomial pmf  C(k, n) p^n (1-p)^(k-n); p in [0, 1].
double log_binomial_pmf(std::int64_t n, std::int64_t k, double p);

} // namespace idd

#endif
