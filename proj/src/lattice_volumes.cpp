#include "idd/lattice_volumes.hpp"

#include "idd/errors.hpp"
#include "idd/special.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace idd {

namespace {

using u128 = unsigned __int128;

constexpr u128 U128_MAX = ~static_cast<u128>(0);

u128 checked_mul(u128 a, u128 b) {
    if (a != 0 && b > U128_MAX / a)
        throw overflow_error("volume_int: intermediate product overflows");
    return a * b;
}

u128 checked_add(u128 a, u128 b) {
    if (b > U128_MAX - a)
        throw overflow_error("volume_int: sum overflows");
    return a + b;
}

// C(n, r) by the multiplicative formula; every intermediate division is
// exact because C(n, i) is an integer at each step.
u128 binomial_u128(std::uint64_t n, std::uint64_t r) {
    if (r > n) return 0;
    if (r > n - r) r = n - r;
    u128 result = 1;
    for (std::uint64_t i = 1; i <= r; ++i) {
        result = checked_mul(result, n - r + i);
        result /= i;
    }
    return result;
}

} // namespace

std::uint64_t volume_int(int t, int d) {
    if (t < 0) throw argument_error("volume_int: t must be >= 0");
    if (d < 1) throw argument_error("volume_int: d must be >= 1");
    // V(t, d) = sum_{k=0}^{d} C(d, k) C(t - k + d, d); terms with k > t
    // vanish because the second binomial has an upper index below d.
    u128 total = 0;
    const int kmax = t < d ? t : d;
    for (int k = 0; k <= kmax; ++k) {
        const u128 term =
            checked_mul(binomial_u128(static_cast<std::uint64_t>(d),
                                      static_cast<std::uint64_t>(k)),
                        binomial_u128(static_cast<std::uint64_t>(t - k + d),
                                      static_cast<std::uint64_t>(d)));
        total = checked_add(total, term);
    }
    if (total > static_cast<u128>(std::numeric_limits<std::uint64_t>::max()))
        throw overflow_error("volume_int(" + std::to_string(t) + ", " +
                             std::to_string(d) + ") exceeds 64-bit range");
    return static_cast<std::uint64_t>(total);
}

double log_volume_real(int t, double d) {
    if (t < 0) throw argument_error("volume_real: t must be >= 0");
    if (!(d > 0.0)) throw domain_error("volume_real: d must be > 0");
    if (t == 0) return 0.0;
    // Terminating hypergeometric sum: term ratio
    //   c_{j+1}/c_j = -(j - d)(j - t) / ((j - d - t)(j + 1)).
    // Terms decay once j > min(d, t), so the plain sum is stable.
    double sum = 1.0;
    double term = 1.0;
    const double td = static_cast<double>(t);
    for (int j = 0; j < t; ++j) {
        const double jd = static_cast<double>(j);
        term *= -(jd - d) * (jd - td) / ((jd - d - td) * (jd + 1.0));
        sum += term;
    }
    const double log_prefactor = log_gamma(d + td + 1.0) - log_gamma(d + 1.0) -
                                 log_gamma(td + 1.0);
    return log_prefactor + std::log(sum);
}

double volume_real(int t, double d) {
    return std::exp(log_volume_real(t, d));
}

double volume_ratio(int t1, int t2, double d) {
    if (t1 < 0 || t1 > t2)
        throw argument_error("volume_ratio: need 0 <= t1 <= t2");
    if (t1 == t2) {
        if (!(d > 0.0)) throw domain_error("volume_ratio: d must be > 0");
        return 1.0;
    }
    return std::exp(log_volume_real(t1, d) - log_volume_real(t2, d));
}

double volume_ratio_ddim(int t1, int t2, double d) {
    if (t1 < 0 || t1 >= t2)
        throw argument_error("volume_ratio_ddim: need 0 <= t1 < t2");
    if (!(d > 0.0)) throw domain_error("volume_ratio_ddim: d must be > 0");
    const double h = 1e-5 * std::max(1.0, d);
    const double lo = d > h ? d - h : 0.5 * d;
    const double hi = d + h;
    return (volume_ratio(t1, t2, hi) - volume_ratio(t1, t2, lo)) / (hi - lo);
}

} // namespace idd
