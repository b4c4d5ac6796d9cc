#include "idd/special.hpp"

#include "idd/errors.hpp"

#include <cmath>
#include <limits>

namespace idd {

double log_gamma(double x) {
    if (!(x > 0.0)) throw domain_error("log_gamma requires x > 0");
    return std::lgamma(x);
}

double log_binomial(double a, std::int64_t b) {
    if (b < 0) throw domain_error("log_binomial requires b >= 0");
    if (b == 0) return 0.0;
    // C(a, b) = Gamma(a+1) / (Gamma(b+1) Gamma(a-b+1)); all arguments must
    // stay positive for the log-gamma route.
    if (!(a - b > -1.0)) throw domain_error("log_binomial requires a - b > -1");
    return log_gamma(a + 1.0) - log_gamma(static_cast<double>(b) + 1.0) -
           log_gamma(a - static_cast<double>(b) + 1.0);
}

double digamma(double x) {
    if (!(x > 0.0)) throw domain_error("digamma requires x > 0");
    double acc = 0.0;
    while (x < 8.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    // psi(x) ~ ln x - 1/(2x) - sum B_2n / (2n x^2n)
    const double f = 1.0 / (x * x);
    const double series =
        f * (1.0 / 12.0 -
             f * (1.0 / 120.0 -
                  f * (1.0 / 252.0 -
                       f * (1.0 / 240.0 -
                            f * (1.0 / 132.0 - f * (691.0 / 32760.0))))));
    return acc + std::log(x) - 0.5 / x - series;
}

double trigamma(double x) {
    if (!(x > 0.0)) throw domain_error("trigamma requires x > 0");
    double acc = 0.0;
    while (x < 8.0) {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    // psi1(x) ~ 1/x + 1/(2x^2) + sum B_2n / x^(2n+1)
    const double f = 1.0 / (x * x);
    const double series =
        (1.0 +
         f * (1.0 / 6.0 -
              f * (1.0 / 30.0 -
                   f * (1.0 / 42.0 -
                        f * (1.0 / 30.0 -
                             f * (5.0 / 66.0 - f * (691.0 / 2730.0))))))) /
        x;
    return acc + series + 0.5 * f;
}

double lambert_w0(double y) {
    if (!(y > -std::exp(-1.0)) || !(y < 0.0))
        throw domain_error("lambert_w0 implemented for y in (-1/e, 0)");
    // On (-1/e, 0) the principal branch lies in (-1, 0); start mid-branch.
    double w = -0.5;
    for (int it = 0; it < 100; ++it) {
        const double ew = std::exp(w);
        const double f = w * ew - y;
        const double step = f / (ew * (1.0 + w));
        w -= step;
        if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(w))) break;
    }
    return w;
}

double optimal_ratio_constant() {
    static const double c = -0.5 * lambert_w0(-2.0 * std::exp(-2.0));
    return c;
}

double log_binomial_pmf(std::int64_t n, std::int64_t k, double p) {
    if (k < 0 || n < 0 || n > k)
        return -std::numeric_limits<double>::infinity();
    if (!(p >= 0.0 && p <= 1.0))
        throw domain_error("log_binomial_pmf requires p in [0, 1]");
    if (p == 0.0)
        return n == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
    if (p == 1.0)
        return n == k ? 0.0 : -std::numeric_limits<double>::infinity();
    return log_binomial(static_cast<double>(k), n) +
           static_cast<double>(n) * std::log(p) +
           static_cast<double>(k - n) * std::log1p(-p);
}

} // namespace idd
