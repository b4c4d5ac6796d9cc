#include "idd/estimator.hpp"

#include "idd/errors.hpp"
#include "idd/lattice_volumes.hpp"
#include "idd/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace idd {

namespace {

constexpr double k_d_min = 0.01;
constexpr double k_d_max = 1000.0;

void check_census_ratio(const NeighborCensus& census) {
    if (census.size() == 0) {
        throw argument_error("estimator: empty census");
    }
    const std::uint64_t sum_k = census.sum_k();
    const std::uint64_t sum_n = census.sum_n();
    if (sum_k == 0) {
        throw no_neighbors_error(
            "no neighbors at this scale (sum of k counts is zero); "
            "increase t2 or the point density");
    }
    if (sum_n == sum_k) {
        throw scale_too_small_error(
            "scale too small: every t2-neighbor already lies within t1 "
            "(neighbor ratio 1 implies d -> 0)");
    }
    if (sum_n == 0) {
        throw dimension_out_of_range_error(
            "scale inconsistent / dimension out of range: no neighbors "
            "within t1, the neighbor ratio 0 has no root in [0.01, 1000]");
    }
}

} // namespace

std::string method_name(Method method) {
    switch (method) {
    case Method::MleDiscrete:
        return "mle-discrete";
    case Method::BayesDiscrete:
        return "bayes-discrete";
    case Method::MleContinuum:
        return "mle-continuum";
    case Method::BayesContinuum:
        return "bayes-continuum";
    }
    throw argument_error("method_name: unknown method enum value");
}

Method method_from_name(const std::string& name) {
    if (name == "mle-discrete") {
        return Method::MleDiscrete;
    }
    if (name == "bayes-discrete") {
        return Method::BayesDiscrete;
    }
    if (name == "mle-continuum") {
        return Method::MleContinuum;
    }
    if (name == "bayes-continuum") {
        return Method::BayesContinuum;
    }
    throw argument_error("unknown estimation method '" + name +
                         "' (expected mle-discrete, bayes-discrete, "
                         "mle-continuum or bayes-continuum)");
}

double PosteriorGrid::std_dev() const { return std::sqrt(variance); }

IdEstimate mle_discrete(const NeighborCensus& census) {
    check_census_ratio(census);
    const double target = static_cast<double>(census.sum_n()) /
                          static_cast<double>(census.sum_k());
    const int t1 = census.t1;
    const int t2 = census.t2;

    // f is strictly decreasing in d: the ratio of a smaller to a larger
    // ball shrinks as the dimension grows.
    auto f = [&](double d) { return volume_ratio(t1, t2, d) - target; };

    double lo = k_d_min;
    double hi = k_d_max;
    double f_lo = f(lo);
    double f_hi = f(hi);
    if (f_lo <= 0.0) {
        throw scale_too_small_error(
            "scale too small: neighbor ratio " + std::to_string(target) +
            " implies a dimension below 0.01");
    }
    if (f_hi >= 0.0) {
        throw dimension_out_of_range_error(
            "scale inconsistent / dimension out of range: neighbor ratio " +
            std::to_string(target) +
            " lies below the volume ratio at d = 1000");
    }

    double mid = 0.5 * (lo + hi);
    for (int iter = 0; iter < 300; ++iter) {
        mid = 0.5 * (lo + hi);
        const double f_mid = f(mid);
        if (std::abs(f_mid) < 1e-12 || (hi - lo) < 1e-10) {
            break;
        }
        if (f_mid > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    IdEstimate est;
    est.d = mid;
    est.method = Method::MleDiscrete;
    est.t1 = t1;
    est.t2 = t2;
    est.n_points_used = census.size();
    est.err = cramer_rao_discrete(mid, census);
    return est;
}

double cramer_rao_discrete(double d, const NeighborCensus& census) {
    if (d <= 0.0) {
        throw argument_error("cramer_rao_discrete: d must be positive");
    }
    if (census.size() == 0) {
        throw argument_error("cramer_rao_discrete: empty census");
    }
    const double mean_k = census.mean_k();
    if (mean_k == 0.0) {
        throw domain_error(
            "cramer_rao_discrete: mean k is zero, the bound is undefined");
    }
    const double p = volume_ratio(census.t1, census.t2, d);
    const double dp = volume_ratio_ddim(census.t1, census.t2, d);
    if (dp == 0.0) {
        throw domain_error("cramer_rao_discrete: volume-ratio derivative "
                           "vanished, the bound is undefined");
    }
    const double n_points = static_cast<double>(census.size());
    return std::sqrt(p * (1.0 - p) / (mean_k * n_points * dp * dp));
}

namespace {

struct grid_pass {
    std::vector<double> grid;
    std::vector<double> density;
    double mean = 0.0;
    double variance = 0.0;
    double edge_mass_hi = 0.0;
    double spacing = 0.0;
    std::size_t peak_index = 0;
};

grid_pass evaluate_posterior(const NeighborCensus& census, double alpha,
                             double beta, double lo, double hi, int m) {
    grid_pass out;
    out.grid.resize(static_cast<std::size_t>(m));
    out.density.resize(static_cast<std::size_t>(m));
    const double h = (hi - lo) / static_cast<double>(m - 1);
    out.spacing = h;

    std::vector<double> log_density(static_cast<std::size_t>(m));
    double log_max = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
        const double d = lo + h * static_cast<double>(i);
        out.grid[static_cast<std::size_t>(i)] = d;
        const double log_p = log_volume_real(census.t1, d) -
                             log_volume_real(census.t2, d);
        const double p = std::exp(log_p);
        const double dp = volume_ratio_ddim(census.t1, census.t2, d);
        double ld;
        if (p <= 0.0 || p >= 1.0 || dp == 0.0) {
            ld = -std::numeric_limits<double>::infinity();
        } else {
            ld = (alpha - 1.0) * log_p + (beta - 1.0) * std::log1p(-p) +
                 std::log(std::abs(dp));
        }
        log_density[static_cast<std::size_t>(i)] = ld;
        if (ld > log_max) {
            log_max = ld;
            out.peak_index = static_cast<std::size_t>(i);
        }
    }
    if (!std::isfinite(log_max)) {
        throw domain_error("bayes_discrete: posterior vanished on the "
                           "whole grid");
    }
    for (int i = 0; i < m; ++i) {
        out.density[static_cast<std::size_t>(i)] =
            std::exp(log_density[static_cast<std::size_t>(i)] - log_max);
    }

    double z = 0.0;
    for (int i = 0; i + 1 < m; ++i) {
        z += 0.5 * (out.density[i] + out.density[i + 1]) * h;
    }
    if (z <= 0.0) {
        throw domain_error("bayes_discrete: posterior normalization is "
                           "zero");
    }
    for (auto& v : out.density) {
        v /= z;
    }

    double mean = 0.0;
    for (int i = 0; i + 1 < m; ++i) {
        mean += 0.5 *
                (out.grid[i] * out.density[i] +
                 out.grid[i + 1] * out.density[i + 1]) *
                h;
    }
    double variance = 0.0;
    for (int i = 0; i + 1 < m; ++i) {
        const double a = out.grid[i] - mean;
        const double b = out.grid[i + 1] - mean;
        variance += 0.5 *
                    (a * a * out.density[i] + b * b * out.density[i + 1]) *
                    h;
    }
    out.mean = mean;
    out.variance = std::max(variance, 0.0);
    out.edge_mass_hi = 0.5 * (out.density[m - 2] + out.density[m - 1]) * h;
    return out;
}

} // namespace

PosteriorGrid bayes_discrete(const NeighborCensus& census, int grid_size,
                             double d_max) {
    check_census_ratio(census);
    if (grid_size < 8) {
        throw argument_error("bayes_discrete: grid_size must be at least 8");
    }
    if (d_max <= k_d_min) {
        throw argument_error("bayes_discrete: d_max must exceed 0.01");
    }
    const double alpha = 1.0 + static_cast<double>(census.sum_n());
    const double beta =
        1.0 + static_cast<double>(census.sum_k() - census.sum_n());

    double lo = k_d_min;
    double hi = d_max;
    grid_pass pass = evaluate_posterior(census, alpha, beta, lo, hi,
                                        grid_size);

    // Push the upper edge out while it still carries visible mass.
    int doublings = 0;
    while (pass.edge_mass_hi > 1e-3) {
        hi *= 2.0;
        if (++doublings > 10 || hi > 4.0 * k_d_max) {
            throw dimension_out_of_range_error(
                "bayes_discrete: grid range insufficient, posterior mass "
                "keeps escaping past d = " + std::to_string(hi / 2.0));
        }
        pass = evaluate_posterior(census, alpha, beta, lo, hi, grid_size);
    }

    // Zoom onto the mass so that sharp posteriors are resolved by many
    // grid points. Each window keeps >= 10 current cells around the peak,
    // so a poorly sampled first pass cannot clip the true bulk.
    for (int round = 0; round < 5; ++round) {
        const double sigma = std::sqrt(pass.variance);
        const double half =
            std::max(10.0 * sigma, 5.0 * pass.spacing);
        if (2.0 * half >= 0.9 * (hi - lo)) {
            break;
        }
        const double center = pass.grid[pass.peak_index];
        lo = std::max(k_d_min, center - half);
        hi = std::min(4.0 * k_d_max, center + half);
        pass = evaluate_posterior(census, alpha, beta, lo, hi, grid_size);
    }

    PosteriorGrid out;
    out.d_grid = std::move(pass.grid);
    out.density = std::move(pass.density);
    out.mean = pass.mean;
    out.variance = pass.variance;
    return out;
}

IdEstimate bayes_discrete_estimate(const NeighborCensus& census,
                                   int grid_size, double d_max) {
    PosteriorGrid post = bayes_discrete(census, grid_size, d_max);
    IdEstimate est;
    est.d = post.mean;
    est.err = post.std_dev();
    est.method = Method::BayesDiscrete;
    est.t1 = census.t1;
    est.t2 = census.t2;
    est.n_points_used = census.size();
    return est;
}

double mle_continuum(double sum_n, double sum_k, double r) {
    if (!(r > 0.0 && r < 1.0)) {
        throw argument_error("mle_continuum: r must lie in (0, 1)");
    }
    if (!(sum_n > 0.0) || !(sum_k > 0.0)) {
        throw argument_error(
            "mle_continuum: sums of neighbor counts must be positive");
    }
    if (sum_n > sum_k) {
        throw argument_error(
            "mle_continuum: sum_n cannot exceed sum_k");
    }
    if (sum_n == sum_k) {
        throw scale_too_small_error(
            "scale too small: neighbor ratio 1 gives d = 0");
    }
    return std::log(sum_n / sum_k) / std::log(r);
}

double cr_variance_continuum(double d, double r, std::size_t n_points,
                             double mean_k) {
    if (!(r > 0.0 && r < 1.0)) {
        throw argument_error("cr_variance_continuum: r must lie in (0, 1)");
    }
    if (!(d > 0.0)) {
        throw argument_error("cr_variance_continuum: d must be positive");
    }
    if (n_points < 1) {
        throw argument_error(
            "cr_variance_continuum: need at least one point");
    }
    if (!(mean_k > 0.0)) {
        throw argument_error(
            "cr_variance_continuum: mean_k must be positive");
    }
    const double log_r = std::log(r);
    const double p = std::pow(r, d);
    return (1.0 - p) /
           (mean_k * static_cast<double>(n_points) * log_r * log_r * p);
}

double optimal_ratio(double d) {
    if (!(d > 0.0)) {
        throw argument_error("optimal_ratio: d must be positive");
    }
    return std::pow(optimal_ratio_constant(), 1.0 / d);
}

ContinuumMoments bayes_continuum_moments(double sum_n, double sum_k,
                                         double r) {
    if (!(r > 0.0 && r < 1.0)) {
        throw argument_error(
            "bayes_continuum_moments: r must lie in (0, 1)");
    }
    if (sum_n < 0.0 || sum_k < 0.0) {
        throw argument_error(
            "bayes_continuum_moments: neighbor sums must be nonnegative");
    }
    if (sum_n > sum_k) {
        throw argument_error(
            "bayes_continuum_moments: sum_n cannot exceed sum_k");
    }
    const double log_r = std::log(r);
    ContinuumMoments out;
    out.mean = (digamma(1.0 + sum_n) - digamma(2.0 + sum_k)) / log_r;
    out.variance =
        (trigamma(1.0 + sum_n) - trigamma(2.0 + sum_k)) / (log_r * log_r);
    return out;
}

} // namespace idd
