#ifndef IDD_VALIDATION_HPP
#define IDD_VALIDATION_HPP

#include "idd/census.hpp"
#include "idd/estimator.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace idd {

// Empirical vs model cdf of the inner-shell counts n over the integer
// support 0..max(k).
struct CdfPair {
    std::vector<int> support;
    std::vector<double> empirical;
    std::vector<double> theoretical;
    double ks = 0.0;
};

// Model cdf only: P(n) = sum_k Phat(k) Binom(n; k, p(d)) with Phat the
// empirical frequency of k in the census. The empirical side is left
// empty.
CdfPair theoretical_cdf(const NeighborCensus& census, double d);

// Both cdfs plus ks = sup |empirical - theoretical|.
CdfPair ks_validate(const NeighborCensus& census, double d);

// Parametric bootstrap of the KS statistic: draw n_i* ~ Binom(k_i, p(d)),
// re-estimate d on each draw, and compare the observed ks against the
// null sample.
struct BootstrapResult {
    double ks_observed = 0.0;
    std::vector<double> ks_null;
    double p_value = 1.0;
    int draws_requested = 0;
    int draws_failed = 0;
};

BootstrapResult ks_bootstrap(const NeighborCensus& census, double d,
                             int draws = 200, std::uint64_t seed = 1,
                             unsigned workers = 0);

// Error-calibration experiment over repeated synthetic realizations.
// chi_corr compares the full-dataset Bayes estimate against the ground
// truth in units of the posterior sigma; chi_ind does the same for
// single-point estimates in units of their spread across realizations
// (centred on the sample mean of those estimates, so its std is 1 by
// construction and serves as a self-check).
struct PoolReport {
    std::vector<double> chi_corr;
    std::vector<double> chi_ind;
    double std_corr = 0.0;
    double std_ind = 0.0;
    int realizations = 0;
    int skipped_corr = 0;
    int skipped_ind = 0;
};

using DatasetFactory =
    std::function<DiscretePointSet(std::uint64_t seed)>;

PoolReport pool_experiment(const DatasetFactory& factory, double d_gt,
                           int t1, int t2, int realizations,
                           std::uint64_t seed, unsigned workers = 0);

} // namespace idd

#endif
