#include "idd/validation.hpp"

#include "idd/errors.hpp"
#include "idd/lattice_volumes.hpp"
#include "idd/parallel.hpp"
#include "idd/rng.hpp"
#include "idd/special.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>

namespace idd {

namespace {

// Mixture pmf of n over 0..max_k; weights are the empirical frequencies
// of the distinct k values.
std::vector<double> mixture_pmf(const NeighborCensus& census, double p) {
    std::map<std::uint32_t, std::size_t> k_hist;
    std::uint32_t max_k = 0;
    for (std::uint32_t k : census.k) {
        ++k_hist[k];
        max_k = std::max(max_k, k);
    }
    const double n_points = static_cast<double>(census.size());
    std::vector<double> pmf(static_cast<std::size_t>(max_k) + 1, 0.0);
    for (const auto& [k, count] : k_hist) {
        const double weight = static_cast<double>(count) / n_points;
        for (std::uint32_t n = 0; n <= k; ++n) {
            pmf[n] += weight * std::exp(log_binomial_pmf(
                                   static_cast<std::int64_t>(n),
                                   static_cast<std::int64_t>(k), p));
        }
    }
    return pmf;
}

double sample_std(const std::vector<double>& values) {
    if (values.size() < 2) {
        return 0.0;
    }
    double mean = 0.0;
    for (double v : values) {
        mean += v;
    }
    mean /= static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) {
        ss += (v - mean) * (v - mean);
    }
    return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

} // namespace

CdfPair theoretical_cdf(const NeighborCensus& census, double d) {
    if (!(d > 0.0)) {
        throw argument_error("theoretical_cdf: d must be positive");
    }
    if (census.size() == 0) {
        throw argument_error("theoretical_cdf: empty census");
    }
    const double p = volume_ratio(census.t1, census.t2, d);
    std::vector<double> pmf = mixture_pmf(census, p);

    CdfPair out;
    out.support.resize(pmf.size());
    out.theoretical.resize(pmf.size());
    double cum = 0.0;
    for (std::size_t n = 0; n < pmf.size(); ++n) {
        out.support[n] = static_cast<int>(n);
        cum += pmf[n];
        out.theoretical[n] = cum;
    }
    // Clamp the tail against rounding so the cdf ends exactly at 1.
    if (!out.theoretical.empty()) {
        for (auto& v : out.theoretical) {
            v = std::min(v, 1.0);
        }
        out.theoretical.back() = 1.0;
    }
    return out;
}

CdfPair ks_validate(const NeighborCensus& census, double d) {
    CdfPair out = theoretical_cdf(census, d);
    out.empirical.assign(out.support.size(), 0.0);
    for (std::uint32_t n : census.n) {
        if (static_cast<std::size_t>(n) >= out.empirical.size()) {
            throw domain_error("ks_validate: n value exceeds max k");
        }
        out.empirical[n] += 1.0;
    }
    const double n_points = static_cast<double>(census.size());
    double cum = 0.0;
    double ks = 0.0;
    for (std::size_t i = 0; i < out.empirical.size(); ++i) {
        cum += out.empirical[i] / n_points;
        out.empirical[i] = cum;
        ks = std::max(ks, std::abs(out.empirical[i] - out.theoretical[i]));
    }
    if (!out.empirical.empty()) {
        out.empirical.back() = 1.0;
    }
    out.ks = ks;
    return out;
}

BootstrapResult ks_bootstrap(const NeighborCensus& census, double d,
                             int draws, std::uint64_t seed,
                             unsigned workers) {
    if (draws < 1) {
        throw argument_error("ks_bootstrap: need at least one draw");
    }
    BootstrapResult out;
    out.draws_requested = draws;
    out.ks_observed = ks_validate(census, d).ks;
    const double p = volume_ratio(census.t1, census.t2, d);

    std::vector<double> null_ks(static_cast<std::size_t>(draws),
                                -1.0);
    parallel_for(
        static_cast<std::size_t>(draws),
        [&](std::size_t begin, std::size_t end) {
            for (std::size_t b = begin; b < end; ++b) {
                std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ull * (b + 1));
                NeighborCensus synthetic = census;
                for (std::size_t i = 0; i < synthetic.size(); ++i) {
                    std::binomial_distribution<std::uint32_t> binom(
                        census.k[i], p);
                    synthetic.n[i] = binom(rng);
                }
                try {
                    const IdEstimate refit = mle_discrete(synthetic);
                    null_ks[b] = ks_validate(synthetic, refit.d).ks;
                } catch (const error&) {
                    // Degenerate draw (all-zero or saturated counts);
                    // dropped from the null sample.
                }
            }
        },
        workers);

    for (double v : null_ks) {
        if (v >= 0.0) {
            out.ks_null.push_back(v);
        } else {
            ++out.draws_failed;
        }
    }
    if (out.ks_null.empty()) {
        throw domain_error(
            "ks_bootstrap: every bootstrap draw was degenerate");
    }
    std::size_t at_least = 0;
    for (double v : out.ks_null) {
        if (v >= out.ks_observed) {
            ++at_least;
        }
    }
    out.p_value = (1.0 + static_cast<double>(at_least)) /
                  (1.0 + static_cast<double>(out.ks_null.size()));
    return out;
}

PoolReport pool_experiment(const DatasetFactory& factory, double d_gt,
                           int t1, int t2, int realizations,
                           std::uint64_t seed, unsigned workers) {
    if (realizations < 50) {
        throw argument_error(
            "pool_experiment: need at least 50 realizations");
    }
    if (!(d_gt > 0.0)) {
        throw argument_error("pool_experiment: d_gt must be positive");
    }

    struct slot {
        double chi_corr = 0.0;
        bool corr_ok = false;
        double d_ind = 0.0;
        bool ind_ok = false;
    };
    std::vector<slot> slots(static_cast<std::size_t>(realizations));

    parallel_for(
        static_cast<std::size_t>(realizations),
        [&](std::size_t begin, std::size_t end) {
            for (std::size_t rep = begin; rep < end; ++rep) {
                const std::uint64_t rep_seed =
                    seed + 0x9e3779b97f4a7c15ull * (rep + 1);
                DiscretePointSet points = factory(rep_seed);
                if (points.n_points < 2) {
                    continue;
                }
                NeighborCensus full;
                try {
                    full = census(points, t1, t2, 1);
                } catch (const error&) {
                    continue;
                }
                try {
                    const IdEstimate cor = bayes_discrete_estimate(full);
                    if (cor.err > 0.0) {
                        slots[rep].chi_corr = (cor.d - d_gt) / cor.err;
                        slots[rep].corr_ok = true;
                    }
                } catch (const error&) {
                }
                // One point drawn at random carries an (n_i, k_i) pair of
                // its own; ML on that pair gives the uncorrelated-error
                // reference estimate.
                rng pick(rep_seed ^ 0xa5a5a5a5a5a5a5a5ull);
                const std::size_t i = static_cast<std::size_t>(
                    pick.uniform_below(full.size()));
                NeighborCensus one;
                one.t1 = full.t1;
                one.t2 = full.t2;
                one.metric = full.metric;
                one.box_side = full.box_side;
                one.n = {full.n[i]};
                one.k = {full.k[i]};
                try {
                    slots[rep].d_ind = mle_discrete(one).d;
                    slots[rep].ind_ok = true;
                } catch (const error&) {
                }
            }
        },
        workers);

    PoolReport report;
    report.realizations = realizations;
    std::vector<double> d_ind;
    for (const slot& s : slots) {
        if (s.corr_ok) {
            report.chi_corr.push_back(s.chi_corr);
        } else {
            ++report.skipped_corr;
        }
        if (s.ind_ok) {
            d_ind.push_back(s.d_ind);
        } else {
            ++report.skipped_ind;
        }
    }
    if (d_ind.size() >= 2) {
        double mean = 0.0;
        for (double v : d_ind) {
            mean += v;
        }
        mean /= static_cast<double>(d_ind.size());
        const double sigma_stat = sample_std(d_ind);
        if (sigma_stat > 0.0) {
            for (double v : d_ind) {
                report.chi_ind.push_back((v - mean) / sigma_stat);
            }
        }
    }
    report.std_corr = sample_std(report.chi_corr);
    report.std_ind = sample_std(report.chi_ind);
    return report;
}

} // namespace idd
