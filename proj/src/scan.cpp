#include "idd/scan.hpp"

#include "idd/errors.hpp"
#include "idd/validation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace idd {

namespace {

IdEstimate estimate_row(const NeighborCensus& row_census, Method method) {
    switch (method) {
    case Method::MleDiscrete:
        return mle_discrete(row_census);
    case Method::BayesDiscrete:
        return bayes_discrete_estimate(row_census);
    case Method::MleContinuum: {
        const double sum_n = static_cast<double>(row_census.sum_n());
        const double sum_k = static_cast<double>(row_census.sum_k());
        const double ratio = static_cast<double>(row_census.t1) /
                             static_cast<double>(row_census.t2);
        IdEstimate est;
        est.d = mle_continuum(sum_n, sum_k, ratio);
        est.err = std::sqrt(cr_variance_continuum(
            est.d, ratio, row_census.size(), row_census.mean_k()));
        est.method = Method::MleContinuum;
        est.t1 = row_census.t1;
        est.t2 = row_census.t2;
        est.n_points_used = row_census.size();
        return est;
    }
    case Method::BayesContinuum: {
        const double sum_n = static_cast<double>(row_census.sum_n());
        const double sum_k = static_cast<double>(row_census.sum_k());
        const double ratio = static_cast<double>(row_census.t1) /
                             static_cast<double>(row_census.t2);
        const ContinuumMoments moments =
            bayes_continuum_moments(sum_n, sum_k, ratio);
        IdEstimate est;
        est.d = moments.mean;
        est.err = std::sqrt(moments.variance);
        est.method = Method::BayesContinuum;
        est.t1 = row_census.t1;
        est.t2 = row_census.t2;
        est.n_points_used = row_census.size();
        return est;
    }
    }
    throw argument_error("scan: unknown method enum value");
}

} // namespace

ScanResult scan(const DiscretePointSet& points,
                const std::vector<int>& t2_list, double r, Method method,
                unsigned workers) {
    if (t2_list.empty()) {
        throw argument_error("scan: empty t2 list");
    }
    if (!(r > 0.0 && r < 1.0)) {
        throw argument_error("scan: r must lie in (0, 1)");
    }
    std::vector<int> t2_sorted = t2_list;
    std::sort(t2_sorted.begin(), t2_sorted.end());

    int max_valid_t2 = 0;
    for (int t2 : t2_sorted) {
        if (t2 >= 2) {
            max_valid_t2 = std::max(max_valid_t2, t2);
        }
    }
    if (max_valid_t2 == 0) {
        throw argument_error("scan: every t2 was below 2");
    }

    const RadialCounts rc = radial_counts(points, max_valid_t2, workers);

    ScanResult result;
    result.rows.reserve(t2_sorted.size());
    for (int t2 : t2_sorted) {
        ScanRow row;
        row.t2 = t2;
        if (t2 < 2) {
            row.skipped = true;
            row.note = "t2 below 2";
            result.rows.push_back(std::move(row));
            continue;
        }
        const int t1 = std::max(
            1, static_cast<int>(std::lround(r * static_cast<double>(t2))));
        row.t1 = t1;
        if (t1 >= t2) {
            row.skipped = true;
            row.note = "t1 rounds onto t2 at this ratio";
            result.rows.push_back(std::move(row));
            continue;
        }
        try {
            const NeighborCensus row_census =
                census_from_counts(rc, t1, t2, points);
            row.estimate = estimate_row(row_census, method);
            row.mean_k = row_census.mean_k();
            row.ks = ks_validate(row_census, row.estimate.d).ks;
        } catch (const error& e) {
            row.skipped = true;
            row.note = e.what();
        }
        result.rows.push_back(std::move(row));
    }
    return result;
}

} // namespace idd
