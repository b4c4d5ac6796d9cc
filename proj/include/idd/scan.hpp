#ifndef IDD_SCAN_HPP
#define IDD_SCAN_HPP

#include "idd/census.hpp"
#include "idd/estimator.hpp"
#include "idd/point_set.hpp"

#include <string>
#include <vector>

namespace idd {

// One radius pair of a multi-scale scan. Rows whose estimator could not
// run (t1 collides with t2, or the census is degenerate at that scale)
// carry skipped = true and a note instead of numbers.
struct ScanRow {
    int t2 = 0;
    int t1 = 0;
    IdEstimate estimate;
    double ks = 0.0;
    double mean_k = 0.0;
    bool skipped = false;
    std::string note;
};

struct ScanResult {
    std::vector<ScanRow> rows;
};

// Estimate the dimension at every t2 in the list with t1 = max(1,
// round(r * t2)). The pairwise distances are computed once up to the
// largest t2 and shared across rows. Rows come back ordered by t2.
ScanResult scan(const DiscretePointSet& points,
                const std::vector<int>& t2_list, double r = 0.5,
                Method method = Method::MleDiscrete, unsigned workers = 0);

} // namespace idd

#endif
