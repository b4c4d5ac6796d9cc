#ifndef IDD_BASELINES_HPP
#define IDD_BASELINES_HPP

#include "idd/point_set.hpp"

#include <cstddef>
#include <vector>

namespace idd {

// Log-log scaling series for a baseline estimator. per_scale_id[i] is
// the slope fitted over all scales up to and including scales[i] (NaN at
// the first scale, where no fit exists); slope/slope_err cover the full
// fit window.
struct ScaleSeries {
    std::vector<double> scales;
    std::vector<double> values;
    std::vector<double> per_scale_id;
    std::vector<double> per_scale_err;
    std::size_t fit_begin = 0;
    std::size_t fit_end = 0;
    double slope = 0.0;
    double slope_err = 0.0;
};

// Box-counting dimension: occupied boxes of each side (grid anchored at
// the coordinate-wise minimum), slope of log N_boxes vs log(1/side).
ScaleSeries box_counting(const DiscretePointSet& points,
                         const std::vector<int>& sides);

// Correlation-style dimension: mean neighbor count within each radius,
// slope of log <N> vs log radius. Scales with zero neighbors are
// excluded from fits.
ScaleSeries fractal_dimension(const DiscretePointSet& points,
                              const std::vector<int>& radii,
                              unsigned workers = 0);

} // namespace idd

#endif
