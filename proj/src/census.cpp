#include "idd/census.hpp"

#include "idd/errors.hpp"
#include "idd/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>

namespace idd {

std::int64_t distance(std::span<const std::int32_t> x,
                      std::span<const std::int32_t> y, Metric metric,
                      std::int32_t box_side) {
    if (x.size() != y.size()) {
        throw argument_error("distance: coordinate lengths differ (" +
                             std::to_string(x.size()) + " vs " +
                             std::to_string(y.size()) + ")");
    }
    std::int64_t total = 0;
    switch (metric) {
    case Metric::L1:
        for (std::size_t a = 0; a < x.size(); ++a) {
            total += std::abs(static_cast<std::int64_t>(x[a]) - y[a]);
        }
        break;
    case Metric::L1Periodic: {
        if (box_side <= 0) {
            throw argument_error(
                "distance: periodic metric needs a positive box side");
        }
        const std::int64_t side = box_side;
        for (std::size_t a = 0; a < x.size(); ++a) {
            std::int64_t delta =
                std::abs(static_cast<std::int64_t>(x[a]) - y[a]) % side;
            total += std::min(delta, side - delta);
        }
        break;
    }
    case Metric::Hamming:
        for (std::size_t a = 0; a < x.size(); ++a) {
            total += (x[a] != y[a]) ? 1 : 0;
        }
        break;
    }
    return total;
}

std::uint64_t NeighborCensus::sum_n() const {
    return std::accumulate(n.begin(), n.end(), std::uint64_t{0});
}

std::uint64_t NeighborCensus::sum_k() const {
    return std::accumulate(k.begin(), k.end(), std::uint64_t{0});
}

double NeighborCensus::mean_k() const {
    if (k.empty()) {
        throw no_neighbors_error("mean_k: empty census");
    }
    return static_cast<double>(sum_k()) / static_cast<double>(k.size());
}

RadialCounts::RadialCounts(std::size_t n_points, int t_max)
    : n_points_(n_points), t_max_(t_max),
      stride_(static_cast<std::size_t>(t_max) + 1),
      counts_(n_points * stride_, 0) {
    if (t_max < 0) {
        throw argument_error("radial_counts: t_max must be non-negative");
    }
}

void RadialCounts::cumulate() {
    for (std::size_t i = 0; i < n_points_; ++i) {
        std::uint32_t* row = counts_.data() + i * stride_;
        for (std::size_t t = 1; t < stride_; ++t) {
            row[t] += row[t - 1];
        }
    }
}

RadialCounts radial_counts(const DiscretePointSet& points, int t_max,
                           unsigned workers) {
    if (points.n_points < 2) {
        throw argument_error("radial_counts: need at least two points");
    }
    if (t_max < 0) {
        throw argument_error("radial_counts: t_max must be non-negative");
    }
    RadialCounts rc(points.n_points, t_max);
    const std::size_t n = points.n_points;
    const std::size_t dim = points.dim;
    const std::int32_t* coords = points.coords.data();
    std::uint32_t* counts = rc.raw().data();
    const std::size_t stride = static_cast<std::size_t>(t_max) + 1;
    const Metric metric = points.metric;
    const std::int32_t side = points.box_side;

    // Each worker owns a contiguous block of rows i and writes only to
    // those rows, so the full i != j loop stays race-free.
    parallel_for(
        n,
        [&](std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i) {
                const std::int32_t* xi = coords + i * dim;
                std::uint32_t* row = counts + i * stride;
                for (std::size_t j = 0; j < n; ++j) {
                    if (j == i) {
                        continue;
                    }
                    const std::int32_t* xj = coords + j * dim;
                    std::int64_t dist = 0;
                    switch (metric) {
                    case Metric::L1:
                        for (std::size_t a = 0; a < dim; ++a) {
                            dist += std::abs(
                                static_cast<std::int64_t>(xi[a]) - xj[a]);
                            if (dist > t_max) {
                                break;
                            }
                        }
                        break;
                    case Metric::L1Periodic:
                        for (std::size_t a = 0; a < dim; ++a) {
                            std::int64_t delta =
                                std::abs(static_cast<std::int64_t>(xi[a]) -
                                         xj[a]) %
                                side;
                            dist += std::min(delta, side - delta);
                            if (dist > t_max) {
                                break;
                            }
                        }
                        break;
                    case Metric::Hamming:
                        for (std::size_t a = 0; a < dim; ++a) {
                            dist += (xi[a] != xj[a]) ? 1 : 0;
                            if (dist > t_max) {
                                break;
                            }
                        }
                        break;
                    }
                    if (dist <= t_max) {
                        row[static_cast<std::size_t>(dist)] += 1;
                    }
                }
            }
        },
        workers);
    rc.cumulate();
    return rc;
}

NeighborCensus census_from_counts(const RadialCounts& rc, int t1, int t2,
                                  const DiscretePointSet& points) {
    if (t1 < 1 || t2 <= t1) {
        throw argument_error("census: need 1 <= t1 < t2, got t1=" +
                             std::to_string(t1) +
                             " t2=" + std::to_string(t2));
    }
    if (t2 > rc.t_max()) {
        throw argument_error("census: t2=" + std::to_string(t2) +
                             " exceeds scanned radius " +
                             std::to_string(rc.t_max()));
    }
    NeighborCensus out;
    out.t1 = t1;
    out.t2 = t2;
    out.metric = points.metric;
    out.box_side = points.box_side;
    out.n.resize(rc.n_points());
    out.k.resize(rc.n_points());
    for (std::size_t i = 0; i < rc.n_points(); ++i) {
        out.n[i] = rc.at(i, t1);
        out.k[i] = rc.at(i, t2);
    }
    return out;
}

NeighborCensus census(const DiscretePointSet& points, int t1, int t2,
                      unsigned workers) {
    if (t1 < 1 || t2 <= t1) {
        throw argument_error("census: need 1 <= t1 < t2, got t1=" +
                             std::to_string(t1) +
                             " t2=" + std::to_string(t2));
    }
    RadialCounts rc = radial_counts(points, t2, workers);
    return census_from_counts(rc, t1, t2, points);
}

} // namespace idd
