#ifndef IDD_CENSUS_HPP
#define IDD_CENSUS_HPP

#include "idd/point_set.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace idd {

// Pairwise distance under the set's metric. Throws on length mismatch.
std::int64_t distance(std::span<const std::int32_t> x,
                      std::span<const std::int32_t> y, Metric metric,
                      std::int32_t box_side = 0);

// Per-point counts of other points within t1 and within t2 (closed balls,
// query point excluded).
struct NeighborCensus {
    std::vector<std::uint32_t> n;
    std::vector<std::uint32_t> k;
    int t1 = 0;
    int t2 = 0;
    Metric metric = Metric::L1;
    std::int32_t box_side = 0;

    std::size_t size() const { return n.size(); }
    std::uint64_t sum_n() const;
    std::uint64_t sum_k() const;
    double mean_k() const;
};

// Cumulative neighbor counts: at(i, t) = #{j != i : dist(i, j) <= t} for
// every t in [0, t_max]. One O(N^2 D) pass serves a whole radius scan.
class RadialCounts {
public:
    RadialCounts(std::size_t n_points, int t_max);

    std::uint32_t at(std::size_t i, int t) const {
        return counts_[i * stride_ + static_cast<std::size_t>(t)];
    }
    int t_max() const { return t_max_; }
    std::size_t n_points() const { return n_points_; }

    std::vector<std::uint32_t>& raw() { return counts_; }
    void cumulate();

private:
    std::size_t n_points_;
    int t_max_;
    std::size_t stride_;
    std::vector<std::uint32_t> counts_;
};

RadialCounts radial_counts(const DiscretePointSet& points, int t_max,
                           unsigned workers = 0);

NeighborCensus census_from_counts(const RadialCounts& rc, int t1, int t2,
                                  const DiscretePointSet& points);

// Convenience wrapper: radial_counts + census_from_counts. Requires
// 1 <= t1 < t2 and at least two points.
NeighborCensus census(const DiscretePointSet& points, int t1, int t2,
                      unsigned workers = 0);

} // namespace idd

#endif
