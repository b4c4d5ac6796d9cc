#ifndef IDD_POINT_SET_HPP
#define IDD_POINT_SET_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace idd {

enum class Metric { L1, L1Periodic, Hamming };

std::string metric_name(Metric m);
Metric metric_from_name(const std::string& name);

// N points with D integer coordinates each, row-major, plus the metric the
// coordinates are meant to be compared under. For L1Periodic every
// coordinate must lie in [0, box_side).
struct DiscretePointSet {
    std::vector<std::int32_t> coords;
    std::size_t n_points = 0;
    std::size_t dim = 0;
    Metric metric = Metric::L1;
    std::int32_t box_side = 0;
    std::vector<std::string> labels; // optional, empty or size n_points

    std::span<const std::int32_t> row(std::size_t i) const {
        return {coords.data() + i * dim, dim};
    }

    // Throws argument_error on inconsistent sizes or out-of-box periodic
    // coordinates.
    void validate() const;
};

DiscretePointSet make_point_set(std::vector<std::int32_t> coords,
                                std::size_t dim, Metric metric,
                                std::int32_t box_side = 0);

// Keeps the first occurrence of each distinct coordinate row, preserving
// order. Labels (when present) follow their rows.
DiscretePointSet deduplicate(const DiscretePointSet& points);

// Subset by row indices (indices must be valid; duplicates allowed).
DiscretePointSet select_rows(const DiscretePointSet& points,
                             const std::vector<std::size_t>& indices);

} // namespace idd

#endif
