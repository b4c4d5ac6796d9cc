#include "idd/point_set.hpp"

#include "idd/errors.hpp"

#include <unordered_set>
#include <utility>

namespace idd {

std::string metric_name(Metric m) {
    switch (m) {
        case Metric::L1: return "l1";
        case Metric::L1Periodic: return "l1-periodic";
        case Metric::Hamming: return "hamming";
    }
    return "l1";
}

Metric metric_from_name(const std::string& name) {
    if (name == "l1") return Metric::L1;
    if (name == "l1-periodic") return Metric::L1Periodic;
    if (name == "hamming") return Metric::Hamming;
    throw argument_error("unknown metric '" + name +
                         "' (expected l1, l1-periodic or hamming)");
}

void DiscretePointSet::validate() const {
    if (dim == 0) throw argument_error("point set: dimension must be >= 1");
    if (coords.size() != n_points * dim)
        throw argument_error("point set: coordinate buffer size mismatch");
    if (!labels.empty() && labels.size() != n_points)
        throw argument_error("point set: label count mismatch");
    if (metric == Metric::L1Periodic) {
        if (box_side < 1)
            throw argument_error("point set: periodic metric needs box side >= 1");
        for (const auto c : coords)
            if (c < 0 || c >= box_side)
                throw argument_error(
                    "point set: periodic coordinates must lie in [0, box side)");
    }
}

DiscretePointSet make_point_set(std::vector<std::int32_t> coords,
                                std::size_t dim, Metric metric,
                                std::int32_t box_side) {
    DiscretePointSet ps;
    if (dim == 0) throw argument_error("point set: dimension must be >= 1");
    if (coords.empty())
        throw argument_error("point set: no coordinates given");
    if (coords.size() % dim != 0)
        throw argument_error("point set: coordinate count not divisible by dim");
    ps.n_points = coords.size() / dim;
    ps.dim = dim;
    ps.coords = std::move(coords);
    ps.metric = metric;
    ps.box_side = box_side;
    ps.validate();
    return ps;
}

namespace {

struct RowHash {
    const DiscretePointSet* ps;
    std::size_t operator()(std::size_t i) const {
        std::size_t h = 1469598103934665603ull;
        for (const auto c : ps->row(i)) {
            h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(c));
            h *= 1099511628211ull;
        }
        return h;
    }
};

struct RowEq {
    const DiscretePointSet* ps;
    bool operator()(std::size_t a, std::size_t b) const {
        const auto ra = ps->row(a);
        const auto rb = ps->row(b);
        for (std::size_t j = 0; j < ra.size(); ++j)
            if (ra[j] != rb[j]) return false;
        return true;
    }
};

} // namespace

DiscretePointSet deduplicate(const DiscretePointSet& points) {
    std::unordered_set<std::size_t, RowHash, RowEq> seen(
        16, RowHash{&points}, RowEq{&points});
    std::vector<std::size_t> keep;
    keep.reserve(points.n_points);
    for (std::size_t i = 0; i < points.n_points; ++i)
        if (seen.insert(i).second) keep.push_back(i);
    return select_rows(points, keep);
}

DiscretePointSet select_rows(const DiscretePointSet& points,
                             const std::vector<std::size_t>& indices) {
    DiscretePointSet out;
    out.dim = points.dim;
    out.metric = points.metric;
    out.box_side = points.box_side;
    out.n_points = indices.size();
    out.coords.reserve(indices.size() * points.dim);
    for (const auto i : indices) {
        if (i >= points.n_points)
            throw argument_error("select_rows: index out of range");
        const auto r = points.row(i);
        out.coords.insert(out.coords.end(), r.begin(), r.end());
    }
    if (!points.labels.empty()) {
        out.labels.reserve(indices.size());
        for (const auto i : indices) out.labels.push_back(points.labels[i]);
    }
    return out;
}

} // namespace idd
