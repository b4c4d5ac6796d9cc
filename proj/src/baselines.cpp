#include "idd/baselines.hpp"

#include "idd/census.hpp"
#include "idd/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <unordered_set>
#include <vector>

namespace idd {

namespace {

void check_scales(const std::vector<int>& scales, const char* what) {
    if (scales.size() < 2) {
        throw argument_error(std::string(what) +
                             ": need at least two scales for a fit");
    }
    for (std::size_t i = 0; i < scales.size(); ++i) {
        if (scales[i] < 1) {
            throw argument_error(std::string(what) +
                                 ": scales must be at least 1");
        }
        if (i > 0 && scales[i] <= scales[i - 1]) {
            throw argument_error(std::string(what) +
                                 ": scales must be strictly increasing");
        }
    }
}

struct fit_result {
    double slope = 0.0;
    double err = 0.0;
};

// Ordinary least squares slope of y on x with its standard error.
fit_result ols_slope(const std::vector<double>& x,
                     const std::vector<double>& y, std::size_t count) {
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(count);
    my /= static_cast<double>(count);
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) {
        throw domain_error("baseline fit: degenerate fit, all scales "
                           "coincide in log space");
    }
    fit_result out;
    out.slope = sxy / sxx;
    if (count > 2) {
        double ss_res = 0.0;
        for (std::size_t i = 0; i < count; ++i) {
            const double r = y[i] - my - out.slope * (x[i] - mx);
            ss_res += r * r;
        }
        out.err =
            std::sqrt(ss_res / (static_cast<double>(count - 2) * sxx));
    }
    return out;
}

// Fills per-scale slopes (fit over prefixes) plus the full-window fit.
void fill_fits(ScaleSeries& series, const std::vector<double>& log_x,
               const std::vector<double>& log_y) {
    const std::size_t m = log_x.size();
    series.per_scale_id.assign(
        m, std::numeric_limits<double>::quiet_NaN());
    series.per_scale_err.assign(
        m, std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = 1; i < m; ++i) {
        const fit_result fit = ols_slope(log_x, log_y, i + 1);
        series.per_scale_id[i] = fit.slope;
        series.per_scale_err[i] = fit.err;
    }
    const fit_result full = ols_slope(log_x, log_y, m);
    series.slope = full.slope;
    series.slope_err = full.err;
    series.fit_begin = 0;
    series.fit_end = m;
}

struct box_hash {
    std::size_t operator()(const std::vector<std::int64_t>& box) const {
        std::uint64_t h = 1469598103934665603ull;
        for (std::int64_t c : box) {
            std::uint64_t v = static_cast<std::uint64_t>(c);
            for (int shift = 0; shift < 64; shift += 8) {
                h ^= (v >> shift) & 0xffull;
                h *= 1099511628211ull;
            }
        }
        return static_cast<std::size_t>(h);
    }
};

} // namespace

ScaleSeries box_counting(const DiscretePointSet& points,
                         const std::vector<int>& sides) {
    points.validate();
    check_scales(sides, "box_counting");

    std::vector<std::int64_t> origin(points.dim,
                                     std::numeric_limits<std::int64_t>::max());
    for (std::size_t i = 0; i < points.n_points; ++i) {
        const auto row = points.row(i);
        for (std::size_t a = 0; a < points.dim; ++a) {
            origin[a] = std::min(origin[a],
                                 static_cast<std::int64_t>(row[a]));
        }
    }

    ScaleSeries series;
    bool any_structure = false;
    for (int side : sides) {
        std::unordered_set<std::vector<std::int64_t>, box_hash> boxes;
        std::vector<std::int64_t> box(points.dim);
        for (std::size_t i = 0; i < points.n_points; ++i) {
            const auto row = points.row(i);
            for (std::size_t a = 0; a < points.dim; ++a) {
                box[a] = (static_cast<std::int64_t>(row[a]) - origin[a]) /
                         side;
            }
            boxes.insert(box);
        }
        if (boxes.size() > 1) {
            any_structure = true;
        }
        series.scales.push_back(static_cast<double>(side));
        series.values.push_back(static_cast<double>(boxes.size()));
    }
    if (!any_structure) {
        throw domain_error(
            "box_counting: degenerate fit, a single occupied box at every "
            "side");
    }

    std::vector<double> log_x(series.scales.size());
    std::vector<double> log_y(series.scales.size());
    for (std::size_t i = 0; i < series.scales.size(); ++i) {
        log_x[i] = std::log(1.0 / series.scales[i]);
        log_y[i] = std::log(series.values[i]);
    }
    fill_fits(series, log_x, log_y);
    return series;
}

ScaleSeries fractal_dimension(const DiscretePointSet& points,
                              const std::vector<int>& radii,
                              unsigned workers) {
    points.validate();
    check_scales(radii, "fractal_dimension");

    const RadialCounts rc = radial_counts(points, radii.back(), workers);
    ScaleSeries series;
    for (int radius : radii) {
        double total = 0.0;
        for (std::size_t i = 0; i < rc.n_points(); ++i) {
            total += static_cast<double>(rc.at(i, radius));
        }
        series.scales.push_back(static_cast<double>(radius));
        series.values.push_back(total /
                                static_cast<double>(rc.n_points()));
    }

    // Radii with no neighbors at all sit below the sampling resolution
    // and cannot enter a log fit.
    std::vector<double> log_x;
    std::vector<double> log_y;
    for (std::size_t i = 0; i < series.scales.size(); ++i) {
        if (series.values[i] > 0.0) {
            log_x.push_back(std::log(series.scales[i]));
            log_y.push_back(std::log(series.values[i]));
        }
    }
    if (log_x.size() < 2) {
        throw domain_error("fractal_dimension: degenerate fit, fewer than "
                           "two radii have any neighbors");
    }
    fill_fits(series, log_x, log_y);

    // Re-align per-scale entries with the full radius list when empty
    // radii were dropped.
    if (log_x.size() != series.scales.size()) {
        std::vector<double> id(series.scales.size(),
                               std::numeric_limits<double>::quiet_NaN());
        std::vector<double> err(series.scales.size(),
                                std::numeric_limits<double>::quiet_NaN());
        std::size_t used = 0;
        for (std::size_t i = 0; i < series.scales.size(); ++i) {
            if (series.values[i] > 0.0) {
                id[i] = series.per_scale_id[used];
                err[i] = series.per_scale_err[used];
                ++used;
            }
        }
        series.per_scale_id = std::move(id);
        series.per_scale_err = std::move(err);
    }
    return series;
}

} // namespace idd
