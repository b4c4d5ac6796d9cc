#include "idd/io.hpp"

#include "idd/errors.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

namespace idd {

DiscretePointSet read_matrix(const std::string& path, Metric metric,
                             std::int32_t box_side) {
    std::ifstream in(path);
    if (!in) {
        throw io_error("read_matrix: cannot open '" + path + "'");
    }
    std::vector<std::int32_t> coords;
    std::size_t dim = 0;
    std::size_t rows = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) {
            line.resize(hash);
        }
        std::istringstream tokens(line);
        std::vector<std::int32_t> row;
        std::string token;
        while (tokens >> token) {
            try {
                std::size_t used = 0;
                const long long value = std::stoll(token, &used);
                if (used != token.size()) {
                    throw std::invalid_argument(token);
                }
                if (value < INT32_MIN || value > INT32_MAX) {
                    throw io_error("read_matrix: coordinate " + token +
                                   " out of 32-bit range at line " +
                                   std::to_string(line_no) + " of '" +
                                   path + "'");
                }
                row.push_back(static_cast<std::int32_t>(value));
            } catch (const std::invalid_argument&) {
                throw io_error("read_matrix: non-integer token '" + token +
                               "' at line " + std::to_string(line_no) +
                               " of '" + path + "'");
            } catch (const std::out_of_range&) {
                throw io_error("read_matrix: coordinate " + token +
                               " out of range at line " +
                               std::to_string(line_no) + " of '" + path +
                               "'");
            }
        }
        if (row.empty()) {
            continue;
        }
        if (dim == 0) {
            dim = row.size();
        } else if (row.size() != dim) {
            throw io_error("read_matrix: row at line " +
                           std::to_string(line_no) + " has " +
                           std::to_string(row.size()) +
                           " coordinates, expected " + std::to_string(dim));
        }
        coords.insert(coords.end(), row.begin(), row.end());
        ++rows;
    }
    if (rows == 0) {
        throw io_error("read_matrix: no data rows in '" + path + "'");
    }
    return make_point_set(std::move(coords), dim, metric, box_side);
}

void write_matrix(const std::string& path,
                  const DiscretePointSet& points) {
    std::ofstream out(path);
    if (!out) {
        throw io_error("write_matrix: cannot open '" + path +
                       "' for writing");
    }
    for (std::size_t i = 0; i < points.n_points; ++i) {
        const auto row = points.row(i);
        for (std::size_t a = 0; a < points.dim; ++a) {
            if (a > 0) {
                out << ' ';
            }
            out << row[a];
        }
        out << '\n';
    }
    if (!out) {
        throw io_error("write_matrix: write to '" + path + "' failed");
    }
}

nlohmann::json to_json(const IdEstimate& estimate) {
    return nlohmann::json{{"method", method_name(estimate.method)},
                          {"t1", estimate.t1},
                          {"t2", estimate.t2},
                          {"d", estimate.d},
                          {"err", estimate.err},
                          {"n_points", estimate.n_points_used}};
}

nlohmann::json to_json(const PosteriorGrid& posterior) {
    return nlohmann::json{{"d_grid", posterior.d_grid},
                          {"density", posterior.density},
                          {"mean", posterior.mean},
                          {"variance", posterior.variance}};
}

nlohmann::json to_json(const ScanRow& row) {
    if (row.skipped) {
        return nlohmann::json{{"t2", row.t2},
                              {"t1", row.t1},
                              {"skipped", true},
                              {"note", row.note}};
    }
    nlohmann::json value = to_json(row.estimate);
    value["t1"] = row.t1;
    value["t2"] = row.t2;
    value["mean_k"] = row.mean_k;
    value["ks"] = row.ks;
    return value;
}

nlohmann::json to_json(const ScanResult& result) {
    nlohmann::json rows = nlohmann::json::array();
    for (const ScanRow& row : result.rows) {
        rows.push_back(to_json(row));
    }
    return nlohmann::json{{"rows", rows}};
}

nlohmann::json to_json(const CdfPair& cdf) {
    return nlohmann::json{{"support", cdf.support},
                          {"empirical", cdf.empirical},
                          {"theoretical", cdf.theoretical},
                          {"ks", cdf.ks}};
}

nlohmann::json to_json(const BootstrapResult& bootstrap) {
    return nlohmann::json{{"ks_observed", bootstrap.ks_observed},
                          {"p_value", bootstrap.p_value},
                          {"draws_requested", bootstrap.draws_requested},
                          {"draws_failed", bootstrap.draws_failed},
                          {"ks_null", bootstrap.ks_null}};
}

nlohmann::json to_json(const PoolReport& report) {
    return nlohmann::json{{"chi_corr", report.chi_corr},
                          {"chi_ind", report.chi_ind},
                          {"std_corr", report.std_corr},
                          {"std_ind", report.std_ind},
                          {"realizations", report.realizations},
                          {"skipped_corr", report.skipped_corr},
                          {"skipped_ind", report.skipped_ind}};
}

nlohmann::json to_json(const ScaleSeries& series) {
    return nlohmann::json{{"scales", series.scales},
                          {"values", series.values},
                          {"per_scale_id", series.per_scale_id},
                          {"per_scale_err", series.per_scale_err},
                          {"slope", series.slope},
                          {"slope_err", series.slope_err}};
}

nlohmann::json to_json(const ClusterScan& scan) {
    nlohmann::json clusters = nlohmann::json::array();
    for (std::size_t c = 0; c < scan.cluster_ids.size(); ++c) {
        clusters.push_back(
            nlohmann::json{{"cluster", scan.cluster_ids[c]},
                           {"population", scan.populations[c]},
                           {"scan", to_json(scan.scans[c])}});
    }
    nlohmann::json aggregate = nlohmann::json::array();
    for (const ClusterAggregateRow& row : scan.aggregate) {
        aggregate.push_back(
            nlohmann::json{{"t2", row.t2},
                           {"weighted_mean", row.weighted_mean},
                           {"weighted_std", row.weighted_std},
                           {"clusters_used", row.clusters_used}});
    }
    return nlohmann::json{{"clusters", clusters},
                          {"aggregate", aggregate}};
}

void write_json(const std::string& path, const nlohmann::json& value) {
    std::ofstream out(path);
    if (!out) {
        throw io_error("write_json: cannot open '" + path +
                       "' for writing");
    }
    out << value.dump(2) << '\n';
    if (!out) {
        throw io_error("write_json: write to '" + path + "' failed");
    }
}

void write_cdf_table(const std::string& path, const CdfPair& cdf) {
    std::ofstream out(path);
    if (!out) {
        throw io_error("write_cdf_table: cannot open '" + path +
                       "' for writing");
    }
    out << "# n empirical theoretical\n";
    out << std::setprecision(12);
    for (std::size_t i = 0; i < cdf.support.size(); ++i) {
        out << cdf.support[i] << ' '
            << (i < cdf.empirical.size() ? cdf.empirical[i] : 0.0) << ' '
            << cdf.theoretical[i] << '\n';
    }
    if (!out) {
        throw io_error("write_cdf_table: write to '" + path + "' failed");
    }
}

std::string scan_table(const ScanResult& result) {
    std::ostringstream out;
    out << std::left << std::setw(6) << "t2" << std::setw(6) << "t1"
        << std::setw(14) << "d" << std::setw(14) << "err" << std::setw(12)
        << "mean_k" << std::setw(12) << "ks" << "note" << '\n';
    for (const ScanRow& row : result.rows) {
        out << std::left << std::setw(6) << row.t2 << std::setw(6)
            << row.t1;
        if (row.skipped) {
            out << std::setw(14) << "-" << std::setw(14) << "-"
                << std::setw(12) << "-" << std::setw(12) << "-"
                << row.note;
        } else {
            out << std::setw(14) << std::setprecision(6) << std::fixed
                << row.estimate.d << std::setw(14) << row.estimate.err
                << std::setw(12) << std::setprecision(3) << row.mean_k
                << std::setw(12) << std::setprecision(4) << row.ks;
            out.unsetf(std::ios::fixed);
            out << std::setprecision(6);
        }
        out << '\n';
    }
    return out.str();
}

std::string series_table(const ScaleSeries& series) {
    std::ostringstream out;
    out << std::left << std::setw(10) << "scale" << std::setw(16)
        << "value" << std::setw(14) << "id" << "id_err" << '\n';
    for (std::size_t i = 0; i < series.scales.size(); ++i) {
        out << std::left << std::setw(10) << series.scales[i]
            << std::setw(16) << series.values[i] << std::setw(14)
            << series.per_scale_id[i] << series.per_scale_err[i] << '\n';
    }
    out << "# full-window slope " << series.slope << " +- "
        << series.slope_err << '\n';
    return out.str();
}

std::string cluster_table(const ClusterScan& scan) {
    std::ostringstream out;
    out << std::left << std::setw(6) << "t2" << std::setw(16)
        << "weighted_mean" << std::setw(16) << "weighted_std"
        << "clusters" << '\n';
    for (const ClusterAggregateRow& row : scan.aggregate) {
        out << std::left << std::setw(6) << row.t2 << std::setw(16)
            << row.weighted_mean << std::setw(16) << row.weighted_std
            << row.clusters_used << '\n';
    }
    return out.str();
}

} // namespace idd
