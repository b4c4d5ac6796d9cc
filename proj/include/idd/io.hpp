#ifndef IDD_IO_HPP
#define IDD_IO_HPP

#include "idd/baselines.hpp"
#include "idd/estimator.hpp"
#include "idd/point_set.hpp"
#include "idd/scan.hpp"
#include "idd/sequence.hpp"
#include "idd/validation.hpp"

#include <json.hpp>

#include <string>

namespace idd {

// Point-set text format: one point per row, whitespace-separated integer
// coordinates; '#' starts a comment line. The metric is supplied by the
// caller (it is a property of the analysis, not of the file).
DiscretePointSet read_matrix(const std::string& path,
                             Metric metric = Metric::L1,
                             std::int32_t box_side = 0);

void write_matrix(const std::string& path, const DiscretePointSet& points);

nlohmann::json to_json(const IdEstimate& estimate);
nlohmann::json to_json(const PosteriorGrid& posterior);
nlohmann::json to_json(const ScanRow& row);
nlohmann::json to_json(const ScanResult& result);
nlohmann::json to_json(const CdfPair& cdf);
nlohmann::json to_json(const BootstrapResult& bootstrap);
nlohmann::json to_json(const PoolReport& report);
nlohmann::json to_json(const ScaleSeries& series);
nlohmann::json to_json(const ClusterScan& scan);

void write_json(const std::string& path, const nlohmann::json& value);

// Two-column-per-cdf plot table: n, empirical, theoretical.
void write_cdf_table(const std::string& path, const CdfPair& cdf);

// Aligned-column text renderings for terminal output and plot scripts.
std::string scan_table(const ScanResult& result);
std::string series_table(const ScaleSeries& series);
std::string cluster_table(const ClusterScan& scan);

} // namespace idd

#endif
