// idd: batch CLI for intrinsic-dimension estimation on discrete data.
//
// Subcommands: estimate | scan | generate | baseline | pipeline | pool.
// Every run writes its resolved configuration (config.json, including the
// tool version) into the output directory next to the data artifacts, and
// reports failures as machine-readable JSON with a nonzero exit status.

#include "idd/baselines.hpp"
#include "idd/census.hpp"
#include "idd/errors.hpp"
#include "idd/estimator.hpp"
#include "idd/generators.hpp"
#include "idd/io.hpp"
#include "idd/point_set.hpp"
#include "idd/scan.hpp"
#include "idd/sequence.hpp"
#include "idd/validation.hpp"
#include "idd/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

std::string error_type_name(const idd::error& e) {
    if (dynamic_cast<const idd::argument_error*>(&e)) return "argument_error";
    if (dynamic_cast<const idd::domain_error*>(&e)) return "domain_error";
    if (dynamic_cast<const idd::overflow_error*>(&e)) return "overflow_error";
    if (dynamic_cast<const idd::scale_too_small_error*>(&e))
        return "scale_too_small_error";
    if (dynamic_cast<const idd::dimension_out_of_range_error*>(&e))
        return "dimension_out_of_range_error";
    if (dynamic_cast<const idd::no_neighbors_error*>(&e))
        return "no_neighbors_error";
    if (dynamic_cast<const idd::io_error*>(&e)) return "io_error";
    return "error";
}

std::string join_path(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

int emit_error(const std::string& out_dir, const std::string& type,
               const std::string& message) {
    json e;
    e["error"]["type"] = type;
    e["error"]["message"] = message;
    std::cout << e.dump(2) << '\n';
    if (!out_dir.empty()) {
        try {
            std::filesystem::create_directories(out_dir);
            idd::write_json(join_path(out_dir, "error.json"), e);
        } catch (...) {
            // the console JSON is the contract; a failing disk write must
            // not mask the original error
        }
    }
    return 1;
}

std::uint64_t resolve_seed(bool flag_given, std::uint64_t flag_value) {
    if (flag_given) return flag_value;
    const char* env = std::getenv("IDD_SEED");
    if (env == nullptr || *env == '\0') return 1;
    const std::string text(env);
    try {
        std::size_t pos = 0;
        const unsigned long long value = std::stoull(text, &pos);
        if (pos != text.size())
            throw idd::argument_error("IDD_SEED must be a nonnegative "
                                      "integer, got '" +
                                      text + "'");
        return static_cast<std::uint64_t>(value);
    } catch (const idd::error&) {
        throw;
    } catch (const std::exception&) {
        throw idd::argument_error(
            "IDD_SEED must be a nonnegative integer, got '" + text + "'");
    }
}

int parse_int_field(const std::string& text, const std::string& what) {
    try {
        std::size_t pos = 0;
        const long value = std::stol(text, &pos);
        if (pos != text.size())
            throw idd::argument_error(what + ": '" + text +
                                      "' is not an integer");
        if (value < std::numeric_limits<int>::min() ||
            value > std::numeric_limits<int>::max())
            throw idd::argument_error(what + ": '" + text +
                                      "' is out of range");
        return static_cast<int>(value);
    } catch (const idd::error&) {
        throw;
    } catch (const std::exception&) {
        throw idd::argument_error(what + ": '" + text +
                                  "' is not an integer");
    }
}

std::vector<std::string> split_on(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::size_t begin = 0;
    while (true) {
        const std::size_t end = text.find(sep, begin);
        parts.push_back(text.substr(begin, end - begin));
        if (end == std::string::npos) break;
        begin = end + 1;
    }
    return parts;
}

// "A:B:STEP" -> {A, A+STEP, ..., <= B}, inclusive arithmetic range.
std::vector<int> parse_range(const std::string& text) {
    const auto parts = split_on(text, ':');
    if (parts.size() != 3)
        throw idd::argument_error("range must look like A:B:STEP, got '" +
                                  text + "'");
    const int first = parse_int_field(parts[0], "range start");
    const int last = parse_int_field(parts[1], "range stop");
    const int step = parse_int_field(parts[2], "range step");
    if (step < 1)
        throw idd::argument_error("range step must be >= 1, got " +
                                  std::to_string(step));
    if (last < first)
        throw idd::argument_error("range stop " + std::to_string(last) +
                                  " is below range start " +
                                  std::to_string(first));
    std::vector<int> values;
    for (int v = first; v <= last; v += step) values.push_back(v);
    return values;
}

std::vector<int> parse_int_list(const std::string& text,
                                const std::string& what) {
    std::vector<int> values;
    for (const auto& part : split_on(text, ','))
        values.push_back(parse_int_field(part, what));
    return values;
}

std::vector<int> resolve_scales(const std::vector<int>& explicit_values,
                                const std::string& range,
                                const std::string& what) {
    std::vector<int> values = explicit_values;
    if (!range.empty()) {
        const auto from_range = parse_range(range);
        values.insert(values.end(), from_range.begin(), from_range.end());
    }
    if (values.empty())
        throw idd::argument_error("no " + what +
                                  " scales given (use --t2 or --t2-range)");
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return values;
}

idd::Method method_from_flag(const std::string& name) {
    if (name == "mle") return idd::Method::MleDiscrete;
    if (name == "bayes") return idd::Method::BayesDiscrete;
    if (name == "continuum") return idd::Method::MleContinuum;
    if (name == "bayes-continuum") return idd::Method::BayesContinuum;
    throw idd::argument_error("unknown method '" + name +
                              "', expected mle, bayes, continuum, or "
                              "bayes-continuum");
}

struct Options {
    std::string input;
    std::string out;
    std::string metric = "l1";
    int box_side = 0;
    int t1 = 0;
    std::vector<int> t2;
    std::string t2_range;
    double ratio = 0.5;
    std::string method = "mle";
    std::string encoding = "binary-spin";
    int k_clusters = 0;
    int filter_radius = 10;
    int filter_min_neighbors = 10;
    bool dedup = false;
    bool pipeline_dedup = true;
    std::uint64_t seed = 1;
    unsigned workers = 0;
    int grid_size = 1000;
    int bootstrap = 0;
    std::string family;
    int id = 2;
    int side = 50;
    std::uint64_t n_points = 2500;
    bool periodic = true;
    double sigma = 5.0;
    bool correlated = false;
    int n_spins = 50;
    double phi0 = -0.5;
    double eps_sigma = 10.0;
    int level = 5;
    int realizations = 200;
    double d_gt = 0.0;
    int pca_components = 2;
    bool drop_invalid = false;
    bool fasta = false;
    std::string bc_sides = "1,2,4,8,16,32";
};

std::string require_out(const Options& o) {
    if (o.out.empty()) throw idd::argument_error("missing --out directory");
    std::filesystem::create_directories(o.out);
    return o.out;
}

idd::DiscretePointSet load_points(const Options& o) {
    if (o.input.empty()) throw idd::argument_error("missing --input path");
    const idd::Metric metric = idd::metric_from_name(o.metric);
    auto points = idd::read_matrix(o.input, metric,
                                   static_cast<std::int32_t>(o.box_side));
    if (o.dedup) points = idd::deduplicate(points);
    return points;
}

int resolve_t1(const Options& o, int t2) {
    if (o.t1 > 0) return o.t1;
    return std::max(1, static_cast<int>(std::lround(o.ratio * t2)));
}

json common_config(const Options& o, const std::string& command) {
    json cfg;
    cfg["command"] = command;
    cfg["version"] = idd::k_version;
    cfg["seed"] = o.seed;
    cfg["workers"] = o.workers;
    cfg["out"] = o.out;
    return cfg;
}

// ---------------------------------------------------------------- estimate

int run_estimate(const Options& o) {
    const std::string out = require_out(o);
    if (o.t2.size() != 1)
        throw idd::argument_error("estimate needs exactly one --t2");
    const int t2 = o.t2.front();
    const int t1 = resolve_t1(o, t2);
    const idd::Method method = method_from_flag(o.method);

    json cfg = common_config(o, "estimate");
    cfg["input"] = o.input;
    cfg["metric"] = o.metric;
    cfg["box_side"] = o.box_side;
    cfg["dedup"] = o.dedup;
    cfg["t1"] = t1;
    cfg["t2"] = t2;
    cfg["ratio"] = o.ratio;
    cfg["method"] = o.method;
    cfg["grid_size"] = o.grid_size;
    cfg["bootstrap"] = o.bootstrap;
    idd::write_json(join_path(out, "config.json"), cfg);

    const auto points = load_points(o);
    const auto census = idd::census(points, t1, t2, o.workers);

    idd::IdEstimate estimate;
    bool have_posterior = false;
    idd::PosteriorGrid posterior;
    switch (method) {
    case idd::Method::MleDiscrete:
        estimate = idd::mle_discrete(census);
        break;
    case idd::Method::BayesDiscrete:
        posterior = idd::bayes_discrete(census, o.grid_size);
        estimate.d = posterior.mean;
        estimate.err = posterior.std_dev();
        estimate.method = idd::Method::BayesDiscrete;
        estimate.t1 = t1;
        estimate.t2 = t2;
        estimate.n_points_used = census.size();
        have_posterior = true;
        break;
    case idd::Method::MleContinuum: {
        const double r = static_cast<double>(t1) / static_cast<double>(t2);
        const double sum_n = static_cast<double>(census.sum_n());
        const double sum_k = static_cast<double>(census.sum_k());
        estimate.d = idd::mle_continuum(sum_n, sum_k, r);
        estimate.err = std::sqrt(idd::cr_variance_continuum(
            estimate.d, r, census.size(), census.mean_k()));
        estimate.method = idd::Method::MleContinuum;
        estimate.t1 = t1;
        estimate.t2 = t2;
        estimate.n_points_used = census.size();
        break;
    }
    case idd::Method::BayesContinuum: {
        const double r = static_cast<double>(t1) / static_cast<double>(t2);
        const auto moments = idd::bayes_continuum_moments(
            static_cast<double>(census.sum_n()),
            static_cast<double>(census.sum_k()), r);
        estimate.d = moments.mean;
        estimate.err = std::sqrt(moments.variance);
        estimate.method = idd::Method::BayesContinuum;
        estimate.t1 = t1;
        estimate.t2 = t2;
        estimate.n_points_used = census.size();
        break;
    }
    }

    const auto cdf = idd::ks_validate(census, estimate.d);

    json result;
    result["estimate"] = idd::to_json(estimate);
    result["sum_n"] = census.sum_n();
    result["sum_k"] = census.sum_k();
    result["mean_k"] = census.mean_k();
    result["ks"] = cdf.ks;
    if (o.bootstrap > 0) {
        const auto boot = idd::ks_bootstrap(census, estimate.d, o.bootstrap,
                                            o.seed, o.workers);
        result["bootstrap"] = idd::to_json(boot);
    }
    idd::write_json(join_path(out, "estimate.json"), result);
    idd::write_cdf_table(join_path(out, "cdf.txt"), cdf);
    if (have_posterior)
        idd::write_json(join_path(out, "posterior.json"),
                        idd::to_json(posterior));

    std::cout << "d = " << estimate.d << " +- " << estimate.err << "  ("
              << idd::method_name(estimate.method) << ", t1=" << t1
              << ", t2=" << t2 << ", n=" << estimate.n_points_used
              << ", ks=" << cdf.ks << ")\n";
    return 0;
}

// -------------------------------------------------------------------- scan

int run_scan(const Options& o) {
    const std::string out = require_out(o);
    const auto t2_list = resolve_scales(o.t2, o.t2_range, "scan");
    const idd::Method method = method_from_flag(o.method);

    json cfg = common_config(o, "scan");
    cfg["input"] = o.input;
    cfg["metric"] = o.metric;
    cfg["box_side"] = o.box_side;
    cfg["dedup"] = o.dedup;
    cfg["t2_list"] = t2_list;
    cfg["ratio"] = o.ratio;
    cfg["method"] = o.method;
    idd::write_json(join_path(out, "config.json"), cfg);

    const auto points = load_points(o);
    const auto result = idd::scan(points, t2_list, o.ratio, method, o.workers);

    idd::write_json(join_path(out, "scan.json"), idd::to_json(result));
    const std::string table = idd::scan_table(result);
    std::ofstream txt(join_path(out, "scan.txt"));
    if (!txt) throw idd::io_error("cannot write " + join_path(out, "scan.txt"));
    txt << table;
    txt.close();

    std::cout << table;
    return 0;
}

// ---------------------------------------------------------------- generate

int run_generate(const Options& o) {
    const std::string out = require_out(o);

    idd::DiscretePointSet points;
    json cfg = common_config(o, "generate");
    cfg["family"] = o.family;
    bool have_alphas = false;
    std::vector<std::vector<double>> alphas;

    if (o.family == "uniform") {
        points = idd::gen_uniform_lattice(o.id, o.side,
                                          static_cast<std::size_t>(o.n_points),
                                          o.periodic, o.seed);
        cfg["id"] = o.id;
        cfg["side"] = o.side;
        cfg["n_points"] = o.n_points;
        cfg["periodic"] = o.periodic;
    } else if (o.family == "gaussian") {
        points = idd::gen_gaussian_lattice(
            o.id, o.sigma, o.correlated,
            static_cast<std::size_t>(o.n_points), o.seed);
        cfg["id"] = o.id;
        cfg["sigma"] = o.sigma;
        cfg["correlated"] = o.correlated;
        cfg["n_points"] = o.n_points;
    } else if (o.family == "spin") {
        idd::SpinEnsembleSpec spec;
        spec.intrinsic_dim = o.id;
        spec.n_spins = o.n_spins;
        spec.n_points = static_cast<std::size_t>(o.n_points);
        spec.phi0 = o.phi0;
        spec.eps_sigma = o.eps_sigma;
        spec.seed = o.seed;
        auto ensemble = idd::gen_spin(spec);
        points = std::move(ensemble.points);
        alphas = std::move(ensemble.alphas);
        have_alphas = true;
        cfg["id"] = o.id;
        cfg["n_spins"] = o.n_spins;
        cfg["n_points"] = o.n_points;
        cfg["phi0"] = o.phi0;
        cfg["eps_sigma"] = o.eps_sigma;
    } else if (o.family == "koch") {
        points = idd::gen_koch(o.level);
        cfg["level"] = o.level;
    } else if (o.family == "sierpinski") {
        points = idd::gen_sierpinski(o.level);
        cfg["level"] = o.level;
    } else if (o.family.empty()) {
        throw idd::argument_error("missing --family (uniform, gaussian, "
                                  "spin, koch, or sierpinski)");
    } else {
        throw idd::argument_error("unknown family '" + o.family +
                                  "', expected uniform, gaussian, spin, "
                                  "koch, or sierpinski");
    }

    cfg["metric"] = idd::metric_name(points.metric);
    cfg["box_side"] = points.box_side;
    cfg["dim"] = points.dim;
    cfg["generated_points"] = points.n_points;
    idd::write_json(join_path(out, "config.json"), cfg);

    idd::write_matrix(join_path(out, "points.txt"), points);
    if (have_alphas)
        idd::write_json(join_path(out, "alphas.json"), json(alphas));
    if (o.fasta) {
        idd::SequenceSet seqs;
        seqs.sequences = idd::sequences_from_bits(points);
        seqs.ids.reserve(seqs.sequences.size());
        for (std::size_t i = 0; i < seqs.sequences.size(); ++i)
            seqs.ids.push_back("s" + std::to_string(i));
        idd::write_fasta(join_path(out, "sequences.fasta"), seqs);
    }

    std::cout << "wrote " << points.n_points << " points of dim "
              << points.dim << " (metric " << idd::metric_name(points.metric)
              << ") to " << join_path(out, "points.txt") << "\n";
    return 0;
}

// ---------------------------------------------------------------- baseline

int run_baseline(const Options& o) {
    const std::string out = require_out(o);
    const auto sides = parse_int_list(o.bc_sides, "box side");
    std::vector<int> radii;
    if (!o.t2.empty() || !o.t2_range.empty())
        radii = resolve_scales(o.t2, o.t2_range, "radius");
    else
        radii = parse_range("1:10:1");

    json cfg = common_config(o, "baseline");
    cfg["input"] = o.input;
    cfg["metric"] = o.metric;
    cfg["box_side"] = o.box_side;
    cfg["dedup"] = o.dedup;
    cfg["bc_sides"] = sides;
    cfg["fd_radii"] = radii;
    idd::write_json(join_path(out, "config.json"), cfg);

    const auto points = load_points(o);

    const auto bc = idd::box_counting(points, sides);
    idd::write_json(join_path(out, "bc.json"), idd::to_json(bc));
    {
        std::ofstream txt(join_path(out, "bc.txt"));
        if (!txt)
            throw idd::io_error("cannot write " + join_path(out, "bc.txt"));
        txt << idd::series_table(bc);
    }

    const auto fd = idd::fractal_dimension(points, radii, o.workers);
    idd::write_json(join_path(out, "fd.json"), idd::to_json(fd));
    {
        std::ofstream txt(join_path(out, "fd.txt"));
        if (!txt)
            throw idd::io_error("cannot write " + join_path(out, "fd.txt"));
        txt << idd::series_table(fd);
    }

    std::cout << "box counting slope   = " << bc.slope << " +- "
              << bc.slope_err << "\n"
              << "fractal dim slope    = " << fd.slope << " +- "
              << fd.slope_err << "\n";
    return 0;
}

// ---------------------------------------------------------------- pipeline

int run_pipeline(const Options& o) {
    const std::string out = require_out(o);
    const auto t2_list = resolve_scales(o.t2, o.t2_range, "scan");
    const idd::Method method = method_from_flag(o.method);
    const idd::Encoding encoding = idd::encoding_from_name(o.encoding);

    if (o.input.empty()) throw idd::argument_error("missing --input path");
    auto seqs = idd::read_fasta(o.input, o.drop_invalid, false);
    seqs.encoding = encoding;
    auto points = idd::encode(seqs);
    points.labels = seqs.ids;

    const std::size_t n_encoded = points.n_points;
    if (o.pipeline_dedup) points = idd::deduplicate(points);
    const std::size_t n_deduped = points.n_points;

    const auto filtered = idd::filter_isolated(
        points, o.filter_radius, o.filter_min_neighbors, o.workers);
    const std::size_t n_filtered = filtered.n_points;

    const int k = o.k_clusters > 0
                      ? o.k_clusters
                      : std::max(2, static_cast<int>(std::lround(
                                        static_cast<double>(n_filtered) /
                                        500.0)));

    json cfg = common_config(o, "pipeline");
    cfg["input"] = o.input;
    cfg["encoding"] = o.encoding;
    cfg["dedup"] = o.pipeline_dedup;
    cfg["drop_invalid"] = o.drop_invalid;
    cfg["filter_radius"] = o.filter_radius;
    cfg["filter_min_neighbors"] = o.filter_min_neighbors;
    cfg["k_clusters"] = k;
    cfg["t2_list"] = t2_list;
    cfg["ratio"] = o.ratio;
    cfg["method"] = o.method;
    cfg["pca_components"] = o.pca_components;
    idd::write_json(join_path(out, "config.json"), cfg);

    const auto labels = idd::cluster(filtered, k, o.seed, 100, o.workers);

    {
        std::ofstream txt(join_path(out, "labels.txt"));
        if (!txt)
            throw idd::io_error("cannot write " +
                                join_path(out, "labels.txt"));
        for (std::size_t i = 0; i < filtered.n_points; ++i) {
            const std::string id = filtered.labels.empty()
                                       ? std::to_string(i)
                                       : filtered.labels[i];
            txt << id << ' ' << labels[i] << '\n';
        }
    }

    const auto cluster_scan = idd::per_cluster_scan(
        filtered, labels, t2_list, o.ratio, method, o.workers);
    idd::write_json(join_path(out, "cluster_scan.json"),
                    idd::to_json(cluster_scan));
    const std::string table = idd::cluster_table(cluster_scan);
    {
        std::ofstream txt(join_path(out, "cluster_scan.txt"));
        if (!txt)
            throw idd::io_error("cannot write " +
                                join_path(out, "cluster_scan.txt"));
        txt << table;
    }

    // Local PCA per cluster at the member closest to the cluster mean,
    // probing the largest scan radius.
    const int pca_t2 = t2_list.back();
    json pca_rows = json::array();
    for (int c = 0; c < k; ++c) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < filtered.n_points; ++i)
            if (labels[i] == c) members.push_back(i);
        json row;
        row["cluster"] = c;
        row["population"] = members.size();
        if (members.empty()) {
            row["skipped"] = true;
            row["note"] = "empty cluster";
            pca_rows.push_back(row);
            continue;
        }
        std::vector<double> centroid(filtered.dim, 0.0);
        for (const auto i : members) {
            const auto r = filtered.row(i);
            for (std::size_t j = 0; j < filtered.dim; ++j)
                centroid[j] += static_cast<double>(r[j]);
        }
        for (auto& v : centroid) v /= static_cast<double>(members.size());
        std::size_t center = members.front();
        double best = std::numeric_limits<double>::infinity();
        for (const auto i : members) {
            const auto r = filtered.row(i);
            double dist = 0.0;
            for (std::size_t j = 0; j < filtered.dim; ++j)
                dist += std::abs(static_cast<double>(r[j]) - centroid[j]);
            if (dist < best) {
                best = dist;
                center = i;
            }
        }
        try {
            const auto pca = idd::local_pca(filtered, center, pca_t2,
                                            o.pca_components);
            row["center_index"] = pca.center_index;
            if (!filtered.labels.empty())
                row["center_id"] = filtered.labels[pca.center_index];
            row["t2"] = pca.t2;
            row["n_used"] = pca.n_used;
            row["eigenvalues"] = pca.eigenvalues;
            row["eigenvectors"] = pca.eigenvectors;
        } catch (const idd::error& e) {
            row["skipped"] = true;
            row["note"] = e.what();
        }
        pca_rows.push_back(row);
    }
    idd::write_json(join_path(out, "pca.json"), pca_rows);

    json summary;
    summary["n_sequences"] = seqs.size();
    summary["sequence_length"] =
        seqs.size() == 0 ? 0 : seqs.sequences.front().size();
    summary["encoding"] = idd::encoding_name(encoding);
    summary["dim"] = filtered.dim;
    summary["n_encoded"] = n_encoded;
    summary["n_after_dedup"] = n_deduped;
    summary["n_after_filter"] = n_filtered;
    summary["k_clusters"] = k;
    json agg = json::array();
    for (const auto& a : cluster_scan.aggregate) {
        json r;
        r["t2"] = a.t2;
        r["weighted_mean"] = a.weighted_mean;
        r["weighted_std"] = a.weighted_std;
        r["clusters_used"] = a.clusters_used;
        agg.push_back(r);
    }
    summary["aggregate"] = agg;
    idd::write_json(join_path(out, "summary.json"), summary);

    std::cout << "sequences " << seqs.size() << " -> encoded " << n_encoded
              << " -> deduped " << n_deduped << " -> filtered " << n_filtered
              << ", k = " << k << "\n"
              << table;
    return 0;
}

// -------------------------------------------------------------------- pool

int run_pool(const Options& o) {
    const std::string out = require_out(o);
    if (o.t2.size() != 1)
        throw idd::argument_error("pool needs exactly one --t2");
    const int t2 = o.t2.front();
    const int t1 = resolve_t1(o, t2);
    const double d_gt = o.d_gt > 0.0 ? o.d_gt : static_cast<double>(o.id);

    idd::DatasetFactory factory;
    json cfg = common_config(o, "pool");
    cfg["family"] = o.family.empty() ? "uniform" : o.family;
    const std::string family = o.family.empty() ? "uniform" : o.family;
    const auto n_points = static_cast<std::size_t>(o.n_points);
    if (family == "uniform") {
        const int id = o.id;
        const int side = o.side;
        const bool periodic = o.periodic;
        factory = [id, side, n_points, periodic](std::uint64_t s) {
            return idd::gen_uniform_lattice(id, side, n_points, periodic, s);
        };
        cfg["id"] = o.id;
        cfg["side"] = o.side;
        cfg["periodic"] = o.periodic;
    } else if (family == "gaussian") {
        const int id = o.id;
        const double sigma = o.sigma;
        const bool correlated = o.correlated;
        factory = [id, sigma, correlated, n_points](std::uint64_t s) {
            return idd::gen_gaussian_lattice(id, sigma, correlated, n_points,
                                             s);
        };
        cfg["id"] = o.id;
        cfg["sigma"] = o.sigma;
        cfg["correlated"] = o.correlated;
    } else if (family == "spin") {
        idd::SpinEnsembleSpec spec;
        spec.intrinsic_dim = o.id;
        spec.n_spins = o.n_spins;
        spec.n_points = n_points;
        spec.phi0 = o.phi0;
        spec.eps_sigma = o.eps_sigma;
        factory = [spec](std::uint64_t s) {
            idd::SpinEnsembleSpec with_seed = spec;
            with_seed.seed = s;
            return idd::gen_spin(with_seed).points;
        };
        cfg["id"] = o.id;
        cfg["n_spins"] = o.n_spins;
    } else {
        throw idd::argument_error("pool supports families uniform, "
                                  "gaussian, and spin, got '" +
                                  family + "'");
    }
    cfg["n_points"] = o.n_points;
    cfg["d_gt"] = d_gt;
    cfg["t1"] = t1;
    cfg["t2"] = t2;
    cfg["realizations"] = o.realizations;
    idd::write_json(join_path(out, "config.json"), cfg);

    const auto report = idd::pool_experiment(factory, d_gt, t1, t2,
                                             o.realizations, o.seed,
                                             o.workers);
    idd::write_json(join_path(out, "pool.json"), idd::to_json(report));

    std::cout << "std(chi_corr) = " << report.std_corr << "  (skipped "
              << report.skipped_corr << "/" << report.realizations << ")\n"
              << "std(chi_ind)  = " << report.std_ind << "  (skipped "
              << report.skipped_ind << "/" << report.realizations << ")\n";
    return 0;
}

void add_common_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--seed", o.seed,
                    "RNG seed (falls back to IDD_SEED, then 1)");
    cmd->add_option("--workers", o.workers,
                    "worker threads (0 = available parallelism)");
    cmd->add_option("--out", o.out, "output directory");
}

void add_input_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--input", o.input, "input file");
    cmd->add_option("--metric", o.metric, "l1, l1-periodic, or hamming");
    cmd->add_option("--box-side", o.box_side,
                    "box side for the periodic metric");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"intrinsic dimension of discrete datasets"};
    app.set_version_flag("--version", idd::k_version);
    app.require_subcommand(1);

    Options o;
    int rc = 0;

    auto* est = app.add_subcommand(
        "estimate", "one-shot census + estimator at a single (t1, t2)");
    add_input_flags(est, o);
    est->add_option("--t1", o.t1, "inner radius (default round(ratio*t2))");
    est->add_option("--t2", o.t2, "outer radius");
    est->add_option("--ratio", o.ratio, "t1/t2 ratio when --t1 is absent");
    est->add_option("--method", o.method,
                    "mle, bayes, continuum, or bayes-continuum");
    est->add_option("--grid-size", o.grid_size, "posterior grid size");
    est->add_option("--bootstrap", o.bootstrap,
                    "parametric bootstrap draws for the KS p-value");
    est->add_flag("--dedup,!--no-dedup", o.dedup,
                  "drop duplicate rows before the census");
    add_common_flags(est, o);

    auto* scn = app.add_subcommand(
        "scan", "estimates across a list of outer radii t2");
    add_input_flags(scn, o);
    scn->add_option("--t2", o.t2, "outer radius (repeatable)");
    scn->add_option("--t2-range", o.t2_range, "outer radii as A:B:STEP");
    scn->add_option("--ratio", o.ratio, "t1/t2 ratio");
    scn->add_option("--method", o.method,
                    "mle, bayes, continuum, or bayes-continuum");
    scn->add_flag("--dedup,!--no-dedup", o.dedup,
                  "drop duplicate rows before the census");
    add_common_flags(scn, o);

    auto* gen = app.add_subcommand(
        "generate", "synthetic datasets: uniform, gaussian, spin, koch, "
                    "sierpinski");
    gen->add_option("--family", o.family, "dataset family");
    gen->add_option("--id", o.id, "intrinsic dimension of the generator");
    gen->add_option("--side", o.side, "uniform lattice side");
    gen->add_option("--n-points", o.n_points, "sample size");
    gen->add_flag("--periodic,!--no-periodic", o.periodic,
                  "periodic boundary for the uniform lattice");
    gen->add_option("--sigma", o.sigma, "gaussian per-axis std");
    gen->add_flag("--correlated", o.correlated,
                  "gaussian with random off-diagonal covariance");
    gen->add_option("--n-spins", o.n_spins, "spin ensemble width");
    gen->add_option("--phi0", o.phi0, "spin ensemble offset");
    gen->add_option("--eps-sigma", o.eps_sigma, "spin latent std");
    gen->add_option("--level", o.level, "koch / sierpinski recursion level");
    gen->add_flag("--fasta", o.fasta,
                  "also write sequences.fasta (0/1 data, even dim)");
    add_common_flags(gen, o);

    auto* bas = app.add_subcommand(
        "baseline", "box-counting and fractal-dimension estimates");
    add_input_flags(bas, o);
    bas->add_option("--bc-sides", o.bc_sides,
                    "comma-separated box sides for box counting");
    bas->add_option("--t2", o.t2, "radius for the neighbor-count fit "
                                  "(repeatable)");
    bas->add_option("--t2-range", o.t2_range, "radii as A:B:STEP");
    bas->add_flag("--dedup,!--no-dedup", o.dedup,
                  "drop duplicate rows before the fits");
    add_common_flags(bas, o);

    auto* pip = app.add_subcommand(
        "pipeline", "FASTA -> encode -> filter -> cluster -> per-cluster "
                    "scan -> local PCA");
    pip->add_option("--input", o.input, "FASTA file");
    pip->add_option("--encoding", o.encoding, "binary-spin or plain");
    pip->add_flag("--dedup,!--no-dedup", o.pipeline_dedup,
                  "drop duplicate sequences (default on)");
    pip->add_flag("--drop-invalid", o.drop_invalid,
                  "drop records with letters outside ACGT");
    pip->add_option("--filter-radius", o.filter_radius,
                    "isolation filter radius");
    pip->add_option("--filter-min-neighbors", o.filter_min_neighbors,
                    "minimum neighbors within the filter radius");
    pip->add_option("--k-clusters", o.k_clusters,
                    "cluster count (default max(2, round(N/500)))");
    pip->add_option("--t2", o.t2, "outer radius (repeatable)");
    pip->add_option("--t2-range", o.t2_range, "outer radii as A:B:STEP");
    pip->add_option("--ratio", o.ratio, "t1/t2 ratio");
    pip->add_option("--method", o.method,
                    "mle, bayes, continuum, or bayes-continuum");
    pip->add_option("--pca-components", o.pca_components,
                    "local PCA directions per cluster");
    add_common_flags(pip, o);

    auto* poo = app.add_subcommand(
        "pool", "error-calibration experiment over synthetic realizations");
    poo->add_option("--family", o.family,
                    "uniform (default), gaussian, or spin");
    poo->add_option("--id", o.id, "generator intrinsic dimension");
    poo->add_option("--side", o.side, "uniform lattice side");
    poo->add_option("--n-points", o.n_points, "points per realization");
    poo->add_flag("--periodic,!--no-periodic", o.periodic,
                  "periodic boundary for the uniform lattice");
    poo->add_option("--sigma", o.sigma, "gaussian per-axis std");
    poo->add_flag("--correlated", o.correlated,
                  "gaussian with random off-diagonal covariance");
    poo->add_option("--n-spins", o.n_spins, "spin ensemble width");
    poo->add_option("--realizations", o.realizations, "realization count");
    poo->add_option("--t1", o.t1, "inner radius (default round(ratio*t2))");
    poo->add_option("--t2", o.t2, "outer radius");
    poo->add_option("--ratio", o.ratio, "t1/t2 ratio when --t1 is absent");
    poo->add_option("--d-gt", o.d_gt,
                    "ground-truth dimension (default: --id)");
    add_common_flags(poo, o);

    est->callback([&]() {
        try {
            o.seed = resolve_seed(est->count("--seed") > 0, o.seed);
            rc = run_estimate(o);
        } catch (const idd::error& e) {
            rc = emit_error(o.out, error_type_name(e), e.what());
        }
    });
    scn->callback([&]() {
        try {
            o.seed = resolve_seed(scn->count("--seed") > 0, o.seed);
            rc = run_scan(o);
        } catch (const idd::error& e) {
            rc = emit_error(o.out, error_type_name(e), e.what());
        }
    });
    gen->callback([&]() {
        try {
            o.seed = resolve_seed(gen->count("--seed") > 0, o.seed);
            rc = run_generate(o);
        } catch (const idd::error& e) {
            rc = emit_error(o.out, error_type_name(e), e.what());
        }
    });
    bas->callback([&]() {
        try {
            o.seed = resolve_seed(bas->count("--seed") > 0, o.seed);
            rc = run_baseline(o);
        } catch (const idd::error& e) {
            rc = emit_error(o.out, error_type_name(e), e.what());
        }
    });
    pip->callback([&]() {
        try {
            o.seed = resolve_seed(pip->count("--seed") > 0, o.seed);
            rc = run_pipeline(o);
        } catch (const idd::error& e) {
            rc = emit_error(o.out, error_type_name(e), e.what());
        }
    });
    poo->callback([&]() {
        try {
            o.seed = resolve_seed(poo->count("--seed") > 0, o.seed);
            rc = run_pool(o);
        } catch (const idd::error& e) {
            rc = emit_error(o.out, error_type_name(e), e.what());
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        return emit_error(o.out, "error", e.what());
    }
    return rc;
}
