#include "idd/sequence.hpp"

#include "idd/census.hpp"
#include "idd/errors.hpp"
#include "idd/linalg.hpp"
#include "idd/parallel.hpp"
#include "idd/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <string>

namespace idd {

std::string encoding_name(Encoding encoding) {
    switch (encoding) {
    case Encoding::BinarySpin:
        return "binary-spin";
    case Encoding::PlainHamming:
        return "plain";
    }
    throw argument_error("encoding_name: unknown encoding enum value");
}

Encoding encoding_from_name(const std::string& name) {
    if (name == "binary-spin") {
        return Encoding::BinarySpin;
    }
    if (name == "plain" || name == "plain-hamming") {
        return Encoding::PlainHamming;
    }
    throw argument_error("unknown encoding '" + name +
                         "' (expected binary-spin or plain)");
}

namespace {

bool is_acgt(char c) {
    return c == 'A' || c == 'C' || c == 'G' || c == 'T';
}

} // namespace

SequenceSet read_fasta(const std::string& path, bool drop_invalid,
                       bool crop_to_shortest) {
    std::ifstream in(path);
    if (!in) {
        throw io_error("read_fasta: cannot open '" + path + "'");
    }
    SequenceSet out;
    std::string line;
    bool in_record = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        if (line[0] == '>') {
            std::string id = line.substr(1);
            const std::size_t cut = id.find_first_of(" \t");
            if (cut != std::string::npos) {
                id = id.substr(0, cut);
            }
            out.ids.push_back(id);
            out.sequences.emplace_back();
            in_record = true;
        } else {
            if (!in_record) {
                throw io_error("read_fasta: sequence data before the "
                               "first '>' header in '" + path + "'");
            }
            for (char c : line) {
                out.sequences.back().push_back(static_cast<char>(
                    std::toupper(static_cast<unsigned char>(c))));
            }
        }
    }
    if (out.sequences.empty()) {
        throw io_error("read_fasta: no records in '" + path + "'");
    }

    // Alphabet check, before the length check so offenders are reported
    // with their record of origin.
    std::vector<std::string> ids;
    std::vector<std::string> seqs;
    for (std::size_t i = 0; i < out.sequences.size(); ++i) {
        const std::string& seq = out.sequences[i];
        if (seq.empty()) {
            throw io_error("read_fasta: record '" + out.ids[i] +
                           "' has no sequence data");
        }
        std::size_t bad = std::string::npos;
        for (std::size_t pos = 0; pos < seq.size(); ++pos) {
            if (!is_acgt(seq[pos])) {
                bad = pos;
                break;
            }
        }
        if (bad != std::string::npos) {
            if (!drop_invalid) {
                throw io_error("read_fasta: record '" + out.ids[i] +
                               "' has non-ACGT character '" +
                               std::string(1, seq[bad]) + "' at position " +
                               std::to_string(bad + 1));
            }
            continue;
        }
        ids.push_back(out.ids[i]);
        seqs.push_back(seq);
    }
    if (seqs.empty()) {
        throw io_error(
            "read_fasta: every record was dropped by the alphabet filter");
    }
    out.ids = std::move(ids);
    out.sequences = std::move(seqs);

    std::size_t min_len = std::numeric_limits<std::size_t>::max();
    std::size_t max_len = 0;
    for (const std::string& seq : out.sequences) {
        min_len = std::min(min_len, seq.size());
        max_len = std::max(max_len, seq.size());
    }
    if (min_len != max_len) {
        if (crop_to_shortest) {
            for (std::string& seq : out.sequences) {
                seq.resize(min_len);
            }
        } else {
            std::ostringstream msg;
            msg << "read_fasta: sequences have unequal lengths (" << min_len
                << ".." << max_len << "); offenders vs length " << max_len
                << ":";
            int listed = 0;
            for (std::size_t i = 0;
                 i < out.sequences.size() && listed < 5; ++i) {
                if (out.sequences[i].size() != max_len) {
                    msg << " " << out.ids[i] << "("
                        << out.sequences[i].size() << ")";
                    ++listed;
                }
            }
            throw io_error(msg.str());
        }
    }
    return out;
}

void write_fasta(const std::string& path, const SequenceSet& seqs) {
    if (seqs.ids.size() != seqs.sequences.size()) {
        throw argument_error("write_fasta: id/sequence count mismatch");
    }
    std::ofstream out(path);
    if (!out) {
        throw io_error("write_fasta: cannot open '" + path +
                       "' for writing");
    }
    for (std::size_t i = 0; i < seqs.sequences.size(); ++i) {
        out << '>' << seqs.ids[i] << '\n';
        const std::string& seq = seqs.sequences[i];
        for (std::size_t pos = 0; pos < seq.size(); pos += 70) {
            out << seq.substr(pos, 70) << '\n';
        }
    }
    if (!out) {
        throw io_error("write_fasta: write to '" + path + "' failed");
    }
}

DiscretePointSet encode(const SequenceSet& seqs) {
    if (seqs.sequences.empty()) {
        throw argument_error("encode: empty sequence set");
    }
    const std::size_t length = seqs.sequences.front().size();
    for (const std::string& seq : seqs.sequences) {
        if (seq.size() != length) {
            throw argument_error(
                "encode: sequences must have equal length");
        }
    }

    std::vector<std::int32_t> coords;
    if (seqs.encoding == Encoding::BinarySpin) {
        coords.reserve(seqs.sequences.size() * length * 2);
        for (const std::string& seq : seqs.sequences) {
            for (char c : seq) {
                switch (c) {
                case 'A':
                    coords.push_back(1);
                    coords.push_back(1);
                    break;
                case 'T':
                    coords.push_back(0);
                    coords.push_back(0);
                    break;
                case 'C':
                    coords.push_back(1);
                    coords.push_back(0);
                    break;
                case 'G':
                    coords.push_back(0);
                    coords.push_back(1);
                    break;
                default:
                    throw argument_error(
                        "encode: non-ACGT character '" +
                        std::string(1, c) + "'");
                }
            }
        }
        return make_point_set(std::move(coords), length * 2,
                              Metric::Hamming);
    }

    coords.reserve(seqs.sequences.size() * length);
    for (const std::string& seq : seqs.sequences) {
        for (char c : seq) {
            switch (c) {
            case 'A':
                coords.push_back(0);
                break;
            case 'C':
                coords.push_back(1);
                break;
            case 'G':
                coords.push_back(2);
                break;
            case 'T':
                coords.push_back(3);
                break;
            default:
                throw argument_error("encode: non-ACGT character '" +
                                     std::string(1, c) + "'");
            }
        }
    }
    return make_point_set(std::move(coords), length, Metric::Hamming);
}

std::vector<std::string> sequences_from_bits(
    const DiscretePointSet& points) {
    if (points.dim % 2 != 0) {
        throw argument_error(
            "sequences_from_bits: feature count must be even");
    }
    std::vector<std::string> out;
    out.reserve(points.n_points);
    for (std::size_t i = 0; i < points.n_points; ++i) {
        const auto row = points.row(i);
        std::string seq;
        seq.reserve(points.dim / 2);
        for (std::size_t a = 0; a < points.dim; a += 2) {
            const std::int32_t b1 = row[a];
            const std::int32_t b2 = row[a + 1];
            if ((b1 != 0 && b1 != 1) || (b2 != 0 && b2 != 1)) {
                throw argument_error(
                    "sequences_from_bits: features must be 0/1 bits");
            }
            if (b1 == 1 && b2 == 1) {
                seq.push_back('A');
            } else if (b1 == 0 && b2 == 0) {
                seq.push_back('T');
            } else if (b1 == 1) {
                seq.push_back('C');
            } else {
                seq.push_back('G');
            }
        }
        out.push_back(std::move(seq));
    }
    return out;
}

DiscretePointSet filter_isolated(const DiscretePointSet& points,
                                 int radius, int min_neighbors,
                                 unsigned workers) {
    if (radius < 1) {
        throw argument_error("filter_isolated: radius must be at least 1");
    }
    if (min_neighbors < 1) {
        throw argument_error(
            "filter_isolated: min_neighbors must be at least 1");
    }
    const RadialCounts rc = radial_counts(points, radius, workers);
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < points.n_points; ++i) {
        if (rc.at(i, radius) >=
            static_cast<std::uint32_t>(min_neighbors)) {
            keep.push_back(i);
        }
    }
    if (keep.empty()) {
        throw no_neighbors_error(
            "filter_isolated: every point was dropped (radius " +
            std::to_string(radius) + ", min_neighbors " +
            std::to_string(min_neighbors) + ")");
    }
    return select_rows(points, keep);
}

namespace {

double l1_to_centroid(const std::int32_t* x, const double* c,
                      std::size_t dim) {
    double total = 0.0;
    for (std::size_t a = 0; a < dim; ++a) {
        total += std::abs(static_cast<double>(x[a]) - c[a]);
    }
    return total;
}

} // namespace

std::vector<int> cluster(const DiscretePointSet& points, int k,
                         std::uint64_t seed, int max_iter,
                         unsigned workers) {
    points.validate();
    const std::size_t n = points.n_points;
    if (k < 2) {
        throw argument_error("cluster: k must be at least 2");
    }
    if (static_cast<std::size_t>(k) >= n) {
        throw argument_error("cluster: k = " + std::to_string(k) +
                             " must be below the point count " +
                             std::to_string(n));
    }
    const std::size_t dim = points.dim;
    const std::size_t kk = static_cast<std::size_t>(k);
    rng gen(seed);

    // k-means++ seeding with squared L1 weights.
    std::vector<double> centroids(kk * dim, 0.0);
    {
        const std::size_t first = gen.uniform_below(n);
        const auto row = points.row(first);
        for (std::size_t a = 0; a < dim; ++a) {
            centroids[a] = static_cast<double>(row[a]);
        }
        std::vector<double> best_dist(n,
                                      std::numeric_limits<double>::max());
        for (std::size_t c = 1; c < kk; ++c) {
            const double* prev = centroids.data() + (c - 1) * dim;
            double total = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double dist =
                    l1_to_centroid(points.row(i).data(), prev, dim);
                best_dist[i] = std::min(best_dist[i], dist);
                total += best_dist[i] * best_dist[i];
            }
            std::size_t chosen;
            if (total > 0.0) {
                const double target = gen.uniform_double() * total;
                double cum = 0.0;
                chosen = n - 1;
                for (std::size_t i = 0; i < n; ++i) {
                    cum += best_dist[i] * best_dist[i];
                    if (cum >= target) {
                        chosen = i;
                        break;
                    }
                }
            } else {
                chosen = gen.uniform_below(n);
            }
            const auto row_c = points.row(chosen);
            for (std::size_t a = 0; a < dim; ++a) {
                centroids[c * dim + a] = static_cast<double>(row_c[a]);
            }
        }
    }

    std::vector<int> labels(n, 0);
    std::vector<double> assign_dist(n, 0.0);
    for (int iter = 0; iter < max_iter; ++iter) {
        std::atomic<bool> changed{false};
        parallel_for(
            n,
            [&](std::size_t begin, std::size_t end) {
                for (std::size_t i = begin; i < end; ++i) {
                    const std::int32_t* x = points.row(i).data();
                    int best = 0;
                    double best_d = std::numeric_limits<double>::max();
                    for (std::size_t c = 0; c < kk; ++c) {
                        const double dist = l1_to_centroid(
                            x, centroids.data() + c * dim, dim);
                        if (dist < best_d) {
                            best_d = dist;
                            best = static_cast<int>(c);
                        }
                    }
                    if (labels[i] != best) {
                        labels[i] = best;
                        changed.store(true, std::memory_order_relaxed);
                    }
                    assign_dist[i] = best_d;
                }
            },
            workers);
        if (!changed && iter > 0) {
            break;
        }

        std::vector<double> sums(kk * dim, 0.0);
        std::vector<std::size_t> counts(kk, 0);
        for (std::size_t i = 0; i < n; ++i) {
            const auto row = points.row(i);
            const std::size_t c = static_cast<std::size_t>(labels[i]);
            ++counts[c];
            for (std::size_t a = 0; a < dim; ++a) {
                sums[c * dim + a] += static_cast<double>(row[a]);
            }
        }
        for (std::size_t c = 0; c < kk; ++c) {
            if (counts[c] == 0) {
                // Reseed the empty cluster from the worst-fitting point.
                std::size_t farthest = 0;
                double worst = -1.0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (assign_dist[i] > worst) {
                        worst = assign_dist[i];
                        farthest = i;
                    }
                }
                const auto row = points.row(farthest);
                for (std::size_t a = 0; a < dim; ++a) {
                    centroids[c * dim + a] =
                        static_cast<double>(row[a]);
                }
                assign_dist[farthest] = 0.0;
            } else {
                for (std::size_t a = 0; a < dim; ++a) {
                    centroids[c * dim + a] =
                        sums[c * dim + a] /
                        static_cast<double>(counts[c]);
                }
            }
        }
    }
    return labels;
}

LocalPcaResult local_pca(const DiscretePointSet& points,
                         std::size_t center_index, int t2, int m) {
    points.validate();
    if (center_index >= points.n_points) {
        throw argument_error("local_pca: center index out of range");
    }
    if (t2 < 1) {
        throw argument_error("local_pca: t2 must be at least 1");
    }
    if (m < 1) {
        throw argument_error("local_pca: m must be at least 1");
    }
    const auto center = points.row(center_index);
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < points.n_points; ++i) {
        if (i == center_index ||
            distance(points.row(i), center, points.metric,
                     points.box_side) <= t2) {
            members.push_back(i);
        }
    }
    if (members.size() < static_cast<std::size_t>(m) + 1) {
        throw no_neighbors_error(
            "local_pca: only " + std::to_string(members.size()) +
            " points within t2 = " + std::to_string(t2) + ", need " +
            std::to_string(m + 1));
    }

    const std::size_t n = members.size();
    const std::size_t dim = points.dim;
    std::vector<double> centered(n * dim);
    std::vector<double> mean(dim, 0.0);
    for (std::size_t idx = 0; idx < n; ++idx) {
        const auto row = points.row(members[idx]);
        for (std::size_t a = 0; a < dim; ++a) {
            mean[a] += static_cast<double>(row[a]);
        }
    }
    for (std::size_t a = 0; a < dim; ++a) {
        mean[a] /= static_cast<double>(n);
    }
    for (std::size_t idx = 0; idx < n; ++idx) {
        const auto row = points.row(members[idx]);
        for (std::size_t a = 0; a < dim; ++a) {
            centered[idx * dim + a] =
                static_cast<double>(row[a]) - mean[a];
        }
    }

    const TopEigen eig = top_eigenpairs_covariance(
        centered, n, dim, static_cast<std::size_t>(m));

    LocalPcaResult out;
    out.center_index = center_index;
    out.t2 = t2;
    out.n_used = n;
    out.eigenvalues = eig.values;
    out.eigenvectors.resize(static_cast<std::size_t>(m));
    for (std::size_t v = 0; v < static_cast<std::size_t>(m); ++v) {
        std::vector<double> vec(eig.vectors.begin() +
                                    static_cast<std::ptrdiff_t>(v * dim),
                                eig.vectors.begin() +
                                    static_cast<std::ptrdiff_t>(
                                        (v + 1) * dim));
        std::size_t peak = 0;
        for (std::size_t a = 1; a < dim; ++a) {
            if (std::abs(vec[a]) > std::abs(vec[peak])) {
                peak = a;
            }
        }
        if (vec[peak] < 0.0) {
            for (double& value : vec) {
                value = -value;
            }
        }
        out.eigenvectors[v] = std::move(vec);
    }
    return out;
}

double pca_residual(const std::vector<std::vector<double>>& alphas,
                    const std::vector<std::vector<double>>& eigvecs) {
    if (alphas.empty() || alphas.size() != eigvecs.size()) {
        throw argument_error(
            "pca_residual: need equal nonzero counts of alphas and "
            "eigenvectors");
    }
    const std::size_t dim = alphas.front().size();
    for (const auto& v : alphas) {
        if (v.size() != dim) {
            throw argument_error(
                "pca_residual: alpha feature lengths differ");
        }
    }
    for (const auto& v : eigvecs) {
        if (v.size() != dim) {
            throw argument_error(
                "pca_residual: eigenvector feature length mismatch");
        }
    }
    double overlap = 0.0;
    for (const auto& alpha : alphas) {
        for (const auto& vec : eigvecs) {
            double dot = 0.0;
            for (std::size_t a = 0; a < dim; ++a) {
                dot += alpha[a] * vec[a];
            }
            overlap += dot * dot;
        }
    }
    const double residual = static_cast<double>(alphas.size()) - overlap;
    return std::max(residual, 0.0);
}

ClusterScan per_cluster_scan(const DiscretePointSet& points,
                             const std::vector<int>& labels,
                             const std::vector<int>& t2_list, double r,
                             Method method, unsigned workers) {
    points.validate();
    if (labels.size() != points.n_points) {
        throw argument_error(
            "per_cluster_scan: label count does not match point count");
    }
    std::map<int, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] < 0) {
            throw argument_error(
                "per_cluster_scan: labels must be nonnegative");
        }
        groups[labels[i]].push_back(i);
    }

    ClusterScan out;
    for (const auto& [label, rows] : groups) {
        out.cluster_ids.push_back(label);
        out.populations.push_back(rows.size());
        ScanResult result;
        try {
            const DiscretePointSet subset = select_rows(points, rows);
            result = scan(subset, t2_list, r, method, workers);
        } catch (const error& e) {
            for (int t2 : t2_list) {
                ScanRow row;
                row.t2 = t2;
                row.skipped = true;
                row.note = e.what();
                result.rows.push_back(std::move(row));
            }
        }
        out.scans.push_back(std::move(result));
    }

    std::vector<int> t2_sorted = t2_list;
    std::sort(t2_sorted.begin(), t2_sorted.end());
    for (int t2 : t2_sorted) {
        ClusterAggregateRow agg;
        agg.t2 = t2;
        double wsum = 0.0;
        double mean = 0.0;
        std::vector<std::pair<double, double>> contributions;
        for (std::size_t c = 0; c < out.scans.size(); ++c) {
            for (const ScanRow& row : out.scans[c].rows) {
                if (row.t2 == t2 && !row.skipped) {
                    const double w =
                        static_cast<double>(out.populations[c]);
                    contributions.emplace_back(w, row.estimate.d);
                    wsum += w;
                    mean += w * row.estimate.d;
                    break;
                }
            }
        }
        if (wsum > 0.0) {
            mean /= wsum;
            double var = 0.0;
            for (const auto& [w, d] : contributions) {
                var += w * (d - mean) * (d - mean);
            }
            agg.weighted_mean = mean;
            agg.weighted_std = std::sqrt(var / wsum);
            agg.clusters_used = contributions.size();
        } else {
            agg.weighted_mean = std::numeric_limits<double>::quiet_NaN();
            agg.weighted_std = std::numeric_limits<double>::quiet_NaN();
            agg.clusters_used = 0;
        }
        out.aggregate.push_back(agg);
    }
    return out;
}

} // namespace idd
