#ifndef IDD_SEQUENCE_HPP
#define IDD_SEQUENCE_HPP

#include "idd/point_set.hpp"
#include "idd/scan.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace idd {

enum class Encoding { BinarySpin, PlainHamming };

std::string encoding_name(Encoding encoding);
Encoding encoding_from_name(const std::string& name);

struct SequenceSet {
    std::vector<std::string> ids;
    std::vector<std::string> sequences;
    Encoding encoding = Encoding::BinarySpin;

    std::size_t size() const { return sequences.size(); }
};

// FASTA reader: '>' headers, wrapped sequence lines concatenated,
// letters uppercased. All sequences must come out equal length unless
// crop_to_shortest trims them. Records with letters outside ACGT are an
// error by default or dropped with drop_invalid.
SequenceSet read_fasta(const std::string& path, bool drop_invalid = false,
                       bool crop_to_shortest = false);

void write_fasta(const std::string& path, const SequenceSet& seqs);

// binary-spin: A->11, T->00, C->10, G->01, two 0/1 features per letter,
// Hamming metric. plain-hamming: one symbol per letter, Hamming metric
// over the alphabet.
DiscretePointSet encode(const SequenceSet& seqs);

// Inverse of the binary-spin mapping: rows of 0/1 bits (even width) back
// to ACGT strings, for round trips through FASTA.
std::vector<std::string> sequences_from_bits(const DiscretePointSet& points);

// Keeps points with at least min_neighbors others within radius. One
// pass only: survivors are judged against the original set, so a second
// application may remove more points.
DiscretePointSet filter_isolated(const DiscretePointSet& points,
                                 int radius = 10, int min_neighbors = 10,
                                 unsigned workers = 0);

// k-means on the encoded vectors: real-valued centroids, L1 assignment,
// mean update, k-means++ seeding, empty clusters reseeded from the
// farthest point. Returns one label in [0, k) per point.
std::vector<int> cluster(const DiscretePointSet& points, int k,
                         std::uint64_t seed, int max_iter = 100,
                         unsigned workers = 0);

struct LocalPcaResult {
    std::vector<std::vector<double>> eigenvectors;
    std::vector<double> eigenvalues;
    std::size_t center_index = 0;
    int t2 = 0;
    std::size_t n_used = 0;
};

// Top-m PCA directions of the neighborhood within t2 of the given
// center (closed ball, center included). Sign convention: the
// largest-magnitude component of each eigenvector is positive.
LocalPcaResult local_pca(const DiscretePointSet& points,
                         std::size_t center_index, int t2, int m = 2);

// Residual R = d - sum_{i,j} (alpha_i . v_j)^2 of recovering the
// ground-truth directions; 0 means perfect recovery, d means none.
double pca_residual(const std::vector<std::vector<double>>& alphas,
                    const std::vector<std::vector<double>>& eigvecs);

struct ClusterAggregateRow {
    int t2 = 0;
    double weighted_mean = 0.0;
    double weighted_std = 0.0;
    std::size_t clusters_used = 0;
};

struct ClusterScan {
    std::vector<int> cluster_ids;
    std::vector<std::size_t> populations;
    std::vector<ScanResult> scans;
    std::vector<ClusterAggregateRow> aggregate;
};

// Runs a scan per cluster and aggregates d across clusters per t2,
// weighted by cluster population. Clusters too small to census get
// all-skipped rows rather than aborting the run.
ClusterScan per_cluster_scan(const DiscretePointSet& points,
                             const std::vector<int>& labels,
                             const std::vector<int>& t2_list,
                             double r = 0.5,
                             Method method = Method::MleDiscrete,
                             unsigned workers = 0);

} // namespace idd

#endif
