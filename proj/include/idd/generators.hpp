#ifndef IDD_GENERATORS_HPP
#define IDD_GENERATORS_HPP

#include "idd/point_set.hpp"

#include <cstdint>
#include <vector>

namespace idd {

// N i.i.d. points uniform on {0..side-1}^d; duplicates allowed. The
// periodic flag selects the wrapped L1 metric with box_side = side.
DiscretePointSet gen_uniform_lattice(int d, int side, std::size_t n,
                                     bool periodic, std::uint64_t seed);

// Multivariate normal rounded to the integer lattice. sigma is the
// per-axis standard deviation (covariance diagonal sigma^2), so the
// effective cloud radius is sigma_eff = sqrt(d) * sigma. With
// correlated = true, symmetric off-diagonal covariance entries are drawn
// once uniformly in (0, 2) and redrawn until the matrix is positive
// definite.
DiscretePointSet gen_gaussian_lattice(int d, double sigma, bool correlated,
                                      std::size_t n, std::uint64_t seed);

struct SpinEnsembleSpec {
    int intrinsic_dim = 1;
    int n_spins = 50;
    std::size_t n_points = 2500;
    double phi0 = -0.5;
    double eps_sigma = 10.0;
    std::uint64_t seed = 1;
};

struct SpinEnsemble {
    DiscretePointSet points;                  // {0,1}^D, Hamming metric
    std::vector<std::vector<double>> alphas;  // orthonormal, one per
                                              // latent coordinate
};

// Linear-embedding spin ensemble: spin s of sample i is
// sign(phi0 + sum_j alpha_j[s] eps_j(i)) with sign(0) := +1, stored as a
// 0/1 bit. The alpha vectors come back for PCA ground truth.
SpinEnsemble gen_spin(const SpinEnsembleSpec& spec);

// Koch curve vertices after `level` substitutions, embedded on the
// integer lattice with the six 60-degree headings mapped to steps of L1
// length 2.
DiscretePointSet gen_koch(int level);

// Sierpinski gasket as the Pascal-mod-2 set
// {(i, j) : i & j == 0, i + j < 2^level}.
DiscretePointSet gen_sierpinski(int level);

} // namespace idd

#endif
