#ifndef IDD_LINALG_HPP
#define IDD_LINALG_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

namespace idd {

// Dense helpers for the small symmetric problems in this project
// (covariance sampling, local PCA). Matrices are row-major.

// A = L L^T for symmetric positive-definite A (d x d). Returns false if
// a non-positive pivot appears. L comes back lower-triangular.
bool cholesky(const std::vector<double>& a, std::size_t d,
              std::vector<double>& l);

// Cyclic Jacobi eigendecomposition of a symmetric m x m matrix.
// Eigenvalues descending; eigenvector i occupies row i of `vectors`.
void jacobi_eigen(std::vector<double> a, std::size_t m,
                  std::vector<double>& values,
                  std::vector<double>& vectors);

// Top-m eigenpairs of the sample covariance (1/(n-1)) X^T X of centered
// data X (n x d), via block subspace iteration with Rayleigh-Ritz
// extraction. vectors holds m rows of length d, orthonormal, ordered by
// descending eigenvalue.
struct TopEigen {
    std::vector<double> values;
    std::vector<double> vectors;
};

TopEigen top_eigenpairs_covariance(const std::vector<double>& centered,
                                   std::size_t n, std::size_t d,
                                   std::size_t m,
                                   std::uint64_t seed = 12345,
                                   int max_iter = 2000,
                                   double tol = 1e-13);

} // namespace idd

#endif
