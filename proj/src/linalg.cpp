#include "idd/linalg.hpp"

#include "idd/errors.hpp"
#include "idd/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace idd {

bool cholesky(const std::vector<double>& a, std::size_t d,
              std::vector<double>& l) {
    if (a.size() != d * d) {
        throw argument_error("cholesky: matrix size does not match d");
    }
    l.assign(d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double sum = a[i * d + j];
            for (std::size_t k = 0; k < j; ++k) {
                sum -= l[i * d + k] * l[j * d + k];
            }
            if (i == j) {
                if (sum <= 0.0) {
                    return false;
                }
                l[i * d + i] = std::sqrt(sum);
            } else {
                l[i * d + j] = sum / l[j * d + j];
            }
        }
    }
    return true;
}

void jacobi_eigen(std::vector<double> a, std::size_t m,
                  std::vector<double>& values,
                  std::vector<double>& vectors) {
    if (a.size() != m * m) {
        throw argument_error("jacobi_eigen: matrix size does not match m");
    }
    vectors.assign(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        vectors[i * m + i] = 1.0;
    }

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < m; ++p) {
            for (std::size_t q = p + 1; q < m; ++q) {
                off += a[p * m + q] * a[p * m + q];
            }
        }
        if (off < 1e-26) {
            break;
        }
        for (std::size_t p = 0; p < m; ++p) {
            for (std::size_t q = p + 1; q < m; ++q) {
                const double apq = a[p * m + q];
                if (std::abs(apq) < 1e-300) {
                    continue;
                }
                const double theta =
                    (a[q * m + q] - a[p * m + p]) / (2.0 * apq);
                const double t =
                    (theta >= 0.0 ? 1.0 : -1.0) /
                    (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < m; ++k) {
                    const double akp = a[k * m + p];
                    const double akq = a[k * m + q];
                    a[k * m + p] = c * akp - s * akq;
                    a[k * m + q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < m; ++k) {
                    const double apk = a[p * m + k];
                    const double aqk = a[q * m + k];
                    a[p * m + k] = c * apk - s * aqk;
                    a[q * m + k] = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < m; ++k) {
                    const double vpk = vectors[p * m + k];
                    const double vqk = vectors[q * m + k];
                    vectors[p * m + k] = c * vpk - s * vqk;
                    vectors[q * m + k] = s * vpk + c * vqk;
                }
            }
        }
    }

    values.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        values[i] = a[i * m + i];
    }
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return values[x] > values[y];
    });
    std::vector<double> sorted_values(m);
    std::vector<double> sorted_vectors(m * m);
    for (std::size_t i = 0; i < m; ++i) {
        sorted_values[i] = values[order[i]];
        for (std::size_t k = 0; k < m; ++k) {
            sorted_vectors[i * m + k] = vectors[order[i] * m + k];
        }
    }
    values = std::move(sorted_values);
    vectors = std::move(sorted_vectors);
}

namespace {

// Orthonormalize the m rows of q (each of length d) in place by modified
// Gram-Schmidt; rows that collapse to zero are replaced with fresh
// random directions so the block keeps full rank.
void orthonormalize_rows(std::vector<double>& q, std::size_t m,
                         std::size_t d, rng& gen) {
    for (std::size_t i = 0; i < m; ++i) {
        double* row = q.data() + i * d;
        for (int attempt = 0; attempt < 100; ++attempt) {
            for (std::size_t j = 0; j < i; ++j) {
                const double* prev = q.data() + j * d;
                double dot = 0.0;
                for (std::size_t a = 0; a < d; ++a) {
                    dot += row[a] * prev[a];
                }
                for (std::size_t a = 0; a < d; ++a) {
                    row[a] -= dot * prev[a];
                }
            }
            double norm = 0.0;
            for (std::size_t a = 0; a < d; ++a) {
                norm += row[a] * row[a];
            }
            norm = std::sqrt(norm);
            if (norm > 1e-12) {
                for (std::size_t a = 0; a < d; ++a) {
                    row[a] /= norm;
                }
                break;
            }
            for (std::size_t a = 0; a < d; ++a) {
                row[a] = gen.normal();
            }
        }
    }
}

} // namespace

TopEigen top_eigenpairs_covariance(const std::vector<double>& centered,
                                   std::size_t n, std::size_t d,
                                   std::size_t m, std::uint64_t seed,
                                   int max_iter, double tol) {
    if (centered.size() != n * d) {
        throw argument_error(
            "top_eigenpairs_covariance: data size does not match n x d");
    }
    if (m < 1 || m > d) {
        throw argument_error(
            "top_eigenpairs_covariance: need 1 <= m <= d, got m = " +
            std::to_string(m));
    }
    if (n < 2) {
        throw argument_error(
            "top_eigenpairs_covariance: need at least two rows");
    }

    rng gen(mix_seed(seed, 0));
    std::vector<double> q(m * d);
    for (auto& v : q) {
        v = gen.normal();
    }
    orthonormalize_rows(q, m, d, gen);

    const double scale = 1.0 / static_cast<double>(n - 1);
    std::vector<double> xq(n * m);
    std::vector<double> z(m * d);
    std::vector<double> prev_values(m, 0.0);
    std::vector<double> small(m * m);
    std::vector<double> small_values;
    std::vector<double> small_vectors;

    auto apply_covariance = [&]() {
        // z = (X^T X / (n-1)) q^T, computed as two thin products.
        std::fill(xq.begin(), xq.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const double* xi = centered.data() + i * d;
            for (std::size_t v = 0; v < m; ++v) {
                const double* qv = q.data() + v * d;
                double dot = 0.0;
                for (std::size_t a = 0; a < d; ++a) {
                    dot += xi[a] * qv[a];
                }
                xq[i * m + v] = dot;
            }
        }
        std::fill(z.begin(), z.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const double* xi = centered.data() + i * d;
            for (std::size_t v = 0; v < m; ++v) {
                const double w = xq[i * m + v] * scale;
                double* zv = z.data() + v * d;
                for (std::size_t a = 0; a < d; ++a) {
                    zv[a] += w * xi[a];
                }
            }
        }
    };

    TopEigen out;
    out.values.assign(m, 0.0);
    for (int iter = 0; iter < max_iter; ++iter) {
        apply_covariance();

        // Rayleigh-Ritz on the current block: B = Q C Q^T.
        for (std::size_t u = 0; u < m; ++u) {
            for (std::size_t v = 0; v < m; ++v) {
                double dot = 0.0;
                for (std::size_t a = 0; a < d; ++a) {
                    dot += q[u * d + a] * z[v * d + a];
                }
                small[u * m + v] = dot;
            }
        }
        for (std::size_t u = 0; u < m; ++u) {
            for (std::size_t v = u + 1; v < m; ++v) {
                const double sym =
                    0.5 * (small[u * m + v] + small[v * m + u]);
                small[u * m + v] = sym;
                small[v * m + u] = sym;
            }
        }
        jacobi_eigen(small, m, small_values, small_vectors);
        out.values = small_values;

        // Next block: rotated image of the covariance action.
        std::vector<double> next(m * d, 0.0);
        for (std::size_t u = 0; u < m; ++u) {
            for (std::size_t v = 0; v < m; ++v) {
                const double w = small_vectors[u * m + v];
                for (std::size_t a = 0; a < d; ++a) {
                    next[u * d + a] += w * z[v * d + a];
                }
            }
        }
        q = std::move(next);
        orthonormalize_rows(q, m, d, gen);

        double change = 0.0;
        double magnitude = 1.0;
        for (std::size_t v = 0; v < m; ++v) {
            change = std::max(change,
                              std::abs(out.values[v] - prev_values[v]));
            magnitude = std::max(magnitude, std::abs(out.values[v]));
        }
        prev_values = out.values;
        if (iter > 3 && change < tol * magnitude) {
            break;
        }
    }

    out.vectors = q;
    return out;
}

} // namespace idd
