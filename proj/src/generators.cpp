#include "idd/generators.hpp"

#include "idd/errors.hpp"
#include "idd/linalg.hpp"
#include "idd/rng.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace idd {

DiscretePointSet gen_uniform_lattice(int d, int side, std::size_t n,
                                     bool periodic, std::uint64_t seed) {
    if (d < 1) {
        throw argument_error("gen_uniform_lattice: d must be at least 1");
    }
    if (side < 2) {
        throw argument_error(
            "gen_uniform_lattice: side must be at least 2");
    }
    if (n < 2) {
        throw argument_error(
            "gen_uniform_lattice: need at least two points");
    }
    rng gen(seed);
    std::vector<std::int32_t> coords;
    coords.reserve(n * static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < n; ++i) {
        for (int a = 0; a < d; ++a) {
            coords.push_back(static_cast<std::int32_t>(
                gen.uniform_below(static_cast<std::uint64_t>(side))));
        }
    }
    return make_point_set(std::move(coords), static_cast<std::size_t>(d),
                          periodic ? Metric::L1Periodic : Metric::L1,
                          periodic ? side : 0);
}

DiscretePointSet gen_gaussian_lattice(int d, double sigma, bool correlated,
                                      std::size_t n, std::uint64_t seed) {
    if (d < 1) {
        throw argument_error("gen_gaussian_lattice: d must be at least 1");
    }
    if (!(sigma > 0.0)) {
        throw argument_error(
            "gen_gaussian_lattice: sigma must be positive");
    }
    if (n < 2) {
        throw argument_error(
            "gen_gaussian_lattice: need at least two points");
    }
    const std::size_t dim = static_cast<std::size_t>(d);
    rng gen(seed);

    std::vector<double> covariance(dim * dim, 0.0);
    std::vector<double> chol;
    bool factored = false;
    for (int attempt = 0; attempt < 100 && !factored; ++attempt) {
        for (std::size_t i = 0; i < dim; ++i) {
            covariance[i * dim + i] = sigma * sigma;
        }
        if (correlated) {
            for (std::size_t i = 0; i < dim; ++i) {
                for (std::size_t j = i + 1; j < dim; ++j) {
                    const double value = gen.uniform_range(0.0, 2.0);
                    covariance[i * dim + j] = value;
                    covariance[j * dim + i] = value;
                }
            }
        }
        factored = cholesky(covariance, dim, chol);
        if (!correlated) {
            break;
        }
    }
    if (!factored) {
        throw domain_error(
            "gen_gaussian_lattice: covariance stayed non-positive-definite "
            "after 100 off-diagonal redraws");
    }

    std::vector<std::int32_t> coords;
    coords.reserve(n * dim);
    std::vector<double> normal(dim);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t a = 0; a < dim; ++a) {
            normal[a] = gen.normal();
        }
        for (std::size_t a = 0; a < dim; ++a) {
            double value = 0.0;
            for (std::size_t b = 0; b <= a; ++b) {
                value += chol[a * dim + b] * normal[b];
            }
            coords.push_back(
                static_cast<std::int32_t>(std::lround(value)));
        }
    }
    return make_point_set(std::move(coords), dim, Metric::L1);
}

SpinEnsemble gen_spin(const SpinEnsembleSpec& spec) {
    if (spec.intrinsic_dim < 1 || spec.intrinsic_dim >= spec.n_spins) {
        throw argument_error(
            "gen_spin: need 1 <= intrinsic_dim < n_spins, got " +
            std::to_string(spec.intrinsic_dim) + " vs " +
            std::to_string(spec.n_spins));
    }
    if (spec.n_points < 2) {
        throw argument_error("gen_spin: need at least two points");
    }
    if (!(spec.eps_sigma > 0.0)) {
        throw argument_error("gen_spin: eps_sigma must be positive");
    }
    const std::size_t d_lat = static_cast<std::size_t>(spec.intrinsic_dim);
    const std::size_t n_spins = static_cast<std::size_t>(spec.n_spins);
    rng gen(spec.seed);

    // Latent directions: uniform components, then Gram-Schmidt to exact
    // orthonormality.
    std::vector<std::vector<double>> alphas(
        d_lat, std::vector<double>(n_spins, 0.0));
    for (std::size_t j = 0; j < d_lat; ++j) {
        for (int attempt = 0; attempt < 100; ++attempt) {
            for (std::size_t s = 0; s < n_spins; ++s) {
                alphas[j][s] = gen.uniform_range(-1.0, 1.0);
            }
            for (std::size_t prev = 0; prev < j; ++prev) {
                double dot = 0.0;
                for (std::size_t s = 0; s < n_spins; ++s) {
                    dot += alphas[j][s] * alphas[prev][s];
                }
                for (std::size_t s = 0; s < n_spins; ++s) {
                    alphas[j][s] -= dot * alphas[prev][s];
                }
            }
            double norm = 0.0;
            for (std::size_t s = 0; s < n_spins; ++s) {
                norm += alphas[j][s] * alphas[j][s];
            }
            norm = std::sqrt(norm);
            if (norm > 1e-8) {
                for (std::size_t s = 0; s < n_spins; ++s) {
                    alphas[j][s] /= norm;
                }
                break;
            }
        }
    }

    std::vector<std::int32_t> coords;
    coords.reserve(spec.n_points * n_spins);
    std::vector<double> eps(d_lat);
    for (std::size_t i = 0; i < spec.n_points; ++i) {
        for (std::size_t j = 0; j < d_lat; ++j) {
            eps[j] = gen.normal(0.0, spec.eps_sigma);
        }
        for (std::size_t s = 0; s < n_spins; ++s) {
            double phi = spec.phi0;
            for (std::size_t j = 0; j < d_lat; ++j) {
                phi += alphas[j][s] * eps[j];
            }
            coords.push_back(phi >= 0.0 ? 1 : 0);
        }
    }

    SpinEnsemble out;
    out.points =
        make_point_set(std::move(coords), n_spins, Metric::Hamming);
    out.alphas = std::move(alphas);
    return out;
}

DiscretePointSet gen_koch(int level) {
    if (level < 1) {
        throw argument_error("gen_koch: level must be at least 1");
    }
    if (level > 10) {
        throw argument_error("gen_koch: level " + std::to_string(level) +
                             " exceeds the memory budget (max 10)");
    }
    // Heading h in sixths of a turn; steps scaled by 2 so every heading
    // lands on the integer lattice with L1 length 2.
    static const int step_x[6] = {2, 1, -1, -2, -1, 1};
    static const int step_y[6] = {0, 1, 1, 0, -1, -1};

    std::vector<std::int8_t> headings{0};
    for (int l = 0; l < level; ++l) {
        std::vector<std::int8_t> next;
        next.reserve(headings.size() * 4);
        for (std::int8_t h : headings) {
            next.push_back(h);
            next.push_back(static_cast<std::int8_t>((h + 1) % 6));
            next.push_back(static_cast<std::int8_t>((h + 5) % 6));
            next.push_back(h);
        }
        headings = std::move(next);
    }

    std::vector<std::int32_t> coords;
    coords.reserve((headings.size() + 1) * 2);
    std::int64_t x = 0;
    std::int64_t y = 0;
    coords.push_back(0);
    coords.push_back(0);
    for (std::int8_t h : headings) {
        x += step_x[h];
        y += step_y[h];
        coords.push_back(static_cast<std::int32_t>(x));
        coords.push_back(static_cast<std::int32_t>(y));
    }
    return make_point_set(std::move(coords), 2, Metric::L1);
}

DiscretePointSet gen_sierpinski(int level) {
    if (level < 1) {
        throw argument_error("gen_sierpinski: level must be at least 1");
    }
    if (level > 12) {
        throw argument_error("gen_sierpinski: level " +
                             std::to_string(level) +
                             " exceeds the memory budget (max 12)");
    }
    const std::int32_t extent = static_cast<std::int32_t>(1) << level;
    std::vector<std::int32_t> coords;
    for (std::int32_t i = 0; i < extent; ++i) {
        for (std::int32_t j = 0; i + j < extent; ++j) {
            if ((i & j) == 0) {
                coords.push_back(i);
                coords.push_back(j);
            }
        }
    }
    return make_point_set(std::move(coords), 2, Metric::L1);
}

} // namespace idd
