#ifndef IDD_ESTIMATOR_HPP
#define IDD_ESTIMATOR_HPP

#include "idd/census.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace idd {

enum class Method {
    MleDiscrete,
    BayesDiscrete,
    MleContinuum,
    BayesContinuum,
};

std::string method_name(Method method);
Method method_from_name(const std::string& name);

// Point estimate of the intrinsic dimension with a one-sigma error bar.
// t1/t2 are the two probe radii (integers for discrete estimators, real
// radii allowed for the continuum cross-checks).
struct IdEstimate {
    double d = 0.0;
    double err = 0.0;
    Method method = Method::MleDiscrete;
    double t1 = 0.0;
    double t2 = 0.0;
    std::size_t n_points_used = 0;
};

// Posterior density of d tabulated on an ascending grid, trapezoid-
// normalized to unit mass.
struct PosteriorGrid {
    std::vector<double> d_grid;
    std::vector<double> density;
    double mean = 0.0;
    double variance = 0.0;

    double std_dev() const;
};

// Maximum-likelihood dimension: the unique root d of
//   V(t1, d) / V(t2, d) = sum_n / sum_k,
// located by bracketed bisection on [0.01, 1000]. The err field carries
// the Cramér-Rao bound at the root.
IdEstimate mle_discrete(const NeighborCensus& census);

// Cramér-Rao error bound sqrt(p(1-p) / (<k> N p'^2)) at dimension d,
// with p the volume ratio and p' its derivative in d.
double cramer_rao_discrete(double d, const NeighborCensus& census);

// Bayesian posterior over d. The Beta(1 + sum_n, 1 + sum(k - n))
// posterior on the success probability p is mapped to d by the change of
// variables p = volume_ratio(t1, t2, d). The grid starts on
// [0.01, d_max], doubles its upper end while edge mass exceeds 1e-3, and
// then zooms onto the region carrying the mass so narrow posteriors stay
// resolved.
PosteriorGrid bayes_discrete(const NeighborCensus& census,
                             int grid_size = 1000, double d_max = 50.0);

IdEstimate bayes_discrete_estimate(const NeighborCensus& census,
                                   int grid_size = 1000,
                                   double d_max = 50.0);

// Continuum closed form d = ln(sum_n/sum_k) / ln(r).
double mle_continuum(double sum_n, double sum_k, double r);

// Continuum Cramér-Rao variance (1 - r^d) / (<k> N ln(r)^2 r^d).
double cr_variance_continuum(double d, double r, std::size_t n_points,
                             double mean_k);

// Variance-minimizing radius ratio, 0.2032...^(1/d).
double optimal_ratio(double d);

struct ContinuumMoments {
    double mean = 0.0;
    double variance = 0.0;
};

// Exact posterior moments in the continuum limit, via digamma/trigamma.
ContinuumMoments bayes_continuum_moments(double sum_n, double sum_k,
                                         double r);

} // namespace idd

#endif
