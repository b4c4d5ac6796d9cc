#ifndef IDD_LATTICE_VOLUMES_HPP
#define IDD_LATTICE_VOLUMES_HPP

#include <cstdint>

namespace idd {

// Number of integer lattice points within L1 distance t of a point in
// dimension d (the dilated cross-polytope count). Exact integer arithmetic;
// throws overflow_error if the value does not fit in 64 bits.
std::uint64_t volume_int(int t, int d);

// Analytic continuation of volume_int to real d > 0:
//   V(t, d) = C(d + t, t) * 2F1(-d, -t; -d - t; -1)
// evaluated with the terminating series (t + 1 terms) and a log-gamma
// binomial prefactor. For integer d this matches volume_int to ~1e-12
// relative. log_volume_real returns log V, which stays finite long after
// V itself overflows a double.
double volume_real(int t, double d);
double log_volume_real(int t, double d);

// V(t1, d) / V(t2, d), in (0, 1], computed in log space. Requires t1 <= t2.
double volume_ratio(int t1, int t2, double d);

// d/dd of volume_ratio, central finite difference with step
// h = 1e-5 * max(1, d). Strictly negative for t1 < t2.
double volume_ratio_ddim(int t1, int t2, double d);

} // namespace idd

#endif
