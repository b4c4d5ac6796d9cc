#include "idd/rng.hpp"

#include <cmath>
#include <numbers>

namespace idd {

double rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform_double();
    while (u1 == 0.0) {
        u1 = uniform_double();
    }
    const double u2 = uniform_double();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

} // namespace idd
