#ifndef IDD_RNG_HPP
#define IDD_RNG_HPP

#include <cstdint>
#include <random>

namespace idd {

// splitmix64 mix; used to derive independent substream seeds so that
// parallel tasks stay reproducible regardless of scheduling.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Thin deterministic sampling layer over mt19937_64. The standard
// distribution objects are implementation-defined, so uniform and normal
// draws are produced here explicitly and reproduce bit-identically on
// any conforming toolchain.
class rng {
public:
    explicit rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform integer in [0, n), rejection-sampled to avoid modulo bias.
    std::uint64_t uniform_below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t value = engine_();
        while (value >= limit) {
            value = engine_();
        }
        return value % n;
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform_double() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform double in (lo, hi).
    double uniform_range(double lo, double hi) {
        double u = uniform_double();
        while (u == 0.0) {
            u = uniform_double();
        }
        return lo + u * (hi - lo);
    }

    // Standard normal via Box-Muller with a cached spare.
    double normal();

    double normal(double mean, double sigma) {
        return mean + sigma * normal();
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace idd

#endif
