#pragma once

// Shared small utilities: atom records, special functions, and the
// counter-based RNG used by all Monte Carlo interfaces.

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace tailbounds {

/// A point mass: `mass` probability sitting at `value`.
struct Atom {
    double value = 0.0;
    double mass = 0.0;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Absolute tolerance for exact (step / piecewise-linear) arithmetic paths.
inline constexpr double kTolExact = 1e-12;
/// Absolute tolerance for transcendental (exponential / Gaussian) paths.
inline constexpr double kTolTranscendental = 1e-9;

/// Inverse error function via bisection on the forward erf.
/// The bracket is shrunk until its width is below 1e-12, so the result is
/// accurate to ~1e-13 in x for y away from +/-1.
inline double erf_inv(double y) {
    if (!(y > -1.0 && y < 1.0)) {
        throw std::invalid_argument("erf_inv: argument must lie in (-1, 1)");
    }
    if (y == 0.0) return 0.0;
    double lo = -6.0, hi = 6.0;  // erf(+/-6) is 1 to well below double epsilon
    while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        if (std::erf(mid) < y) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Counter-based uniform generator (splitmix64 output function).
///
/// Every draw is a pure function of (seed, counter), so identical seeds
/// reproduce bit-identical streams and the counter space can be split
/// across workers without coordination.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    /// The i-th raw 64-bit word of the stream.
    std::uint64_t word(std::uint64_t counter) const {
        std::uint64_t z = seed_ + (counter + 1) * 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// The i-th uniform draw in the open interval (0, 1).
    double uniform(std::uint64_t counter) const {
        const double u = static_cast<double>(word(counter) >> 11) * 0x1.0p-53;
        // Nudge off the endpoints: quantile maps are defined on (0,1).
        return u <= 0.0 ? 0x1.0p-53 : u;
    }

    /// Sequential convenience draw (advances an internal counter).
    double next() { return uniform(next_++); }

private:
    std::uint64_t seed_;
    std::uint64_t next_ = 0;
};

}  // namespace tailbounds
