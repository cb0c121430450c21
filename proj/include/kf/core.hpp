/*
 * core.hpp — shared numeric primitives
 *
 * Complex alias, phase-accurate unit exponentials, a splittable PRNG for
 * reproducible data, and the error taxonomy used across the library:
 *
 *   validation_error : malformed inputs (bad measure, bad file, bad option)
 *   resource_error   : a configured cap was exceeded (atom count, enumeration size)
 *   contract_error   : a numerical cross-check exceeded its tolerance
 */

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace kf {

using cplx = std::complex<double>;

inline constexpr double two_pi = 6.28318530717958647692528676655900577;

struct validation_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct contract_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// e^{2*pi*i*t}, reducing t mod 1 before the trig call so large arguments keep
// full precision.
inline cplx cis(double turns) {
    const double r = turns - std::nearbyint(turns);
    return {std::cos(two_pi * r), std::sin(two_pi * r)};
}

// e^{2*pi*i*a*b}. The naive product a*b loses absolute phase accuracy once it
// reaches the tens of thousands (frequency * position); recovering the product
// rounding error with fma before reduction keeps the phase correct to ~1 ulp
// of the fractional part.
inline cplx cis_prod(double a, double b) {
    const double p = a * b;
    const double e = std::fma(a, b, -p);
    const double r = (p - std::nearbyint(p)) + e;
    return {std::cos(two_pi * r), std::sin(two_pi * r)};
}

// splitmix64. Fixed seed -> fixed stream on every platform, which std::
// distributions do not guarantee.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0,1)
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // uniform in [lo,hi)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    SplitMix64 split() { return SplitMix64(next() ^ 0x5851f42d4c957f2dULL); }

  private:
    std::uint64_t state_;
};

} // namespace kf
