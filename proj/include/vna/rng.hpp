#pragma once

#include <complex>
#include <cstdint>

namespace vna {

// splitmix64: tiny deterministic generator. Identical seeds give identical
// streams on every platform, which is what the reproducibility contract of
// the seeded samplers rests on.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();
    double next_unit();               // uniform in (0, 1]
    double next_gaussian();           // standard normal, Box-Muller
    std::complex<double> next_complex_gaussian();
    std::uint64_t next_below(std::uint64_t n);  // uniform-ish in [0, n)

private:
    std::uint64_t state_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// Derives independent per-trial seeds from a master seed, so serial and
// parallel schedules of the same experiment agree.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index);

}  // namespace vna
