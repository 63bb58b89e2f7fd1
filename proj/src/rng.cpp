#include "vna/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace vna {

std::uint64_t SplitMix64::next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double SplitMix64::next_unit() {
    // 53 mantissa bits, shifted into (0, 1] so log() below is safe
    return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
}

double SplitMix64::next_gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = next_unit();
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

std::complex<double> SplitMix64::next_complex_gaussian() {
    const double re = next_gaussian();
    const double im = next_gaussian();
    return {re, im};
}

std::uint64_t SplitMix64::next_below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("SplitMix64::next_below: n must be positive");
    return next() % n;  // modulo bias is irrelevant at desk-scale n
}

std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index) {
    SplitMix64 g(master ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
    g.next();
    return g.next();
}

}  // namespace vna
