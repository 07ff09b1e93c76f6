#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>

namespace fpslfa::rng {

// mt19937_64 output is fully specified by the standard, so every draw here is
// bit-identical across platforms. The std:: distributions are not; they are
// deliberately avoided.
using Engine = std::mt19937_64;

// Uniform on [0, 1) from the top 53 bits.
inline double uniform01(Engine& engine) {
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

// Unbiased integer in [0, n), rejection sampled.
inline std::uint64_t below(Engine& engine, std::uint64_t n) {
    if (n == 0) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t draw;
    do {
        draw = engine();
    } while (draw >= limit);
    return draw % n;
}

// Fisher-Yates; std::shuffle is implementation-defined, this is not.
template <typename T>
void shuffle(std::span<T> values, Engine& engine) {
    for (std::size_t i = values.size(); i > 1; --i) {
        const std::uint64_t j = below(engine, i);
        std::swap(values[i - 1], values[j]);
    }
}

// Standard normal via Box-Muller, caching the second draw of each pair.
class NormalSampler {
public:
    double sample(Engine& engine) {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform01(engine);  // (0, 1], keeps log finite
        const double u2 = uniform01(engine);
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace fpslfa::rng
