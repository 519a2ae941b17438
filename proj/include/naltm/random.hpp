#pragma once

// Seeded RNG wrapper. All randomness in the library flows through these
// helpers so a given seed replays bit-exactly; std::uniform_int_distribution
// and std::sample are avoided because their draw sequences are
// implementation-defined.

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace naltm {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform draw from [0, n). n must be > 0.
    std::uint64_t index(std::uint64_t n) {
        // Lemire-style rejection keeps the draw unbiased.
        std::uint64_t x = engine_();
        std::uint64_t r = x % n;
        while (x - r > std::uint64_t(0) - n) {
            x = engine_();
            r = x % n;
        }
        return r;
    }

    // k distinct indices from [0, n), in draw order (partial Fisher-Yates).
    std::vector<std::uint32_t> sample(std::uint32_t n, std::uint32_t k) {
        std::vector<std::uint32_t> pool(n);
        for (std::uint32_t i = 0; i < n; ++i) pool[i] = i;
        if (k > n) k = n;
        std::vector<std::uint32_t> out;
        out.reserve(k);
        for (std::uint32_t i = 0; i < k; ++i) {
            std::uint32_t j = i + static_cast<std::uint32_t>(index(n - i));
            std::swap(pool[i], pool[j]);
            out.push_back(pool[i]);
        }
        return out;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace naltm
