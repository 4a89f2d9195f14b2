#pragma once

#include <cstdint>
#include <random>

namespace cardzk {

// Source of the random draws behind shuffles. One instance per protocol run;
// the whole run is reproducible from the seed. The interface is virtual so
// test doubles (e.g. a rigged constant-offset source) can stand in for it.
class RandomSource {
public:
    virtual ~RandomSource() = default;

    // Uniform draw from {0, 1, ..., n-1}. n == 0 is a caller bug.
    virtual std::uint64_t next_below(std::uint64_t n) = 0;
};

// Default source: mt19937_64 with rejection sampling, so the stream of draws
// is identical on every platform for a given seed.
class SeededRng final : public RandomSource {
public:
    explicit SeededRng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_below(std::uint64_t n) override {
        if (n <= 1) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return x % n;
    }

private:
    std::mt19937_64 gen_;
};

// Rigged source for negative controls: every draw lands on the same value.
// A cyclic shuffle driven by this never moves the columns (offset stays
// fixed), which a uniformity audit must detect.
class ConstantRng final : public RandomSource {
public:
    explicit ConstantRng(std::uint64_t value = 0) : value_(value) {}

    std::uint64_t next_below(std::uint64_t n) override {
        if (n <= 1) return 0;
        return value_ % n;
    }

private:
    std::uint64_t value_;
};

// splitmix64 step; used to derive independent per-trial seeds from a master
// seed so sweeps are reproducible and trials can run in any order.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace cardzk
