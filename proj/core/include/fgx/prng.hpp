#pragma once

#include <cstdint>

namespace fgx {

/// SplitMix64: tiny, portable, splittable generator. Pinned here so that
/// seeded runs are byte-identical across platforms (std:: distributions and
/// engines are not guaranteed to be).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// The paper's rand(2): uniform on {1, 2}.
    int rand2() { return static_cast<int>(next() >> 63) + 1; }

    /// Uniform on [0, bound).
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

    /// Derive an independent child stream.
    SplitMix64 split() { return SplitMix64(next() ^ 0x9e3779b97f4a7c15ULL); }

private:
    std::uint64_t state_;
};

}  // namespace fgx
