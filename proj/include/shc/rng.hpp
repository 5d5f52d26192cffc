#pragma once

#include <cstdint>
#include <cmath>

namespace shc {

// Deterministic counter-seeded stream: xoshiro256++ state derived from
// (seed, stream_id) via splitmix64. Identical (seed, stream_id) reproduce
// identical draw sequences on every platform and worker layout.
class RngStream {
public:
    RngStream() : RngStream(0, 0) {}

    RngStream(std::uint64_t seed, std::uint64_t stream_id) {
        std::uint64_t sm = seed ^ (0x9E3779B97F4A7C15ULL * (stream_id + 1));
        for (auto& word : state_) word = splitmix64(sm);
        // xoshiro256 state must not be all-zero
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[3] = 1;
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform on the open interval (0,1); never returns 0 or 1.
    double u01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
    }

    double exponential() { return -std::log(u01()); }

    // Box-Muller pair of independent standard normals.
    void normal_pair(double& z1, double& z2) {
        const double u1 = u01();
        const double u2 = u01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        z1 = r * std::cos(a);
        z2 = r * std::sin(a);
    }

    double normal() {
        double z1, z2;
        normal_pair(z1, z2);
        return z1;
    }

    void fill_u01(double* dst, std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) dst[i] = u01();
    }

private:
    static std::uint64_t splitmix64(std::uint64_t& s) {
        std::uint64_t z = (s += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

} // namespace shc
