#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <span>

namespace ridgetail {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11 reference
// constants). Each (seed, stream) pair is an independent substream; output
// depends only on (seed, stream, position), so replication i of a Monte Carlo
// run can draw from stream i regardless of which worker executes it.
struct Philox4x32 {
    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

    static std::array<std::uint32_t, 4> block(std::uint64_t key,
                                              std::uint64_t ctr_hi,
                                              std::uint64_t ctr_lo) {
        std::uint32_t x0 = static_cast<std::uint32_t>(ctr_lo);
        std::uint32_t x1 = static_cast<std::uint32_t>(ctr_lo >> 32);
        std::uint32_t x2 = static_cast<std::uint32_t>(ctr_hi);
        std::uint32_t x3 = static_cast<std::uint32_t>(ctr_hi >> 32);
        std::uint32_t k0 = static_cast<std::uint32_t>(key);
        std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * x0;
            const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * x2;
            const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
            const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
            x0 = hi1 ^ x1 ^ k0;
            x1 = lo1;
            x2 = hi0 ^ x3 ^ k1;
            x3 = lo0;
            k0 += kWeyl0;
            k1 += kWeyl1;
        }
        return {x0, x1, x2, x3};
    }
};

// splitmix64 finalizer; used to derive independent sub-seeds from a master
// seed and a small tag so that nested estimators never share substreams.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
    std::uint64_t z = seed + (tag + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// One substream of the counter-based generator. Cheap to construct per
// replication; draws uniforms in (0,1] and standard normals via Box-Muller.
class SubstreamRng {
  public:
    SubstreamRng(std::uint64_t seed, std::uint64_t stream)
        : key_(seed), stream_(stream) {}

    std::uint64_t next_u64() {
        if (pos_ == 2) {
            const auto b = Philox4x32::block(key_, stream_, counter_++);
            buf_[0] = (static_cast<std::uint64_t>(b[0]) << 32) | b[1];
            buf_[1] = (static_cast<std::uint64_t>(b[2]) << 32) | b[3];
            pos_ = 0;
        }
        return buf_[pos_++];
    }

    // uniform on (0,1]: 53-bit mantissa, never returns 0 so log() is safe
    double uniform() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    void normals(std::span<double> out) {
        for (double& x : out) x = normal();
    }

  private:
    std::uint64_t key_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
    std::array<std::uint64_t, 2> buf_{};
    int pos_ = 2;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace ridgetail
