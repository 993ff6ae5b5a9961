#pragma once

#include <cstdint>
#include <cmath>

namespace polylab {

// Counter-based generator (Philox-4x64, 10 rounds). The key is derived from
// (seed, stream_id), so distinct streams are independent by construction and a
// stream's output depends only on (seed, stream_id) -- never on how many other
// streams exist or which thread runs it. Period per stream exceeds 2^130.
//
// Normal variates come from an explicit Box-Muller transform rather than
// std::normal_distribution, whose output sequence is implementation-defined;
// everything here is bit-reproducible across platforms.
class Rng {
  public:
    Rng() : Rng(0, 0) {}

    Rng(std::uint64_t seed, std::uint64_t stream_id) {
        key_[0] = seed;
        key_[1] = stream_id;
        ctr_[0] = ctr_[1] = ctr_[2] = ctr_[3] = 0;
        buf_pos_ = 4;
        have_cached_normal_ = false;
    }

    std::uint64_t next_u64() {
        if (buf_pos_ == 4) refill();
        return buf_[buf_pos_++];
    }

    // Uniform in [0, 1), 53 random bits.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform in (0, 1]; safe as a log argument.
    double uniform01_open0() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Standard normal via Box-Muller; generates pairs, caches the second.
    double normal() {
        if (have_cached_normal_) {
            have_cached_normal_ = false;
            return cached_normal_;
        }
        const double u1 = uniform01_open0();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        cached_normal_ = r * std::sin(a);
        have_cached_normal_ = true;
        return r * std::cos(a);
    }

    std::uint64_t seed() const { return key_[0]; }
    std::uint64_t stream_id() const { return key_[1]; }

  private:
    static void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
        const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
        hi = static_cast<std::uint64_t>(p >> 64);
        lo = static_cast<std::uint64_t>(p);
    }

    void refill() {
        // Philox multipliers and Weyl key increments.
        constexpr std::uint64_t M0 = 0xD2E7470EE14C6C93ull;
        constexpr std::uint64_t M1 = 0xCA5A826395121157ull;
        constexpr std::uint64_t W0 = 0x9E3779B97F4A7C15ull;
        constexpr std::uint64_t W1 = 0xBB67AE8584CAA73Bull;

        std::uint64_t c0 = ctr_[0], c1 = ctr_[1], c2 = ctr_[2], c3 = ctr_[3];
        std::uint64_t k0 = key_[0], k1 = key_[1];
        for (int round = 0; round < 10; ++round) {
            std::uint64_t hi0, lo0, hi1, lo1;
            mulhilo(M0, c0, hi0, lo0);
            mulhilo(M1, c2, hi1, lo1);
            const std::uint64_t n0 = hi1 ^ c1 ^ k0;
            const std::uint64_t n1 = lo1;
            const std::uint64_t n2 = hi0 ^ c3 ^ k1;
            const std::uint64_t n3 = lo0;
            c0 = n0; c1 = n1; c2 = n2; c3 = n3;
            k0 += W0; k1 += W1;
        }
        buf_[0] = c0; buf_[1] = c1; buf_[2] = c2; buf_[3] = c3;
        buf_pos_ = 0;
        // 256-bit little-endian counter increment.
        if (++ctr_[0] == 0 && ++ctr_[1] == 0 && ++ctr_[2] == 0) ++ctr_[3];
    }

    std::uint64_t key_[2];
    std::uint64_t ctr_[4];
    std::uint64_t buf_[4];
    int buf_pos_;
    bool have_cached_normal_;
    double cached_normal_ = 0.0;
};

}  // namespace polylab
