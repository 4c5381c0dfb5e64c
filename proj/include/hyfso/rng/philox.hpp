#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>

#include "hyfso/errors.hpp"

namespace hyfso {

namespace detail {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// splitmix64 finalizer (Steele/Lea/Flood); used only to spread seeds into
// Philox keys.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t splitmix_next(std::uint64_t& state) {
    state += kGolden;
    return mix64(state);
}

} // namespace detail

// Counter-based generator: Philox-4x64 with 10 rounds. Identical blocks to
// the reference implementation (tests pin known-answer vectors), so a stream
// is fully determined by its key; the counter just enumerates blocks. This
// is what makes batch-parallel simulation reproducible: batch i draws from
// the stream keyed by (seed, i) no matter which worker runs it.
class PhiloxStream {
public:
    PhiloxStream(std::uint64_t seed, std::uint64_t stream_id) {
        std::uint64_t st = seed ^ detail::mix64(detail::kGolden * (stream_id + 1));
        key_[0] = detail::splitmix_next(st);
        key_[1] = detail::splitmix_next(st);
    }

    static PhiloxStream with_raw_key(std::uint64_t k0, std::uint64_t k1) {
        PhiloxStream s(0, 0);
        s.key_ = {k0, k1};
        s.ctr_ = {0, 0, 0, 0};
        s.pos_ = 4;
        s.has_spare_ = false;
        return s;
    }

    std::uint64_t next_u64() {
        if (pos_ >= 4) {
            if (++ctr_[0] == 0 && ++ctr_[1] == 0 && ++ctr_[2] == 0) ++ctr_[3];
            buf_ = block(ctr_, key_);
            pos_ = 0;
        }
        return buf_[static_cast<std::size_t>(pos_++)];
    }

    // 53-bit uniform on (0, 1]; never returns 0, so log() is always finite.
    double next_uniform() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; the second variate is cached.
    double next_normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = next_uniform();
        const double u2 = next_uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double th = 2.0 * M_PI * u2;
        spare_ = r * std::sin(th);
        has_spare_ = true;
        return r * std::cos(th);
    }

    double next_exponential(double mean) {
        if (!(mean > 0.0))
            throw domain_error("next_exponential: mean must be positive");
        return -mean * std::log(next_uniform());
    }

    // Gamma(shape, scale) by Marsaglia-Tsang squeeze; shape < 1 is boosted
    // through Gamma(shape+1) * U^{1/shape}.
    double next_gamma(double shape, double scale) {
        if (!(shape > 0.0) || !(scale > 0.0))
            throw domain_error("next_gamma: shape and scale must be positive");
        if (shape < 1.0) {
            const double u = next_uniform();
            return next_gamma(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = next_normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = next_uniform();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v * scale;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v * scale;
        }
    }

private:
    static void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
        const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
        hi = static_cast<std::uint64_t>(p >> 64);
        lo = static_cast<std::uint64_t>(p);
    }

    static std::array<std::uint64_t, 4> block(std::array<std::uint64_t, 4> ctr,
                                              std::array<std::uint64_t, 2> key) {
        constexpr std::uint64_t M0 = 0xD2E7470EE14C6C93ULL;
        constexpr std::uint64_t M1 = 0xCA5A826395121157ULL;
        constexpr std::uint64_t W1 = 0xBB67AE8584CAA73BULL;
        for (int r = 0; r < 10; ++r) {
            if (r > 0) {
                key[0] += detail::kGolden;
                key[1] += W1;
            }
            std::uint64_t hi0, lo0, hi1, lo1;
            mulhilo(M0, ctr[0], hi0, lo0);
            mulhilo(M1, ctr[2], hi1, lo1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        }
        return ctr;
    }

    std::array<std::uint64_t, 4> ctr_{{0, 0, 0, 0}};
    std::array<std::uint64_t, 2> key_{{0, 0}};
    std::array<std::uint64_t, 4> buf_{{0, 0, 0, 0}};
    int pos_ = 4;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace hyfso
