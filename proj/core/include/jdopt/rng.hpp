#pragma once

#include <cmath>
#include <cstdint>

namespace jdopt {

/// splitmix64, used to expand (seed, path index) into xoshiro state.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// xoshiro256++ with a counter-based stream per (seed, stream) pair: the same
/// pair yields the same draws under any thread assignment.
class PathRng {
public:
    PathRng(std::uint64_t seed, std::uint64_t stream) : zt_(&ziggurat_tables()) {
        std::uint64_t sm = seed ^ (0xD1B54A32D192ED03ULL * (stream + 1));
        for (auto& word : s_) word = splitmix64(sm);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform on (0, 1].
    double next_uniform() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    /// Standard normal via the Marsaglia-Tsang ziggurat (128 layers).
    double next_normal() {
        while (true) {
            const std::int32_t hz = static_cast<std::int32_t>(next_u64() >> 32);
            const std::uint32_t iz = static_cast<std::uint32_t>(hz) & 127u;
            const auto& zt = *zt_;
            if (static_cast<std::uint32_t>(hz < 0 ? -hz : hz) < zt.kn[iz])
                return hz * zt.wn[iz];

            double x = hz * zt.wn[iz];
            if (iz == 0) {
                // Tail beyond R, sampled by the standard exponential trick.
                double y;
                do {
                    x = -std::log(next_uniform()) * kInvR;
                    y = -std::log(next_uniform());
                } while (y + y < x * x);
                return hz > 0 ? kR + x : -kR - x;
            }
            if (zt.fn[iz] + next_uniform() * (zt.fn[iz - 1] - zt.fn[iz]) <
                std::exp(-0.5 * x * x))
                return x;
        }
    }

    /// Exponential with the given rate.
    double next_exponential(double rate) { return -std::log(next_uniform()) / rate; }

private:
    static constexpr double kR = 3.442619855899;
    static constexpr double kInvR = 1.0 / kR;

    struct ZigguratTables {
        std::uint32_t kn[128];
        double wn[128];
        double fn[128];

        ZigguratTables() {
            double dn = kR, tn = kR;
            const double vn = 9.91256303526217e-3;
            const double m1 = 2147483648.0;
            const double q = vn / std::exp(-0.5 * dn * dn);
            kn[0] = static_cast<std::uint32_t>((dn / q) * m1);
            kn[1] = 0;
            wn[0] = q / m1;
            wn[127] = dn / m1;
            fn[0] = 1.0;
            fn[127] = std::exp(-0.5 * dn * dn);
            for (int i = 126; i >= 1; --i) {
                dn = std::sqrt(-2.0 * std::log(vn / dn + std::exp(-0.5 * dn * dn)));
                kn[i + 1] = static_cast<std::uint32_t>((dn / tn) * m1);
                tn = dn;
                fn[i] = std::exp(-0.5 * dn * dn);
                wn[i] = dn / m1;
            }
        }
    };

    static const ZigguratTables& ziggurat_tables() {
        static const ZigguratTables tables;
        return tables;
    }

    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4];
    const ZigguratTables* zt_;
};

} // namespace jdopt
