#pragma once

// Counter-based generator (Philox4x32-10). Every draw is a pure function of
// (key, counter), so a stream keyed by (seed, sample index) gives the same
// values no matter which thread evaluates it or in which order.

#include <array>
#include <cstdint>

namespace mfact {

class Philox4x32 {
public:
    using block = std::array<std::uint32_t, 4>;

    Philox4x32(std::uint64_t seed, std::uint64_t stream)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)}
        , stream_(stream)
    {
    }

    /// The block for counter value `ctr` in this stream.
    block generate(std::uint64_t ctr) const
    {
        block x{static_cast<std::uint32_t>(ctr), static_cast<std::uint32_t>(ctr >> 32),
                static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
        auto k = key_;
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * x[0];
            const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * x[2];
            x = {static_cast<std::uint32_t>(p1 >> 32) ^ x[1] ^ k[0], static_cast<std::uint32_t>(p1),
                 static_cast<std::uint32_t>(p0 >> 32) ^ x[3] ^ k[1], static_cast<std::uint32_t>(p0)};
            k[0] += 0x9E3779B9u;
            k[1] += 0xBB67AE85u;
        }
        return x;
    }

    std::uint32_t operator()()
    {
        if (used_ == 4) {
            buf_ = generate(ctr_++);
            used_ = 0;
        }
        return buf_[used_++];
    }

    /// Exactly uniform on 0..bound-1 (Lemire's multiply-and-reject).
    std::uint32_t uniform(std::uint32_t bound)
    {
        std::uint64_t m = std::uint64_t{(*this)()} * bound;
        auto low = static_cast<std::uint32_t>(m);
        if (low < bound) {
            const std::uint32_t threshold = (0u - bound) % bound;
            while (low < threshold) {
                m = std::uint64_t{(*this)()} * bound;
                low = static_cast<std::uint32_t>(m);
            }
        }
        return static_cast<std::uint32_t>(m >> 32);
    }

private:
    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_;
    std::uint64_t ctr_ = 0;
    block buf_{};
    int used_ = 4;
};

} // namespace mfact
