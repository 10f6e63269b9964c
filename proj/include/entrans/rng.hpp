#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <utility>

namespace entrans {

// Counter-based random stream (Philox4x64-10). A (master_seed, stream_index)
// pair names an independent stream, and any position in a stream is reachable
// in O(1) via at_draw(), so parallel workers can consume disjoint slices and
// reproduce results bit-for-bit regardless of scheduling. The sequence matches
// numpy's Philox bit generator for the same key/counter.
class RandomStream {
public:
    RandomStream(std::uint64_t master_seed, std::uint64_t stream_index);

    // Stream rebuilt from its serialized identity (seed, stream, position).
    static RandomStream restore(std::uint64_t master_seed, std::uint64_t stream_index,
                                std::uint64_t draw_count);

    std::uint64_t master_seed() const noexcept { return key_[0]; }
    std::uint64_t stream_index() const noexcept { return key_[1]; }
    std::uint64_t draw_count() const noexcept { return draw_count_; }

    // Copy of this stream positioned at an absolute draw count; O(1).
    RandomStream at_draw(std::uint64_t draw_count) const;

    std::uint64_t next_u64();

    double uniform01();          // [0, 1), 53-bit resolution
    double uniform_symmetric();  // (-1/2, 1/2], computed as 1/2 - uniform01()
    double exponential(double rate = 1.0);      // inverse CDF, -log(1-u)/rate
    std::pair<double, double> gaussian_pair();  // Box-Muller, two N(0,1) draws
    std::complex<double> gaussian_complex();    // re and im independently N(0,1)

private:
    std::array<std::uint64_t, 2> key_;
    std::uint64_t draw_count_ = 0;
    std::array<std::uint64_t, 4> block_{};
    std::uint64_t block_index_;  // counter value block_ was generated from

    void refill(std::uint64_t block_index);
};

} // namespace entrans
