#include "entrans/rng.hpp"

#include <cmath>
#include <numbers>

#include "entrans/errors.hpp"

namespace entrans {

namespace {

constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ull;
constexpr std::uint64_t kMul1 = 0xCA5A826395121157ull;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ull;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73Bull;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo)
{
    const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<std::uint64_t>(p >> 64);
    lo = static_cast<std::uint64_t>(p);
}

inline void philox_round(std::array<std::uint64_t, 4>& c, const std::array<std::uint64_t, 2>& k)
{
    std::uint64_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, c[0], hi0, lo0);
    mulhilo(kMul1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

std::array<std::uint64_t, 4> philox10(std::array<std::uint64_t, 4> counter,
                                      std::array<std::uint64_t, 2> key)
{
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        philox_round(counter, key);
    }
    return counter;
}

} // namespace

RandomStream::RandomStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : key_{master_seed, stream_index}, block_index_(~0ull)
{
}

RandomStream RandomStream::restore(std::uint64_t master_seed, std::uint64_t stream_index,
                                   std::uint64_t draw_count)
{
    RandomStream s(master_seed, stream_index);
    s.draw_count_ = draw_count;
    return s;
}

RandomStream RandomStream::at_draw(std::uint64_t draw_count) const
{
    return restore(key_[0], key_[1], draw_count);
}

void RandomStream::refill(std::uint64_t block_index)
{
    // numpy's generator advances the counter before producing a block, so
    // block i of the stream corresponds to counter value i + 1.
    block_ = philox10({block_index + 1, 0, 0, 0}, key_);
    block_index_ = block_index;
}

std::uint64_t RandomStream::next_u64()
{
    const std::uint64_t block = draw_count_ / 4;
    if (block != block_index_)
        refill(block);
    return block_[draw_count_++ % 4];
}

double RandomStream::uniform01()
{
    // Top 53 bits give the usual dyadic rationals in [0, 1).
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform_symmetric()
{
    return 0.5 - uniform01();
}

double RandomStream::exponential(double rate)
{
    if (!(rate > 0.0))
        throw config_error("exponential: rate must be positive");
    return -std::log1p(-uniform01()) / rate;
}

std::pair<double, double> RandomStream::gaussian_pair()
{
    // Box-Muller; u1 = 0 cannot occur because uniform01() < 1 keeps 1-u1 > 0,
    // and log(1-u1) stays finite since 1-u1 >= 2^-53.
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log1p(-u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
}

std::complex<double> RandomStream::gaussian_complex()
{
    const auto [x, y] = gaussian_pair();
    return {x, y};
}

} // namespace entrans
