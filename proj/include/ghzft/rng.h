// Copyright 2026 The ghzft Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GHZFT_RNG_H
#define GHZFT_RNG_H

#include <array>
#include <cstdint>
#include <initializer_list>
#include <limits>

namespace ghzft {

/// Philox4x32-10 block function (Salmon et al., SC'11).
inline std::array<uint32_t, 4> philox4x32_10(std::array<uint32_t, 4> ctr, std::array<uint32_t, 2> key) {
    constexpr uint32_t kMul0 = 0xD2511F53;
    constexpr uint32_t kMul1 = 0xCD9E8D57;
    constexpr uint32_t kWeyl0 = 0x9E3779B9;
    constexpr uint32_t kWeyl1 = 0xBB67AE85;
    for (int round = 0; round < 10; round++) {
        uint64_t p0 = uint64_t{kMul0} * ctr[0];
        uint64_t p1 = uint64_t{kMul1} * ctr[2];
        uint32_t hi0 = uint32_t(p0 >> 32), lo0 = uint32_t(p0);
        uint32_t hi1 = uint32_t(p1 >> 32), lo1 = uint32_t(p1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    return ctr;
}

/// SplitMix64 finaliser.
inline uint64_t mix64(uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Key for the stream family addressed by `path` under `seed`.
/// Distinct paths (including paths of different lengths) give unrelated keys.
inline uint64_t derive_key(uint64_t seed, std::initializer_list<uint64_t> path) {
    uint64_t h = mix64(seed ^ 0x6A09E667F3BCC908ull);
    for (uint64_t p : path) {
        h = mix64(h ^ mix64(p + 0x3C6EF372FE94F82Bull));
    }
    return mix64(h ^ path.size());
}

/// Counter-addressed stream of 32-bit words.
///
/// Word j of stream `stream_id` under `key` is a pure function of
/// (key, stream_id, j), so any worker can reproduce any draw without
/// consuming earlier ones.
class RandomStream {
   public:
    using result_type = uint32_t;

    RandomStream(uint64_t key, uint64_t stream_id) : key_{uint32_t(key), uint32_t(key >> 32)}, stream_(stream_id) {
    }

    static constexpr result_type min() {
        return 0;
    }
    static constexpr result_type max() {
        return std::numeric_limits<uint32_t>::max();
    }

    uint32_t word_at(uint64_t j) const {
        return block(j >> 2)[j & 3];
    }

    std::array<uint32_t, 4> block(uint64_t block_index) const {
        return philox4x32_10(
            {uint32_t(block_index), uint32_t(block_index >> 32), uint32_t(stream_), uint32_t(stream_ >> 32)}, key_);
    }

    result_type operator()() {
        if ((position_ & 3) == 0) {
            buffer_ = block(position_ >> 2);
        }
        return buffer_[position_++ & 3];
    }

    uint64_t next_u64() {
        uint64_t lo = (*this)();
        uint64_t hi = (*this)();
        return lo | (hi << 32);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return double(next_u64() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) {
        return uniform() < p;
    }

    uint64_t position() const {
        return position_;
    }

   private:
    std::array<uint32_t, 2> key_;
    uint64_t stream_;
    uint64_t position_ = 0;
    std::array<uint32_t, 4> buffer_{};
};

}  // namespace ghzft

#endif
