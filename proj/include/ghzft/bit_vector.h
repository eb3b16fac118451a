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

#ifndef GHZFT_BIT_VECTOR_H
#define GHZFT_BIT_VECTOR_H

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ghzft {

/// Fixed-length bit vector packed into 64-bit words.
///
/// Bits past `size()` in the last word are kept zero so that word-level
/// equality, popcount and hashing need no masking.
class BitVector {
   public:
    BitVector() = default;
    explicit BitVector(size_t num_bits) : num_bits_(num_bits), words_((num_bits + 63) / 64, 0) {
    }

    size_t size() const {
        return num_bits_;
    }
    size_t num_words() const {
        return words_.size();
    }

    bool get(size_t k) const {
        return (words_[k >> 6] >> (k & 63)) & 1;
    }
    void set(size_t k, bool value) {
        uint64_t mask = uint64_t{1} << (k & 63);
        if (value) {
            words_[k >> 6] |= mask;
        } else {
            words_[k >> 6] &= ~mask;
        }
    }
    void flip(size_t k) {
        words_[k >> 6] ^= uint64_t{1} << (k & 63);
    }

    BitVector &operator^=(const BitVector &other) {
        for (size_t w = 0; w < words_.size(); w++) {
            words_[w] ^= other.words_[w];
        }
        return *this;
    }

    bool none() const {
        for (uint64_t w : words_) {
            if (w) {
                return false;
            }
        }
        return true;
    }
    bool any() const {
        return !none();
    }
    size_t popcount() const {
        size_t total = 0;
        for (uint64_t w : words_) {
            total += std::popcount(w);
        }
        return total;
    }

    /// Parity of popcount(a & b).
    static bool and_parity(const BitVector &a, const BitVector &b) {
        uint64_t acc = 0;
        for (size_t w = 0; w < a.words_.size(); w++) {
            acc ^= a.words_[w] & b.words_[w];
        }
        return std::popcount(acc) & 1;
    }
    static size_t and_popcount(const BitVector &a, const BitVector &b) {
        size_t total = 0;
        for (size_t w = 0; w < a.words_.size(); w++) {
            total += std::popcount(a.words_[w] & b.words_[w]);
        }
        return total;
    }

    /// Index of the lowest set bit, or size() when none is set.
    size_t first_set() const {
        for (size_t w = 0; w < words_.size(); w++) {
            if (words_[w]) {
                return w * 64 + std::countr_zero(words_[w]);
            }
        }
        return num_bits_;
    }

    std::vector<size_t> set_bits() const {
        std::vector<size_t> out;
        for (size_t w = 0; w < words_.size(); w++) {
            uint64_t v = words_[w];
            while (v) {
                out.push_back(w * 64 + std::countr_zero(v));
                v &= v - 1;
            }
        }
        return out;
    }

    std::span<const uint64_t> words() const {
        return words_;
    }
    std::span<uint64_t> words() {
        return words_;
    }

    bool operator==(const BitVector &other) const = default;
    auto operator<=>(const BitVector &other) const = default;

   private:
    size_t num_bits_ = 0;
    std::vector<uint64_t> words_;
};

}  // namespace ghzft

#endif
