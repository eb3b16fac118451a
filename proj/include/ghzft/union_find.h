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

#ifndef GHZFT_UNION_FIND_H
#define GHZFT_UNION_FIND_H

#include <cstdint>
#include <numeric>
#include <vector>

namespace ghzft {

/// Disjoint sets with union by size and path halving.
class UnionFind {
   public:
    UnionFind() = default;
    explicit UnionFind(size_t n) {
        reset(n);
    }

    void reset(size_t n) {
        parent_.resize(n);
        size_.assign(n, 1);
        std::iota(parent_.begin(), parent_.end(), uint32_t{0});
    }

    size_t size() const {
        return parent_.size();
    }

    uint32_t find(uint32_t v) {
        while (parent_[v] != v) {
            parent_[v] = parent_[parent_[v]];
            v = parent_[v];
        }
        return v;
    }

    /// Returns true when the two sets were distinct.
    bool unite(uint32_t a, uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) {
            return false;
        }
        if (size_[a] < size_[b]) {
            std::swap(a, b);
        }
        parent_[b] = a;
        size_[a] += size_[b];
        return true;
    }

    bool connected(uint32_t a, uint32_t b) {
        return find(a) == find(b);
    }

    uint32_t set_size(uint32_t v) {
        return size_[find(v)];
    }

   private:
    std::vector<uint32_t> parent_;
    std::vector<uint32_t> size_;
};

}  // namespace ghzft

#endif
