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

#ifndef GHZFT_GF2_H
#define GHZFT_GF2_H

#include <optional>
#include <vector>

#include "ghzft/bit_vector.h"

namespace ghzft {

/// Incrementally built echelon basis over GF(2).
///
/// Every inserted vector is remembered by its insertion index; each stored
/// row carries the combination of inputs that produced it, so `solve`
/// returns coefficients over the original inputs and dependent insertions
/// yield explicit linear relations.
class EchelonBasis {
   public:
    EchelonBasis(size_t width, size_t max_inputs);

    /// Inserts `v` as input number `num_inputs()`. Returns the relation
    /// (coefficients over inputs, including this one) when `v` is dependent
    /// on earlier inputs, nullopt when it extended the span.
    std::optional<BitVector> add(const BitVector &v);

    /// Coefficients c over the inputs with sum_i c_i v_i == target.
    std::optional<BitVector> solve(const BitVector &target) const;

    bool contains(const BitVector &target) const;

    size_t rank() const {
        return rows_.size();
    }
    size_t num_inputs() const {
        return num_inputs_;
    }
    size_t width() const {
        return width_;
    }

   private:
    void reduce(BitVector &v, BitVector &combo) const;

    size_t width_;
    size_t max_inputs_;
    size_t num_inputs_ = 0;
    std::vector<BitVector> rows_;
    std::vector<BitVector> combos_;
    std::vector<size_t> pivots_;
};

}  // namespace ghzft

#endif
