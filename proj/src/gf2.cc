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

#include "ghzft/gf2.h"

#include <stdexcept>

using namespace ghzft;

EchelonBasis::EchelonBasis(size_t width, size_t max_inputs) : width_(width), max_inputs_(max_inputs) {
}

void EchelonBasis::reduce(BitVector &v, BitVector &combo) const {
    // Row k is zero on the pivots of rows < k, so one pass in insertion
    // order clears every pivot column of v.
    for (size_t k = 0; k < rows_.size(); k++) {
        if (v.get(pivots_[k])) {
            v ^= rows_[k];
            combo ^= combos_[k];
        }
    }
}

std::optional<BitVector> EchelonBasis::add(const BitVector &v) {
    if (v.size() != width_) {
        throw std::invalid_argument("EchelonBasis::add: width mismatch");
    }
    if (num_inputs_ >= max_inputs_) {
        throw std::invalid_argument("EchelonBasis::add: too many inputs");
    }
    BitVector row = v;
    BitVector combo(max_inputs_);
    combo.set(num_inputs_, true);
    num_inputs_++;
    reduce(row, combo);
    size_t pivot = row.first_set();
    if (pivot == width_) {
        return combo;
    }
    rows_.push_back(std::move(row));
    combos_.push_back(std::move(combo));
    pivots_.push_back(pivot);
    return std::nullopt;
}

std::optional<BitVector> EchelonBasis::solve(const BitVector &target) const {
    if (target.size() != width_) {
        throw std::invalid_argument("EchelonBasis::solve: width mismatch");
    }
    BitVector residual = target;
    BitVector combo(max_inputs_);
    reduce(residual, combo);
    if (residual.any()) {
        return std::nullopt;
    }
    return combo;
}

bool EchelonBasis::contains(const BitVector &target) const {
    return solve(target).has_value();
}
