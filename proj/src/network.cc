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

#include "ghzft/network.h"

#include <stdexcept>

using namespace ghzft;

std::string ghzft::to_string(const Coord &c) {
    return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + "," + std::to_string(c.z) + ")";
}

int Site::arity() const {
    int k = 0;
    for (int n : neighbour) {
        k += n != kNoNeighbour;
    }
    return k;
}

Direction Site::slot_direction(int slot) const {
    int b = (axis + 1) % 3;
    int c = (axis + 2) % 3;
    switch (slot) {
        case 0:
            return {b, +1};
        case 1:
            return {c, +1};
        case 2:
            return {b, -1};
        default:
            return {c, -1};
    }
}

int Site::slot_of(Direction dir) const {
    for (int s = 0; s < 4; s++) {
        if (slot_direction(s) == dir) {
            return s;
        }
    }
    return -1;
}

namespace {

int parity(int v) {
    return v & 1;
}

}  // namespace

GhzNetwork GhzNetwork::build(int d, NetworkLimits limits) {
    if (d % 2 == 0) {
        throw std::invalid_argument("distance must be odd");
    }
    if (d < 3 || d > limits.max_distance) {
        throw std::invalid_argument(
            "distance must lie in [3, " + std::to_string(limits.max_distance) + "], got " + std::to_string(d));
    }
    // Primal cells sit at odd points, dual cells at even points. x starts
    // and ends on primal faces (primal chains exit there), y on dual faces,
    // and z holds 2d+1 primal layers.
    Box box{{0, 1, 0}, {2 * d - 2, 2 * d - 1, 2 * (2 * d + 1)}};
    GhzNetwork net = from_box(box);
    net.distance_ = d;
    return net;
}

GhzNetwork GhzNetwork::from_box(const Box &box) {
    for (int a = 0; a < 3; a++) {
        if (box.hi[a] < box.lo[a]) {
            throw std::invalid_argument("empty box");
        }
    }
    GhzNetwork net;
    net.box_ = box;
    size_t volume = size_t(box.extent(0)) * box.extent(1) * box.extent(2);
    net.site_index_.assign(volume, kNoNeighbour);

    auto linear = [&](const Coord &c) {
        return (size_t(c.z - box.lo.z) * box.extent(1) + (c.y - box.lo.y)) * box.extent(0) + (c.x - box.lo.x);
    };
    for (int z = box.lo.z; z <= box.hi.z; z++) {
        for (int y = box.lo.y; y <= box.hi.y; y++) {
            for (int x = box.lo.x; x <= box.hi.x; x++) {
                int px = parity(x), py = parity(y), pz = parity(z);
                if (px == py && py == pz) {
                    net.cells_.push_back({x, y, z});
                    continue;
                }
                Site s;
                s.pos = {x, y, z};
                s.axis = py == pz ? 0 : px == pz ? 1 : 2;
                net.site_index_[linear(s.pos)] = int(net.sites_.size());
                net.sites_.push_back(s);
            }
        }
    }

    for (size_t i = 0; i < net.sites_.size(); i++) {
        Site &s = net.sites_[i];
        for (int slot = 0; slot < 4; slot++) {
            Coord q = s.pos + s.slot_direction(slot).step();
            if (box.contains(q)) {
                s.neighbour[slot] = net.site_index_[linear(q)];
            }
        }
    }

    for (size_t i = 0; i < net.sites_.size(); i++) {
        for (int slot = 0; slot < 4; slot++) {
            int j = net.sites_[i].neighbour[slot];
            if (j == kNoNeighbour || j < int(i)) {
                continue;
            }
            Site &far = net.sites_[j];
            int far_slot = far.slot_of(net.sites_[i].slot_direction(slot).reversed());
            ResourceEdge e{{int(i), j}, {slot, far_slot}};
            net.sites_[i].edge[slot] = int(net.edges_.size());
            far.edge[far_slot] = int(net.edges_.size());
            net.edges_.push_back(e);
        }
    }

    for (size_t i = 0; i < net.sites_.size(); i++) {
        Site &s = net.sites_[i];
        std::vector<int> present;
        for (int slot = 0; slot < 4; slot++) {
            if (s.neighbour[slot] != kNoNeighbour) {
                present.push_back(slot);
            }
        }
        s.first_bell = uint32_t(net.bells_.size());
        size_t k = present.size();
        if (k == 1) {
            net.bells_.push_back({int(i), present[0], present[0], BellKind::closure});
        } else {
            for (size_t t = 0; t < k; t++) {
                int a = present[t];
                int b = present[(t + 1) % k];
                bool quadrant = b == (a + 1) % 4;
                if (quadrant) {
                    s.quadrant_bell[a] = int(net.bells_.size());
                }
                net.bells_.push_back({int(i), a, b, quadrant ? BellKind::quadrant : BellKind::closure});
            }
        }
        s.num_bells = uint32_t(net.bells_.size()) - s.first_bell;
    }
    return net;
}

std::array<int, 3> GhzNetwork::dimensions() const {
    // Per axis, the number of cells of the type that is not cut by the
    // box's faces along that axis.
    std::array<int, 3> out{};
    for (int a = 0; a < 3; a++) {
        int lo = box_.lo[a];
        int hi = box_.hi[a];
        int odd = 0;
        int even = 0;
        for (int v = lo; v <= hi; v++) {
            (parity(v) ? odd : even)++;
        }
        bool faces_even = parity(lo) == 0 && parity(hi) == 0;
        out[a] = faces_even ? even : odd;
        if (a == 2) {
            out[a] = odd;
        }
    }
    return out;
}

std::optional<int> GhzNetwork::site_at(const Coord &c) const {
    if (!box_.contains(c)) {
        return std::nullopt;
    }
    size_t k = (size_t(c.z - box_.lo.z) * box_.extent(1) + (c.y - box_.lo.y)) * box_.extent(0) + (c.x - box_.lo.x);
    int s = site_index_[k];
    if (s == kNoNeighbour) {
        return std::nullopt;
    }
    return s;
}
