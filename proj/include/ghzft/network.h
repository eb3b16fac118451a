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

#ifndef GHZFT_NETWORK_H
#define GHZFT_NETWORK_H

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ghzft {

struct Coord {
    int x = 0;
    int y = 0;
    int z = 0;

    int operator[](int axis) const {
        return axis == 0 ? x : axis == 1 ? y : z;
    }
    int &operator[](int axis) {
        return axis == 0 ? x : axis == 1 ? y : z;
    }
    Coord operator+(const Coord &o) const {
        return {x + o.x, y + o.y, z + o.z};
    }
    Coord operator-(const Coord &o) const {
        return {x - o.x, y - o.y, z - o.z};
    }
    bool operator==(const Coord &) const = default;
    auto operator<=>(const Coord &) const = default;
};

std::string to_string(const Coord &c);

/// Unit step along `axis` (0, 1, 2) with sign +1 or -1.
struct Direction {
    int axis = 0;
    int sign = +1;

    Coord step() const {
        Coord c;
        c[axis] = sign;
        return c;
    }
    Direction reversed() const {
        return {axis, -sign};
    }
    bool operator==(const Direction &) const = default;
};

/// Inclusive integer box.
struct Box {
    Coord lo;
    Coord hi;

    bool contains(const Coord &c) const {
        for (int a = 0; a < 3; a++) {
            if (c[a] < lo[a] || c[a] > hi[a]) {
                return false;
            }
        }
        return true;
    }
    int extent(int axis) const {
        return hi[axis] - lo[axis] + 1;
    }
};

constexpr int kNoNeighbour = -1;

/// One 4-GHZ measurement location (a qubit of the RHG cluster).
///
/// Cluster qubits sit on the points of mixed coordinate parity; the
/// coordinate whose parity differs from the other two is the site's axis.
/// Neighbours lie one step away along the other two axes b = axis+1 and
/// c = axis+2 (mod 3) and are kept in angular order +b, +c, -b, -c, so
/// consecutive slots are perpendicular.
struct Site {
    Coord pos;
    int axis = 0;
    std::array<int, 4> neighbour{kNoNeighbour, kNoNeighbour, kNoNeighbour, kNoNeighbour};
    std::array<int, 4> edge{kNoNeighbour, kNoNeighbour, kNoNeighbour, kNoNeighbour};
    /// Bell measurement (slot s photon a, slot s+1 photon b), when both slots are present.
    std::array<int, 4> quadrant_bell{kNoNeighbour, kNoNeighbour, kNoNeighbour, kNoNeighbour};
    uint32_t first_bell = 0;
    uint32_t num_bells = 0;

    int arity() const;
    Direction slot_direction(int slot) const;
    /// Slot pointing along `dir`, or -1 when `dir` is along the site's axis.
    int slot_of(Direction dir) const;
};

/// A doubled 2-chain placed on one cluster edge. Qubit 1 of the chain sits
/// at site[0], qubit 2 at site[1].
struct ResourceEdge {
    std::array<int, 2> site{};
    std::array<int, 2> slot{};
};

enum class BellKind {
    /// Pairs perpendicular neighbours exactly as in a full-arity site.
    quadrant,
    /// Closes the measurement cycle of a reduced-arity boundary site.
    closure,
};

/// Bell measurement of (photon a of slot_a, photon b of slot_b) at `site`.
/// A site with a single neighbour measures that qubit's two photons.
struct BellMeasurement {
    int site = 0;
    int slot_a = 0;
    int slot_b = 0;
    BellKind kind = BellKind::quadrant;
};

struct NetworkLimits {
    int max_distance = 51;
};

/// Network of 4-GHZ measurements and the 2-chains joining them.
class GhzNetwork {
   public:
    /// Full lattice for odd distance d >= 3: d x d x (2d+1) cells.
    static GhzNetwork build(int d, NetworkLimits limits = {});
    /// Every mixed-parity point of `box`, cut off at its faces.
    static GhzNetwork from_box(const Box &box);

    /// 0 for networks built from an explicit box.
    int distance() const {
        return distance_;
    }
    const Box &box() const {
        return box_;
    }
    /// Cell counts per axis, {d, d, 2d+1} for lattice networks.
    std::array<int, 3> dimensions() const;

    const std::vector<Site> &sites() const {
        return sites_;
    }
    const std::vector<ResourceEdge> &edges() const {
        return edges_;
    }
    const std::vector<BellMeasurement> &bells() const {
        return bells_;
    }
    /// Check cells: points of uniform parity inside the box.
    const std::vector<Coord> &cells() const {
        return cells_;
    }
    std::optional<int> site_at(const Coord &c) const;

    /// Outcome ids: [0, sites) are the X-product outcomes of each site,
    /// [sites, sites + bells) are the ZZ outcomes of each Bell measurement.
    size_t num_outcomes() const {
        return sites_.size() + bells_.size();
    }
    int xprod_outcome(int site) const {
        return site;
    }
    int zz_outcome(int bell) const {
        return int(sites_.size()) + bell;
    }
    bool is_xprod(int outcome) const {
        return outcome < int(sites_.size());
    }
    int bell_of_outcome(int outcome) const {
        return outcome - int(sites_.size());
    }

   private:
    int distance_ = 0;
    Box box_;
    std::vector<Site> sites_;
    std::vector<ResourceEdge> edges_;
    std::vector<BellMeasurement> bells_;
    std::vector<Coord> cells_;
    std::vector<int> site_index_;
};

}  // namespace ghzft

#endif
