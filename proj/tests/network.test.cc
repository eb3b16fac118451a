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

#include <map>
#include <set>

#include "gtest/gtest.h"

using namespace ghzft;

namespace {

bool mixed_parity(const Coord &c) {
    int odd = (c.x & 1) + (c.y & 1) + (c.z & 1);
    return odd == 1 || odd == 2;
}

}  // namespace

TEST(network, site_count_matches_point_count) {
    for (int d : {3, 5}) {
        GhzNetwork net = GhzNetwork::build(d);
        const Box &box = net.box();
        size_t points = 0;
        for (int x = box.lo.x; x <= box.hi.x; x++) {
            for (int y = box.lo.y; y <= box.hi.y; y++) {
                for (int z = box.lo.z; z <= box.hi.z; z++) {
                    points += mixed_parity({x, y, z});
                }
            }
        }
        ASSERT_EQ(net.sites().size(), points);
    }
    ASSERT_EQ(GhzNetwork::build(3).sites().size(), 285u);
}

TEST(network, dimensions) {
    ASSERT_EQ(GhzNetwork::build(3).dimensions(), (std::array<int, 3>{3, 3, 7}));
    ASSERT_EQ(GhzNetwork::build(5).dimensions(), (std::array<int, 3>{5, 5, 11}));
    ASSERT_EQ(GhzNetwork::build(11).dimensions(), (std::array<int, 3>{11, 11, 23}));
    ASSERT_EQ(GhzNetwork::build(7).distance(), 7);
}

TEST(network, rejects_bad_distances) {
    ASSERT_THROW(GhzNetwork::build(4), std::invalid_argument);
    ASSERT_THROW(GhzNetwork::build(1), std::invalid_argument);
    ASSERT_THROW(GhzNetwork::build(53), std::invalid_argument);
    ASSERT_THROW(GhzNetwork::build(9, NetworkLimits{7}), std::invalid_argument);
    ASSERT_THROW(GhzNetwork::from_box(Box{{1, 1, 1}, {0, 0, 0}}), std::invalid_argument);
}

TEST(network, axis_and_neighbours) {
    GhzNetwork net = GhzNetwork::build(3);
    for (size_t s = 0; s < net.sites().size(); s++) {
        const Site &site = net.sites()[s];
        ASSERT_EQ(net.site_at(site.pos), int(s));
        // The axis coordinate is the one whose parity differs from the others.
        int a = site.axis;
        ASSERT_NE(site.pos[a] & 1, site.pos[(a + 1) % 3] & 1);
        ASSERT_EQ(site.pos[(a + 1) % 3] & 1, site.pos[(a + 2) % 3] & 1);
        int present = 0;
        for (int slot = 0; slot < 4; slot++) {
            Direction dir = site.slot_direction(slot);
            ASSERT_NE(dir.axis, a);
            ASSERT_EQ(site.slot_of(dir), slot);
            Coord other = site.pos + dir.step();
            bool inside = net.box().contains(other);
            ASSERT_EQ(site.neighbour[slot] != kNoNeighbour, inside);
            if (inside) {
                present++;
                ASSERT_EQ(site.neighbour[slot], net.site_at(other));
                const Site &n = net.sites()[site.neighbour[slot]];
                int back = n.slot_of(dir.reversed());
                ASSERT_GE(back, 0);
                ASSERT_EQ(n.neighbour[back], int(s));
                ASSERT_EQ(n.edge[back], site.edge[slot]);
            }
        }
        ASSERT_EQ(site.arity(), present);
        ASSERT_EQ(site.slot_of(Direction{a, +1}), -1);
    }
    // Interior site: nothing cut off.
    const Site &interior = net.sites()[*net.site_at({2, 3, 5})];
    ASSERT_EQ(interior.arity(), 4);
    ASSERT_EQ(interior.num_bells, 4u);
    ASSERT_FALSE(net.site_at({0, 0, 0}).has_value());
    ASSERT_FALSE(net.site_at({1, 1, 1}).has_value());
}

TEST(network, slots_are_in_angular_order) {
    GhzNetwork net = GhzNetwork::build(3);
    const Site &s = net.sites()[*net.site_at({2, 3, 5})];
    int b = (s.axis + 1) % 3;
    int c = (s.axis + 2) % 3;
    ASSERT_EQ(s.slot_direction(0), (Direction{b, +1}));
    ASSERT_EQ(s.slot_direction(1), (Direction{c, +1}));
    ASSERT_EQ(s.slot_direction(2), (Direction{b, -1}));
    ASSERT_EQ(s.slot_direction(3), (Direction{c, -1}));
}

TEST(network, edges_are_consistent) {
    GhzNetwork net = GhzNetwork::build(3);
    ASSERT_EQ(net.edges().size(), 482u);
    std::set<std::pair<int, int>> seen;
    for (size_t e = 0; e < net.edges().size(); e++) {
        const ResourceEdge &edge = net.edges()[e];
        const Site &a = net.sites()[edge.site[0]];
        const Site &b = net.sites()[edge.site[1]];
        ASSERT_EQ(a.edge[edge.slot[0]], int(e));
        ASSERT_EQ(b.edge[edge.slot[1]], int(e));
        ASSERT_EQ(a.neighbour[edge.slot[0]], edge.site[1]);
        Coord delta = b.pos - a.pos;
        ASSERT_EQ(std::abs(delta.x) + std::abs(delta.y) + std::abs(delta.z), 1);
        ASSERT_TRUE(seen.insert(std::minmax(edge.site[0], edge.site[1])).second);
    }
    size_t arity_sum = 0;
    for (const auto &s : net.sites()) {
        arity_sum += s.arity();
    }
    ASSERT_EQ(arity_sum, 2 * net.edges().size());
}

TEST(network, bell_measurements_per_arity) {
    GhzNetwork net = GhzNetwork::build(5);
    std::map<int, int> arity_histogram;
    for (size_t s = 0; s < net.sites().size(); s++) {
        const Site &site = net.sites()[s];
        arity_histogram[site.arity()]++;
        ASSERT_GE(site.arity(), 1);
        ASSERT_EQ(int(site.num_bells), site.arity());
        std::set<int> slots_a;
        std::set<int> slots_b;
        int quadrants = 0;
        for (uint32_t k = 0; k < site.num_bells; k++) {
            const BellMeasurement &bell = net.bells()[site.first_bell + k];
            ASSERT_EQ(bell.site, int(s));
            ASSERT_NE(site.neighbour[bell.slot_a], kNoNeighbour);
            ASSERT_NE(site.neighbour[bell.slot_b], kNoNeighbour);
            bool quadrant = bell.slot_b == (bell.slot_a + 1) % 4;
            ASSERT_EQ(bell.kind == BellKind::quadrant, quadrant);
            if (quadrant) {
                ASSERT_EQ(site.quadrant_bell[bell.slot_a], int(site.first_bell + k));
                quadrants++;
            }
            // Every present photon copy is measured exactly once.
            ASSERT_TRUE(slots_a.insert(bell.slot_a).second);
            ASSERT_TRUE(slots_b.insert(bell.slot_b).second);
        }
        ASSERT_EQ(int(slots_a.size()), site.arity());
        if (site.arity() == 4) {
            ASSERT_EQ(quadrants, 4);
        }
    }
    ASSERT_EQ(net.bells().size(), 2 * net.edges().size());
    ASSERT_GT(arity_histogram[4], 0);
    ASSERT_GT(arity_histogram[3], 0);
}

TEST(network, outcome_ids) {
    GhzNetwork net = GhzNetwork::build(3);
    ASSERT_EQ(net.num_outcomes(), 285u + 964u);
    ASSERT_TRUE(net.is_xprod(net.xprod_outcome(284)));
    ASSERT_FALSE(net.is_xprod(net.zz_outcome(0)));
    ASSERT_EQ(net.bell_of_outcome(net.zz_outcome(17)), 17);
}

TEST(network, coord_to_string) {
    ASSERT_EQ(to_string(Coord{1, -2, 30}), "(1,-2,30)");
}
