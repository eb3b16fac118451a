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

#ifndef GHZFT_SYNDROME_GRAPH_H
#define GHZFT_SYNDROME_GRAPH_H

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ghzft/network.h"
#include "ghzft/union_find.h"

namespace ghzft {

/// Raised when a derived structure violates an invariant the construction
/// relies on (for example an outcome shared by three checks).
struct InvariantError : std::logic_error {
    using std::logic_error::logic_error;
};

enum class Lattice { primal, dual };
std::string_view lattice_name(Lattice l);

/// A set of sites of a network whose resource states and Bell measurements
/// are analysed together.
struct Fragment {
    const GhzNetwork *network = nullptr;
    std::vector<int> sites;
    /// Accept resource edges that leave the fragment. Their far photons are
    /// kept in the state but never measured.
    bool allow_open = false;

    static Fragment whole(const GhzNetwork &net);
    static Fragment single_site(const GhzNetwork &net, int site);
};

/// A product of measurement outcomes whose value is fixed by the resource
/// states: the product of the +-1 outcomes equals `parity`.
struct Check {
    std::vector<int> outcomes;  // sorted outcome ids
    int parity = +1;
};

/// Independent generators of the check group of a fragment.
std::vector<Check> derive_check_group(const Fragment &fragment);

/// Human readable outcome name: "XPROD(x,y,z)" or "ZZ(x,y,z)[+y,+z]".
std::string describe_outcome(const GhzNetwork &net, int outcome);

struct TemplateEntry {
    bool xprod = false;
    Coord offset;
    /// Directions of the two slots of a ZZ entry (quadrant Bell a -> b).
    Direction dir_a;
    Direction dir_b;
};

/// Volume check of one primal or dual cell, relative to the cell center.
struct CellTemplate {
    Lattice lattice = Lattice::primal;
    std::vector<TemplateEntry> entries;
    int parity = +1;
};

/// Derives the volume check of a cell from the check group of a unit cell
/// box. Cached after the first call.
const CellTemplate &cell_template(Lattice lattice);

enum class CheckKind { cell, diamond, boundary };

struct CheckNode {
    CheckKind kind = CheckKind::cell;
    Coord pos;
    std::vector<int> outcomes;
};

constexpr int kOpenEnd = -1;

/// An outcome that joins two checks. `b` is a boundary node when the
/// outcome exits through a spanning face, or kOpenEnd when it exits
/// through a face that no logical chain terminates on.
struct GraphEdge {
    int outcome = 0;
    int a = 0;
    int b = 0;
};

struct SyndromeGraph {
    Lattice lattice = Lattice::primal;
    /// Axis whose two faces the lattice's logical chains connect.
    int spanning_axis = 0;
    std::vector<CheckNode> nodes;
    std::vector<GraphEdge> edges;
    int boundary_low = 0;
    int boundary_high = 0;
    /// Edge index of each network outcome, or -1 for the other lattice.
    std::vector<int> edge_of_outcome;
};

struct SyndromeGraphs {
    SyndromeGraph primal;
    SyndromeGraph dual;

    const SyndromeGraph &operator[](Lattice l) const {
        return l == Lattice::primal ? primal : dual;
    }
};

/// Tiles the cell templates over every cell of the network and adds a
/// diamond check per site, then wires outcomes into edges.
SyndromeGraphs build_syndrome_graphs(const GhzNetwork &net);

/// Text dump: '#' header lines, one "node" line per check, then one line
/// "edge <id> <kind> <check_a> <check_b>" per outcome, where check_b is
/// "open" for free ends and a trailing comment names the outcome.
std::string dump_graph(const GhzNetwork &net, const SyndromeGraph &graph);

/// Connected components after erasing a set of outcomes.
class ErasureComponents {
   public:
    ErasureComponents(const SyndromeGraph &graph, std::span<const int> erased_outcomes);

    uint32_t component(int node) {
        return uf_.find(uint32_t(node));
    }
    /// True when an erased chain joins the two spanning faces.
    bool spans() {
        return uf_.connected(uint32_t(boundary_low_), uint32_t(boundary_high_));
    }

   private:
    UnionFind uf_;
    int boundary_low_;
    int boundary_high_;
};

ErasureComponents erase_and_merge(const SyndromeGraph &graph, std::span<const int> erased_outcomes);

}  // namespace ghzft

#endif
