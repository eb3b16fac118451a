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

#include "ghzft/syndrome_graph.h"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "ghzft/gf2.h"
#include "ghzft/pauli.h"

using namespace ghzft;

std::string_view ghzft::lattice_name(Lattice l) {
    return l == Lattice::primal ? "primal" : "dual";
}

Fragment Fragment::whole(const GhzNetwork &net) {
    Fragment f;
    f.network = &net;
    f.sites.resize(net.sites().size());
    for (size_t i = 0; i < f.sites.size(); i++) {
        f.sites[i] = int(i);
    }
    return f;
}

Fragment Fragment::single_site(const GhzNetwork &net, int site) {
    Fragment f;
    f.network = &net;
    f.sites = {site};
    f.allow_open = true;
    return f;
}

namespace {

std::string direction_name(Direction d) {
    std::string s(1, d.sign > 0 ? '+' : '-');
    s += char('x' + d.axis);
    return s;
}

std::vector<Direction> missing_directions(const Site &s) {
    std::vector<Direction> out;
    for (int slot = 0; slot < 4; slot++) {
        if (s.neighbour[slot] == kNoNeighbour) {
            out.push_back(s.slot_direction(slot));
        }
    }
    return out;
}

}  // namespace

std::string ghzft::describe_outcome(const GhzNetwork &net, int outcome) {
    if (net.is_xprod(outcome)) {
        return "XPROD" + to_string(net.sites()[outcome].pos);
    }
    const BellMeasurement &b = net.bells()[net.bell_of_outcome(outcome)];
    const Site &s = net.sites()[b.site];
    return "ZZ" + to_string(s.pos) + "[" + direction_name(s.slot_direction(b.slot_a)) + "," +
           direction_name(s.slot_direction(b.slot_b)) + "]";
}

std::vector<Check> ghzft::derive_check_group(const Fragment &fragment) {
    if (fragment.network == nullptr) {
        throw std::invalid_argument("fragment has no network");
    }
    const GhzNetwork &net = *fragment.network;
    std::vector<char> inside(net.sites().size(), 0);
    for (int s : fragment.sites) {
        if (s < 0 || s >= int(net.sites().size())) {
            throw std::invalid_argument("fragment site out of range");
        }
        inside[s] = 1;
    }

    // Photons: four per touched resource edge, ordered q1a q1b q2a q2b.
    std::unordered_map<int, size_t> base_of_edge;
    std::vector<int> touched;
    for (int s : fragment.sites) {
        const Site &site = net.sites()[s];
        for (int slot = 0; slot < 4; slot++) {
            int e = site.edge[slot];
            if (e == kNoNeighbour || base_of_edge.count(e)) {
                continue;
            }
            const ResourceEdge &edge = net.edges()[e];
            if (!inside[edge.site[0]] || !inside[edge.site[1]]) {
                if (!fragment.allow_open) {
                    throw std::invalid_argument("resource edge leaves the fragment at site " + to_string(site.pos));
                }
            }
            base_of_edge[e] = 4 * touched.size();
            touched.push_back(e);
        }
    }
    std::vector<std::string> labels;
    for (size_t k = 0; k < touched.size(); k++) {
        for (const char *suffix : {"q1a", "q1b", "q2a", "q2b"}) {
            labels.push_back("rs" + std::to_string(touched[k]) + "." + suffix);
        }
    }
    size_t nq = labels.size();

    GeneratorSet resource(labels);
    for (int e : touched) {
        size_t b = base_of_edge[e];
        const char *patterns[4] = {"XXZI", "ZIXX", "ZZII", "IIZZ"};
        for (const char *pat : patterns) {
            PauliOperator p(nq);
            for (size_t k = 0; k < 4; k++) {
                p.set(b + k, pat[k]);
            }
            resource.add(std::move(p));
        }
    }

    auto photon = [&](int site_index, int slot, int copy) {
        const Site &site = net.sites()[site_index];
        int e = site.edge[slot];
        const ResourceEdge &edge = net.edges()[e];
        int end = edge.site[0] == site_index && edge.slot[0] == slot ? 0 : 1;
        return base_of_edge.at(e) + 2 * end + copy;
    };

    GeneratorSet measured(labels);
    std::vector<int> bell_ids;
    for (int s : fragment.sites) {
        const Site &site = net.sites()[s];
        for (uint32_t k = 0; k < site.num_bells; k++) {
            int bell = int(site.first_bell + k);
            const BellMeasurement &bm = net.bells()[bell];
            size_t pa = photon(s, bm.slot_a, 0);
            size_t pb = photon(s, bm.slot_b, 1);
            PauliOperator xx(nq);
            xx.set(pa, 'X');
            xx.set(pb, 'X');
            PauliOperator zz(nq);
            zz.set(pa, 'Z');
            zz.set(pb, 'Z');
            measured.add(std::move(xx));
            measured.add(std::move(zz));
            bell_ids.push_back(bell);
        }
    }

    std::vector<Check> out;
    for (const auto &element : intersect_detailed(resource, measured)) {
        Check c;
        c.parity = element.sign_mismatch ? -1 : +1;
        std::map<int, size_t> xx_count;
        for (size_t k : element.coefficients_b.set_bits()) {
            int bell = bell_ids[k / 2];
            if (k % 2 == 1) {
                c.outcomes.push_back(net.zz_outcome(bell));
            } else {
                xx_count[net.bells()[bell].site]++;
            }
        }
        for (auto [s, count] : xx_count) {
            if (count != net.sites()[s].num_bells) {
                throw InvariantError("check uses a strict subset of the XX outcomes at " + to_string(net.sites()[s].pos));
            }
            c.outcomes.push_back(net.xprod_outcome(s));
        }
        std::sort(c.outcomes.begin(), c.outcomes.end());
        out.push_back(std::move(c));
    }
    return out;
}

namespace {

struct Element {
    BitVector bits;
    int parity = +1;
};

Element combine(const std::vector<Element> &basis, const BitVector &coefficients, size_t width) {
    Element e{BitVector(width), +1};
    for (size_t k : coefficients.set_bits()) {
        e.bits ^= basis[k].bits;
        e.parity *= basis[k].parity;
    }
    return e;
}

/// Elements of span(basis) supported inside `columns`.
std::vector<Element> local_subspace(const std::vector<Element> &basis, const std::vector<int> &columns, size_t width) {
    std::vector<char> keep(width, 0);
    for (int c : columns) {
        keep[c] = 1;
    }
    std::vector<int> others;
    for (size_t c = 0; c < width; c++) {
        if (!keep[c]) {
            others.push_back(int(c));
        }
    }
    EchelonBasis outside(others.size(), basis.size());
    EchelonBasis found(columns.size(), basis.size() + 1);
    std::vector<Element> out;
    for (const auto &b : basis) {
        BitVector projected(others.size());
        for (size_t k = 0; k < others.size(); k++) {
            projected.set(k, b.bits.get(others[k]));
        }
        auto relation = outside.add(projected);
        if (!relation) {
            continue;
        }
        Element e = combine(basis, *relation, width);
        BitVector local(columns.size());
        for (size_t k = 0; k < columns.size(); k++) {
            local.set(k, e.bits.get(columns[k]));
        }
        if (local.none() || found.add(local).has_value()) {
            continue;
        }
        out.push_back(std::move(e));
    }
    return out;
}

CellTemplate derive_template(Lattice lattice) {
    Coord center = lattice == Lattice::primal ? Coord{1, 1, 1} : Coord{0, 0, 0};
    Box box{center - Coord{1, 1, 1}, center + Coord{1, 1, 1}};
    GhzNetwork net = GhzNetwork::from_box(box);
    size_t width = net.num_outcomes();
    const auto &sites = net.sites();

    std::vector<Element> basis;
    for (const auto &c : derive_check_group(Fragment::whole(net))) {
        Element e{BitVector(width), c.parity};
        for (int o : c.outcomes) {
            e.bits.set(o, true);
        }
        basis.push_back(std::move(e));
    }

    // The volume check is the element whose X-products are exactly the
    // sites that touch the center along their own axis.
    BitVector target(sites.size());
    EchelonBasis xprod_part(sites.size(), basis.size());
    for (const auto &b : basis) {
        BitVector projected(sites.size());
        for (size_t s = 0; s < sites.size(); s++) {
            projected.set(s, b.bits.get(net.xprod_outcome(int(s))));
        }
        xprod_part.add(projected);
    }
    for (size_t s = 0; s < sites.size(); s++) {
        Coord step{};
        step[sites[s].axis] = 1;
        if (sites[s].pos + step == center || sites[s].pos - step == center) {
            target.set(s, true);
        }
    }
    auto solution = xprod_part.solve(target);
    if (!solution) {
        throw InvariantError("unit cell has no volume check for " + std::string(lattice_name(lattice)));
    }
    Element v = combine(basis, *solution, width);

    // The ZZ part is fixed only up to elements local to a site. At each
    // site keep the lightest representative, preferring quadrant Bells.
    for (size_t s = 0; s < sites.size(); s++) {
        std::vector<int> cols{net.xprod_outcome(int(s))};
        for (uint32_t k = 0; k < sites[s].num_bells; k++) {
            cols.push_back(net.zz_outcome(int(sites[s].first_bell + k)));
        }
        auto local = local_subspace(basis, cols, width);
        if (local.size() > 12) {
            throw InvariantError("local subspace too large");
        }
        auto cost = [&](const Element &e) {
            int weight = 0;
            int closures = 0;
            for (int c : cols) {
                if (e.bits.get(c)) {
                    weight++;
                    if (!net.is_xprod(c) && net.bells()[net.bell_of_outcome(c)].kind == BellKind::closure) {
                        closures++;
                    }
                }
            }
            return std::pair{weight, closures};
        };
        Element best = v;
        for (uint32_t mask = 1; mask < (1u << local.size()); mask++) {
            Element candidate = v;
            for (size_t k = 0; k < local.size(); k++) {
                if (mask >> k & 1) {
                    candidate.bits ^= local[k].bits;
                    candidate.parity *= local[k].parity;
                }
            }
            if (cost(candidate) < cost(best)) {
                best = candidate;
            }
        }
        v = best;
    }

    CellTemplate t;
    t.lattice = lattice;
    t.parity = v.parity;
    for (size_t o : v.bits.set_bits()) {
        TemplateEntry entry;
        if (net.is_xprod(int(o))) {
            entry.xprod = true;
            entry.offset = sites[o].pos - center;
        } else {
            const BellMeasurement &b = net.bells()[net.bell_of_outcome(int(o))];
            if (b.kind != BellKind::quadrant) {
                throw InvariantError("volume check needs a closure measurement");
            }
            const Site &s = sites[b.site];
            entry.offset = s.pos - center;
            entry.dir_a = s.slot_direction(b.slot_a);
            entry.dir_b = s.slot_direction(b.slot_b);
        }
        t.entries.push_back(entry);
    }
    return t;
}

}  // namespace

const CellTemplate &ghzft::cell_template(Lattice lattice) {
    static std::once_flag once;
    static CellTemplate primal;
    static CellTemplate dual;
    std::call_once(once, [] {
        primal = derive_template(Lattice::primal);
        dual = derive_template(Lattice::dual);
    });
    return lattice == Lattice::primal ? primal : dual;
}

namespace {

bool is_primal_cell(const Coord &c) {
    return (c.x & 1) != 0;
}

/// Outcomes of a ZZ measurement belong to the primal lattice at sites whose
/// own coordinate is odd; X-products belong to the other lattice.
Lattice lattice_of_outcome(const GhzNetwork &net, int outcome) {
    if (net.is_xprod(outcome)) {
        const Site &s = net.sites()[outcome];
        return (s.pos[s.axis] & 1) ? Lattice::dual : Lattice::primal;
    }
    const Site &s = net.sites()[net.bells()[net.bell_of_outcome(outcome)].site];
    return (s.pos[s.axis] & 1) ? Lattice::primal : Lattice::dual;
}

}  // namespace

SyndromeGraphs ghzft::build_syndrome_graphs(const GhzNetwork &net) {
    SyndromeGraphs graphs;
    graphs.primal.lattice = Lattice::primal;
    graphs.primal.spanning_axis = 0;
    graphs.dual.lattice = Lattice::dual;
    graphs.dual.spanning_axis = 1;
    auto graph_of = [&](Lattice l) -> SyndromeGraph & { return l == Lattice::primal ? graphs.primal : graphs.dual; };

    for (const Coord &cell : net.cells()) {
        Lattice l = is_primal_cell(cell) ? Lattice::primal : Lattice::dual;
        CheckNode node{CheckKind::cell, cell, {}};
        for (const auto &entry : cell_template(l).entries) {
            auto site = net.site_at(cell + entry.offset);
            if (!site) {
                continue;
            }
            const Site &s = net.sites()[*site];
            if (entry.xprod) {
                node.outcomes.push_back(net.xprod_outcome(*site));
                continue;
            }
            int slot_a = s.slot_of(entry.dir_a);
            int bell = slot_a < 0 ? kNoNeighbour : s.quadrant_bell[slot_a];
            if (bell != kNoNeighbour && s.slot_direction(net.bells()[bell].slot_b) == entry.dir_b) {
                node.outcomes.push_back(net.zz_outcome(bell));
            }
        }
        if (!node.outcomes.empty()) {
            std::sort(node.outcomes.begin(), node.outcomes.end());
            graph_of(l).nodes.push_back(std::move(node));
        }
    }
    for (size_t i = 0; i < net.sites().size(); i++) {
        const Site &s = net.sites()[i];
        if (s.num_bells == 0) {
            continue;
        }
        CheckNode node{CheckKind::diamond, s.pos, {}};
        for (uint32_t k = 0; k < s.num_bells; k++) {
            node.outcomes.push_back(net.zz_outcome(int(s.first_bell + k)));
        }
        graph_of(lattice_of_outcome(net, node.outcomes[0])).nodes.push_back(std::move(node));
    }

    for (Lattice l : {Lattice::primal, Lattice::dual}) {
        SyndromeGraph &g = graph_of(l);
        g.boundary_low = int(g.nodes.size());
        g.nodes.push_back({CheckKind::boundary, {}, {}});
        g.boundary_high = int(g.nodes.size());
        g.nodes.push_back({CheckKind::boundary, {}, {}});

        std::vector<std::vector<int>> members(net.num_outcomes());
        for (size_t n = 0; n < g.nodes.size(); n++) {
            for (int o : g.nodes[n].outcomes) {
                if (lattice_of_outcome(net, o) != l) {
                    throw InvariantError(
                        std::string(lattice_name(l)) + " check contains outcome " + describe_outcome(net, o) +
                        " of the other lattice");
                }
                members[o].push_back(int(n));
            }
        }
        g.edge_of_outcome.assign(net.num_outcomes(), -1);
        for (size_t o = 0; o < net.num_outcomes(); o++) {
            const auto &m = members[o];
            if (m.empty()) {
                continue;
            }
            if (m.size() > 2) {
                throw InvariantError("outcome " + describe_outcome(net, int(o)) + " lies in more than two checks");
            }
            GraphEdge edge{int(o), m[0], kOpenEnd};
            if (m.size() == 2) {
                edge.b = m[1];
            } else {
                // Single-check outcome: find the face it leaves through.
                std::vector<Direction> exits;
                if (net.is_xprod(int(o))) {
                    const Site &s = net.sites()[o];
                    for (int sign : {-1, +1}) {
                        Direction d{s.axis, sign};
                        if (!net.box().contains(s.pos + d.step())) {
                            exits.push_back(d);
                        }
                    }
                } else {
                    const BellMeasurement &b = net.bells()[net.bell_of_outcome(int(o))];
                    if (b.kind == BellKind::quadrant) {
                        throw InvariantError("quadrant outcome " + describe_outcome(net, int(o)) + " has one check");
                    }
                    exits = missing_directions(net.sites()[b.site]);
                }
                int terminal = kOpenEnd;
                for (Direction d : exits) {
                    if (d.axis != g.spanning_axis) {
                        continue;
                    }
                    int t = d.sign < 0 ? g.boundary_low : g.boundary_high;
                    if (terminal != kOpenEnd && terminal != t) {
                        throw InvariantError("outcome " + describe_outcome(net, int(o)) + " exits both spanning faces");
                    }
                    terminal = t;
                }
                edge.b = terminal;
            }
            g.edge_of_outcome[o] = int(g.edges.size());
            g.edges.push_back(edge);
            if (edge.b != kOpenEnd && g.nodes[edge.b].kind == CheckKind::boundary) {
                g.nodes[edge.b].outcomes.push_back(int(o));
            }
        }
    }
    return graphs;
}

std::string ghzft::dump_graph(const GhzNetwork &net, const SyndromeGraph &g) {
    std::ostringstream out;
    auto dims = net.dimensions();
    out << "# syndrome graph " << lattice_name(g.lattice) << "\n";
    out << "# distance " << net.distance() << " cells " << dims[0] << "x" << dims[1] << "x" << dims[2] << "\n";
    out << "# spanning_axis " << char('x' + g.spanning_axis) << "\n";
    out << "# nodes " << g.nodes.size() << " edges " << g.edges.size() << "\n";
    for (size_t n = 0; n < g.nodes.size(); n++) {
        const CheckNode &node = g.nodes[n];
        out << "node " << n << " ";
        if (node.kind == CheckKind::boundary) {
            out << "boundary " << (int(n) == g.boundary_low ? "low" : "high") << "\n";
            continue;
        }
        out << (node.kind == CheckKind::cell ? "cell " : "diamond ") << to_string(node.pos);
        out << " weight " << node.outcomes.size() << "\n";
    }
    for (size_t e = 0; e < g.edges.size(); e++) {
        const GraphEdge &edge = g.edges[e];
        out << "edge " << e << " " << (net.is_xprod(edge.outcome) ? "XPROD" : "ZZ") << " " << edge.a << " ";
        if (edge.b == kOpenEnd) {
            out << "open";
        } else {
            out << edge.b;
        }
        out << " # " << describe_outcome(net, edge.outcome);
        out << "\n";
    }
    return out.str();
}

ErasureComponents::ErasureComponents(const SyndromeGraph &graph, std::span<const int> erased_outcomes)
    : uf_(graph.nodes.size()), boundary_low_(graph.boundary_low), boundary_high_(graph.boundary_high) {
    for (int o : erased_outcomes) {
        if (o < 0 || o >= int(graph.edge_of_outcome.size()) || graph.edge_of_outcome[o] < 0) {
            throw std::invalid_argument("unknown outcome id " + std::to_string(o));
        }
        const GraphEdge &e = graph.edges[graph.edge_of_outcome[o]];
        if (e.b != kOpenEnd) {
            uf_.unite(uint32_t(e.a), uint32_t(e.b));
        }
    }
}

ErasureComponents ghzft::erase_and_merge(const SyndromeGraph &graph, std::span<const int> erased_outcomes) {
    return ErasureComponents(graph, erased_outcomes);
}
