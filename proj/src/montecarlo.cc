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

#include "ghzft/montecarlo.h"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <thread>

using namespace ghzft;

Interval ghzft::wilson_interval(uint64_t k, uint64_t n, double z) {
    if (n == 0) {
        return {0, 1};
    }
    double nn = double(n);
    double p = double(k) / nn;
    double z2 = z * z;
    double denom = 1 + z2 / nn;
    double center = (p + z2 / (2 * nn)) / denom;
    double half = z * std::sqrt(p * (1 - p) / nn + z2 / (4 * nn * nn)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

LatticeSampler::LatticeSampler(int distance)
    : net_(GhzNetwork::build(distance)), graphs_(build_syndrome_graphs(net_)) {
    zz_ref_.resize(net_.bells().size());
    for (size_t b = 0; b < zz_ref_.size(); b++) {
        zz_ref_[b] = make_ref(net_.zz_outcome(int(b)));
    }
    xprod_ref_.resize(net_.sites().size());
    for (size_t s = 0; s < xprod_ref_.size(); s++) {
        xprod_ref_[s] = make_ref(net_.xprod_outcome(int(s)));
    }
}

LatticeSampler::Ref LatticeSampler::make_ref(int outcome) const {
    Ref r;
    for (int l = 0; l < 2; l++) {
        const SyndromeGraph &g = l == 0 ? graphs_.primal : graphs_.dual;
        int e = g.edge_of_outcome[outcome];
        if (e < 0) {
            continue;
        }
        r.lattice = int8_t(l);
        r.a = uint32_t(g.edges[e].a);
        r.b = g.edges[e].b == kOpenEnd ? r.a : uint32_t(g.edges[e].b);
    }
    return r;
}

ErasureSets LatticeSampler::sample_erasures(const BellOutcomeTable &table, RandomStream &stream) const {
    ErasureSets out;
    auto record = [&](int outcome) {
        if (graphs_.primal.edge_of_outcome[outcome] >= 0) {
            out.primal.push_back(outcome);
        } else if (graphs_.dual.edge_of_outcome[outcome] >= 0) {
            out.dual.push_back(outcome);
        }
    };
    for (size_t s = 0; s < net_.sites().size(); s++) {
        const Site &site = net_.sites()[s];
        bool xprod_lost = false;
        for (uint32_t k = 0; k < site.num_bells; k++) {
            int bell = int(site.first_bell + k);
            BellRecovery r = table.draw(stream());
            if (!r.zz) {
                record(net_.zz_outcome(bell));
            }
            xprod_lost |= !r.xx;
        }
        if (xprod_lost) {
            record(net_.xprod_outcome(int(s)));
        }
    }
    std::sort(out.primal.begin(), out.primal.end());
    std::sort(out.dual.begin(), out.dual.end());
    return out;
}

ErasureSets LatticeSampler::sample_erasures(const PointConfig &config, uint64_t sample_index) const {
    BellOutcomeTable table(config.encoding, LossModel(config.eta, config.model));
    RandomStream stream(point_key(config.seed, config.distance, config.eta), sample_index);
    return sample_erasures(table, stream);
}

LogicalLoss LatticeSampler::logical_loss(const ErasureSets &erased) const {
    LogicalLoss out;
    out.primal = erase_and_merge(graphs_.primal, erased.primal).spans();
    out.dual = erase_and_merge(graphs_.dual, erased.dual).spans();
    return out;
}

LogicalLoss LatticeSampler::sample_logical_loss(
    const BellOutcomeTable &table, RandomStream &stream, Scratch &scratch) const {
    scratch.primal.reset(graphs_.primal.nodes.size());
    scratch.dual.reset(graphs_.dual.nodes.size());
    UnionFind *uf[2] = {&scratch.primal, &scratch.dual};
    auto erase = [&](const Ref &r) {
        if (r.lattice >= 0 && r.a != r.b) {
            uf[r.lattice]->unite(r.a, r.b);
        }
    };
    const auto &sites = net_.sites();
    for (size_t s = 0; s < sites.size(); s++) {
        uint32_t first = sites[s].first_bell;
        uint32_t end = first + sites[s].num_bells;
        bool xprod_lost = false;
        for (uint32_t b = first; b < end; b++) {
            BellRecovery r = table.draw(stream());
            if (!r.zz) {
                erase(zz_ref_[b]);
            }
            xprod_lost |= !r.xx;
        }
        if (xprod_lost) {
            erase(xprod_ref_[s]);
        }
    }
    LogicalLoss out;
    out.primal = scratch.primal.connected(uint32_t(graphs_.primal.boundary_low), uint32_t(graphs_.primal.boundary_high));
    out.dual = scratch.dual.connected(uint32_t(graphs_.dual.boundary_low), uint32_t(graphs_.dual.boundary_high));
    return out;
}

uint64_t ghzft::point_key(uint64_t seed, int distance, double eta) {
    return derive_key(seed, {uint64_t(distance), std::bit_cast<uint64_t>(eta)});
}

PointResult ghzft::estimate_logical_loss(const PointConfig &config, const LatticeSampler &sampler) {
    if (config.workers < 1) {
        throw std::invalid_argument("workers must be >= 1");
    }
    if (sampler.network().distance() != config.distance) {
        throw std::invalid_argument("sampler distance does not match the point");
    }
    config.encoding.validate();
    auto start = std::chrono::steady_clock::now();
    BellOutcomeTable table(config.encoding, LossModel(config.eta, config.model));
    uint64_t key = point_key(config.seed, config.distance, config.eta);

    struct Tally {
        uint64_t any = 0;
        uint64_t primal = 0;
        uint64_t dual = 0;
    };
    int workers = int(std::min<uint64_t>(uint64_t(config.workers), std::max<uint64_t>(config.samples, 1)));
    std::vector<Tally> tallies(workers);
    auto run = [&](int w) {
        uint64_t lo = config.samples * uint64_t(w) / uint64_t(workers);
        uint64_t hi = config.samples * uint64_t(w + 1) / uint64_t(workers);
        LatticeSampler::Scratch scratch;
        Tally t;
        for (uint64_t i = lo; i < hi; i++) {
            RandomStream stream(key, i);
            LogicalLoss loss = sampler.sample_logical_loss(table, stream, scratch);
            t.any += loss.any();
            t.primal += loss.primal;
            t.dual += loss.dual;
        }
        tallies[w] = t;
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> threads;
        for (int w = 0; w < workers; w++) {
            threads.emplace_back(run, w);
        }
        for (auto &th : threads) {
            th.join();
        }
    }

    PointResult r;
    r.config = config;
    for (const auto &t : tallies) {
        r.failures += t.any;
        r.primal_failures += t.primal;
        r.dual_failures += t.dual;
    }
    r.rate = config.samples ? double(r.failures) / double(config.samples) : 0;
    r.ci = wilson_interval(r.failures, config.samples);
    r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

PointResult ghzft::estimate_logical_loss(const PointConfig &config) {
    LatticeSampler sampler(config.distance);
    return estimate_logical_loss(config, sampler);
}

double ghzft::scan_work(const ScanConfig &config) {
    double total = 0;
    for (int d : config.distances) {
        // Four Bells per site and three sites per four lattice points,
        // ignoring the thinner boundary layers.
        double side = 2.0 * d - 1;
        double bells = 3.0 * side * side * (4.0 * d + 3);
        total += bells * double(config.samples) * double(config.etas.size());
    }
    return total;
}

std::vector<double> ghzft::isotonic_fit(const std::vector<double> &values, const std::vector<double> &weights) {
    if (values.size() != weights.size()) {
        throw std::invalid_argument("isotonic_fit: size mismatch");
    }
    struct Block {
        double mean;
        double weight;
        size_t count;
    };
    std::vector<Block> blocks;
    for (size_t i = 0; i < values.size(); i++) {
        blocks.push_back({values[i], weights[i], 1});
        while (blocks.size() > 1 && blocks[blocks.size() - 2].mean > blocks.back().mean) {
            Block b = blocks.back();
            blocks.pop_back();
            Block &a = blocks.back();
            double w = a.weight + b.weight;
            a.mean = w > 0 ? (a.mean * a.weight + b.mean * b.weight) / w : (a.mean + b.mean) / 2;
            a.weight = w;
            a.count += b.count;
        }
    }
    std::vector<double> out;
    for (const auto &b : blocks) {
        out.insert(out.end(), b.count, b.mean);
    }
    return out;
}

namespace {

std::string describe_ordering(const RateGrid &grid) {
    std::string out;
    for (size_t e = 0; e < grid.etas.size(); e++) {
        std::vector<size_t> order(grid.distances.size());
        for (size_t i = 0; i < order.size(); i++) {
            order[i] = i;
        }
        std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
            return grid.rates[a][e] < grid.rates[b][e];
        });
        char buf[64];
        std::snprintf(buf, sizeof(buf), "eta=%.4f: ", grid.etas[e]);
        out += buf;
        for (size_t k = 0; k < order.size(); k++) {
            if (k) {
                out += grid.rates[order[k - 1]][e] == grid.rates[order[k]][e] ? " = " : " < ";
            }
            out += "d" + std::to_string(grid.distances[order[k]]);
        }
        out += "\n";
    }
    return out;
}

}  // namespace

std::vector<Crossing> ghzft::find_crossings(const RateGrid &grid, const std::vector<double> &weights) {
    size_t ne = grid.etas.size();
    if (grid.distances.size() < 2 || ne < 2) {
        throw std::invalid_argument("crossing analysis needs at least two distances and two loss rates");
    }
    std::vector<std::vector<double>> fitted;
    for (const auto &row : grid.rates) {
        fitted.push_back(isotonic_fit(row, weights));
    }
    std::vector<Crossing> out;
    for (size_t i = 0; i + 1 < grid.distances.size(); i++) {
        size_t j = i + 1;
        std::vector<double> diff(ne);
        for (size_t e = 0; e < ne; e++) {
            diff[e] = fitted[j][e] - fitted[i][e];
        }
        // Split k places the crossing between etas k and k+1. Score each
        // split by how many points sit on the expected side of it.
        auto score = [&](int k) {
            int s = 0;
            for (int e = 0; e < int(ne); e++) {
                s += e <= k ? diff[e] <= 0 : diff[e] >= 0;
            }
            return s;
        };
        int none = std::max(score(-1), score(int(ne) - 1));
        int best_k = -1;
        int best = -1;
        for (int k = 0; k + 1 < int(ne); k++) {
            if (!(diff[k] <= 0 && diff[k + 1] >= 0 && diff[k + 1] > diff[k])) {
                continue;
            }
            int s = score(k);
            if (s > best) {
                best = s;
                best_k = k;
            }
        }
        if (best_k < 0 || best < none) {
            throw NoCrossingError(
                "distances " + std::to_string(grid.distances[i]) + " and " + std::to_string(grid.distances[j]) +
                " do not cross inside the window; widen the loss range. Ordering:\n" + describe_ordering(grid));
        }
        double t = -diff[best_k] / (diff[best_k + 1] - diff[best_k]);
        double eta = grid.etas[best_k] + t * (grid.etas[best_k + 1] - grid.etas[best_k]);
        out.push_back({grid.distances[i], grid.distances[j], eta});
    }
    return out;
}

namespace {

RateGrid grid_from(const std::vector<PointResult> &points, const ScanConfig &config, std::vector<double> &weights) {
    RateGrid grid;
    grid.distances = config.distances;
    std::sort(grid.distances.begin(), grid.distances.end());
    grid.etas = config.etas;
    std::sort(grid.etas.begin(), grid.etas.end());
    grid.rates.assign(grid.distances.size(), std::vector<double>(grid.etas.size(), 0.0));
    weights.assign(grid.etas.size(), double(config.samples));
    std::vector<std::vector<int>> seen(grid.distances.size(), std::vector<int>(grid.etas.size(), 0));
    for (const auto &p : points) {
        auto di = std::find(grid.distances.begin(), grid.distances.end(), p.config.distance) - grid.distances.begin();
        auto ei = std::find(grid.etas.begin(), grid.etas.end(), p.config.eta) - grid.etas.begin();
        if (di == long(grid.distances.size()) || ei == long(grid.etas.size())) {
            throw std::invalid_argument("point outside the scan grid");
        }
        grid.rates[di][ei] = p.rate;
        seen[di][ei] = 1;
    }
    for (const auto &row : seen) {
        for (int s : row) {
            if (!s) {
                throw std::invalid_argument("scan grid has missing points");
            }
        }
    }
    return grid;
}

double mean_eta(const std::vector<Crossing> &c) {
    double s = 0;
    for (const auto &x : c) {
        s += x.eta;
    }
    return s / double(c.size());
}

}  // namespace

ThresholdResult ghzft::analyse_points(const std::vector<PointResult> &points, const ScanConfig &config) {
    std::vector<double> weights;
    RateGrid grid = grid_from(points, config, weights);
    ThresholdResult r;
    r.points = points;
    r.crossings = find_crossings(grid, weights);
    r.threshold = mean_eta(r.crossings);
    double lo = r.crossings.front().eta;
    double hi = lo;
    for (const auto &c : r.crossings) {
        lo = std::min(lo, c.eta);
        hi = std::max(hi, c.eta);
    }
    double half_spread = (hi - lo) / 2;

    // Parametric bootstrap: redraw every point's failure count from a
    // binomial at its observed rate and repeat the crossing analysis.
    std::vector<double> replicas;
    RandomStream rng(derive_key(config.seed, {0xB0075712ull}), 0);
    for (int b = 0; b < config.bootstrap_replicates; b++) {
        RateGrid g = grid;
        for (auto &row : g.rates) {
            for (double &v : row) {
                std::binomial_distribution<uint64_t> dist(config.samples, std::clamp(v, 0.0, 1.0));
                v = double(dist(rng)) / double(config.samples);
            }
        }
        try {
            replicas.push_back(mean_eta(find_crossings(g, weights)));
        } catch (const NoCrossingError &) {
        }
    }
    r.bootstrap_used = int(replicas.size());
    if (replicas.size() >= 2) {
        std::sort(replicas.begin(), replicas.end());
        auto pct = [&](double q) {
            double pos = q * double(replicas.size() - 1);
            size_t k = size_t(pos);
            double f = pos - double(k);
            return k + 1 < replicas.size() ? replicas[k] * (1 - f) + replicas[k + 1] * f : replicas[k];
        };
        r.ci = {pct(0.025), pct(0.975)};
    } else {
        r.ci = {r.threshold, r.threshold};
    }
    r.uncertainty = std::max(half_spread, (r.ci.high - r.ci.low) / 2);
    return r;
}

std::vector<PointResult> ghzft::run_scan_points(const ScanConfig &config) {
    if (config.distances.empty() || config.etas.empty()) {
        throw std::invalid_argument("scan needs distances and loss rates");
    }
    double work = scan_work(config);
    if (!config.force && work > config.work_cap) {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "scan needs about %.3g Bell draws, above the cap of %.3g; pass --force to run it",
                      work, config.work_cap);
        throw WorkCapError(buf);
    }
    std::vector<PointResult> points;
    for (int d : config.distances) {
        LatticeSampler sampler(d);
        for (double eta : config.etas) {
            PointConfig pc{config.encoding, config.model, d, eta, config.samples, config.seed, config.workers};
            points.push_back(estimate_logical_loss(pc, sampler));
        }
    }
    return points;
}

ThresholdResult ghzft::scan_thresholds(const ScanConfig &config) {
    auto start = std::chrono::steady_clock::now();
    ThresholdResult r = analyse_points(run_scan_points(config), config);
    r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}
