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

#ifndef GHZFT_MONTECARLO_H
#define GHZFT_MONTECARLO_H

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "ghzft/encodings.h"
#include "ghzft/network.h"
#include "ghzft/rng.h"
#include "ghzft/syndrome_graph.h"

namespace ghzft {

struct WorkCapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when no pair of distances crosses inside the scanned window.
struct NoCrossingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Interval {
    double low = 0;
    double high = 0;
};

/// Wilson score interval for k successes out of n at normal quantile z.
Interval wilson_interval(uint64_t k, uint64_t n, double z = 1.959963984540054);

struct LogicalLoss {
    bool primal = false;
    bool dual = false;
    bool any() const {
        return primal || dual;
    }
};

struct PointConfig {
    EncodingSpec encoding;
    ModelKind model = ModelKind::nl;
    int distance = 3;
    double eta = 0;
    uint64_t samples = 1000;
    uint64_t seed = 0;
    int workers = 1;
};

struct ErasureSets {
    std::vector<int> primal;
    std::vector<int> dual;
};

/// Network, syndrome graphs and the per-measurement wiring used to sample
/// one distance. Immutable after construction; shared between workers.
class LatticeSampler {
   public:
    explicit LatticeSampler(int distance);

    const GhzNetwork &network() const {
        return net_;
    }
    const SyndromeGraphs &graphs() const {
        return graphs_;
    }
    /// Random words consumed per sample (one per Bell measurement).
    size_t words_per_sample() const {
        return net_.bells().size();
    }

    /// Erased outcome ids of one sample, split by lattice. Bell j reads
    /// word j of `stream`.
    ErasureSets sample_erasures(const BellOutcomeTable &table, RandomStream &stream) const;
    ErasureSets sample_erasures(const PointConfig &config, uint64_t sample_index) const;

    /// True per lattice when the erasures join its two spanning faces.
    LogicalLoss logical_loss(const ErasureSets &erased) const;

    /// Samples one configuration and tests it without materialising the
    /// erasure list. `scratch` must belong to the calling thread.
    struct Scratch {
        UnionFind primal;
        UnionFind dual;
    };
    LogicalLoss sample_logical_loss(const BellOutcomeTable &table, RandomStream &stream, Scratch &scratch) const;

   private:
    struct Ref {
        int8_t lattice = -1;  // 0 primal, 1 dual, -1 unused
        uint32_t a = 0;
        uint32_t b = 0;  // b == a for open ends
    };
    Ref make_ref(int outcome) const;

    GhzNetwork net_;
    SyndromeGraphs graphs_;
    std::vector<Ref> zz_ref_;     // per Bell
    std::vector<Ref> xprod_ref_;  // per site
};


struct PointResult {
    PointConfig config;
    uint64_t failures = 0;
    uint64_t primal_failures = 0;
    uint64_t dual_failures = 0;
    double rate = 0;
    Interval ci;
    double wall_time_s = 0;
};

/// Stream key of point (seed, d, eta). Sample i reads stream i under it, so
/// results depend neither on the worker count nor on the scan grid.
uint64_t point_key(uint64_t seed, int distance, double eta);

constexpr double kDefaultWorkCap = 1e11;

/// Estimates the logical loss probability of one point. Samples are split
/// across `workers` threads; the tally is identical for any worker count.
PointResult estimate_logical_loss(const PointConfig &config, const LatticeSampler &sampler);
PointResult estimate_logical_loss(const PointConfig &config);

struct ScanConfig {
    EncodingSpec encoding;
    ModelKind model = ModelKind::nl;
    std::vector<int> distances;
    std::vector<double> etas;
    uint64_t samples = 10000;
    uint64_t seed = 0;
    int workers = 1;
    double work_cap = kDefaultWorkCap;
    bool force = false;
    int bootstrap_replicates = 200;
};

/// Bell draws a scan would perform.
double scan_work(const ScanConfig &config);

struct Crossing {
    int d_small = 0;
    int d_large = 0;
    double eta = 0;
};

struct ThresholdResult {
    std::vector<PointResult> points;
    std::vector<Crossing> crossings;
    double threshold = 0;
    double uncertainty = 0;
    Interval ci;
    int bootstrap_used = 0;
    double wall_time_s = 0;
};

/// Grid of logical loss rates, indexed [distance][eta], used for crossing
/// analysis.
struct RateGrid {
    std::vector<int> distances;
    std::vector<double> etas;
    std::vector<std::vector<double>> rates;
};

/// Non-decreasing least-squares fit (pool adjacent violators).
std::vector<double> isotonic_fit(const std::vector<double> &values, const std::vector<double> &weights);

/// Crossings of successive distances in a grid. Throws NoCrossingError naming the
/// ordering of the curves when some pair does not cross inside the window.
std::vector<Crossing> find_crossings(const RateGrid &grid, const std::vector<double> &weights);

/// Runs every (distance, eta) point of a scan, enforcing the work cap.
std::vector<PointResult> run_scan_points(const ScanConfig &config);

/// Runs every (distance, eta) point and locates the threshold.
ThresholdResult scan_thresholds(const ScanConfig &config);

/// Locates the threshold from finished points (used by scan_thresholds).
ThresholdResult analyse_points(const std::vector<PointResult> &points, const ScanConfig &config);

}  // namespace ghzft

#endif
