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

#include "ghzft/encodings.h"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <vector>

using namespace ghzft;

std::string_view ghzft::variant_name(Variant v) {
    return v == Variant::shor ? "shor" : "rotated";
}

std::string_view ghzft::model_name(ModelKind k) {
    return k == ModelKind::nl ? "nl" : "lo";
}

ModelKind ghzft::parse_model(std::string_view text) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) {
        return std::tolower(c);
    });
    if (lower == "nl") {
        return ModelKind::nl;
    }
    if (lower == "lo") {
        return ModelKind::lo;
    }
    throw std::invalid_argument("model must be 'nl' or 'lo', got '" + std::string(text) + "'");
}

namespace {

int parse_positive_field(std::string_view field, std::string_view name, std::string_view whole) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw std::invalid_argument(
            "invalid encoding '" + std::string(whole) + "': " + std::string(name) + " must be an integer");
    }
    return value;
}

}  // namespace

EncodingSpec EncodingSpec::parse(std::string_view text) {
    constexpr std::string_view prefix = "qpc:";
    if (text == "doubled") {
        return EncodingSpec{};
    }
    if (text.substr(0, prefix.size()) != prefix) {
        throw std::invalid_argument(
            "invalid encoding '" + std::string(text) + "': expected the form qpc:n,m or qpc:n,m,rotated");
    }
    std::vector<std::string_view> fields;
    std::string_view rest = text.substr(prefix.size());
    while (true) {
        size_t comma = rest.find(',');
        fields.push_back(rest.substr(0, comma));
        if (comma == std::string_view::npos) {
            break;
        }
        rest = rest.substr(comma + 1);
    }
    if (fields.size() < 2 || fields.size() > 3) {
        throw std::invalid_argument(
            "invalid encoding '" + std::string(text) + "': expected the form qpc:n,m or qpc:n,m,rotated");
    }
    EncodingSpec spec;
    spec.n = parse_positive_field(fields[0], "n", text);
    spec.m = parse_positive_field(fields[1], "m", text);
    if (fields.size() == 3) {
        if (fields[2] == "rotated") {
            spec.variant = Variant::rotated;
        } else if (fields[2] != "shor") {
            throw std::invalid_argument(
                "invalid encoding '" + std::string(text) + "': variant must be 'shor' or 'rotated'");
        }
    }
    spec.validate();
    return spec;
}

std::string EncodingSpec::to_string() const {
    std::string out = "qpc:" + std::to_string(n) + "," + std::to_string(m);
    if (variant == Variant::rotated) {
        out += ",rotated";
    }
    return out;
}

void EncodingSpec::validate() const {
    if (n < 1) {
        throw std::invalid_argument("n ≥ 1 required");
    }
    if (m < 1) {
        throw std::invalid_argument("m ≥ 1 required");
    }
    if (r != 2) {
        throw std::invalid_argument("only doubled chains (r = 2) are supported");
    }
}

LossModel::LossModel(double eta, ModelKind kind) : eta(eta), kind(kind) {
    if (!(eta >= 0 && eta <= 1)) {
        throw std::invalid_argument("eta must lie in [0, 1]");
    }
}

QpcCode ghzft::build_qpc_code(const EncodingSpec &spec) {
    spec.validate();
    size_t n = spec.n;
    size_t m = spec.m;
    std::vector<std::string> labels;
    for (size_t b = 0; b < n; b++) {
        for (size_t i = 0; i < m; i++) {
            labels.push_back("blk" + std::to_string(b) + ".pos" + std::to_string(i));
        }
    }
    auto photon = [m](size_t b, size_t i) {
        return b * m + i;
    };

    QpcCode code{GeneratorSet(labels), PauliOperator(n * m), PauliOperator(n * m)};
    for (size_t b = 0; b < n; b++) {
        for (size_t i = 0; i + 1 < m; i++) {
            PauliOperator s(n * m);
            s.set(photon(b, i), 'X');
            s.set(photon(b, i + 1), 'X');
            code.stabilisers.add(std::move(s));
        }
    }
    for (size_t b = 0; b + 1 < n; b++) {
        PauliOperator s(n * m);
        for (size_t i = 0; i < m; i++) {
            s.set(photon(b, i), 'Z');
            s.set(photon(b + 1, i), 'Z');
        }
        code.stabilisers.add(std::move(s));
    }
    for (size_t i = 0; i < m; i++) {
        code.logical_z.set(photon(0, i), 'Z');
    }
    for (size_t b = 0; b < n; b++) {
        code.logical_x.set(photon(b, 0), 'X');
    }
    if (spec.variant == Variant::rotated) {
        std::swap(code.logical_x, code.logical_z);
    }
    return code;
}

namespace {

// Copies `p` (on one encoded node) into `out` at photon offset `offset`.
void embed(const PauliOperator &p, size_t offset, PauliOperator &out) {
    for (size_t q = 0; q < p.num_qubits(); q++) {
        char c = p.at(q);
        if (c != 'I') {
            out.set(offset + q, c);
        }
    }
}

}  // namespace

ResourceStateSpec ghzft::build_encoded_2chain(const EncodingSpec &spec, int photon_cap) {
    spec.validate();
    if (spec.photons_per_resource_state() > photon_cap) {
        throw ResourceError(
            "encoding " + spec.to_string() + " needs " + std::to_string(spec.photons_per_resource_state()) +
            " photons per resource state, above the cap of " + std::to_string(photon_cap));
    }
    QpcCode code = build_qpc_code(spec);
    size_t per_node = spec.photons_per_encoded_qubit();
    constexpr std::array<std::string_view, 4> nodes = {"1a", "1b", "2a", "2b"};

    ResourceStateSpec out;
    for (auto node : nodes) {
        for (const auto &label : code.stabilisers.qubit_labels) {
            out.photon_labels.push_back(per_node == 1 ? std::string(node) : std::string(node) + "." + label);
        }
    }
    size_t total = out.photon_labels.size();
    out.stabilisers = GeneratorSet(out.photon_labels);
    out.chain_operators = GeneratorSet(out.photon_labels);

    for (size_t k = 0; k < nodes.size(); k++) {
        for (const auto &s : code.stabilisers.generators) {
            PauliOperator lifted(total);
            embed(s, k * per_node, lifted);
            out.stabilisers.add(std::move(lifted));
        }
    }

    // Node order 1a, 1b, 2a, 2b.
    auto lift = [&](std::array<char, 4> pattern) {
        PauliOperator p(total);
        for (size_t k = 0; k < 4; k++) {
            if (pattern[k] == 'X') {
                embed(code.logical_x, k * per_node, p);
            } else if (pattern[k] == 'Z') {
                embed(code.logical_z, k * per_node, p);
            }
        }
        return p;
    };
    out.chain_operators.add(lift({'X', 'X', 'Z', 'I'}));
    out.chain_operators.add(lift({'Z', 'I', 'X', 'X'}));
    out.chain_operators.add(lift({'Z', 'Z', 'I', 'I'}));
    out.chain_operators.add(lift({'I', 'I', 'Z', 'Z'}));
    for (const auto &p : out.chain_operators.generators) {
        out.stabilisers.add(p);
    }
    return out;
}

ReturnProbabilities ghzft::analytic_return_prob(const EncodingSpec &spec, const LossModel &model) {
    spec.validate();
    double gamma = model.gamma();
    double full = std::pow(1 - gamma, spec.m);
    double block_success = model.kind == ModelKind::lo ? 0.5 * full : full;
    ReturnProbabilities out;
    out.p_zz = 1 - std::pow(1 - block_success, spec.n);
    out.p_xx = std::pow(1 - std::pow(gamma, spec.m), spec.n);
    if (spec.variant == Variant::rotated) {
        std::swap(out.p_zz, out.p_xx);
    }
    return out;
}

BellRecovery ghzft::sample_bell_recovery(const EncodingSpec &spec, const LossModel &model, RandomStream &rng) {
    double gamma = model.gamma();
    bool some_block_complete = false;
    bool every_block_touched = true;
    for (int b = 0; b < spec.n; b++) {
        int intact = 0;
        for (int i = 0; i < spec.m; i++) {
            intact += !rng.bernoulli(gamma);
        }
        bool coin = true;
        if (model.kind == ModelKind::lo) {
            coin = rng.bernoulli(0.5);
        }
        some_block_complete |= (intact == spec.m) && coin;
        every_block_touched &= intact > 0;
    }
    BellRecovery out{some_block_complete, every_block_touched};
    if (spec.variant == Variant::rotated) {
        std::swap(out.zz, out.xx);
    }
    return out;
}

ReturnProbabilities ghzft::brute_force_return_prob(const EncodingSpec &spec, const LossModel &model) {
    spec.validate();
    size_t pairs = size_t(spec.n) * spec.m;
    bool lo = model.kind == ModelKind::lo;
    if (pairs > 16 || (lo && pairs + spec.n > 20)) {
        throw ResourceError("brute-force enumeration bound exceeded for " + spec.to_string());
    }

    // Two encoded qubits A (photons 0..pairs-1) and B (pairs..2*pairs-1);
    // physical Bell measurement p pairs photon p of A with photon p of B.
    QpcCode code = build_qpc_code(spec);
    std::vector<std::string> labels;
    for (const auto &l : code.stabilisers.qubit_labels) {
        labels.push_back("A." + l);
    }
    for (const auto &l : code.stabilisers.qubit_labels) {
        labels.push_back("B." + l);
    }
    GeneratorSet stabilisers(labels);
    for (size_t side = 0; side < 2; side++) {
        for (const auto &s : code.stabilisers.generators) {
            PauliOperator lifted(2 * pairs);
            embed(s, side * pairs, lifted);
            stabilisers.add(std::move(lifted));
        }
    }
    PauliOperator zz(2 * pairs);
    embed(code.logical_z, 0, zz);
    embed(code.logical_z, pairs, zz);
    PauliOperator xx(2 * pairs);
    embed(code.logical_x, 0, xx);
    embed(code.logical_x, pairs, xx);

    // A failed linear-optical block keeps its X-type pair outcomes but loses
    // the Z-type ones, so only Z-type logicals see the block as missing.
    auto is_z_type = [](const PauliOperator &p) {
        return p.x_mask().none();
    };

    double gamma = model.gamma();
    size_t coin_patterns = lo ? (size_t{1} << spec.n) : 1;
    double coin_weight = 1.0 / double(coin_patterns);
    ReturnProbabilities out;
    for (uint32_t intact = 0; intact < (uint32_t{1} << pairs); intact++) {
        int k = std::popcount(intact);
        double weight = std::pow(1 - gamma, k) * std::pow(gamma, int(pairs) - k);
        if (weight == 0) {
            continue;
        }
        std::vector<size_t> lost;
        for (size_t p = 0; p < pairs; p++) {
            if (!(intact >> p & 1)) {
                lost.push_back(p);
                lost.push_back(pairs + p);
            }
        }
        for (size_t coins = 0; coins < coin_patterns; coins++) {
            std::vector<size_t> lost_z = lost;
            if (lo) {
                for (int b = 0; b < spec.n; b++) {
                    if (!(coins >> b & 1)) {
                        for (int i = 0; i < spec.m; i++) {
                            size_t p = size_t(b) * spec.m + i;
                            if (intact >> p & 1) {
                                lost_z.push_back(p);
                                lost_z.push_back(pairs + p);
                            }
                        }
                    }
                }
            }
            double w = weight * coin_weight;
            if (logical_recoverable(zz, stabilisers, is_z_type(zz) ? lost_z : lost)) {
                out.p_zz += w;
            }
            if (logical_recoverable(xx, stabilisers, is_z_type(xx) ? lost_z : lost)) {
                out.p_xx += w;
            }
        }
    }
    return out;
}

BellOutcomeTable::BellOutcomeTable(const EncodingSpec &spec, const LossModel &model) {
    spec.validate();
    double gamma = model.gamma();
    double full = std::pow(1 - gamma, spec.m);
    double success = model.kind == ModelKind::lo ? 0.5 * full : full;
    double empty = std::pow(gamma, spec.m);
    double partial = std::max(0.0, 1 - empty - success);

    // Per block: success (complete and, under LO, lucky), partial (some
    // pair intact but no success), empty (no pair intact).
    double p_block_route = 1 - std::pow(1 - success, spec.n);
    double p_parity_route = std::pow(1 - empty, spec.n);
    double both = std::max(0.0, p_parity_route - std::pow(partial, spec.n));
    double route_only = std::max(0.0, p_block_route - both);
    double parity_only = std::max(0.0, p_parity_route - both);
    double neither = std::max(0.0, 1 - both - route_only - parity_only);

    // Shor: the complete-block route recovers zz, the every-block route xx.
    bool rotated = spec.variant == Variant::rotated;
    probs_[index(true, true)] = both;
    probs_[index(!rotated, rotated)] = route_only;
    probs_[index(rotated, !rotated)] = parity_only;
    probs_[index(false, false)] = neither;

    constexpr double scale = 4294967296.0;
    double acc = 0;
    const std::array<double, 3> ordered = {
        probs_[index(true, true)], probs_[index(true, false)], probs_[index(false, true)]};
    for (size_t k = 0; k < 3; k++) {
        acc += ordered[k];
        cut_[k] = uint64_t(std::llround(std::clamp(acc, 0.0, 1.0) * scale));
    }
}
