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

#ifndef GHZFT_ENCODINGS_H
#define GHZFT_ENCODINGS_H

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ghzft/pauli.h"
#include "ghzft/rng.h"

namespace ghzft {

enum class Variant { shor, rotated };
enum class ModelKind { nl, lo };

std::string_view variant_name(Variant v);
std::string_view model_name(ModelKind k);
ModelKind parse_model(std::string_view text);

struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// QPC(n,m)_r encoding of each node of the doubled 2-chain.
struct EncodingSpec {
    int n = 1;
    int m = 1;
    int r = 2;
    Variant variant = Variant::shor;

    /// Parses "qpc:n,m" or "qpc:n,m,rotated" (also accepts ",shor").
    static EncodingSpec parse(std::string_view text);
    /// Inverse of parse; "qpc:n,m" for Shor and "qpc:n,m,rotated" otherwise.
    std::string to_string() const;
    void validate() const;

    int photons_per_encoded_qubit() const {
        return n * m;
    }
    int photons_per_resource_state() const {
        return 2 * r * n * m;
    }
    bool operator==(const EncodingSpec &) const = default;
};

struct LossModel {
    double eta = 0;
    ModelKind kind = ModelKind::nl;

    LossModel() = default;
    LossModel(double eta, ModelKind kind);

    /// Probability that at least one photon of a measured pair is lost.
    double gamma() const {
        return 1 - (1 - eta) * (1 - eta);
    }
};

struct ReturnProbabilities {
    double p_zz = 0;
    double p_xx = 0;
};

/// One QPC(n,m)-encoded qubit on n*m photons ordered block-major.
///
/// Realised in the frame where each block is a repetition code in the X
/// basis (X_i X_j within a block) and the blocks are tied by Z-parities
/// (Z^{⊗m} on consecutive blocks). Logical Z is Z^{⊗m} on block 0 and
/// logical X is X on the first photon of every block; for n = m = 1 this
/// is the bare qubit. The rotated variant swaps the two logicals.
struct QpcCode {
    GeneratorSet stabilisers;
    PauliOperator logical_x;
    PauliOperator logical_z;
};

QpcCode build_qpc_code(const EncodingSpec &spec);

/// Photon-level stabiliser state of one QPC(n,m)_2 encoded doubled 2-chain.
struct ResourceStateSpec {
    /// Full stabiliser group: code stabilisers plus the lifted chain operators.
    GeneratorSet stabilisers;
    /// The four doubled-chain operators X1aX1bZ2a, Z1aX2aX2b, Z1aZ1b, Z2aZ2b
    /// with each node replaced by its encoded logicals.
    GeneratorSet chain_operators;
    std::vector<std::string> photon_labels;
};

constexpr int kDefaultPhotonCap = 512;

ResourceStateSpec build_encoded_2chain(const EncodingSpec &spec, int photon_cap = kDefaultPhotonCap);

/// Closed-form eigenvalue return probabilities of one encoded Bell
/// measurement.
ReturnProbabilities analytic_return_prob(const EncodingSpec &spec, const LossModel &model);

struct BellRecovery {
    bool zz = false;
    bool xx = false;
    bool operator==(const BellRecovery &) const = default;
};

/// Draws one photon-level loss configuration of an encoded Bell
/// measurement: n*m pairs each intact with probability 1-gamma, plus one
/// fair coin per block in the LO model.
BellRecovery sample_bell_recovery(const EncodingSpec &spec, const LossModel &model, RandomStream &rng);

/// Exact return probabilities by enumerating every pair-loss pattern and
/// deciding recoverability with stabiliser algebra. Requires n*m <= 16
/// (and n*m + n <= 20 for LO, whose block coins are enumerated too).
ReturnProbabilities brute_force_return_prob(const EncodingSpec &spec, const LossModel &model);

/// Joint law of (zz recovered, xx recovered) for one encoded Bell
/// measurement, sampled from a single 32-bit word.
class BellOutcomeTable {
   public:
    BellOutcomeTable(const EncodingSpec &spec, const LossModel &model);

    /// Probability of outcome (zz, xx).
    double probability(bool zz, bool xx) const {
        return probs_[index(zz, xx)];
    }
    BellRecovery draw(uint32_t word) const {
        // Categories ordered (1,1), (1,0), (0,1), (0,0).
        if (word < cut_[0]) {
            return {true, true};
        }
        if (word < cut_[1]) {
            return {true, false};
        }
        if (word < cut_[2]) {
            return {false, true};
        }
        return {false, false};
    }

   private:
    static int index(bool zz, bool xx) {
        return (zz ? 2 : 0) | (xx ? 1 : 0);
    }
    std::array<double, 4> probs_{};
    std::array<uint64_t, 3> cut_{};
};

}  // namespace ghzft

#endif
