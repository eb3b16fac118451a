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

#ifndef GHZFT_PAULI_H
#define GHZFT_PAULI_H

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ghzft/bit_vector.h"

namespace ghzft {

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct LabelError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A Hermitian Pauli string  sign * (i^|x&z|) * X^x Z^z  on a fixed
/// number of qubits. Sites with both bits set are Y.
class PauliOperator {
   public:
    PauliOperator() = default;
    explicit PauliOperator(size_t num_qubits) : xs_(num_qubits), zs_(num_qubits) {
    }

    size_t num_qubits() const {
        return xs_.size();
    }
    const BitVector &x_mask() const {
        return xs_;
    }
    const BitVector &z_mask() const {
        return zs_;
    }
    BitVector &x_mask() {
        return xs_;
    }
    BitVector &z_mask() {
        return zs_;
    }

    int sign() const {
        return negative_ ? -1 : +1;
    }
    void set_sign(int s) {
        negative_ = s < 0;
    }
    void negate() {
        negative_ = !negative_;
    }

    /// 'I', 'X', 'Y' or 'Z'.
    char at(size_t q) const;
    void set(size_t q, char pauli);

    bool is_identity() const {
        return xs_.none() && zs_.none();
    }
    size_t weight() const;
    /// Qubits on which the operator acts non-trivially.
    std::vector<size_t> support() const;

    /// Symplectic row (x bits then z bits).
    BitVector symplectic() const;
    static PauliOperator from_symplectic(const BitVector &row, int sign = +1);

    /// Same Pauli string, ignoring sign.
    bool same_support_as(const PauliOperator &other) const {
        return xs_ == other.xs_ && zs_ == other.zs_;
    }
    bool operator==(const PauliOperator &other) const = default;

   private:
    BitVector xs_;
    BitVector zs_;
    bool negative_ = false;
};

/// 0 when p and q commute, 1 when they anticommute.
bool symplectic_product(const PauliOperator &p, const PauliOperator &q);

/// Product p*q with the sign tracked exactly.
///
/// Commuting factors give a Hermitian product and the result is exact.
/// Anticommuting factors give i times a Hermitian Pauli; the factor i is
/// dropped and the Hermitian part returned.
PauliOperator multiply(const PauliOperator &p, const PauliOperator &q);

/// Maps hierarchical string labels such as "rs3.q2a.blk1.pos0" to dense
/// qubit indices in first-seen order.
class QubitRegistry {
   public:
    size_t index(const std::string &label);
    std::optional<size_t> find(const std::string &label) const;
    size_t size() const {
        return labels_.size();
    }
    const std::vector<std::string> &labels() const {
        return labels_;
    }

   private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, size_t> by_label_;
};

/// Ordered generators over a shared labelling.
struct GeneratorSet {
    std::vector<PauliOperator> generators;
    std::vector<std::string> qubit_labels;

    GeneratorSet() = default;
    explicit GeneratorSet(std::vector<std::string> labels) : qubit_labels(std::move(labels)) {
    }

    size_t num_qubits() const {
        return qubit_labels.size();
    }
    size_t size() const {
        return generators.size();
    }
    void add(PauliOperator p);
    PauliOperator identity() const {
        return PauliOperator(num_qubits());
    }
};

/// Independent generating set of the same group, in reduced row-echelon
/// form over the symplectic rows. Idempotent.
GeneratorSet canonical_basis(const GeneratorSet &g);
size_t rank(const GeneratorSet &g);

bool all_commute(const GeneratorSet &g);

struct BasisExpansion {
    /// Coefficient on each generator of the basis, in order.
    BitVector coefficients;
    /// True when the product of the selected generators equals -p.
    bool sign_mismatch = false;
};

/// Writes p as a product of g's generators. When g is dependent the
/// solution with the redundant generators switched off is returned.
std::optional<BasisExpansion> express_in_basis(const PauliOperator &p, const GeneratorSet &g);

/// Product of the generators selected by `coefficients`, in generator order.
PauliOperator product_of(const GeneratorSet &g, const BitVector &coefficients);

struct IntersectionElement {
    /// Element of the intersection, carrying the sign it has as a product of a's generators.
    PauliOperator op;
    BitVector coefficients_a;
    BitVector coefficients_b;
    /// True when the same coefficients over b give -op.
    bool sign_mismatch = false;
};

/// Generators of span(a) ∩ span(b) with their expansions in both inputs.
std::vector<IntersectionElement> intersect_detailed(const GeneratorSet &a, const GeneratorSet &b);
GeneratorSet intersect(const GeneratorSet &a, const GeneratorSet &b);

/// True when some logical * s, s in span(stabilisers), has no support on `lost`.
bool logical_recoverable(
    const PauliOperator &logical, const GeneratorSet &stabilisers, std::span<const size_t> lost);

/// Signed symbol string, e.g. "+X1a.Z2b". Identity is "+I".
///
/// Factors are separated by '.', so label segments must not begin with an
/// upper-case X, Y or Z.
std::string to_string(const PauliOperator &p, std::span<const std::string> labels);
PauliOperator parse_pauli(std::string_view text, std::span<const std::string> labels);

}  // namespace ghzft

#endif
