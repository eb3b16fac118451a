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

#include "ghzft/pauli.h"

#include <algorithm>
#include <bit>

#include "ghzft/gf2.h"

using namespace ghzft;

namespace {

void check_dims(const PauliOperator &p, const PauliOperator &q) {
    if (p.num_qubits() != q.num_qubits()) {
        throw DimensionError(
            "Pauli operators act on different qubit counts: " + std::to_string(p.num_qubits()) + " vs " +
            std::to_string(q.num_qubits()));
    }
}

void check_labels(const GeneratorSet &a, const GeneratorSet &b) {
    if (a.qubit_labels != b.qubit_labels) {
        throw LabelError("generator sets use different qubit labellings");
    }
}

// acc <- acc * q, returning true when the pair anticommuted.
bool multiply_into(PauliOperator &acc, const PauliOperator &q) {
    auto ax = acc.x_mask().words();
    auto az = acc.z_mask().words();
    auto qx = q.x_mask().words();
    auto qz = q.z_mask().words();
    // Phase exponent k of i^k, relative to the Hermitian form of the product.
    uint64_t k = 0;
    for (size_t w = 0; w < ax.size(); w++) {
        k += std::popcount(ax[w] & az[w]);
        k += std::popcount(qx[w] & qz[w]);
        k += 2 * std::popcount(az[w] & qx[w]);
        ax[w] ^= qx[w];
        az[w] ^= qz[w];
        k += 3 * std::popcount(ax[w] & az[w]);
    }
    k &= 3;
    bool flip = (k == 2) || (k == 3);
    if (flip) {
        acc.negate();
    }
    if (q.sign() < 0) {
        acc.negate();
    }
    return k & 1;
}

}  // namespace

char PauliOperator::at(size_t q) const {
    static constexpr char table[4] = {'I', 'X', 'Z', 'Y'};
    return table[xs_.get(q) | (zs_.get(q) << 1)];
}

void PauliOperator::set(size_t q, char pauli) {
    switch (pauli) {
        case 'I':
            xs_.set(q, false);
            zs_.set(q, false);
            break;
        case 'X':
            xs_.set(q, true);
            zs_.set(q, false);
            break;
        case 'Y':
            xs_.set(q, true);
            zs_.set(q, true);
            break;
        case 'Z':
            xs_.set(q, false);
            zs_.set(q, true);
            break;
        default:
            throw std::invalid_argument(std::string("not a Pauli symbol: ") + pauli);
    }
}

size_t PauliOperator::weight() const {
    size_t total = 0;
    auto x = xs_.words();
    auto z = zs_.words();
    for (size_t w = 0; w < x.size(); w++) {
        total += std::popcount(x[w] | z[w]);
    }
    return total;
}

std::vector<size_t> PauliOperator::support() const {
    std::vector<size_t> out;
    for (size_t q = 0; q < num_qubits(); q++) {
        if (xs_.get(q) || zs_.get(q)) {
            out.push_back(q);
        }
    }
    return out;
}

BitVector PauliOperator::symplectic() const {
    size_t n = num_qubits();
    BitVector row(2 * n);
    for (size_t q : xs_.set_bits()) {
        row.set(q, true);
    }
    for (size_t q : zs_.set_bits()) {
        row.set(n + q, true);
    }
    return row;
}

PauliOperator PauliOperator::from_symplectic(const BitVector &row, int sign) {
    size_t n = row.size() / 2;
    PauliOperator p(n);
    for (size_t k : row.set_bits()) {
        if (k < n) {
            p.xs_.set(k, true);
        } else {
            p.zs_.set(k - n, true);
        }
    }
    p.set_sign(sign);
    return p;
}

bool ghzft::symplectic_product(const PauliOperator &p, const PauliOperator &q) {
    check_dims(p, q);
    return BitVector::and_parity(p.x_mask(), q.z_mask()) ^ BitVector::and_parity(p.z_mask(), q.x_mask());
}

PauliOperator ghzft::multiply(const PauliOperator &p, const PauliOperator &q) {
    check_dims(p, q);
    PauliOperator out = p;
    multiply_into(out, q);
    return out;
}

size_t QubitRegistry::index(const std::string &label) {
    auto it = by_label_.find(label);
    if (it != by_label_.end()) {
        return it->second;
    }
    size_t k = labels_.size();
    labels_.push_back(label);
    by_label_.emplace(label, k);
    return k;
}

std::optional<size_t> QubitRegistry::find(const std::string &label) const {
    auto it = by_label_.find(label);
    if (it == by_label_.end()) {
        return std::nullopt;
    }
    return it->second;
}

void GeneratorSet::add(PauliOperator p) {
    if (p.num_qubits() != num_qubits()) {
        throw DimensionError("generator does not match the labelling's qubit count");
    }
    generators.push_back(std::move(p));
}

GeneratorSet ghzft::canonical_basis(const GeneratorSet &g) {
    std::vector<PauliOperator> rows = g.generators;
    size_t n = g.num_qubits();
    size_t r = 0;
    for (size_t col = 0; col < 2 * n && r < rows.size(); col++) {
        auto has = [&](const PauliOperator &p) {
            return col < n ? p.x_mask().get(col) : p.z_mask().get(col - n);
        };
        size_t pivot = r;
        while (pivot < rows.size() && !has(rows[pivot])) {
            pivot++;
        }
        if (pivot == rows.size()) {
            continue;
        }
        std::swap(rows[r], rows[pivot]);
        for (size_t k = 0; k < rows.size(); k++) {
            if (k != r && has(rows[k])) {
                multiply_into(rows[k], rows[r]);
            }
        }
        r++;
    }
    rows.resize(r);
    GeneratorSet out(g.qubit_labels);
    out.generators = std::move(rows);
    return out;
}

size_t ghzft::rank(const GeneratorSet &g) {
    EchelonBasis basis(2 * g.num_qubits(), g.size());
    for (const auto &p : g.generators) {
        basis.add(p.symplectic());
    }
    return basis.rank();
}

bool ghzft::all_commute(const GeneratorSet &g) {
    for (size_t i = 0; i < g.size(); i++) {
        for (size_t j = i + 1; j < g.size(); j++) {
            if (symplectic_product(g.generators[i], g.generators[j])) {
                return false;
            }
        }
    }
    return true;
}

PauliOperator ghzft::product_of(const GeneratorSet &g, const BitVector &coefficients) {
    PauliOperator acc = g.identity();
    for (size_t k : coefficients.set_bits()) {
        multiply_into(acc, g.generators[k]);
    }
    return acc;
}

std::optional<BasisExpansion> ghzft::express_in_basis(const PauliOperator &p, const GeneratorSet &g) {
    if (p.num_qubits() != g.num_qubits()) {
        throw DimensionError("operator does not match the generator set's qubit count");
    }
    EchelonBasis basis(2 * g.num_qubits(), g.size());
    for (const auto &gen : g.generators) {
        basis.add(gen.symplectic());
    }
    auto combo = basis.solve(p.symplectic());
    if (!combo.has_value()) {
        return std::nullopt;
    }
    BasisExpansion out;
    out.coefficients = std::move(*combo);
    out.sign_mismatch = product_of(g, out.coefficients).sign() != p.sign();
    return out;
}

std::vector<IntersectionElement> ghzft::intersect_detailed(const GeneratorSet &a, const GeneratorSet &b) {
    check_labels(a, b);
    size_t width = 2 * a.num_qubits();
    size_t na = a.size();
    size_t nb = b.size();
    EchelonBasis joint(width, na + nb);
    std::vector<BitVector> relations;
    for (const auto &p : a.generators) {
        joint.add(p.symplectic());
    }
    for (const auto &p : b.generators) {
        if (auto rel = joint.add(p.symplectic())) {
            relations.push_back(std::move(*rel));
        }
    }

    // A relation u.a = v.b names one intersection element; relations that
    // collapse to the identity or repeat earlier elements are dropped.
    std::vector<IntersectionElement> out;
    EchelonBasis seen(width, relations.size());
    for (const auto &rel : relations) {
        IntersectionElement e;
        e.coefficients_a = BitVector(na);
        e.coefficients_b = BitVector(nb);
        for (size_t k : rel.set_bits()) {
            if (k < na) {
                e.coefficients_a.set(k, true);
            } else {
                e.coefficients_b.set(k - na, true);
            }
        }
        PauliOperator from_b = product_of(b, e.coefficients_b);
        if (from_b.is_identity()) {
            continue;
        }
        if (seen.add(from_b.symplectic()).has_value()) {
            continue;
        }
        e.op = product_of(a, e.coefficients_a);
        e.sign_mismatch = from_b.sign() != e.op.sign();
        out.push_back(std::move(e));
    }
    return out;
}

GeneratorSet ghzft::intersect(const GeneratorSet &a, const GeneratorSet &b) {
    GeneratorSet out(a.qubit_labels);
    for (auto &e : intersect_detailed(a, b)) {
        out.generators.push_back(std::move(e.op));
    }
    return out;
}

bool ghzft::logical_recoverable(
    const PauliOperator &logical, const GeneratorSet &stabilisers, std::span<const size_t> lost) {
    if (logical.num_qubits() != stabilisers.num_qubits()) {
        throw DimensionError("logical does not match the stabiliser qubit count");
    }
    size_t width = 2 * lost.size();
    auto restrict = [&](const PauliOperator &p) {
        BitVector row(width);
        for (size_t k = 0; k < lost.size(); k++) {
            row.set(k, p.x_mask().get(lost[k]));
            row.set(lost.size() + k, p.z_mask().get(lost[k]));
        }
        return row;
    };
    BitVector target = restrict(logical);
    if (target.none()) {
        return true;
    }
    EchelonBasis basis(width, stabilisers.size());
    for (const auto &s : stabilisers.generators) {
        basis.add(restrict(s));
    }
    return basis.contains(target);
}

std::string ghzft::to_string(const PauliOperator &p, std::span<const std::string> labels) {
    if (labels.size() != p.num_qubits()) {
        throw DimensionError("label count does not match operator size");
    }
    std::string out(1, p.sign() < 0 ? '-' : '+');
    if (p.is_identity()) {
        out += 'I';
        return out;
    }
    bool first = true;
    for (size_t q = 0; q < p.num_qubits(); q++) {
        char c = p.at(q);
        if (c == 'I') {
            continue;
        }
        if (!first) {
            out += '.';
        }
        first = false;
        out += c;
        out += labels[q];
    }
    return out;
}

PauliOperator ghzft::parse_pauli(std::string_view text, std::span<const std::string> labels) {
    if (text.empty() || (text[0] != '+' && text[0] != '-')) {
        throw std::invalid_argument("Pauli string must start with '+' or '-': " + std::string(text));
    }
    PauliOperator p(labels.size());
    p.set_sign(text[0] == '-' ? -1 : +1);
    std::string_view body = text.substr(1);
    if (body == "I") {
        return p;
    }

    std::vector<std::string> tokens;
    size_t start = 0;
    while (start <= body.size()) {
        size_t dot = body.find('.', start);
        if (dot == std::string_view::npos) {
            dot = body.size();
        }
        tokens.emplace_back(body.substr(start, dot - start));
        start = dot + 1;
    }

    auto is_factor_start = [](const std::string &t) {
        return !t.empty() && (t[0] == 'X' || t[0] == 'Y' || t[0] == 'Z');
    };
    for (size_t k = 0; k < tokens.size();) {
        if (!is_factor_start(tokens[k]) || tokens[k].size() < 2) {
            throw std::invalid_argument("malformed Pauli factor in: " + std::string(text));
        }
        char pauli = tokens[k][0];
        std::string label = tokens[k].substr(1);
        k++;
        while (k < tokens.size() && !is_factor_start(tokens[k])) {
            label += '.';
            label += tokens[k];
            k++;
        }
        auto it = std::find(labels.begin(), labels.end(), label);
        if (it == labels.end()) {
            throw LabelError("unknown qubit label '" + label + "'");
        }
        size_t q = it - labels.begin();
        if (p.at(q) != 'I') {
            throw std::invalid_argument("qubit '" + label + "' appears twice in: " + std::string(text));
        }
        p.set(q, pauli);
    }
    return p;
}
