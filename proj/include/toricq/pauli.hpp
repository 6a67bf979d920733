// Copyright 2026 The toricq Authors
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

#pragma once

#include <bit>
#include <complex>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "toricq/spin_mask.hpp"

namespace toricq {

using cplx = std::complex<double>;

/// i^k for k mod 4, exact.
inline cplx i_pow(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0:
            return {1, 0};
        case 1:
            return {0, 1};
        case 2:
            return {-1, 0};
        default:
            return {0, -1};
    }
}

/// Result of acting with a Pauli string on a computational basis state.
struct BasisImage {
    std::uint64_t index;
    int phase_exp;  ///< amplitude is i^phase_exp

    cplx amplitude() const {
        return i_pow(phase_exp);
    }
};

/// A Pauli string on N spins.
///
/// The operator represented is
///
///     i^phase_exp * prod_j X_j^{x_j} * prod_j Z_j^{z_j}
///
/// with every X factor to the left of every Z factor. A spin carrying both
/// factors therefore holds X Z = -i Y; a Hermitian Y_j is stored as
/// (x_j = z_j = 1, phase_exp = 1). Basis index bit j set means spin j points
/// down (sigma^z_j = -1).
class PauliOperator {
   public:
    PauliOperator() = default;

    explicit PauliOperator(std::size_t num_spins) : x_(num_spins), z_(num_spins) {
    }

    PauliOperator(SpinMask x_mask, SpinMask z_mask, int phase_exp = 0)
        : x_(std::move(x_mask)), z_(std::move(z_mask)), phase_exp_(((phase_exp % 4) + 4) % 4) {
        if (x_.num_spins() != z_.num_spins()) {
            throw std::invalid_argument("PauliOperator: x and z masks differ in size");
        }
    }

    static PauliOperator identity(std::size_t num_spins) {
        return PauliOperator(num_spins);
    }

    template <typename Range>
    static PauliOperator x_string(std::size_t num_spins, const Range &spins) {
        return {SpinMask::from_indices(num_spins, spins), SpinMask(num_spins), 0};
    }

    template <typename Range>
    static PauliOperator z_string(std::size_t num_spins, const Range &spins) {
        return {SpinMask(num_spins), SpinMask::from_indices(num_spins, spins), 0};
    }

    /// Single-spin Pauli: 'I', 'X', 'Y' or 'Z'.
    static PauliOperator single(std::size_t num_spins, std::size_t spin, char pauli) {
        PauliOperator p(num_spins);
        switch (pauli) {
            case 'I':
                break;
            case 'X':
                p.x_.set(spin);
                break;
            case 'Z':
                p.z_.set(spin);
                break;
            case 'Y':
                p.x_.set(spin);
                p.z_.set(spin);
                p.phase_exp_ = 1;
                break;
            default:
                throw std::invalid_argument(std::string("unknown Pauli '") + pauli + "'");
        }
        return p;
    }

    std::size_t num_spins() const {
        return x_.num_spins();
    }
    const SpinMask &x_mask() const {
        return x_;
    }
    const SpinMask &z_mask() const {
        return z_;
    }
    int phase_exp() const {
        return phase_exp_;
    }

    bool is_pure_x() const {
        return z_.none() && phase_exp_ == 0;
    }
    bool is_diagonal() const {
        return x_.none();
    }

    /// Hermitian iff i^phase * (-i)^{#Y} is real.
    bool is_hermitian() const {
        return ((phase_exp_ - static_cast<int>((x_ & z_).count())) & 1) == 0;
    }

    bool operator==(const PauliOperator &other) const = default;

    /// Parses strings like "X0 X3 Z5", "-i Y2", "I". Optional leading sign
    /// token is one of "+", "-", "i", "+i", "-i".
    static PauliOperator parse(std::size_t num_spins, std::string_view text);

    std::string str() const;

   private:
    SpinMask x_;
    SpinMask z_;
    int phase_exp_ = 0;
};

/// Exact product a * b.
inline PauliOperator pauli_multiply(const PauliOperator &a, const PauliOperator &b) {
    if (a.num_spins() != b.num_spins()) {
        throw std::invalid_argument("pauli_multiply: operators act on different numbers of spins");
    }
    // Z^{za} X^{xb} = (-1)^{|za & xb|} X^{xb} Z^{za}
    int phase = a.phase_exp() + b.phase_exp() + 2 * static_cast<int>((a.z_mask() & b.x_mask()).count());
    return {a.x_mask() ^ b.x_mask(), a.z_mask() ^ b.z_mask(), phase};
}

inline PauliOperator operator*(const PauliOperator &a, const PauliOperator &b) {
    return pauli_multiply(a, b);
}

inline bool commutes(const PauliOperator &a, const PauliOperator &b) {
    if (a.num_spins() != b.num_spins()) {
        throw std::invalid_argument("commutes: operators act on different numbers of spins");
    }
    return (((a.x_mask() & b.z_mask()).count() + (a.z_mask() & b.x_mask()).count()) & 1) == 0;
}

/// op |basis_index> = amplitude |index'>.
inline BasisImage apply_to_basis(const PauliOperator &op, std::uint64_t basis_index) {
    if (op.num_spins() > 63) {
        throw std::invalid_argument("apply_to_basis: basis states limited to 63 spins");
    }
    if (basis_index >> op.num_spins()) {
        throw std::out_of_range("apply_to_basis: basis index out of range");
    }
    int sign = std::popcount(op.z_mask().word() & basis_index) & 1;
    return {basis_index ^ op.x_mask().word(), (op.phase_exp() + 2 * sign) & 3};
}

inline std::string PauliOperator::str() const {
    // Convert X^x Z^z bookkeeping to letters: each Y absorbs a factor i.
    int ys = static_cast<int>((x_ & z_).count());
    int shown = ((phase_exp_ - ys) % 4 + 4) % 4;
    static constexpr const char *kPrefix[] = {"", "i ", "-", "-i "};
    std::ostringstream out;
    out << kPrefix[shown];
    bool first = true;
    for (std::size_t k = 0; k < num_spins(); k++) {
        bool x = x_.test(k), z = z_.test(k);
        if (!x && !z) {
            continue;
        }
        if (!first) {
            out << ' ';
        }
        first = false;
        out << (x && z ? 'Y' : x ? 'X' : 'Z') << k;
    }
    if (first) {
        out << 'I';
    }
    return out.str();
}

inline PauliOperator PauliOperator::parse(std::size_t num_spins, std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string tok;
    PauliOperator result(num_spins);
    int shown = 0;
    bool first = true;
    while (in >> tok) {
        if (first && (tok == "+" || tok == "-" || tok == "i" || tok == "+i" || tok == "-i")) {
            shown = tok == "-" ? 2 : tok == "i" || tok == "+i" ? 1 : tok == "-i" ? 3 : 0;
            first = false;
            continue;
        }
        if (first && tok.size() > 1 && tok[0] == '-' && tok[1] != 'i') {
            shown = 2;
            tok.erase(0, 1);
        }
        first = false;
        if (tok == "I") {
            continue;
        }
        if (tok.size() < 2) {
            throw std::invalid_argument("bad Pauli token '" + tok + "'");
        }
        std::size_t spin = 0;
        try {
            std::size_t used = 0;
            spin = std::stoul(tok.substr(1), &used);
            if (used + 1 != tok.size()) {
                throw std::invalid_argument("");
            }
        } catch (const std::exception &) {
            throw std::invalid_argument("bad Pauli token '" + tok + "'");
        }
        result = pauli_multiply(result, single(num_spins, spin, tok[0]));
    }
    result.phase_exp_ = (result.phase_exp_ + shown) & 3;
    return result;
}

}  // namespace toricq
