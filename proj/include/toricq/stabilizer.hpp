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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "toricq/gf2.hpp"
#include "toricq/lattice.hpp"
#include "toricq/pauli.hpp"
#include "toricq/state.hpp"

namespace toricq {

/// Largest lattice for which analytic ground states are built in the full basis.
inline constexpr int kMaxGroundStateSpins = 24;

struct StabilizerGroupInfo {
    std::vector<PauliOperator> generators;
    Gf2Basis basis;  ///< span of the generators' x masks
    std::size_t gf2_rank = 0;

    std::uint64_t group_order() const {
        if (gf2_rank >= 64) {
            throw std::overflow_error("group order does not fit in 64 bits");
        }
        return std::uint64_t{1} << gf2_rank;
    }
};

inline std::vector<PauliOperator> star_operators(const LatticeGeometry &g) {
    std::vector<PauliOperator> out;
    for (const auto &s : g.star_supports) {
        out.push_back(PauliOperator::x_string(static_cast<std::size_t>(g.n_spins), s));
    }
    return out;
}

inline std::vector<PauliOperator> plaquette_operators(const LatticeGeometry &g) {
    std::vector<PauliOperator> out;
    for (const auto &p : g.plaquette_supports) {
        out.push_back(PauliOperator::z_string(static_cast<std::size_t>(g.n_spins), p));
    }
    return out;
}

/// Group generated by mutually commuting pure-X strings.
inline StabilizerGroupInfo enumerate_group(const std::vector<PauliOperator> &generators) {
    StabilizerGroupInfo info;
    info.generators = generators;
    if (generators.empty()) {
        return info;
    }
    info.basis = Gf2Basis(generators.front().num_spins());
    for (std::size_t a = 0; a < generators.size(); a++) {
        if (!generators[a].is_pure_x()) {
            throw std::invalid_argument("enumerate_group: generator " + std::to_string(a) + " is not a pure X string");
        }
        for (std::size_t b = 0; b < a; b++) {
            if (!commutes(generators[a], generators[b])) {
                throw std::invalid_argument("enumerate_group: generators " + std::to_string(b) + " and " +
                                            std::to_string(a) + " do not commute");
            }
        }
        info.basis.insert(generators[a].x_mask());
    }
    info.gf2_rank = info.basis.rank();
    return info;
}

/// All group elements as x masks (n_spins <= 63), sorted ascending.
inline std::vector<std::uint64_t> group_elements(const StabilizerGroupInfo &info) {
    std::vector<std::uint64_t> rows;
    for (const auto &r : info.basis.rows()) {
        if (r.num_spins() > 63) {
            throw std::invalid_argument("group_elements: limited to 63 spins");
        }
        rows.push_back(r.word());
    }
    std::uint64_t order = info.group_order();
    std::vector<std::uint64_t> out;
    out.reserve(order);
    // Gray code walk: each step toggles one generator.
    std::uint64_t current = 0;
    out.push_back(current);
    for (std::uint64_t k = 1; k < order; k++) {
        current ^= rows[static_cast<std::size_t>(std::countr_zero(k))];
        out.push_back(current);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Pure X string on the noncontractible dual cycle along `direction` (1 or 2).
inline PauliOperator loop_operator(const LatticeGeometry &g, int direction) {
    if (direction != 1 && direction != 2) {
        throw std::invalid_argument("loop_operator: direction must be 1 or 2");
    }
    return PauliOperator::x_string(static_cast<std::size_t>(g.n_spins),
                                   direction == 1 ? g.loop1_support : g.loop2_support);
}

/// Z string on the direct-lattice cycle along `direction`.
inline PauliOperator z_loop_operator(const LatticeGeometry &g, int direction) {
    if (direction != 1 && direction != 2) {
        throw std::invalid_argument("z_loop_operator: direction must be 1 or 2");
    }
    return PauliOperator::z_string(static_cast<std::size_t>(g.n_spins),
                                   direction == 1 ? g.zloop1_support : g.zloop2_support);
}

/// Topological sector label: which X loops are applied to the reference state.
struct Sector {
    int w1 = 0;
    int w2 = 0;
};

/// |G|^{-1/2} sum_g g (W1)^w1 (W2)^w2 |up...up>, in the full 2^N basis.
inline StateVector ground_state(const LatticeGeometry &g, Sector sector = {}) {
    if (g.n_spins > kMaxGroundStateSpins) {
        throw std::invalid_argument("ground_state: " + std::to_string(g.n_spins) + " spins exceeds the full-basis cap");
    }
    if ((sector.w1 != 0 && sector.w1 != 1) || (sector.w2 != 0 && sector.w2 != 1)) {
        throw std::invalid_argument("ground_state: sector labels must be bits");
    }
    auto info = enumerate_group(star_operators(g));
    std::uint64_t shift = 0;
    if (sector.w1) {
        shift ^= loop_operator(g, 1).x_mask().word();
    }
    if (sector.w2) {
        shift ^= loop_operator(g, 2).x_mask().word();
    }
    auto elements = group_elements(info);
    double amp = 1.0 / std::sqrt(static_cast<double>(elements.size()));
    auto state = StateVector::zeros(g.n_spins);
    for (auto e : elements) {
        state[e ^ shift] = amp;
    }
    return state;
}

inline StateVector ground_state(const LatticeGeometry &g, Sector sector, SectorPtr basis) {
    return ground_state(g, sector).restrict_to(std::move(basis));
}

inline std::vector<StateVector> ground_states(const LatticeGeometry &g) {
    std::vector<StateVector> out;
    for (int w2 = 0; w2 < 2; w2++) {
        for (int w1 = 0; w1 < 2; w1++) {
            out.push_back(ground_state(g, {w1, w2}));
        }
    }
    return out;
}

/// <psi|op|psi>.
inline cplx expectation(const StateVector &state, const PauliOperator &op) {
    if (static_cast<int>(op.num_spins()) != state.n_spins()) {
        throw std::invalid_argument("expectation: operator acts on " + std::to_string(op.num_spins()) +
                                    " spins, state has " + std::to_string(state.n_spins()));
    }
    cplx s = 0;
    for (std::size_t k = 0; k < state.dim(); k++) {
        if (state[k] == cplx{0}) {
            continue;
        }
        auto img = apply_to_basis(op, state.basis_index(k));
        auto pos = state.position(img.index);
        if (pos != SectorBasis::npos) {
            s += std::conj(state[pos]) * img.amplitude() * state[k];
        }
    }
    return s;
}

/// Rank of the star group with every generator restricted to `region`.
inline std::size_t restricted_star_rank(const LatticeGeometry &g, const SpinMask &region) {
    Gf2Basis b(static_cast<std::size_t>(g.n_spins));
    for (const auto &s : g.star_supports) {
        b.insert(g.mask(s) & region);
    }
    return b.rank();
}

/// Entanglement entropy in bits of any toric-code ground state across the
/// cut region | complement, from group ranks alone.
///
/// With G_A (G_B) the subgroup of star products supported inside the region
/// (its complement), the reduced state is flat with rank |G| / (|G_A| |G_B|).
/// dim G_A = rank G - rank(G restricted to the complement), so the entropy
/// is rank(G|A) + rank(G|B) - rank(G), independent of the Renyi index.
inline double analytic_region_entropy(const LatticeGeometry &g, const SpinSet &region) {
    auto inside = g.mask(region);
    std::size_t size = inside.count();
    if (size == 0 || static_cast<int>(size) >= g.n_spins) {
        throw std::invalid_argument("analytic_region_entropy: region must be a nonempty proper subset");
    }
    auto full_rank = enumerate_group(star_operators(g)).gf2_rank;
    auto rank_in = restricted_star_rank(g, inside);
    auto rank_out = restricted_star_rank(g, inside.complement());
    return static_cast<double>(rank_in + rank_out) - static_cast<double>(full_rank);
}

}  // namespace toricq
