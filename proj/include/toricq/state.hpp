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
#include <complex>
#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "toricq/lattice.hpp"
#include "toricq/pauli.hpp"

namespace toricq {

/// Largest lattice for which full 2^N state vectors are built.
inline constexpr int kMaxStateSpins = 30;

/// Computational-basis states on which every constraint operator (diagonal
/// Pauli strings) has eigenvalue +1.
class SectorBasis {
   public:
    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

    SectorBasis(int n_spins, std::vector<PauliOperator> constraints)
        : n_spins_(n_spins), constraints_(std::move(constraints)) {
        if (n_spins < 1 || n_spins > kMaxStateSpins) {
            throw std::invalid_argument("SectorBasis: unsupported number of spins " + std::to_string(n_spins));
        }
        std::vector<std::uint64_t> masks;
        for (const auto &c : constraints_) {
            if (!c.is_diagonal() || c.phase_exp() != 0 || static_cast<int>(c.num_spins()) != n_spins) {
                throw std::invalid_argument("SectorBasis: constraints must be unsigned Z strings on all spins");
            }
            masks.push_back(c.z_mask().word());
        }
        std::uint64_t full = std::uint64_t{1} << n_spins;
        for (std::uint64_t b = 0; b < full; b++) {
            bool keep = true;
            for (auto m : masks) {
                if (std::popcount(b & m) & 1) {
                    keep = false;
                    break;
                }
            }
            if (keep) {
                kept_.push_back(b);
            }
        }
    }

    int n_spins() const {
        return n_spins_;
    }
    std::size_t dimension() const {
        return kept_.size();
    }
    const std::vector<std::uint64_t> &kept_indices() const {
        return kept_;
    }
    const std::vector<PauliOperator> &constraints() const {
        return constraints_;
    }

    /// Position of a full basis index inside the sector, or npos.
    std::size_t position(std::uint64_t index) const {
        auto it = std::lower_bound(kept_.begin(), kept_.end(), index);
        if (it == kept_.end() || *it != index) {
            return npos;
        }
        return static_cast<std::size_t>(it - kept_.begin());
    }

    bool operator==(const SectorBasis &other) const {
        return n_spins_ == other.n_spins_ && kept_ == other.kept_;
    }

   private:
    int n_spins_;
    std::vector<PauliOperator> constraints_;
    std::vector<std::uint64_t> kept_;
};

using SectorPtr = std::shared_ptr<const SectorBasis>;

/// Dense amplitudes over the full 2^N basis or over a SectorBasis.
class StateVector {
   public:
    StateVector() = default;

    StateVector(int n_spins, std::vector<cplx> amplitudes, SectorPtr sector = nullptr)
        : n_spins_(n_spins), amps_(std::move(amplitudes)), sector_(std::move(sector)) {
        if (n_spins < 1 || n_spins > kMaxStateSpins) {
            throw std::invalid_argument("StateVector: unsupported number of spins " + std::to_string(n_spins));
        }
        std::size_t expected = sector_ ? sector_->dimension() : (std::size_t{1} << n_spins);
        if (sector_ && sector_->n_spins() != n_spins) {
            throw std::invalid_argument("StateVector: sector built for a different number of spins");
        }
        if (amps_.size() != expected) {
            throw std::invalid_argument("StateVector: expected " + std::to_string(expected) + " amplitudes, got " +
                                        std::to_string(amps_.size()));
        }
    }

    static StateVector zeros(int n_spins, SectorPtr sector = nullptr) {
        std::size_t dim = sector ? sector->dimension() : (std::size_t{1} << n_spins);
        return StateVector(n_spins, std::vector<cplx>(dim), std::move(sector));
    }

    int n_spins() const {
        return n_spins_;
    }
    std::size_t dim() const {
        return amps_.size();
    }
    const SectorPtr &sector() const {
        return sector_;
    }
    bool is_full() const {
        return !sector_;
    }

    std::span<const cplx> amplitudes() const {
        return amps_;
    }
    std::span<cplx> amplitudes() {
        return amps_;
    }
    cplx operator[](std::size_t k) const {
        return amps_[k];
    }
    cplx &operator[](std::size_t k) {
        return amps_[k];
    }

    /// Full computational-basis index of stored position k.
    std::uint64_t basis_index(std::size_t k) const {
        return sector_ ? sector_->kept_indices()[k] : k;
    }

    /// Stored position of a full basis index, or SectorBasis::npos.
    std::size_t position(std::uint64_t index) const {
        if (sector_) {
            return sector_->position(index);
        }
        return index < amps_.size() ? static_cast<std::size_t>(index) : SectorBasis::npos;
    }

    double norm() const {
        double s = 0;
        for (auto a : amps_) {
            s += std::norm(a);
        }
        return std::sqrt(s);
    }

    void normalize() {
        double n = norm();
        if (n == 0) {
            throw std::domain_error("StateVector: cannot normalize the zero vector");
        }
        for (auto &a : amps_) {
            a /= n;
        }
    }

    bool same_basis(const StateVector &other) const {
        if (n_spins_ != other.n_spins_) {
            return false;
        }
        if (sector_ == other.sector_) {
            return true;
        }
        return sector_ && other.sector_ && *sector_ == *other.sector_;
    }

    /// Embeds into the full basis.
    StateVector to_full() const {
        if (!sector_) {
            return *this;
        }
        std::vector<cplx> out(std::size_t{1} << n_spins_);
        for (std::size_t k = 0; k < amps_.size(); k++) {
            out[sector_->kept_indices()[k]] = amps_[k];
        }
        return StateVector(n_spins_, std::move(out));
    }

    /// Projects a full-basis state onto the sector. Returns the discarded
    /// weight through `lost_norm_sq` when given.
    StateVector restrict_to(SectorPtr sector, double *lost_norm_sq = nullptr) const {
        if (!is_full()) {
            return to_full().restrict_to(std::move(sector), lost_norm_sq);
        }
        std::vector<cplx> out(sector->dimension());
        double kept = 0;
        for (std::size_t k = 0; k < out.size(); k++) {
            out[k] = amps_[sector->kept_indices()[k]];
            kept += std::norm(out[k]);
        }
        if (lost_norm_sq) {
            double total = norm();
            *lost_norm_sq = total * total - kept;
        }
        return StateVector(n_spins_, std::move(out), std::move(sector));
    }

   private:
    int n_spins_ = 0;
    std::vector<cplx> amps_;
    SectorPtr sector_;
};

inline cplx inner_product(const StateVector &a, const StateVector &b) {
    if (!a.same_basis(b)) {
        throw std::invalid_argument("inner_product: states use different bases");
    }
    cplx s = 0;
    for (std::size_t k = 0; k < a.dim(); k++) {
        s += std::conj(a[k]) * b[k];
    }
    return s;
}

/// op |state>, computed exactly through apply_to_basis. Images that fall
/// outside a sector are dropped.
inline StateVector apply_pauli(const PauliOperator &op, const StateVector &state) {
    if (static_cast<int>(op.num_spins()) != state.n_spins()) {
        throw std::invalid_argument("apply_pauli: operator and state sizes differ");
    }
    StateVector out = StateVector::zeros(state.n_spins(), state.sector());
    for (std::size_t k = 0; k < state.dim(); k++) {
        if (state[k] == cplx{0}) {
            continue;
        }
        auto img = apply_to_basis(op, state.basis_index(k));
        auto pos = state.position(img.index);
        if (pos != SectorBasis::npos) {
            out[pos] += img.amplitude() * state[k];
        }
    }
    return out;
}

}  // namespace toricq
