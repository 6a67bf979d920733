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

#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "toricq/lattice.hpp"
#include "toricq/pauli.hpp"
#include "toricq/stabilizer.hpp"
#include "toricq/state.hpp"

namespace toricq {

enum class FieldMode {
    uniform_z,  ///< -h sigma^z on every spin
    split_hv,   ///< -h sigma^z on horizontal spins, -kappa h sigma^x on vertical spins
};

inline std::string to_string(FieldMode m) {
    return m == FieldMode::uniform_z ? "uniform_z" : "split_HV";
}

inline FieldMode field_mode_from_string(const std::string &s) {
    if (s == "uniform_z") {
        return FieldMode::uniform_z;
    }
    if (s == "split_HV" || s == "split_hv") {
        return FieldMode::split_hv;
    }
    throw std::invalid_argument("unknown field mode '" + s + "'");
}

struct Term {
    double coefficient;
    PauliOperator op;
};

/// H = -U sum_p B_p - J sum_s A_s + field terms.
struct HamiltonianSpec {
    LatticeGeometry geometry;
    double U = 1.0;
    double J = 1.0;
    double h = 0.0;
    double kappa = 0.0;
    FieldMode field_mode = FieldMode::uniform_z;

    /// Deterministic term list: plaquettes, stars, then field terms by spin.
    std::vector<Term> terms() const {
        for (double v : {U, J, h, kappa}) {
            if (!std::isfinite(v)) {
                throw std::invalid_argument("HamiltonianSpec: couplings must be finite");
            }
        }
        auto n = static_cast<std::size_t>(geometry.n_spins);
        std::vector<Term> out;
        for (auto &b : plaquette_operators(geometry)) {
            out.push_back({-U, std::move(b)});
        }
        for (auto &a : star_operators(geometry)) {
            out.push_back({-J, std::move(a)});
        }
        if (h != 0.0) {
            for (int s = 0; s < geometry.n_spins; s++) {
                auto spin = static_cast<std::size_t>(s);
                if (field_mode == FieldMode::uniform_z || geometry.is_horizontal(s)) {
                    out.push_back({-h, PauliOperator::single(n, spin, 'Z')});
                } else if (kappa != 0.0) {
                    out.push_back({-kappa * h, PauliOperator::single(n, spin, 'X')});
                }
            }
        }
        return out;
    }
};

/// Plaquette constraint sector B_p = +1 for every plaquette.
inline SectorPtr build_sector(const LatticeGeometry &g) {
    return std::make_shared<const SectorBasis>(g.n_spins, plaquette_operators(g));
}

/// Matrix-free Hermitian operator built from Pauli terms.
///
/// Diagonal terms are folded into a stored diagonal; off-diagonal terms are
/// grouped by x mask. Each output amplitude is accumulated in a fixed order
/// from the amplitudes it depends on, so results do not depend on how rows
/// are split across threads.
class Hamiltonian {
   public:
    Hamiltonian(int n_spins, const std::vector<Term> &terms, SectorPtr sector = nullptr)
        : n_spins_(n_spins), sector_(std::move(sector)) {
        if (n_spins < 1 || n_spins > kMaxStateSpins) {
            throw std::invalid_argument("Hamiltonian: unsupported number of spins");
        }
        if (sector_ && sector_->n_spins() != n_spins) {
            throw std::invalid_argument("Hamiltonian: sector built for a different number of spins");
        }
        dim_ = sector_ ? sector_->dimension() : std::size_t{1} << n_spins;
        std::vector<DiagonalPart> diagonal_terms;
        std::map<std::uint64_t, std::vector<DiagonalPart>> hopping;
        for (const auto &t : terms) {
            if (static_cast<int>(t.op.num_spins()) != n_spins) {
                throw std::invalid_argument("Hamiltonian: term acts on the wrong number of spins");
            }
            if (!t.op.is_hermitian()) {
                throw std::invalid_argument("Hamiltonian: term " + t.op.str() + " is not Hermitian");
            }
            if (sector_) {
                for (const auto &c : sector_->constraints()) {
                    if (!commutes(c, t.op)) {
                        throw std::invalid_argument("Hamiltonian: term " + t.op.str() +
                                                    " does not preserve the sector constraints");
                    }
                }
            }
            DiagonalPart part{t.op.z_mask().word(), t.coefficient * i_pow(t.op.phase_exp())};
            if (t.op.is_diagonal()) {
                diagonal_terms.push_back(part);
            } else {
                hopping[t.op.x_mask().word()].push_back(part);
            }
        }
        diag_.resize(dim_);
        for (std::size_t k = 0; k < dim_; k++) {
            std::uint64_t b = basis_index(k);
            double d = 0;
            for (const auto &p : diagonal_terms) {
                double sign = (std::popcount(p.z & b) & 1) ? -1.0 : 1.0;
                d += sign * p.coefficient.real();
            }
            diag_[k] = d;
        }
        for (auto &[x, parts] : hopping) {
            hops_.push_back({x, std::move(parts)});
        }
        terms_ = terms;
    }

    Hamiltonian(const HamiltonianSpec &spec, SectorPtr sector = nullptr)
        : Hamiltonian(spec.geometry.n_spins, spec.terms(), std::move(sector)) {
    }

    std::size_t dim() const {
        return dim_;
    }
    int n_spins() const {
        return n_spins_;
    }
    const SectorPtr &sector() const {
        return sector_;
    }
    const std::vector<Term> &terms() const {
        return terms_;
    }

    /// out = H in.
    void apply(std::span<const cplx> in, std::span<cplx> out) const {
        if (in.size() != dim_ || out.size() != dim_) {
            throw std::invalid_argument("Hamiltonian::apply: vector dimension mismatch");
        }
        const auto n = static_cast<std::int64_t>(dim_);
#pragma omp parallel for schedule(static)
        for (std::int64_t kk = 0; kk < n; kk++) {
            auto k = static_cast<std::size_t>(kk);
            std::uint64_t b = basis_index(k);
            cplx acc = diag_[k] * in[k];
            for (const auto &hop : hops_) {
                std::uint64_t src = b ^ hop.x;
                std::size_t pos = position(src);
                if (pos == SectorBasis::npos) {
                    continue;
                }
                // Term c i^p X^x Z^z maps |src> to c i^p (-1)^{z.src} |b>.
                cplx coef = 0;
                for (const auto &p : hop.parts) {
                    coef += (std::popcount(p.z & src) & 1) ? -p.coefficient : p.coefficient;
                }
                acc += coef * in[pos];
            }
            out[k] = acc;
        }
    }

    StateVector apply(const StateVector &v) const {
        check_state(v);
        auto out = StateVector::zeros(n_spins_, sector_);
        apply(v.amplitudes(), out.amplitudes());
        return out;
    }

    /// Real part of <v|H|v>.
    double energy(const StateVector &v) const {
        auto hv = apply(v);
        return inner_product(v, hv).real();
    }

    void check_state(const StateVector &v) const {
        if (v.n_spins() != n_spins_ || v.dim() != dim_ ||
            (sector_ ? !(v.sector() && *v.sector() == *sector_) : !v.is_full())) {
            throw std::invalid_argument("Hamiltonian: state lives in a different basis");
        }
    }

   private:
    struct DiagonalPart {
        std::uint64_t z;
        cplx coefficient;
    };
    struct Hop {
        std::uint64_t x;
        std::vector<DiagonalPart> parts;
    };

    std::uint64_t basis_index(std::size_t k) const {
        return sector_ ? sector_->kept_indices()[k] : k;
    }
    std::size_t position(std::uint64_t b) const {
        return sector_ ? sector_->position(b) : static_cast<std::size_t>(b);
    }

    int n_spins_;
    SectorPtr sector_;
    std::size_t dim_;
    std::vector<double> diag_;
    std::vector<Hop> hops_;
    std::vector<Term> terms_;
};

}  // namespace toricq
