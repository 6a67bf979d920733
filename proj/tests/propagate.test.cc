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

#include "toricq/propagate.hpp"

#include "gtest/gtest.h"

#include "oracles.test.h"

using namespace toricq;

namespace {

struct Setup {
    HamiltonianSpec spec;
    Hamiltonian h;
    StateVector psi0;
};

Setup make(int L1, int L2, double field, bool sector = false) {
    HamiltonianSpec s;
    s.geometry = build_lattice(L1, L2);
    s.h = field;
    SectorPtr basis = sector ? build_sector(s.geometry) : nullptr;
    auto psi0 = basis ? ground_state(s.geometry, {}, basis) : ground_state(s.geometry);
    return {s, Hamiltonian(s, basis), psi0};
}

/// exp(-i H t) psi by many short Taylor steps on the dense matrix.
Eigen::VectorXcd taylor_evolve(const Eigen::MatrixXcd &h, Eigen::VectorXcd psi, double t) {
    const int steps = 400;
    const double dt = t / steps;
    for (int s = 0; s < steps; s++) {
        Eigen::VectorXcd term = psi, sum = psi;
        for (int k = 1; k < 25; k++) {
            term = (h * term) * cplx(0, -dt / k);
            sum += term;
        }
        psi = sum;
    }
    return psi;
}

}  // namespace

TEST(propagate, krylov_matches_taylor_oracle) {
    auto s = make(2, 2, 0.3);
    Eigen::MatrixXcd dense = oracle::dense_hamiltonian(8, s.spec.terms());
    Eigen::Map<const Eigen::VectorXcd> v0(s.psi0.amplitudes().data(), 256);
    auto expected = taylor_evolve(dense, v0, 2.5);
    auto got = evolve(s.psi0, s.h, 2.5);
    Eigen::Map<const Eigen::VectorXcd> g(got.amplitudes().data(), 256);
    ASSERT_LT((g - expected).norm(), 1e-9);
}

TEST(propagate, krylov_matches_spectral) {
    for (auto [L2, sector] : {std::pair{2, false}, std::pair{3, true}}) {
        auto s = make(2, L2, 0.25, sector);
        SpectralPropagator exact(full_spectrum(s.h), s.psi0);
        StateVector psi = s.psi0;
        for (int k = 1; k <= 10; k++) {
            psi = evolve(psi, s.h, 1.0);
            auto ref = exact.at(k);
            double worst = 0;
            for (std::size_t j = 0; j < psi.dim(); j++) worst = std::max(worst, std::abs(psi[j] - ref[j]));
            ASSERT_LT(worst, 1e-8) << "t=" << k << " sector=" << sector;
        }
    }
}

TEST(propagate, unitary_and_energy_conserving) {
    auto s = make(2, 3, 0.5);
    double e0 = s.h.energy(s.psi0);
    PropagationStats stats;
    auto psi = evolve(s.psi0, s.h, 7.3, {}, &stats);
    ASSERT_NEAR(psi.norm(), 1, 1e-10);
    ASSERT_NEAR(s.h.energy(psi), e0, 1e-8);
    ASSERT_GT(stats.substeps, 0);
    ASSERT_LE(stats.max_local_error, 1e-10);
}

TEST(propagate, backwards_undoes_forwards) {
    auto s = make(2, 2, 0.4);
    auto there = evolve(s.psi0, s.h, 3.0);
    auto back = evolve(there, s.h, -3.0);
    for (std::size_t j = 0; j < back.dim(); j++) ASSERT_LT(std::abs(back[j] - s.psi0[j]), 1e-9);
}

TEST(propagate, eigenstate_only_picks_up_a_phase) {
    auto s = make(2, 2, 0);
    auto psi = evolve(s.psi0, s.h, 5.0);
    cplx phase = std::exp(cplx(0, 8.0 * 5.0));
    for (std::size_t j = 0; j < psi.dim(); j++) ASSERT_LT(std::abs(psi[j] - phase * s.psi0[j]), 1e-10);
    ASSERT_NEAR(fidelity(psi, s.psi0), 1, 1e-12);
}

TEST(propagate, zero_time_is_identity) {
    auto s = make(2, 2, 0.4);
    auto psi = evolve(s.psi0, s.h, 0.0);
    ASSERT_EQ(std::vector<cplx>(psi.amplitudes().begin(), psi.amplitudes().end()),
              std::vector<cplx>(s.psi0.amplitudes().begin(), s.psi0.amplitudes().end()));
}

TEST(propagate, rejects_bad_input) {
    auto s = make(2, 2, 0.4);
    ASSERT_THROW(evolve(s.psi0, s.h, std::nan("")), std::invalid_argument);
    KrylovOptions opt;
    opt.max_subspace = 1;
    ASSERT_THROW(evolve(s.psi0, s.h, 1.0, opt), std::invalid_argument);
}
