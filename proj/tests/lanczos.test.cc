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

#include "toricq/lanczos.hpp"

#include "gtest/gtest.h"

#include "toricq/hamiltonian.hpp"
#include "toricq/stabilizer.hpp"

using namespace toricq;

namespace {

Hamiltonian toric(int L1, int L2, double field, SectorPtr sector = nullptr) {
    HamiltonianSpec s;
    s.geometry = build_lattice(L1, L2);
    s.h = field;
    return Hamiltonian(s, std::move(sector));
}

}  // namespace

TEST(lanczos, zero_field_spectrum_2x2) {
    auto h = toric(2, 2, 0);
    auto spec = full_spectrum(h);
    ASSERT_EQ(spec.values.size(), 256);
    for (int k = 0; k < 4; k++) ASSERT_NEAR(spec.values(k), -8, 1e-10);
    ASSERT_NEAR(spec.values(4) - spec.values(0), 4, 1e-8);
}

TEST(lanczos, resolves_the_degenerate_ground_manifold) {
    auto h = toric(2, 2, 0);
    LanczosOptions opt;
    opt.k = 5;
    auto pairs = lanczos_extremal(h, opt);
    ASSERT_EQ(pairs.size(), 5);
    for (int k = 0; k < 4; k++) ASSERT_NEAR(pairs[static_cast<std::size_t>(k)].value, -8, 1e-9);
    ASSERT_NEAR(pairs[4].value, -4, 1e-9);
    for (std::size_t a = 0; a < pairs.size(); a++) {
        ASSERT_LT(pairs[a].residual, 1e-9);
        for (std::size_t b = 0; b < a; b++) {
            ASSERT_LT(std::abs(vec::dot(pairs[a].vector, pairs[b].vector)), 1e-9);
        }
    }
}

TEST(lanczos, agrees_with_full_spectrum_in_a_field) {
    auto g = build_lattice(3, 3);
    auto h = toric(3, 3, 0.35, build_sector(g));
    auto spec = full_spectrum(h);
    LanczosOptions opt;
    opt.k = 3;
    auto pairs = lanczos_extremal(h, opt);
    for (std::size_t k = 0; k < 3; k++) {
        ASSERT_NEAR(pairs[k].value, spec.values(static_cast<Eigen::Index>(k)), 1e-9);
    }
}

TEST(lanczos, seeded_runs_repeat_exactly) {
    auto h = toric(2, 3, 0.2);
    auto a = lanczos_extremal(h);
    auto b = lanczos_extremal(h);
    ASSERT_EQ(a[0].value, b[0].value);
    ASSERT_EQ(a[0].vector, b[0].vector);
}

TEST(lanczos, reports_non_convergence) {
    auto h = toric(2, 3, 0.2);
    LanczosOptions opt;
    opt.max_basis = 4;
    opt.max_restarts = 1;
    opt.tol = 1e-14;
    ASSERT_THROW(lanczos_extremal(h, opt), ConvergenceError);
}

TEST(lanczos, rejects_bad_requests) {
    auto h = toric(2, 2, 0.1);
    LanczosOptions opt;
    opt.k = 0;
    ASSERT_THROW(lanczos_extremal(h, opt), std::invalid_argument);
    ASSERT_THROW(full_spectrum(h, 16), std::invalid_argument);
}
