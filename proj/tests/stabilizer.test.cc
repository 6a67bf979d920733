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

#include "toricq/stabilizer.hpp"

#include "gtest/gtest.h"

#include "oracles.test.h"

using namespace toricq;

namespace {

std::vector<SpinMask> star_masks(const LatticeGeometry &g) {
    std::vector<SpinMask> out;
    for (const auto &s : g.star_supports) out.push_back(g.mask(s));
    return out;
}

}  // namespace

TEST(stabilizer, group_rank_matches_span_enumeration) {
    for (auto [L1, L2, rank] : std::vector<std::tuple<int, int, std::size_t>>{{2, 2, 3}, {2, 3, 5}, {3, 3, 8}}) {
        auto g = build_lattice(L1, L2);
        auto info = enumerate_group(star_operators(g));
        ASSERT_EQ(info.gf2_rank, rank);
        ASSERT_EQ(info.group_order(), oracle::span_size(star_masks(g)));
        auto elements = group_elements(info);
        ASSERT_EQ(elements.size(), info.group_order());
        ASSERT_TRUE(std::adjacent_find(elements.begin(), elements.end()) == elements.end());
    }
}

TEST(stabilizer, enumerate_group_rejects_bad_generators) {
    auto g = build_lattice(2, 2);
    auto gens = star_operators(g);
    gens.push_back(PauliOperator::single(8, 0, 'Z'));
    ASSERT_THROW(enumerate_group(gens), std::invalid_argument);
}

TEST(stabilizer, ground_state_amplitudes_2x2) {
    auto g = build_lattice(2, 2);
    auto psi = ground_state(g);
    int nonzero = 0;
    for (auto a : psi.amplitudes()) {
        if (a != cplx{0}) {
            nonzero++;
            ASSERT_NEAR(a.real(), 1 / std::sqrt(8.0), 1e-15);
            ASSERT_EQ(a.imag(), 0);
        }
    }
    ASSERT_EQ(nonzero, 8);
    ASSERT_NEAR(psi.norm(), 1, 1e-14);
}

TEST(stabilizer, ground_states_are_stabilized) {
    for (auto [L1, L2] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 3}}) {
        auto g = build_lattice(L1, L2);
        auto states = ground_states(g);
        ASSERT_EQ(states.size(), 4);
        std::vector<PauliOperator> stabs = star_operators(g);
        for (auto &p : plaquette_operators(g)) stabs.push_back(p);
        for (const auto &psi : states) {
            for (const auto &s : stabs) {
                ASSERT_LT(std::abs(expectation(psi, s) - 1.0), 1e-12);
            }
        }
        for (std::size_t a = 0; a < 4; a++) {
            for (std::size_t b = 0; b < 4; b++) {
                ASSERT_LT(std::abs(inner_product(states[a], states[b]) - (a == b ? 1.0 : 0.0)), 1e-12);
            }
        }
    }
}

TEST(stabilizer, sectors_are_labelled_by_z_loops) {
    auto g = build_lattice(2, 3);
    auto z1 = z_loop_operator(g, 1), z2 = z_loop_operator(g, 2);
    for (int w2 = 0; w2 < 2; w2++) {
        for (int w1 = 0; w1 < 2; w1++) {
            auto psi = ground_state(g, {w1, w2});
            ASSERT_NEAR(expectation(psi, z2).real(), w1 ? -1 : 1, 1e-12);
            ASSERT_NEAR(expectation(psi, z1).real(), w2 ? -1 : 1, 1e-12);
        }
    }
    ASSERT_THROW(loop_operator(g, 3), std::invalid_argument);
    ASSERT_THROW(ground_state(g, {2, 0}), std::invalid_argument);
}

TEST(stabilizer, analytic_entropy_of_simple_regions) {
    auto g = build_lattice(3, 3);
    ASSERT_EQ(analytic_region_entropy(g, {0}), 1);
    ASSERT_EQ(analytic_region_entropy(g, g.star_supports[4]), 3);
    ASSERT_EQ(analytic_region_entropy(g, g.plaquette_supports[4]), 3);
    ASSERT_THROW(analytic_region_entropy(g, {}), std::invalid_argument);
}
