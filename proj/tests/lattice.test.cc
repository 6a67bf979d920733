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

#include "toricq/lattice.hpp"

#include <random>

#include "gtest/gtest.h"

#include "oracles.test.h"

using namespace toricq;

namespace {

const std::vector<std::pair<int, int>> kSizes{{2, 2}, {2, 3}, {3, 2}, {3, 3}, {4, 3}};

int overlap(const SpinSet &a, const SpinSet &b) {
    int c = 0;
    for (int s : a) {
        c += static_cast<int>(std::count(b.begin(), b.end(), s));
    }
    return c;
}

}  // namespace

TEST(lattice, counts) {
    for (auto [L1, L2] : kSizes) {
        auto g = build_lattice(L1, L2);
        ASSERT_EQ(g.n_spins, 2 * L1 * L2);
        ASSERT_EQ(g.star_supports.size(), static_cast<std::size_t>(L1 * L2));
        ASSERT_EQ(g.plaquette_supports.size(), static_cast<std::size_t>(L1 * L2));
        ASSERT_EQ(g.horizontal_spins.size() + g.vertical_spins.size(), static_cast<std::size_t>(g.n_spins));
    }
    ASSERT_THROW(build_lattice(1, 3), std::invalid_argument);
    ASSERT_THROW(build_lattice(3, 0), std::invalid_argument);
}

TEST(lattice, every_spin_in_two_stars_and_two_plaquettes) {
    for (auto [L1, L2] : kSizes) {
        auto g = build_lattice(L1, L2);
        std::vector<int> stars(static_cast<std::size_t>(g.n_spins)), plaqs(static_cast<std::size_t>(g.n_spins));
        for (const auto &s : g.star_supports) {
            ASSERT_EQ(s.size(), 4);
            for (int k : s) stars[static_cast<std::size_t>(k)]++;
        }
        for (const auto &p : g.plaquette_supports) {
            ASSERT_EQ(p.size(), 4);
            for (int k : p) plaqs[static_cast<std::size_t>(k)]++;
        }
        for (int k = 0; k < g.n_spins; k++) {
            ASSERT_EQ(stars[static_cast<std::size_t>(k)], 2);
            ASSERT_EQ(plaqs[static_cast<std::size_t>(k)], 2);
        }
    }
}

TEST(lattice, stars_and_plaquettes_overlap_evenly) {
    for (auto [L1, L2] : kSizes) {
        auto g = build_lattice(L1, L2);
        for (const auto &s : g.star_supports) {
            for (const auto &p : g.plaquette_supports) {
                ASSERT_EQ(overlap(s, p) % 2, 0);
            }
        }
    }
}

TEST(lattice, loop_supports) {
    for (auto [L1, L2] : kSizes) {
        auto g = build_lattice(L1, L2);
        ASSERT_EQ(g.loop1_support.size(), static_cast<std::size_t>(L1));
        ASSERT_EQ(g.loop2_support.size(), static_cast<std::size_t>(L2));
        for (const auto &p : g.plaquette_supports) {
            ASSERT_EQ(overlap(g.loop1_support, p) % 2, 0);
            ASSERT_EQ(overlap(g.loop2_support, p) % 2, 0);
        }
        for (const auto &s : g.star_supports) {
            ASSERT_EQ(overlap(g.zloop1_support, s) % 2, 0);
            ASSERT_EQ(overlap(g.zloop2_support, s) % 2, 0);
        }
        ASSERT_EQ(overlap(g.loop1_support, g.zloop2_support) % 2, 1);
        ASSERT_EQ(overlap(g.loop2_support, g.zloop1_support) % 2, 1);
        ASSERT_EQ(overlap(g.loop1_support, g.zloop1_support) % 2, 0);
        ASSERT_EQ(overlap(g.loop2_support, g.zloop2_support) % 2, 0);
        ASSERT_TRUE(winds_around_torus(g, g.loop1_support));
        ASSERT_TRUE(winds_around_torus(g, g.zloop2_support));
    }
}

TEST(lattice, stabilizer_support_bounds) {
    auto g = build_lattice(3, 3);
    ASSERT_EQ(stabilizer_support(g, StabilizerKind::star, 4), g.star_supports[4]);
    ASSERT_THROW(stabilizer_support(g, StabilizerKind::plaquette, 9), std::out_of_range);
}

TEST(lattice, winding_matches_cycle_enumeration) {
    std::mt19937_64 rng(11);
    for (auto [L1, L2] : kSizes) {
        auto g = build_lattice(L1, L2);
        for (int trial = 0; trial < 300; trial++) {
            std::uniform_int_distribution<int> size(1, std::min(g.n_spins - 1, 10));
            SpinSet all(static_cast<std::size_t>(g.n_spins));
            std::iota(all.begin(), all.end(), 0);
            std::shuffle(all.begin(), all.end(), rng);
            SpinSet region(all.begin(), all.begin() + size(rng));
            ASSERT_EQ(winds_around_torus(g, region), oracle::winds_by_enumeration(g, region))
                << L1 << "x" << L2 << " trial " << trial;
        }
    }
}

TEST(lattice, star_and_plaquette_are_contractible) {
    auto g = build_lattice(3, 3);
    for (const auto &s : g.star_supports) ASSERT_FALSE(winds_around_torus(g, s));
    for (const auto &p : g.plaquette_supports) ASSERT_FALSE(winds_around_torus(g, p));
}

TEST(lattice, presets_are_valid) {
    for (auto [L1, L2] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 3}, {4, 3}}) {
        auto g = build_lattice(L1, L2);
        auto p = build_partition(g, "levinwen-small");
        ASSERT_NO_THROW(validate_partition(g, p));
        for (const auto &r : p.regions) {
            ASSERT_LE(r.size(), 8);
            ASSERT_TRUE(std::is_sorted(r.begin(), r.end()));
        }
        ASSERT_EQ(p.contractible, L1 >= 3 && L2 >= 3);
    }
    ASSERT_THROW(build_partition(build_lattice(3, 2), "levinwen-small"), std::invalid_argument);
    ASSERT_THROW(build_partition(build_lattice(3, 3), "nope"), std::invalid_argument);
}

TEST(lattice, small_tori_have_no_contractible_one_bit_preset) {
    // The preset regions on the small tori wind, which is why they declare it.
    for (auto [L1, L2] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}}) {
        auto g = build_lattice(L1, L2);
        auto p = build_partition(g, "levinwen-small");
        bool any = false;
        for (const auto &r : p.regions) any = any || winds_around_torus(g, r);
        ASSERT_TRUE(any);
    }
}

TEST(lattice, dishonest_contractible_flag_rejected) {
    auto g = build_lattice(2, 2);
    auto p = build_partition(g, "levinwen-small");
    p.contractible = true;
    ASSERT_THROW(validate_partition(g, p), std::invalid_argument);
    auto q = build_partition(g, "levinwen-small");
    q.regions[0].push_back(99);
    ASSERT_THROW(validate_partition(g, q), std::invalid_argument);
}
