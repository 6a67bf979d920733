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

#include "toricq/io.hpp"

#include <sstream>

#include "gtest/gtest.h"

#include "toricq/hamiltonian.hpp"
#include "toricq/propagate.hpp"

using namespace toricq;

TEST(io, format_double_round_trips) {
    for (double v : {0.1, 1.0 / 3, -2.5e-17, 12345.678901234567}) {
        ASSERT_EQ(std::stod(format_double(v)), v);
    }
}

TEST(io, amplitude_dump_round_trip_full) {
    HamiltonianSpec s;
    s.geometry = build_lattice(2, 2);
    s.h = 0.3;
    auto psi = evolve(ground_state(s.geometry), Hamiltonian(s), 0.7);
    std::stringstream buf;
    write_amplitudes(buf, psi);
    auto back = read_amplitudes(buf);
    ASSERT_TRUE(back.is_full());
    ASSERT_EQ(back.n_spins(), 8);
    for (std::size_t k = 0; k < psi.dim(); k++) ASSERT_EQ(back[k], psi[k]);
}

TEST(io, amplitude_dump_round_trip_sector) {
    auto g = build_lattice(2, 3);
    auto sector = build_sector(g);
    auto psi = ground_state(g, {1, 1}, sector);
    std::stringstream buf;
    write_amplitudes(buf, psi);
    std::string bytes = buf.str();
    std::istringstream in(bytes);
    auto back = read_amplitudes(in, sector);
    ASSERT_TRUE(back.same_basis(psi));
    ASSERT_NEAR(fidelity(back, psi), 1, 1e-15);
    std::istringstream again(bytes);
    ASSERT_THROW(read_amplitudes(again), std::invalid_argument);
    std::istringstream junk("not a dump at all");
    ASSERT_THROW(read_amplitudes(junk), std::runtime_error);
    std::istringstream truncated(bytes.substr(0, bytes.size() - 5));
    ASSERT_THROW(read_amplitudes(truncated, sector), std::runtime_error);
}

TEST(io, state_json_round_trip) {
    auto g = build_lattice(2, 2);
    auto psi = ground_state(g, {0, 1});
    auto back = state_from_json(json::parse(to_json(psi).dump()));
    for (std::size_t k = 0; k < psi.dim(); k++) ASSERT_EQ(back[k], psi[k]);
}

TEST(io, partition_json) {
    auto g = build_lattice(3, 3);
    auto p = build_partition(g, "levinwen-small");
    ASSERT_EQ(partition_from_json(g, to_json(p)), p);
    auto j = to_json(p);
    j["regions"][0].push_back(j["regions"][0][0]);
    ASSERT_THROW(partition_from_json(g, j), std::invalid_argument);
    auto k = to_json(p);
    k["regions"].erase(3);
    ASSERT_THROW(partition_from_json(g, k), std::invalid_argument);
}

TEST(io, spectrum_and_entropy_csv) {
    Eigen::VectorXd v(2);
    v << -8, -4;
    std::ostringstream a;
    write_spectrum_csv(a, v);
    ASSERT_EQ(a.str(), "index,eigenvalue\n0,-8\n1,-4\n");
    std::ostringstream b;
    write_entropy_csv(b, entropy_rows({EntropyReport{2, {2, 1, 2, 1}, 1}}));
    ASSERT_EQ(b.str(), "region_label,alpha,entropy_bits\nR1,2,2\nR2,2,1\nR3,2,2\nR4,2,1\nS_top,2,1\n");
}
