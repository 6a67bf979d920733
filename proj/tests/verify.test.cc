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

#include "toricq/verify.hpp"

#include <sstream>

#include "gtest/gtest.h"

using namespace toricq;

namespace {

const CheckResult *find(const VerifyReport &r, const std::string &name) {
    for (const auto &c : r.checks) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

}  // namespace

TEST(verify, default_config_passes) {
    auto r = verify(QuenchConfig{});
    ASSERT_TRUE(r.passed());
    for (const auto &c : r.checks) {
        EXPECT_LT(c.value, 1e-10) << c.name;
    }
    ASSERT_EQ(find(r, "sector_vs_full_evolution"), nullptr);
}

TEST(verify, corrupted_partition_fails_the_topological_check) {
    QuenchConfig c;
    auto p = build_partition(build_lattice(2, 2), "levinwen-small");
    p.regions[1] = p.regions[0];
    c.custom_partition = p;
    auto r = verify(c);
    ASSERT_FALSE(r.passed());
    auto *top = find(r, "topological_entropy_one_bit");
    ASSERT_NE(top, nullptr);
    ASSERT_FALSE(top->passed);
    ASSERT_NEAR(top->value, 0.5, 1e-10);
    std::ostringstream out;
    print_verify_report(out, r);
    ASSERT_NE(out.str().find("FAIL topological_entropy_one_bit"), std::string::npos);
}

TEST(verify, sector_mode_runs_the_cross_check) {
    QuenchConfig c;
    c.L2 = 3;
    c.sector_restrict = true;
    auto r = verify(c);
    ASSERT_TRUE(r.passed());
    auto *cross = find(r, "sector_vs_full_evolution");
    ASSERT_NE(cross, nullptr);
    ASSERT_TRUE(cross->passed);
}
