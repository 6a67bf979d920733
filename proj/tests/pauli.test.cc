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

#include "toricq/pauli.hpp"

#include "gtest/gtest.h"

#include "oracles.test.h"

using namespace toricq;

TEST(pauli, single_qubit_products) {
    auto X = PauliOperator::single(1, 0, 'X');
    auto Y = PauliOperator::single(1, 0, 'Y');
    auto Z = PauliOperator::single(1, 0, 'Z');
    ASSERT_EQ(X * Y, PauliOperator::parse(1, "i Z0"));
    ASSERT_EQ(Y * X, PauliOperator::parse(1, "-i Z0"));
    ASSERT_EQ(Y * Z, PauliOperator::parse(1, "i X0"));
    ASSERT_EQ(Z * X, PauliOperator::parse(1, "i Y0"));
    ASSERT_EQ(X * X, PauliOperator::identity(1));
    ASSERT_EQ(Y * Y, PauliOperator::identity(1));
}

TEST(pauli, str_and_parse) {
    auto p = PauliOperator::parse(6, "-i X0 Y2 Z5");
    ASSERT_EQ(p.str(), "-i X0 Y2 Z5");
    ASSERT_EQ(PauliOperator::identity(3).str(), "I");
    ASSERT_EQ(PauliOperator::parse(3, "I"), PauliOperator::identity(3));
    ASSERT_THROW(PauliOperator::parse(3, "X7"), std::out_of_range);
    ASSERT_THROW(PauliOperator::parse(3, "Q1"), std::invalid_argument);
}

TEST(pauli, hermiticity) {
    ASSERT_TRUE(PauliOperator::parse(3, "X0 Y1 Z2").is_hermitian());
    ASSERT_FALSE(PauliOperator::parse(3, "i X0").is_hermitian());
    ASSERT_TRUE(PauliOperator::parse(3, "-Z1").is_hermitian());
}

TEST(pauli, commutation_matches_dense_matrices) {
    const std::vector<std::string> ops{"X0 X1", "Z0 Z1", "Y0", "X0 Z2", "Y1 Y2", "Z1", "X2", "I"};
    for (const auto &a_text : ops) {
        for (const auto &b_text : ops) {
            auto a = PauliOperator::parse(3, a_text);
            auto b = PauliOperator::parse(3, b_text);
            Eigen::MatrixXcd A = oracle::dense_pauli(a), B = oracle::dense_pauli(b);
            bool dense = (A * B - B * A).norm() < 1e-12;
            EXPECT_EQ(commutes(a, b), dense) << a_text << " / " << b_text;
        }
    }
}

TEST(pauli, product_matches_dense_matrices) {
    const std::vector<std::string> ops{"X0 Y1", "-Z0 Z2", "i Y0 Y1 Y2", "X1 Z1", "Z2"};
    for (const auto &a_text : ops) {
        for (const auto &b_text : ops) {
            auto a = PauliOperator::parse(3, a_text);
            auto b = PauliOperator::parse(3, b_text);
            Eigen::MatrixXcd expected = oracle::dense_pauli(a) * oracle::dense_pauli(b);
            EXPECT_LT((oracle::dense_pauli(a * b) - expected).norm(), 1e-12) << a_text << " * " << b_text;
        }
    }
}

TEST(pauli, apply_to_basis_matches_dense_columns) {
    for (auto text : {"X0 Y1 Z3", "-i Z0 Z1", "Y2 Y3", "X3"}) {
        auto op = PauliOperator::parse(4, text);
        Eigen::MatrixXcd m = oracle::dense_pauli(op);
        for (std::uint64_t b = 0; b < 16; b++) {
            auto img = apply_to_basis(op, b);
            for (std::uint64_t r = 0; r < 16; r++) {
                cplx expected = m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(b));
                cplx got = r == img.index ? img.amplitude() : cplx{0};
                EXPECT_LT(std::abs(expected - got), 1e-14) << text << " column " << b;
            }
        }
    }
}
