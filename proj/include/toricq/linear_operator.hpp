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
#include <complex>
#include <concepts>
#include <cstdint>
#include <span>
#include <vector>

#include "toricq/pauli.hpp"

namespace toricq {

/// Anything that applies a Hermitian matrix to a vector.
template <typename Op>
concept LinearOperator = requires(const Op &op, std::span<const cplx> in, std::span<cplx> out) {
    { op.dim() } -> std::convertible_to<std::size_t>;
    op.apply(in, out);
};

namespace vec {

inline cplx dot(std::span<const cplx> a, std::span<const cplx> b) {
    cplx s = 0;
    for (std::size_t k = 0; k < a.size(); k++) {
        s += std::conj(a[k]) * b[k];
    }
    return s;
}

inline double norm(std::span<const cplx> a) {
    double s = 0;
    for (auto x : a) {
        s += std::norm(x);
    }
    return std::sqrt(s);
}

/// y += alpha x
inline void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
    for (std::size_t k = 0; k < x.size(); k++) {
        y[k] += alpha * x[k];
    }
}

inline void scale(cplx alpha, std::span<cplx> x) {
    for (auto &v : x) {
        v *= alpha;
    }
}

/// Removes the components of w along every (orthonormal) vector in `basis`.
/// Two passes of classical Gram-Schmidt.
inline void orthogonalize(std::span<cplx> w, const std::vector<std::vector<cplx>> &basis) {
    for (int pass = 0; pass < 2; pass++) {
        for (const auto &q : basis) {
            axpy(-dot(q, w), q, w);
        }
    }
}

/// Reproducible pseudo-random complex vector (splitmix64 stream).
inline std::vector<cplx> random_vector(std::size_t dim, std::uint64_t seed) {
    auto next = [state = seed]() mutable {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        z ^= z >> 31;
        return static_cast<double>(z >> 11) * 0x1.0p-53 - 0.5;
    };
    std::vector<cplx> v(dim);
    for (auto &x : v) {
        double re = next();
        double im = next();
        x = {re, im};
    }
    return v;
}

}  // namespace vec
}  // namespace toricq
