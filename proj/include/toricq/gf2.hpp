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
#include <vector>

#include "toricq/spin_mask.hpp"

namespace toricq {

/// Row-echelon basis of a subspace of GF(2)^N, kept reduced by pivot.
class Gf2Basis {
   public:
    Gf2Basis() = default;
    explicit Gf2Basis(std::size_t num_bits) : num_bits_(num_bits) {
    }

    template <typename Range>
    static Gf2Basis span_of(std::size_t num_bits, const Range &vectors) {
        Gf2Basis b(num_bits);
        for (const auto &v : vectors) {
            b.insert(v);
        }
        return b;
    }

    /// Reduces v against the basis; returns the remainder.
    SpinMask reduce(SpinMask v) const {
        for (const auto &row : rows_) {
            if (v.test(static_cast<std::size_t>(row.highest()))) {
                v ^= row;
            }
        }
        return v;
    }

    /// Returns true when v was independent of the current span.
    bool insert(const SpinMask &v) {
        SpinMask r = reduce(v);
        if (r.none()) {
            return false;
        }
        // Keep rows sorted by descending pivot so reduce() is a single pass.
        auto pos = std::find_if(rows_.begin(), rows_.end(), [&](const SpinMask &row) {
            return row.highest() < r.highest();
        });
        rows_.insert(pos, r);
        return true;
    }

    bool contains(const SpinMask &v) const {
        return reduce(v).none();
    }

    std::size_t rank() const {
        return rows_.size();
    }

    std::size_t num_bits() const {
        return num_bits_;
    }

    const std::vector<SpinMask> &rows() const {
        return rows_;
    }

   private:
    std::size_t num_bits_ = 0;
    std::vector<SpinMask> rows_;
};

template <typename Range>
std::size_t gf2_rank(const Range &vectors) {
    Gf2Basis b;
    bool sized = false;
    for (const auto &v : vectors) {
        if (!sized) {
            b = Gf2Basis(v.num_spins());
            sized = true;
        }
        b.insert(v);
    }
    return b.rank();
}

}  // namespace toricq
