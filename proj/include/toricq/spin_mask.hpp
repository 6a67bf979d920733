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

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace toricq {

/// Fixed-width set of spin indices, up to 256 spins. Basis-state code only
/// reads the first word.
class SpinMask {
   public:
    static constexpr std::size_t kWords = 4;
    static constexpr std::size_t kMaxSpins = 64 * kWords;

    constexpr SpinMask() = default;

    explicit SpinMask(std::size_t num_spins) : num_spins_(num_spins) {
        if (num_spins > kMaxSpins) {
            throw std::invalid_argument("SpinMask supports at most " + std::to_string(kMaxSpins) + " spins");
        }
    }

    SpinMask(std::size_t num_spins, std::initializer_list<std::size_t> spins) : SpinMask(num_spins) {
        for (auto s : spins) {
            set(s);
        }
    }

    template <typename Range>
    static SpinMask from_indices(std::size_t num_spins, const Range &spins) {
        SpinMask m(num_spins);
        for (auto s : spins) {
            m.set(static_cast<std::size_t>(s));
        }
        return m;
    }

    static SpinMask from_word(std::size_t num_spins, std::uint64_t word) {
        SpinMask m(num_spins);
        m.words_[0] = word;
        if (num_spins < 64) {
            m.words_[0] &= (std::uint64_t{1} << num_spins) - 1;
        }
        return m;
    }

    static SpinMask all(std::size_t num_spins) {
        SpinMask m(num_spins);
        for (std::size_t k = 0; k < num_spins; k++) {
            m.set(k);
        }
        return m;
    }

    std::size_t num_spins() const {
        return num_spins_;
    }

    bool test(std::size_t k) const {
        check(k);
        return (words_[k >> 6] >> (k & 63)) & 1;
    }

    void set(std::size_t k, bool value = true) {
        check(k);
        std::uint64_t bit = std::uint64_t{1} << (k & 63);
        if (value) {
            words_[k >> 6] |= bit;
        } else {
            words_[k >> 6] &= ~bit;
        }
    }

    void flip(std::size_t k) {
        check(k);
        words_[k >> 6] ^= std::uint64_t{1} << (k & 63);
    }

    std::size_t count() const {
        std::size_t total = 0;
        for (auto w : words_) {
            total += static_cast<std::size_t>(std::popcount(w));
        }
        return total;
    }

    bool none() const {
        for (auto w : words_) {
            if (w) {
                return false;
            }
        }
        return true;
    }

    bool any() const {
        return !none();
    }

    /// Lowest set index, or num_spins() when empty.
    std::size_t first() const {
        for (std::size_t w = 0; w < kWords; w++) {
            if (words_[w]) {
                return 64 * w + static_cast<std::size_t>(std::countr_zero(words_[w]));
            }
        }
        return num_spins_;
    }

    /// Low 64 spins as a machine word. Only meaningful as a basis index mask
    /// when num_spins() <= 64.
    std::uint64_t word() const {
        return words_[0];
    }

    std::vector<int> indices() const {
        std::vector<int> out;
        for (std::size_t w = 0; w < kWords; w++) {
            std::uint64_t bits = words_[w];
            while (bits) {
                out.push_back(static_cast<int>(64 * w + static_cast<std::size_t>(std::countr_zero(bits))));
                bits &= bits - 1;
            }
        }
        return out;
    }

    SpinMask complement() const {
        SpinMask out = SpinMask::all(num_spins_);
        for (std::size_t w = 0; w < kWords; w++) {
            out.words_[w] &= ~words_[w];
        }
        return out;
    }

    SpinMask &operator^=(const SpinMask &other) {
        same_size(other);
        for (std::size_t w = 0; w < kWords; w++) {
            words_[w] ^= other.words_[w];
        }
        return *this;
    }
    SpinMask &operator&=(const SpinMask &other) {
        same_size(other);
        for (std::size_t w = 0; w < kWords; w++) {
            words_[w] &= other.words_[w];
        }
        return *this;
    }
    SpinMask &operator|=(const SpinMask &other) {
        same_size(other);
        for (std::size_t w = 0; w < kWords; w++) {
            words_[w] |= other.words_[w];
        }
        return *this;
    }

    friend SpinMask operator^(SpinMask a, const SpinMask &b) {
        return a ^= b;
    }
    friend SpinMask operator&(SpinMask a, const SpinMask &b) {
        return a &= b;
    }
    friend SpinMask operator|(SpinMask a, const SpinMask &b) {
        return a |= b;
    }

    bool operator==(const SpinMask &other) const = default;

    /// Lexicographic order on the words, most significant first.
    bool operator<(const SpinMask &other) const {
        for (std::size_t w = kWords; w-- > 0;) {
            if (words_[w] != other.words_[w]) {
                return words_[w] < other.words_[w];
            }
        }
        return false;
    }

    /// Index of the highest set bit, or -1 when empty.
    int highest() const {
        for (std::size_t w = kWords; w-- > 0;) {
            if (words_[w]) {
                return static_cast<int>(64 * w + 63 - static_cast<std::size_t>(std::countl_zero(words_[w])));
            }
        }
        return -1;
    }

   private:
    void check(std::size_t k) const {
        if (k >= num_spins_) {
            throw std::out_of_range("spin index " + std::to_string(k) + " out of range for " +
                                    std::to_string(num_spins_) + " spins");
        }
    }
    void same_size(const SpinMask &other) const {
        if (other.num_spins_ != num_spins_) {
            throw std::invalid_argument("SpinMask size mismatch");
        }
    }

    std::size_t num_spins_ = 0;
    std::array<std::uint64_t, kWords> words_{};
};

/// Parity of |a & b|.
inline bool overlap_parity(const SpinMask &a, const SpinMask &b) {
    return (a & b).count() & 1;
}

}  // namespace toricq
