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
#include <array>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "toricq/spin_mask.hpp"

namespace toricq {

using SpinSet = std::vector<int>;

enum class StabilizerKind { star, plaquette };

/// Spins live on the bonds of an L1 x L2 periodic square lattice.
///
/// Site (x, y) has index y * L1 + x. Its horizontal bond to (x + 1, y) is spin
/// 2 * site and its vertical bond to (x, y + 1) is spin 2 * site + 1. The
/// plaquette with index y * L1 + x has site (x, y) as its lower-left corner.
struct LatticeGeometry {
    int L1 = 0;
    int L2 = 0;
    int n_spins = 0;
    std::vector<SpinSet> star_supports;
    std::vector<SpinSet> plaquette_supports;
    SpinSet horizontal_spins;
    SpinSet vertical_spins;
    /// X-loop supports: closed dual-lattice cycles winding along direction 1
    /// (crossing every vertical bond of row 0) and direction 2 (crossing every
    /// horizontal bond of column 0).
    SpinSet loop1_support;
    SpinSet loop2_support;
    /// Conjugate Z-loop supports: direct-lattice cycles along row 0
    /// (direction 1) and column 0 (direction 2).
    SpinSet zloop1_support;
    SpinSet zloop2_support;

    int num_sites() const {
        return L1 * L2;
    }
    int site(int x, int y) const {
        return wrap(y, L2) * L1 + wrap(x, L1);
    }
    int horizontal_spin(int x, int y) const {
        return 2 * site(x, y);
    }
    int vertical_spin(int x, int y) const {
        return 2 * site(x, y) + 1;
    }
    bool is_horizontal(int spin) const {
        return spin % 2 == 0;
    }
    std::pair<int, int> site_coords(int s) const {
        return {s % L1, s / L1};
    }

    SpinMask mask(const SpinSet &spins) const {
        return SpinMask::from_indices(static_cast<std::size_t>(n_spins), spins);
    }

    bool operator==(const LatticeGeometry &) const = default;

   private:
    static int wrap(int v, int n) {
        return ((v % n) + n) % n;
    }
};

inline LatticeGeometry build_lattice(int L1, int L2) {
    if (L1 < 2 || L2 < 2) {
        throw std::invalid_argument("build_lattice: both torus sizes must be at least 2, got " + std::to_string(L1) +
                                    "x" + std::to_string(L2));
    }
    if (2 * L1 * L2 > static_cast<int>(SpinMask::kMaxSpins)) {
        throw std::invalid_argument("build_lattice: lattice has more spins than SpinMask supports");
    }
    LatticeGeometry g;
    g.L1 = L1;
    g.L2 = L2;
    g.n_spins = 2 * L1 * L2;
    for (int y = 0; y < L2; y++) {
        for (int x = 0; x < L1; x++) {
            SpinSet star{g.horizontal_spin(x, y), g.horizontal_spin(x - 1, y), g.vertical_spin(x, y),
                         g.vertical_spin(x, y - 1)};
            SpinSet plaq{g.horizontal_spin(x, y), g.horizontal_spin(x, y + 1), g.vertical_spin(x, y),
                         g.vertical_spin(x + 1, y)};
            std::sort(star.begin(), star.end());
            std::sort(plaq.begin(), plaq.end());
            g.star_supports.push_back(std::move(star));
            g.plaquette_supports.push_back(std::move(plaq));
            g.horizontal_spins.push_back(g.horizontal_spin(x, y));
            g.vertical_spins.push_back(g.vertical_spin(x, y));
        }
    }
    for (int x = 0; x < L1; x++) {
        g.loop1_support.push_back(g.vertical_spin(x, 0));
        g.zloop1_support.push_back(g.horizontal_spin(x, 0));
    }
    for (int y = 0; y < L2; y++) {
        g.loop2_support.push_back(g.horizontal_spin(0, y));
        g.zloop2_support.push_back(g.vertical_spin(0, y));
    }
    for (auto *s : {&g.loop1_support, &g.loop2_support, &g.zloop1_support, &g.zloop2_support}) {
        std::sort(s->begin(), s->end());
    }
    return g;
}

inline const SpinSet &stabilizer_support(const LatticeGeometry &g, StabilizerKind kind, int index) {
    const auto &supports = kind == StabilizerKind::star ? g.star_supports : g.plaquette_supports;
    if (index < 0 || index >= static_cast<int>(supports.size())) {
        throw std::out_of_range("stabilizer_support: index " + std::to_string(index) + " out of range");
    }
    return supports[static_cast<std::size_t>(index)];
}

namespace detail {

/// Union-find that tracks the Z2 winding of every node relative to its root.
class WindingUnionFind {
   public:
    explicit WindingUnionFind(int n) : parent_(static_cast<std::size_t>(n)), winding_(static_cast<std::size_t>(n)) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    /// Adds an edge a -> b whose traversal winds by w. Returns true when the
    /// edge closes a cycle with nontrivial Z2 winding.
    bool add_edge(int a, int b, std::array<int, 2> w) {
        auto [ra, wa] = find(a);
        auto [rb, wb] = find(b);
        std::array<int, 2> through{(wa[0] + w[0] + wb[0]) & 1, (wa[1] + w[1] + wb[1]) & 1};
        if (ra == rb) {
            return through[0] || through[1];
        }
        parent_[static_cast<std::size_t>(rb)] = ra;
        winding_[static_cast<std::size_t>(rb)] = through;
        return false;
    }

   private:
    std::pair<int, std::array<int, 2>> find(int a) {
        std::array<int, 2> w{0, 0};
        while (parent_[static_cast<std::size_t>(a)] != a) {
            auto &wa = winding_[static_cast<std::size_t>(a)];
            w = {(w[0] + wa[0]) & 1, (w[1] + wa[1]) & 1};
            a = parent_[static_cast<std::size_t>(a)];
        }
        return {a, w};
    }

    std::vector<int> parent_;
    std::vector<std::array<int, 2>> winding_;
};

}  // namespace detail

/// True when the bonds in `region` contain a cycle winding around the torus,
/// either on the direct lattice (a Z-type logical fits inside) or on the dual
/// lattice (an X-type logical fits inside).
inline bool winds_around_torus(const LatticeGeometry &g, const SpinSet &region) {
    detail::WindingUnionFind direct(g.num_sites());
    detail::WindingUnionFind dual(g.num_sites());
    for (int spin : region) {
        if (spin < 0 || spin >= g.n_spins) {
            throw std::out_of_range("winds_around_torus: spin index out of range");
        }
        auto [x, y] = g.site_coords(spin / 2);
        if (g.is_horizontal(spin)) {
            if (direct.add_edge(g.site(x, y), g.site(x + 1, y), {x == g.L1 - 1, 0})) {
                return true;
            }
            // Separates plaquettes (x, y - 1) and (x, y).
            if (dual.add_edge(g.site(x, y - 1), g.site(x, y), {0, y == 0})) {
                return true;
            }
        } else {
            if (direct.add_edge(g.site(x, y), g.site(x, y + 1), {0, y == g.L2 - 1})) {
                return true;
            }
            // Separates plaquettes (x - 1, y) and (x, y).
            if (dual.add_edge(g.site(x - 1, y), g.site(x, y), {x == 0, 0})) {
                return true;
            }
        }
    }
    return false;
}

/// Four regions for the combination 2 S_top = S1 + S3 - S2 - S4.
///
/// The shipped presets take R2 to be a ring of spins, R1 and R3 the ring with
/// one side removed, and R4 the ring with both of those sides removed.
struct RegionPartition {
    std::string label;
    std::array<SpinSet, 4> regions;
    /// Declared topology: no region winds around the torus. Small tori cannot
    /// fit a partition with this property, so their presets declare false.
    bool contractible = true;

    bool operator==(const RegionPartition &) const = default;
};

inline std::vector<std::string> partition_presets() {
    return {"levinwen-small"};
}

namespace detail {

inline RegionPartition ring_partition(std::string label, SpinSet ring, const SpinSet &cut1, const SpinSet &cut2,
                                      bool contractible) {
    auto minus = [](SpinSet a, const SpinSet &b) {
        a.erase(std::remove_if(a.begin(), a.end(),
                               [&](int s) {
                                   return std::find(b.begin(), b.end(), s) != b.end();
                               }),
                a.end());
        return a;
    };
    std::sort(ring.begin(), ring.end());
    RegionPartition p;
    p.label = std::move(label);
    p.contractible = contractible;
    p.regions[0] = minus(ring, cut1);
    p.regions[1] = ring;
    p.regions[2] = minus(ring, cut2);
    p.regions[3] = minus(minus(ring, cut1), cut2);
    return p;
}

}  // namespace detail

inline RegionPartition build_partition(const LatticeGeometry &g, const std::string &preset) {
    if (preset != "levinwen-small") {
        throw std::invalid_argument("build_partition: unknown preset '" + preset + "'");
    }
    if (g.L1 >= 3 && g.L2 >= 3) {
        // Ring around the 2x2 block of sites with lower-left corner (0, 0);
        // the cuts are its left and right sides.
        SpinSet right{g.horizontal_spin(1, 0), g.horizontal_spin(1, 1)};
        SpinSet left{g.horizontal_spin(-1, 0), g.horizontal_spin(-1, 1)};
        SpinSet top{g.vertical_spin(0, 1), g.vertical_spin(1, 1)};
        SpinSet bottom{g.vertical_spin(0, -1), g.vertical_spin(1, -1)};
        SpinSet ring;
        for (const auto *side : {&right, &left, &top, &bottom}) {
            ring.insert(ring.end(), side->begin(), side->end());
        }
        return detail::ring_partition(preset, ring, left, right, true);
    }
    if (g.L1 == 2 && g.L2 == 2) {
        // The star of site (0, 0), cut on its two horizontal bonds.
        return detail::ring_partition(preset, {0, 1, 2, 5}, {0}, {2}, false);
    }
    if (g.L1 == 2 && g.L2 == 3) {
        // Plaquette (0, 0) plus the two vertical bonds above it, cut on the
        // plaquette's vertical sides.
        return detail::ring_partition(preset, {0, 1, 3, 4, 5, 7}, {1}, {3}, false);
    }
    throw std::invalid_argument("build_partition: preset '" + preset + "' is not defined for a " +
                                std::to_string(g.L1) + "x" + std::to_string(g.L2) + " lattice");
}

/// Checks indices, nonemptiness, and that the declared topology is honest.
inline void validate_partition(const LatticeGeometry &g, const RegionPartition &p) {
    for (const auto &r : p.regions) {
        if (r.empty()) {
            throw std::invalid_argument("partition '" + p.label + "': empty region");
        }
        for (int s : r) {
            if (s < 0 || s >= g.n_spins) {
                throw std::invalid_argument("partition '" + p.label + "': spin index out of range");
            }
        }
        if (static_cast<int>(r.size()) >= g.n_spins) {
            throw std::invalid_argument("partition '" + p.label + "': region covers the whole lattice");
        }
        if (p.contractible && winds_around_torus(g, r)) {
            throw std::invalid_argument("partition '" + p.label + "': declared contractible but a region winds");
        }
    }
}

}  // namespace toricq
