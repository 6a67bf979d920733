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

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "toricq/lattice.hpp"
#include "toricq/state.hpp"

namespace toricq {

/// Default largest region handled by dense reduced density matrices.
inline constexpr int kDenseRegionCap = 14;

/// Eigenvalues below this fraction of the largest one count as zero.
inline constexpr double kSpectrumCutoff = 1e-12;

struct DensityMatrix {
    SpinSet region;
    Eigen::MatrixXcd entries;

    std::size_t dim() const {
        return static_cast<std::size_t>(entries.rows());
    }
    double trace() const {
        return entries.trace().real();
    }
    /// tr(rho^2) straight from the entries.
    double purity() const {
        return entries.cwiseAbs2().sum();
    }
};

/// Partial trace over every spin outside `region`. Bit k of a row index is
/// the spin region[k].
///
/// Amplitudes are grouped by their configuration outside the region (sorted,
/// so the accumulation order is fixed); each group contributes the outer
/// product of its amplitudes. Cost is the sum of squared group sizes, which
/// for sparse or sector states is far below the dense 2^(N + |region|).
inline DensityMatrix reduce(const StateVector &state, const SpinSet &region, int cap = kDenseRegionCap) {
    const int n = state.n_spins();
    if (region.empty() || static_cast<int>(region.size()) >= n) {
        throw std::invalid_argument("reduce: region must be a nonempty proper subset of the spins");
    }
    if (static_cast<int>(region.size()) > cap) {
        throw std::invalid_argument("reduce: region of " + std::to_string(region.size()) +
                                    " spins exceeds the dense cap of " + std::to_string(cap));
    }
    std::uint64_t region_mask = 0;
    for (int s : region) {
        if (s < 0 || s >= n) {
            throw std::invalid_argument("reduce: spin index out of range");
        }
        if (region_mask >> s & 1) {
            throw std::invalid_argument("reduce: duplicate spin in region");
        }
        region_mask |= std::uint64_t{1} << s;
    }
    struct Entry {
        std::uint64_t outer;
        std::uint32_t inner;
        cplx amp;
    };
    std::vector<Entry> entries;
    entries.reserve(state.dim());
    for (std::size_t k = 0; k < state.dim(); k++) {
        if (state[k] == cplx{0}) {
            continue;
        }
        std::uint64_t b = state.basis_index(k);
        std::uint32_t inner = 0;
        for (std::size_t j = 0; j < region.size(); j++) {
            inner |= static_cast<std::uint32_t>((b >> region[j]) & 1) << j;
        }
        entries.push_back({b & ~region_mask, inner, state[k]});
    }
    std::stable_sort(entries.begin(), entries.end(), [](const Entry &a, const Entry &b) {
        return a.outer < b.outer;
    });
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << region.size());
    DensityMatrix rho{region, Eigen::MatrixXcd::Zero(dim, dim)};
    for (std::size_t lo = 0; lo < entries.size();) {
        std::size_t hi = lo;
        while (hi < entries.size() && entries[hi].outer == entries[lo].outer) {
            hi++;
        }
        for (std::size_t a = lo; a < hi; a++) {
            for (std::size_t b = lo; b < hi; b++) {
                rho.entries(entries[a].inner, entries[b].inner) += entries[a].amp * std::conj(entries[b].amp);
            }
        }
        lo = hi;
    }
    return rho;
}

/// Eigenvalues of rho, descending.
inline std::vector<double> entanglement_spectrum(const DensityMatrix &rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho.entries, Eigen::EigenvaluesOnly);
    const auto &ev = solver.eigenvalues();
    std::vector<double> out(ev.data(), ev.data() + ev.size());
    std::reverse(out.begin(), out.end());
    return out;
}

/// Number of eigenvalues above the relative cutoff.
inline std::size_t spectrum_rank(const std::vector<double> &spectrum, double cutoff = kSpectrumCutoff) {
    if (spectrum.empty()) {
        return 0;
    }
    double top = *std::max_element(spectrum.begin(), spectrum.end());
    return static_cast<std::size_t>(std::count_if(spectrum.begin(), spectrum.end(), [&](double x) {
        return x > cutoff * top;
    }));
}

/// Renyi-alpha entropy in bits; alpha = 1 is the von Neumann entropy.
/// Eigenvalues below the rank cutoff are treated as exact zeros.
inline double renyi(const std::vector<double> &spectrum, double alpha) {
    if (!(alpha > 0) || !std::isfinite(alpha)) {
        throw std::invalid_argument("renyi: alpha must be positive and finite");
    }
    if (spectrum.empty()) {
        throw std::invalid_argument("renyi: empty spectrum");
    }
    double top = *std::max_element(spectrum.begin(), spectrum.end());
    double floor = kSpectrumCutoff * top;
    if (alpha == 1.0) {
        double s = 0;
        for (double x : spectrum) {
            if (x > floor) {
                s -= x * std::log2(x);
            }
        }
        return s;
    }
    double moment = 0;
    for (double x : spectrum) {
        if (x > floor) {
            moment += std::pow(x, alpha);
        }
    }
    return std::log2(moment) / (1.0 - alpha);
}

/// Renyi entropy straight from rho; alpha = 2 uses tr(rho^2) and skips the
/// eigendecomposition.
inline double renyi(const DensityMatrix &rho, double alpha) {
    if (alpha == 2.0) {
        return -std::log2(rho.purity());
    }
    return renyi(entanglement_spectrum(rho), alpha);
}

struct EntropyReport {
    double alpha = 1;
    std::array<double, 4> S{};
    double S_top = 0;

    bool operator==(const EntropyReport &) const = default;
};

/// One EntropyReport per alpha, sharing the four reduced matrices.
inline std::vector<EntropyReport> topological_entropies(const StateVector &state, const RegionPartition &partition,
                                                        const std::vector<double> &alphas,
                                                        int cap = kDenseRegionCap) {
    std::vector<EntropyReport> out(alphas.size());
    for (std::size_t a = 0; a < alphas.size(); a++) {
        out[a].alpha = alphas[a];
    }
    for (std::size_t r = 0; r < 4; r++) {
        auto rho = reduce(state, partition.regions[r], cap);
        std::vector<double> spectrum;
        for (std::size_t a = 0; a < alphas.size(); a++) {
            if (alphas[a] == 2.0) {
                out[a].S[r] = renyi(rho, 2.0);
                continue;
            }
            if (spectrum.empty()) {
                spectrum = entanglement_spectrum(rho);
            }
            out[a].S[r] = renyi(spectrum, alphas[a]);
        }
    }
    for (auto &rep : out) {
        rep.S_top = 0.5 * (rep.S[0] + rep.S[2] - rep.S[1] - rep.S[3]);
    }
    return out;
}

inline EntropyReport topological_entropy(const StateVector &state, const RegionPartition &partition, double alpha,
                                         int cap = kDenseRegionCap) {
    return topological_entropies(state, partition, {alpha}, cap).front();
}

/// |<a|b>|^2.
inline double fidelity(const StateVector &a, const StateVector &b) {
    return std::norm(inner_product(a, b));
}

}  // namespace toricq
