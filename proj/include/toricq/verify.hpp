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
#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include "toricq/entanglement.hpp"
#include "toricq/hamiltonian.hpp"
#include "toricq/lanczos.hpp"
#include "toricq/lattice.hpp"
#include "toricq/propagate.hpp"
#include "toricq/quench.hpp"
#include "toricq/stabilizer.hpp"

namespace toricq {

struct CheckResult {
    std::string name;
    double value;      ///< worst residual observed
    double threshold;  ///< pass iff value < threshold
    bool passed;
};

struct VerifyReport {
    std::vector<CheckResult> checks;

    bool passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const CheckResult &c) {
            return c.passed;
        });
    }
};

inline void print_verify_report(std::ostream &out, const VerifyReport &r) {
    for (const auto &c : r.checks) {
        out << (c.passed ? "PASS " : "FAIL ") << c.name << "  residual=" << format_double(c.value)
            << "  threshold=" << format_double(c.threshold) << '\n';
    }
    out << (r.passed() ? "all checks passed" : "some checks FAILED") << '\n';
}

namespace detail {

inline double max_abs(const Eigen::MatrixXcd &m) {
    return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
}

/// Largest relative spread among the eigenvalues above the rank cutoff.
inline double flatness(const std::vector<double> &spectrum) {
    std::size_t rank = spectrum_rank(spectrum);
    double top = spectrum.front();
    double bottom = spectrum[rank - 1];
    return (top - bottom) / top;
}

}  // namespace detail

/// Runs the ground-state, entanglement, and propagation checks on the
/// configured lattice and partition.
inline VerifyReport verify(const QuenchConfig &config) {
    config.validate();
    VerifyReport report;
    auto add = [&](std::string name, double value, double threshold) {
        report.checks.push_back({std::move(name), value, threshold, value < threshold});
    };
    auto g = build_lattice(config.L1, config.L2);
    auto partition = resolve_partition(config, g);
    auto states = ground_states(g);
    const double e0 = -static_cast<double>(g.num_sites()) * 2.0;

    // Stabilizer eigenvalues and the zero-field energy.
    {
        std::vector<PauliOperator> stabilizers = star_operators(g);
        for (auto &b : plaquette_operators(g)) {
            stabilizers.push_back(std::move(b));
        }
        HamiltonianSpec tc;
        tc.geometry = g;
        Hamiltonian h_tc(tc);
        double worst = 0;
        double energy = 0;
        for (const auto &psi : states) {
            for (const auto &s : stabilizers) {
                auto gpsi = apply_pauli(s, psi);
                for (std::size_t k = 0; k < psi.dim(); k++) {
                    worst = std::max(worst, std::abs(gpsi[k] - psi[k]));
                }
            }
            energy = std::max(energy, std::abs(h_tc.energy(psi) - e0));
        }
        add("stabilizer_eigenvalues", worst, 1e-12);
        add("ground_energy", energy, 1e-10);
    }
    {
        double worst = 0;
        for (std::size_t a = 0; a < states.size(); a++) {
            for (std::size_t b = 0; b < states.size(); b++) {
                worst = std::max(worst, std::abs(inner_product(states[a], states[b]) - (a == b ? 1.0 : 0.0)));
            }
        }
        add("sector_orthonormality", worst, 1e-12);
    }
    {
        double worst = 0;
        for (const auto &psi : states) {
            for (int j = 0; j < g.n_spins; j++) {
                for (char p : {'X', 'Y', 'Z'}) {
                    auto op = PauliOperator::single(static_cast<std::size_t>(g.n_spins), static_cast<std::size_t>(j), p);
                    worst = std::max(worst, std::abs(expectation(psi, op)));
                }
            }
        }
        add("elitzur_single_spin", worst, 1e-10);
    }

    // Local indistinguishability on every region that does not wind.
    {
        std::vector<SpinSet> regions;
        for (int j = 0; j < g.n_spins; j++) {
            regions.push_back({j});
        }
        for (const auto &s : g.star_supports) {
            regions.push_back(s);
        }
        for (const auto &r : partition.regions) {
            regions.push_back(r);
        }
        double worst = 0;
        for (const auto &r : regions) {
            if (winds_around_torus(g, r)) {
                continue;
            }
            auto ref = reduce(states[0], r);
            for (std::size_t s = 1; s < states.size(); s++) {
                worst = std::max(worst, detail::max_abs(reduce(states[s], r).entries - ref.entries));
            }
        }
        add("local_indistinguishability", worst, 1e-10);
    }

    // Flat spectra, alpha independence, and the GF(2) entropy oracle.
    {
        double flat = 0, alpha_spread = 0, oracle = 0;
        for (const auto &r : partition.regions) {
            auto spectrum = entanglement_spectrum(reduce(states[0], r));
            flat = std::max(flat, detail::flatness(spectrum));
            double s1 = renyi(spectrum, 1), s2 = renyi(spectrum, 2), s3 = renyi(spectrum, 3);
            alpha_spread = std::max({alpha_spread, std::abs(s1 - s2), std::abs(s2 - s3), std::abs(s1 - s3)});
            oracle = std::max(oracle, std::abs(s1 - analytic_region_entropy(g, r)));
        }
        add("flat_spectrum", flat, 1e-10);
        add("renyi_alpha_independence", alpha_spread, 1e-10);
        add("analytic_vs_spectral_entropy", oracle, 1e-10);
    }
    {
        double worst = 0;
        for (double alpha : {1.0, 2.0}) {
            worst = std::max(worst, std::abs(topological_entropy(states[0], partition, alpha).S_top - 1.0));
        }
        add("topological_entropy_one_bit", worst, 1e-8);
    }

    // Spectrum of the zero-field model in the plaquette sector.
    auto sector = build_sector(g);
    {
        HamiltonianSpec tc;
        tc.geometry = g;
        Hamiltonian h_tc(tc, sector);
        if (h_tc.dim() <= kFullSpectrumCap) {
            auto spec = full_spectrum(h_tc);
            add("spectrum_ground_energy", std::abs(spec.values(0) - e0), 1e-10);
            add("ground_degeneracy", std::abs(spec.values(3) - spec.values(0)), 1e-10);
            add("gap_4J", std::abs(spec.values(4) - spec.values(0) - 4.0), 1e-8);
        }
        LanczosOptions opt;
        opt.k = 1;
        opt.tol = config.tolerances.lanczos;
        auto low = lanczos_extremal(h_tc, opt);
        add("lanczos_ground_energy", std::abs(low[0].value - e0), 1e-10);
    }

    // Krylov against exact propagation.
    {
        QuenchConfig probe = config;
        if (probe.h == 0) {
            probe.h = 0.1;
        }
        probe.field_mode = config.sector_restrict ? FieldMode::uniform_z : config.field_mode;
        bool use_sector = config.sector_restrict || (std::size_t{1} << g.n_spins) > kAutoSpectralDim;
        if (use_sector && probe.field_mode != FieldMode::uniform_z) {
            probe.field_mode = FieldMode::uniform_z;
        }
        SectorPtr basis = use_sector ? sector : nullptr;
        Hamiltonian h(quench_hamiltonian(probe, g), basis);
        auto psi0 = basis ? ground_state(g, {}, basis) : ground_state(g);
        SpectralPropagator exact(full_spectrum(h), psi0);
        Trajectory krylov(h, psi0, PropagatorKind::krylov, {config.tolerances.krylov});
        double deficit = 0, drift = 0;
        double e_start = h.energy(psi0);
        for (int k = 1; k <= 10; k++) {
            auto a = krylov.at(k);
            deficit = std::max(deficit, std::abs(1.0 - fidelity(a, exact.at(k))));
            drift = std::max(drift, std::abs(h.energy(a) - e_start));
        }
        add("krylov_vs_exact_fidelity_deficit", deficit, 1e-8);
        add("krylov_energy_drift", drift, 1e-8);
    }

    // Sector evolution against full-space evolution.
    if (config.sector_restrict) {
        QuenchConfig probe = config;
        if (probe.h == 0) {
            probe.h = 0.1;
        }
        auto spec = quench_hamiltonian(probe, g);
        Hamiltonian h_full(spec);
        Hamiltonian h_sector(spec, sector);
        KrylovOptions opt{config.tolerances.krylov};
        auto full = evolve(ground_state(g), h_full, 1.0, opt);
        auto restricted = evolve(ground_state(g, {}, sector), h_sector, 1.0, opt);
        double lost = 0;
        auto projected = full.restrict_to(sector, &lost);
        double worst = std::sqrt(std::max(lost, 0.0));
        for (std::size_t k = 0; k < projected.dim(); k++) {
            worst = std::max(worst, std::abs(projected[k] - restricted[k]));
        }
        add("sector_vs_full_evolution", worst, 1e-9);
    }
    return report;
}

}  // namespace toricq
