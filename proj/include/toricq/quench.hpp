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
#include <fstream>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "toricq/entanglement.hpp"
#include "toricq/hamiltonian.hpp"
#include "toricq/io.hpp"
#include "toricq/lanczos.hpp"
#include "toricq/lattice.hpp"
#include "toricq/propagate.hpp"
#include "toricq/stabilizer.hpp"
#include "toricq/version.hpp"

namespace toricq {

/// Raised for invalid user configuration (CLI exit code 2).
class ConfigError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

enum class PropagatorKind { automatic, krylov, spectral };

inline std::string to_string(PropagatorKind p) {
    switch (p) {
        case PropagatorKind::krylov:
            return "krylov";
        case PropagatorKind::spectral:
            return "spectral";
        default:
            return "auto";
    }
}

inline PropagatorKind propagator_from_string(const std::string &s) {
    if (s == "auto") {
        return PropagatorKind::automatic;
    }
    if (s == "krylov") {
        return PropagatorKind::krylov;
    }
    if (s == "spectral") {
        return PropagatorKind::spectral;
    }
    throw ConfigError("unknown propagator '" + s + "'");
}

/// "auto" uses exact spectral propagation up to this dimension.
inline constexpr std::size_t kAutoSpectralDim = 1024;

struct Tolerances {
    double lanczos = 1e-10;
    double krylov = 1e-10;

    bool operator==(const Tolerances &) const = default;
};

struct QuenchConfig {
    int L1 = 2;
    int L2 = 2;
    FieldMode field_mode = FieldMode::uniform_z;
    double h = 0.1;
    double kappa = 0.0;
    double t_max = 10.0;
    double dt = 0.1;
    std::vector<double> alpha_list{1.0, 2.0};
    std::string partition_preset = "levinwen-small";
    std::optional<RegionPartition> custom_partition;
    bool sector_restrict = false;
    Tolerances tolerances;
    PropagatorKind propagator = PropagatorKind::automatic;
    std::string output_path;
    /// Long-time averaging: window, and the eigenphase sample used when the
    /// full spectrum is affordable.
    double window_t0 = 50.0;
    double window_t1 = 100.0;
    int eigen_samples = 1000;
    double eigen_horizon_factor = 20.0;

    bool operator==(const QuenchConfig &) const = default;

    void validate() const {
        if (L1 < 2 || L2 < 2) {
            throw ConfigError("lattice sizes must be at least 2");
        }
        if (2 * L1 * L2 > kMaxGroundStateSpins) {
            throw ConfigError("lattice of " + std::to_string(2 * L1 * L2) + " spins is too large for exact states");
        }
        if (!(dt > 0) || !std::isfinite(dt)) {
            throw ConfigError("dt must be positive");
        }
        if (!(t_max >= 0) || !std::isfinite(t_max)) {
            throw ConfigError("t_max must be non-negative");
        }
        if (!std::isfinite(h) || !std::isfinite(kappa)) {
            throw ConfigError("field parameters must be finite");
        }
        if (sector_restrict && field_mode != FieldMode::uniform_z) {
            throw ConfigError("sector restriction requires the uniform_z field mode");
        }
        if (alpha_list.empty()) {
            throw ConfigError("alpha_list must not be empty");
        }
        for (double a : alpha_list) {
            if (!(a > 0) || !std::isfinite(a)) {
                throw ConfigError("every alpha must be positive");
            }
        }
        if (!(tolerances.lanczos > 0) || !(tolerances.krylov > 0)) {
            throw ConfigError("tolerances must be positive");
        }
        if (eigen_samples < 1 || !(eigen_horizon_factor > 0)) {
            throw ConfigError("eigenphase sampling parameters must be positive");
        }
    }

    std::size_t num_samples() const {
        return static_cast<std::size_t>(std::floor(t_max / dt + 1e-9)) + 1;
    }
};

inline json to_json(const QuenchConfig &c) {
    json j{{"L1", c.L1},
           {"L2", c.L2},
           {"field_mode", to_string(c.field_mode)},
           {"h", c.h},
           {"kappa", c.kappa},
           {"t_max", c.t_max},
           {"dt", c.dt},
           {"alpha_list", c.alpha_list},
           {"partition_preset", c.partition_preset},
           {"sector_restrict", c.sector_restrict},
           {"tolerances", {{"lanczos", c.tolerances.lanczos}, {"krylov", c.tolerances.krylov}}},
           {"propagator", to_string(c.propagator)},
           {"output_path", c.output_path},
           {"window", {c.window_t0, c.window_t1}},
           {"eigen_samples", c.eigen_samples},
           {"eigen_horizon_factor", c.eigen_horizon_factor}};
    if (c.custom_partition) {
        j["partition"] = to_json(*c.custom_partition);
    }
    return j;
}

/// Missing keys keep their defaults; unknown keys are rejected.
inline QuenchConfig config_from_json(const json &j) {
    static const std::vector<std::string> known{
        "L1",     "L2",         "field_mode",     "h",           "kappa",     "t_max",  "dt",
        "alpha_list", "partition_preset", "sector_restrict", "tolerances", "propagator", "output_path", "window",
        "eigen_samples", "eigen_horizon_factor", "partition"};
    if (!j.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    for (const auto &[key, _] : j.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
    QuenchConfig c;
    try {
        c.L1 = j.value("L1", c.L1);
        c.L2 = j.value("L2", c.L2);
        if (j.contains("field_mode")) {
            c.field_mode = field_mode_from_string(j["field_mode"].get<std::string>());
        }
        c.h = j.value("h", c.h);
        c.kappa = j.value("kappa", c.kappa);
        c.t_max = j.value("t_max", c.t_max);
        c.dt = j.value("dt", c.dt);
        c.alpha_list = j.value("alpha_list", c.alpha_list);
        c.partition_preset = j.value("partition_preset", c.partition_preset);
        c.sector_restrict = j.value("sector_restrict", c.sector_restrict);
        if (j.contains("tolerances")) {
            c.tolerances.lanczos = j["tolerances"].value("lanczos", c.tolerances.lanczos);
            c.tolerances.krylov = j["tolerances"].value("krylov", c.tolerances.krylov);
        }
        if (j.contains("propagator")) {
            c.propagator = propagator_from_string(j["propagator"].get<std::string>());
        }
        c.output_path = j.value("output_path", c.output_path);
        if (j.contains("window")) {
            auto w = j["window"].get<std::vector<double>>();
            if (w.size() != 2) {
                throw ConfigError("window must be [t0, t1]");
            }
            c.window_t0 = w[0];
            c.window_t1 = w[1];
        }
        c.eigen_samples = j.value("eigen_samples", c.eigen_samples);
        c.eigen_horizon_factor = j.value("eigen_horizon_factor", c.eigen_horizon_factor);
        if (j.contains("partition")) {
            c.custom_partition = partition_from_json(build_lattice(c.L1, c.L2), j["partition"]);
        }
    } catch (const json::exception &e) {
        throw ConfigError(std::string("config: ") + e.what());
    } catch (const ConfigError &) {
        throw;
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
    return c;
}

inline RegionPartition resolve_partition(const QuenchConfig &c, const LatticeGeometry &g) {
    try {
        RegionPartition p = c.custom_partition ? *c.custom_partition : build_partition(g, c.partition_preset);
        validate_partition(g, p);
        return p;
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
}

struct QuenchReport {
    std::vector<double> times;
    std::vector<double> fidelity;
    std::vector<double> energy;
    /// entropy[k][a] is the report at times[k] for alpha_list[a].
    std::vector<std::vector<EntropyReport>> entropy;
    QuenchConfig config;
    RegionPartition partition;
    std::string version = kVersion;
    std::uint64_t seed = kLanczosSeed;
    std::string propagator;

    bool operator==(const QuenchReport &) const = default;
};

/// The post-quench Hamiltonian of a config, with unit plaquette and star couplings.
inline HamiltonianSpec quench_hamiltonian(const QuenchConfig &c, const LatticeGeometry &g) {
    HamiltonianSpec spec;
    spec.geometry = g;
    spec.h = c.h;
    spec.kappa = c.kappa;
    spec.field_mode = c.field_mode;
    return spec;
}

/// Time evolution of a fixed initial state under a fixed Hamiltonian,
/// either exact (eigendecomposition) or by Krylov steps between samples.
class Trajectory {
   public:
    Trajectory(const Hamiltonian &h, StateVector initial, PropagatorKind kind, const KrylovOptions &opt)
        : h_(h), state_(std::move(initial)), opt_(opt) {
        if (kind == PropagatorKind::automatic) {
            kind = h.dim() <= kAutoSpectralDim ? PropagatorKind::spectral : PropagatorKind::krylov;
        }
        kind_ = kind;
        if (kind_ == PropagatorKind::spectral) {
            spectral_.emplace(full_spectrum(h), state_);
        }
    }

    PropagatorKind kind() const {
        return kind_;
    }

    /// State at time t. Krylov trajectories only move forward from the last
    /// requested time.
    StateVector at(double t) {
        if (spectral_) {
            return spectral_->at(t);
        }
        if (t < time_) {
            throw std::invalid_argument("Trajectory: Krylov propagation cannot go backwards");
        }
        evolve_in_place(state_.amplitudes(), h_, t - time_, opt_, &stats_);
        time_ = t;
        return state_;
    }

    const PropagationStats &stats() const {
        return stats_;
    }
    const SpectralPropagator *spectral() const {
        return spectral_ ? &*spectral_ : nullptr;
    }

   private:
    const Hamiltonian &h_;
    StateVector state_;
    KrylovOptions opt_;
    PropagatorKind kind_;
    std::optional<SpectralPropagator> spectral_;
    double time_ = 0;
    PropagationStats stats_;
};

/// Prepares the sector-(0,0) ground state of the unperturbed toric code and
/// follows it under the configured field, sampling every dt up to t_max.
inline QuenchReport run_quench(const QuenchConfig &config) {
    config.validate();
    auto g = build_lattice(config.L1, config.L2);
    QuenchReport report;
    report.config = config;
    report.partition = resolve_partition(config, g);
    SectorPtr sector = config.sector_restrict ? build_sector(g) : nullptr;
    StateVector psi0 = sector ? ground_state(g, {}, sector) : ground_state(g);
    Hamiltonian h(quench_hamiltonian(config, g), sector);
    Trajectory traj(h, psi0, config.propagator, {config.tolerances.krylov});
    report.propagator = to_string(traj.kind());
    const std::size_t n = config.num_samples();
    for (std::size_t k = 0; k < n; k++) {
        double t = static_cast<double>(k) * config.dt;
        StateVector psi = k == 0 ? psi0 : traj.at(t);
        report.times.push_back(t);
        report.fidelity.push_back(fidelity(psi0, psi));
        report.energy.push_back(h.energy(psi));
        report.entropy.push_back(topological_entropies(psi, report.partition, config.alpha_list));
    }
    return report;
}

inline std::vector<std::string> report_csv_header(const std::vector<double> &alphas) {
    std::vector<std::string> cols{"t", "fidelity", "energy"};
    for (double a : alphas) {
        auto suffix = "_a" + format_double(a);
        for (int r = 1; r <= 4; r++) {
            cols.push_back("S" + std::to_string(r) + suffix);
        }
        cols.push_back("S_top" + suffix);
    }
    return cols;
}

inline void write_report_csv(std::ostream &out, const QuenchReport &r) {
    auto cols = report_csv_header(r.config.alpha_list);
    for (std::size_t c = 0; c < cols.size(); c++) {
        out << (c ? "," : "") << cols[c];
    }
    out << '\n';
    for (std::size_t k = 0; k < r.times.size(); k++) {
        out << format_double(r.times[k]) << ',' << format_double(r.fidelity[k]) << ','
            << format_double(r.energy[k]);
        for (const auto &rep : r.entropy[k]) {
            for (double s : rep.S) {
                out << ',' << format_double(s);
            }
            out << ',' << format_double(rep.S_top);
        }
        out << '\n';
    }
}

inline json to_json(const QuenchReport &r) {
    json entropy = json::array();
    for (const auto &row : r.entropy) {
        json per_alpha = json::array();
        for (const auto &rep : row) {
            per_alpha.push_back({{"alpha", rep.alpha}, {"S", rep.S}, {"S_top", rep.S_top}});
        }
        entropy.push_back(std::move(per_alpha));
    }
    return json{{"metadata",
                 {{"version", r.version},
                  {"seed", r.seed},
                  {"propagator", r.propagator},
                  {"config", to_json(r.config)},
                  {"partition", to_json(r.partition)}}},
                {"times", r.times},
                {"fidelity", r.fidelity},
                {"energy", r.energy},
                {"entropy", std::move(entropy)}};
}

inline QuenchReport report_from_json(const json &j) {
    QuenchReport r;
    const auto &meta = j.at("metadata");
    r.version = meta.at("version").get<std::string>();
    r.seed = meta.at("seed").get<std::uint64_t>();
    r.propagator = meta.at("propagator").get<std::string>();
    r.config = config_from_json(meta.at("config"));
    auto g = build_lattice(r.config.L1, r.config.L2);
    r.partition = partition_from_json(g, meta.at("partition"));
    r.times = j.at("times").get<std::vector<double>>();
    r.fidelity = j.at("fidelity").get<std::vector<double>>();
    r.energy = j.at("energy").get<std::vector<double>>();
    for (const auto &row : j.at("entropy")) {
        std::vector<EntropyReport> per_alpha;
        for (const auto &e : row) {
            EntropyReport rep;
            rep.alpha = e.at("alpha").get<double>();
            rep.S = e.at("S").get<std::array<double, 4>>();
            rep.S_top = e.at("S_top").get<double>();
            per_alpha.push_back(rep);
        }
        r.entropy.push_back(std::move(per_alpha));
    }
    return r;
}

enum class OutputFormat { csv, json };

inline void emit(const QuenchReport &r, OutputFormat format, std::ostream &out) {
    if (format == OutputFormat::csv) {
        write_report_csv(out, r);
    } else {
        out << to_json(r).dump(2) << '\n';
    }
}

inline void emit(const QuenchReport &r, OutputFormat format, const std::string &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    emit(r, format, out);
    if (!out) {
        throw std::runtime_error("write to " + path + " failed");
    }
}

// ---------------------------------------------------------------------------
// Long-time averages over a field sweep.

inline double field_from_beta(double beta) {
    if (!(beta > 0 && beta < 1)) {
        throw ConfigError("beta must lie in (0, 1)");
    }
    return beta / (1 - beta);
}

struct SweepRow {
    double beta = 0;
    double h = 0;
    double mean_S_top = 0;
    double std_S_top = 0;
    std::size_t samples = 0;
    /// Average over the dense eigenphase sample; NaN when the full spectrum
    /// was not affordable.
    double eigen_mean_S_top = std::numeric_limits<double>::quiet_NaN();
    double eigen_std_S_top = std::numeric_limits<double>::quiet_NaN();
    std::size_t eigen_samples = 0;
};

namespace detail {

inline std::pair<double, double> mean_std(const std::vector<double> &v) {
    double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    double var = 0;
    for (double x : v) {
        var += (x - mean) * (x - mean);
    }
    return {mean, std::sqrt(var / static_cast<double>(v.size()))};
}

}  // namespace detail

/// For each beta, quenches with h = beta / (1 - beta) and averages the
/// alpha = 2 topological entropy over the samples t0, t0 + dt, ... <= t1.
inline std::vector<SweepRow> long_time_average(const QuenchConfig &config, const std::vector<double> &beta_grid,
                                               double t0, double t1) {
    config.validate();
    if (!(t1 > t0) || !(t0 >= 0)) {
        throw ConfigError("averaging window needs t1 > t0 >= 0");
    }
    if (t1 - t0 < 10 * config.dt * (1 - 1e-12)) {
        throw ConfigError("averaging window is shorter than 10 sampling intervals");
    }
    auto g = build_lattice(config.L1, config.L2);
    auto partition = resolve_partition(config, g);
    SectorPtr sector = config.sector_restrict ? build_sector(g) : nullptr;
    StateVector psi0 = sector ? ground_state(g, {}, sector) : ground_state(g);
    const auto first = static_cast<std::size_t>(std::ceil(t0 / config.dt - 1e-9));
    const auto last = static_cast<std::size_t>(std::floor(t1 / config.dt + 1e-9));

    std::vector<SweepRow> rows;
    for (double beta : beta_grid) {
        SweepRow row;
        row.beta = beta;
        row.h = field_from_beta(beta);
        QuenchConfig point = config;
        point.h = row.h;
        Hamiltonian h(quench_hamiltonian(point, g), sector);
        Trajectory traj(h, psi0, config.propagator, {config.tolerances.krylov});
        std::vector<double> series;
        for (std::size_t k = first; k <= last; k++) {
            auto psi = traj.at(static_cast<double>(k) * config.dt);
            series.push_back(topological_entropy(psi, partition, 2.0).S_top);
        }
        std::tie(row.mean_S_top, row.std_S_top) = detail::mean_std(series);
        row.samples = series.size();

        std::optional<SpectralPropagator> exact;
        if (traj.spectral()) {
            exact.emplace(*traj.spectral());
        } else if (h.dim() <= kFullSpectrumCap) {
            exact.emplace(full_spectrum(h), psi0);
        }
        if (exact) {
            const double horizon = config.eigen_horizon_factor * (t1 - t0);
            std::vector<double> eig;
            for (int j = 0; j < config.eigen_samples; j++) {
                double t = t0 + (j + 0.5) * horizon / config.eigen_samples;
                eig.push_back(topological_entropy(exact->at(t), partition, 2.0).S_top);
            }
            std::tie(row.eigen_mean_S_top, row.eigen_std_S_top) = detail::mean_std(eig);
            row.eigen_samples = eig.size();
        }
        rows.push_back(row);
    }
    return rows;
}

inline void write_sweep_csv(std::ostream &out, const std::vector<SweepRow> &rows) {
    out << "beta,h,mean_S_top,std_S_top,samples,eigen_mean_S_top,eigen_std_S_top,eigen_samples\n";
    for (const auto &r : rows) {
        out << format_double(r.beta) << ',' << format_double(r.h) << ',' << format_double(r.mean_S_top) << ','
            << format_double(r.std_S_top) << ',' << r.samples << ',' << format_double(r.eigen_mean_S_top) << ','
            << format_double(r.eigen_std_S_top) << ',' << r.eigen_samples << '\n';
    }
}

}  // namespace toricq
