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

// Command-line driver: ground, verify, quench, sweep, entropy.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "toricq.hpp"

namespace {

using namespace toricq;

constexpr int kExitOk = 0;
constexpr int kExitPhysics = 1;
constexpr int kExitConfig = 2;

struct Overrides {
    std::string config_path;
    std::optional<int> L1, L2;
    std::optional<double> h, beta, kappa, t_max, dt, lanczos_tol, krylov_tol;
    std::optional<std::string> field_mode, preset, partition_path, propagator, output;
    std::vector<double> alphas;
    bool sector = false;
};

void add_common(CLI::App *app, Overrides &o) {
    app->add_option("-c,--config", o.config_path, "JSON config file");
    app->add_option("--L1", o.L1, "sites along direction 1");
    app->add_option("--L2", o.L2, "sites along direction 2");
    app->add_option("--field", o.h, "field strength h");
    app->add_option("--beta", o.beta, "field as beta = h / (1 + h)");
    app->add_option("--kappa", o.kappa, "vertical x-field ratio (split_HV)");
    app->add_option("--field-mode", o.field_mode, "uniform_z or split_HV");
    app->add_option("--t-max", o.t_max, "final time");
    app->add_option("--dt", o.dt, "sampling interval");
    app->add_option("--alpha", o.alphas, "Renyi indices");
    app->add_option("--preset", o.preset, "partition preset name");
    app->add_option("--partition", o.partition_path, "JSON file with a custom partition");
    app->add_flag("--sector", o.sector, "restrict to the B_p = +1 sector");
    app->add_option("--propagator", o.propagator, "auto, krylov or spectral");
    app->add_option("--lanczos-tol", o.lanczos_tol, "Lanczos residual tolerance");
    app->add_option("--krylov-tol", o.krylov_tol, "Krylov local error tolerance");
    app->add_option("-o,--output", o.output, "output path (stdout when omitted)");
}

json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open " + path);
    }
    try {
        return json::parse(in);
    } catch (const json::exception &e) {
        throw ConfigError(path + ": " + e.what());
    }
}

QuenchConfig resolve_config(const Overrides &o) {
    QuenchConfig c = o.config_path.empty() ? QuenchConfig{} : config_from_json(read_json_file(o.config_path));
    if (o.L1) c.L1 = *o.L1;
    if (o.L2) c.L2 = *o.L2;
    if (o.h && o.beta) {
        throw ConfigError("give either --field or --beta, not both");
    }
    if (o.h) c.h = *o.h;
    if (o.beta) c.h = field_from_beta(*o.beta);
    if (o.kappa) c.kappa = *o.kappa;
    if (o.field_mode) {
        try {
            c.field_mode = field_mode_from_string(*o.field_mode);
        } catch (const std::invalid_argument &e) {
            throw ConfigError(e.what());
        }
    }
    if (o.t_max) c.t_max = *o.t_max;
    if (o.dt) c.dt = *o.dt;
    if (!o.alphas.empty()) c.alpha_list = o.alphas;
    if (o.preset) {
        c.partition_preset = *o.preset;
        c.custom_partition.reset();
    }
    if (o.partition_path) {
        try {
            c.custom_partition = partition_from_json(build_lattice(c.L1, c.L2), read_json_file(*o.partition_path));
        } catch (const ConfigError &) {
            throw;
        } catch (const std::exception &e) {
            throw ConfigError(e.what());
        }
    }
    if (o.sector) c.sector_restrict = true;
    if (o.propagator) c.propagator = propagator_from_string(*o.propagator);
    if (o.lanczos_tol) c.tolerances.lanczos = *o.lanczos_tol;
    if (o.krylov_tol) c.tolerances.krylov = *o.krylov_tol;
    if (o.output) c.output_path = *o.output;
    c.validate();
    return c;
}

template <typename Fn>
void with_output(const std::string &path, Fn &&fn) {
    if (path.empty() || path == "-") {
        fn(std::cout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    fn(out);
}

int run_ground(const Overrides &o, const std::vector<int> &label, const std::string &json_out,
               const std::string &bin_out, const std::string &spectrum_out, int lanczos_k) {
    auto c = resolve_config(o);
    if (label.size() != 2 || (label[0] & ~1) || (label[1] & ~1)) {
        throw ConfigError("--label takes two bits");
    }
    auto g = build_lattice(c.L1, c.L2);
    auto info = enumerate_group(star_operators(g));
    SectorPtr sector = c.sector_restrict ? build_sector(g) : nullptr;
    auto psi = sector ? ground_state(g, {label[0], label[1]}, sector) : ground_state(g, {label[0], label[1]});
    HamiltonianSpec tc;
    tc.geometry = g;
    Hamiltonian h_tc(tc, sector);
    std::cout << "lattice " << c.L1 << "x" << c.L2 << "  n_spins=" << g.n_spins << "  star_rank=" << info.gf2_rank
              << "  group_order=" << info.group_order() << "  sector=(" << label[0] << "," << label[1] << ")"
              << "  energy=" << format_double(h_tc.energy(psi)) << '\n';
    if (!json_out.empty()) {
        with_output(json_out, [&](std::ostream &out) {
            out << json{{"geometry", to_json(g)}, {"state", to_json(psi)}}.dump(1) << '\n';
        });
    }
    if (!bin_out.empty()) {
        save_amplitudes(bin_out, psi);
    }
    if (lanczos_k > 0 || !spectrum_out.empty()) {
        Hamiltonian h(quench_hamiltonian(c, g), sector);
        if (lanczos_k > 0) {
            LanczosOptions opt;
            opt.k = lanczos_k;
            opt.tol = c.tolerances.lanczos;
            for (const auto &p : lanczos_extremal(h, opt)) {
                std::cout << "lanczos " << format_double(p.value) << "  residual=" << format_double(p.residual)
                          << '\n';
            }
        }
        if (!spectrum_out.empty()) {
            auto spec = full_spectrum(h);
            with_output(spectrum_out, [&](std::ostream &out) {
                write_spectrum_csv(out, spec.values);
            });
        }
    }
    return kExitOk;
}

int run_verify(const Overrides &o) {
    auto c = resolve_config(o);
    auto report = verify(c);
    print_verify_report(std::cout, report);
    return report.passed() ? kExitOk : kExitPhysics;
}

int run_quench_cmd(const Overrides &o, const std::string &format) {
    auto c = resolve_config(o);
    if (format != "csv" && format != "json") {
        throw ConfigError("--format must be csv or json");
    }
    auto report = run_quench(c);
    with_output(c.output_path, [&](std::ostream &out) {
        emit(report, format == "csv" ? OutputFormat::csv : OutputFormat::json, out);
    });
    return kExitOk;
}

int run_sweep(const Overrides &o, std::vector<double> betas, const std::vector<double> &window) {
    auto c = resolve_config(o);
    if (betas.empty()) {
        for (int k = 1; k <= 9; k++) {
            betas.push_back(0.1 * k);
        }
    }
    double t0 = c.window_t0, t1 = c.window_t1;
    if (!window.empty()) {
        if (window.size() != 2) {
            throw ConfigError("--window takes t0 t1");
        }
        t0 = window[0];
        t1 = window[1];
    }
    auto rows = long_time_average(c, betas, t0, t1);
    with_output(c.output_path, [&](std::ostream &out) {
        write_sweep_csv(out, rows);
    });
    return kExitOk;
}

int run_entropy(const Overrides &o, const std::vector<int> &label, const std::string &state_path, bool nats) {
    auto c = resolve_config(o);
    auto g = build_lattice(c.L1, c.L2);
    auto partition = resolve_partition(c, g);
    StateVector psi = state_path.empty()
                          ? ground_state(g, {label.at(0), label.at(1)})
                          : load_amplitudes(state_path, build_sector(g));
    if (psi.n_spins() != g.n_spins) {
        throw ConfigError("state dump does not match the lattice size");
    }
    auto rows = entropy_rows(topological_entropies(psi, partition, c.alpha_list));
    if (nats) {
        for (auto &r : rows) {
            r.entropy_bits *= std::log(2.0);
        }
    }
    with_output(c.output_path, [&](std::ostream &out) {
        if (nats) {
            out << "# entropies in nats\n";
        }
        write_entropy_csv(out, rows);
    });
    return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
#ifdef _OPENMP
    if (const char *threads = std::getenv("TORICQ_NUM_THREADS")) {
        int n = std::atoi(threads);
        if (n > 0) {
            omp_set_num_threads(n);
        }
    }
#endif
    CLI::App app{"toricq: toric-code ground states, entanglement, and quench dynamics"};
    app.set_version_flag("--version", std::string(toricq::kVersion));
    app.require_subcommand(1);

    Overrides ground_o, verify_o, quench_o, sweep_o, entropy_o;
    std::vector<int> ground_label{0, 0}, entropy_label{0, 0};
    std::string json_out, bin_out, spectrum_out, format = "csv", state_path;
    int lanczos_k = 0;
    std::vector<double> betas, window;
    bool nats = false;

    auto *ground = app.add_subcommand("ground", "build an analytic ground state and optional spectra");
    add_common(ground, ground_o);
    ground->add_option("--label", ground_label, "topological sector bits w1 w2")->expected(2);
    ground->add_option("--json", json_out, "write geometry and amplitudes as JSON");
    ground->add_option("--bin", bin_out, "write a binary amplitude dump");
    ground->add_option("--spectrum", spectrum_out, "write the full spectrum of the configured Hamiltonian as CSV");
    ground->add_option("--lanczos", lanczos_k, "print the k lowest eigenvalues");

    auto *verify_cmd = app.add_subcommand("verify", "run the physics self-checks");
    add_common(verify_cmd, verify_o);

    auto *quench = app.add_subcommand("quench", "quench the ground state and record the time series");
    add_common(quench, quench_o);
    quench->add_option("--format", format, "csv or json");

    auto *sweep = app.add_subcommand("sweep", "long-time average of S_top(alpha=2) over a beta grid");
    add_common(sweep, sweep_o);
    sweep->add_option("--betas", betas, "beta grid (default 0.1 .. 0.9)");
    sweep->add_option("--window", window, "averaging window t0 t1")->expected(2);

    auto *entropy = app.add_subcommand("entropy", "region entropies and S_top of a state");
    add_common(entropy, entropy_o);
    entropy->add_option("--label", entropy_label, "topological sector bits w1 w2")->expected(2);
    entropy->add_option("--state", state_path, "binary amplitude dump instead of a ground state");
    entropy->add_flag("--nats", nats, "report entropies in nats");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*ground) return run_ground(ground_o, ground_label, json_out, bin_out, spectrum_out, lanczos_k);
        if (*verify_cmd) return run_verify(verify_o);
        if (*quench) return run_quench_cmd(quench_o, format);
        if (*sweep) return run_sweep(sweep_o, betas, window);
        if (*entropy) return run_entropy(entropy_o, entropy_label, state_path, nats);
    } catch (const toricq::ConfigError &e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument &e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const toricq::ConvergenceError &e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitPhysics;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitPhysics;
    }
    return kExitConfig;
}
