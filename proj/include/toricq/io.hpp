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

#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "toricq/entanglement.hpp"
#include "toricq/hamiltonian.hpp"
#include "toricq/lanczos.hpp"
#include "toricq/lattice.hpp"
#include "toricq/state.hpp"

namespace toricq {

using json = nlohmann::json;

/// Shortest text with 17 significant digits; the CSV number format.
inline std::string format_double(double v) {
    std::ostringstream out;
    out << std::setprecision(17) << v;
    return out.str();
}

inline json to_json(const LatticeGeometry &g) {
    return json{{"L1", g.L1},
                {"L2", g.L2},
                {"n_spins", g.n_spins},
                {"star_supports", g.star_supports},
                {"plaquette_supports", g.plaquette_supports},
                {"horizontal_spins", g.horizontal_spins},
                {"vertical_spins", g.vertical_spins},
                {"loop1_support", g.loop1_support},
                {"loop2_support", g.loop2_support},
                {"zloop1_support", g.zloop1_support},
                {"zloop2_support", g.zloop2_support}};
}

inline json to_json(const RegionPartition &p) {
    return json{{"label", p.label}, {"contractible", p.contractible}, {"regions", p.regions}};
}

/// Reads {"label": ..., "regions": [[...] x4], "contractible": bool} and
/// validates it against the geometry.
inline RegionPartition partition_from_json(const LatticeGeometry &g, const json &j) {
    RegionPartition p;
    p.label = j.value("label", std::string("custom"));
    p.contractible = j.value("contractible", true);
    const auto &regions = j.at("regions");
    if (!regions.is_array() || regions.size() != 4) {
        throw std::invalid_argument("partition JSON: 'regions' must hold exactly four spin lists");
    }
    for (std::size_t r = 0; r < 4; r++) {
        p.regions[r] = regions[r].get<SpinSet>();
        std::sort(p.regions[r].begin(), p.regions[r].end());
        if (std::adjacent_find(p.regions[r].begin(), p.regions[r].end()) != p.regions[r].end()) {
            throw std::invalid_argument("partition JSON: duplicate spin in region " + std::to_string(r + 1));
        }
    }
    validate_partition(g, p);
    return p;
}

inline json to_json(const StateVector &s) {
    json amps = json::array();
    for (auto a : s.amplitudes()) {
        amps.push_back({a.real(), a.imag()});
    }
    json j{{"n_spins", s.n_spins()}, {"amplitudes", std::move(amps)}};
    if (s.sector()) {
        j["kept_indices"] = s.sector()->kept_indices();
    }
    return j;
}

/// Sector states are rebuilt against the given sector, which must match the
/// stored kept indices.
inline StateVector state_from_json(const json &j, SectorPtr sector = nullptr) {
    int n = j.at("n_spins").get<int>();
    std::vector<cplx> amps;
    for (const auto &a : j.at("amplitudes")) {
        amps.emplace_back(a.at(0).get<double>(), a.at(1).get<double>());
    }
    if (j.contains("kept_indices")) {
        if (!sector || sector->kept_indices() != j["kept_indices"].get<std::vector<std::uint64_t>>()) {
            throw std::invalid_argument("state JSON: sector state needs the matching sector basis");
        }
        return StateVector(n, std::move(amps), std::move(sector));
    }
    return StateVector(n, std::move(amps));
}

/// Binary amplitude dump: magic "TQAMP001", then int32 n_spins, uint64 dim,
/// uint8 is_sector, [uint64 kept index] * dim when a sector, then dim pairs
/// of little-endian float64 (re, im).
inline void write_amplitudes(std::ostream &out, const StateVector &s) {
    auto put = [&](const auto &v) {
        out.write(reinterpret_cast<const char *>(&v), sizeof(v));
    };
    out.write("TQAMP001", 8);
    put(static_cast<std::int32_t>(s.n_spins()));
    put(static_cast<std::uint64_t>(s.dim()));
    put(static_cast<std::uint8_t>(s.sector() ? 1 : 0));
    if (s.sector()) {
        for (auto k : s.sector()->kept_indices()) {
            put(static_cast<std::uint64_t>(k));
        }
    }
    for (auto a : s.amplitudes()) {
        put(a.real());
        put(a.imag());
    }
    if (!out) {
        throw std::runtime_error("write_amplitudes: write failed");
    }
}

inline StateVector read_amplitudes(std::istream &in, SectorPtr sector = nullptr) {
    auto get = [&](auto &v) {
        in.read(reinterpret_cast<char *>(&v), sizeof(v));
        if (!in) {
            throw std::runtime_error("read_amplitudes: truncated dump");
        }
    };
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, "TQAMP001", 8) != 0) {
        throw std::runtime_error("read_amplitudes: not an amplitude dump");
    }
    std::int32_t n = 0;
    std::uint64_t dim = 0;
    std::uint8_t is_sector = 0;
    get(n);
    get(dim);
    get(is_sector);
    if (is_sector) {
        std::vector<std::uint64_t> kept(dim);
        for (auto &k : kept) {
            get(k);
        }
        if (!sector || sector->kept_indices() != kept) {
            throw std::invalid_argument("read_amplitudes: sector dump needs the matching sector basis");
        }
    } else {
        sector = nullptr;
    }
    std::vector<cplx> amps(dim);
    for (auto &a : amps) {
        double re = 0, im = 0;
        get(re);
        get(im);
        a = {re, im};
    }
    return StateVector(n, std::move(amps), std::move(sector));
}

inline void save_amplitudes(const std::string &path, const StateVector &s) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    write_amplitudes(out, s);
}

inline StateVector load_amplitudes(const std::string &path, SectorPtr sector = nullptr) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    return read_amplitudes(in, std::move(sector));
}

/// CSV "index,eigenvalue".
inline void write_spectrum_csv(std::ostream &out, const Eigen::VectorXd &values) {
    out << "index,eigenvalue\n";
    for (Eigen::Index i = 0; i < values.size(); i++) {
        out << i << ',' << format_double(values(i)) << '\n';
    }
}

struct RegionEntropy {
    std::string region_label;
    double alpha;
    double entropy_bits;
};

/// CSV "region_label,alpha,entropy_bits".
inline void write_entropy_csv(std::ostream &out, const std::vector<RegionEntropy> &rows) {
    out << "region_label,alpha,entropy_bits\n";
    for (const auto &r : rows) {
        out << r.region_label << ',' << format_double(r.alpha) << ',' << format_double(r.entropy_bits) << '\n';
    }
}

/// Flattens entropy reports into CSV rows labelled R1..R4 and S_top.
inline std::vector<RegionEntropy> entropy_rows(const std::vector<EntropyReport> &reports) {
    std::vector<RegionEntropy> rows;
    for (const auto &rep : reports) {
        for (std::size_t r = 0; r < 4; r++) {
            rows.push_back({"R" + std::to_string(r + 1), rep.alpha, rep.S[r]});
        }
        rows.push_back({"S_top", rep.alpha, rep.S_top});
    }
    return rows;
}

}  // namespace toricq
