// Copyright 2026 surflab contributors
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

#ifndef SURFLAB_JSON_IO_H
#define SURFLAB_JSON_IO_H

#include <string>

#include "json.hpp"
#include "surflab/code.hpp"
#include "surflab/noise.hpp"
#include "surflab/syndrome.hpp"

namespace surflab {

inline nlohmann::json chain_to_json(const Chain& chain) {
    return nlohmann::json{{"degree", chain.degree}, {"cells", chain.cells}};
}

inline Chain chain_from_json(const nlohmann::json& j) {
    return Chain(j.at("degree").get<int>(), j.at("cells").get<std::vector<uint32_t>>());
}

/// Full code description (check supports and logical representatives as
/// link-index lists) for diffing against other implementations.
inline nlohmann::json code_to_json(const SurfaceCode& code) {
    nlohmann::json j;
    j["kind"] = code.is_toric() ? "toric" : "planar";
    j["L"] = code.lattice.extent();
    j["n_qubits"] = code.n_qubits();
    j["n_logical"] = code.n_logical;
    j["distance"] = code.distance;
    j["x_checks"] = code.x_checks;
    j["z_checks"] = code.z_checks;
    j["logical_z"] = nlohmann::json::array();
    j["logical_x"] = nlohmann::json::array();
    for (int k = 0; k < code.n_logical; ++k) {
        j["logical_z"].push_back(code.logical_z[k].cells);
        j["logical_x"].push_back(code.logical_x[k].cells);
    }
    return j;
}

inline void to_json(nlohmann::json& j, const GateRates& g) {
    j = nlohmann::json{{"p_s", g.p_s}, {"p_cnot", g.p_cnot}, {"p_prep", g.p_prep}, {"p_meas", g.p_meas}};
}

inline void from_json(const nlohmann::json& j, GateRates& g) {
    g.p_s = j.value("p_s", 0.0);
    g.p_cnot = j.value("p_cnot", 0.0);
    g.p_prep = j.value("p_prep", 0.0);
    g.p_meas = j.value("p_meas", 0.0);
}

inline void to_json(nlohmann::json& j, const EffectiveRates& r) {
    j = nlohmann::json{
        {"p_single", r.p_single}, {"q_single", r.q_single}, {"p_hook", r.p_hook}, {"q_hook", r.q_hook}};
}

inline void from_json(const nlohmann::json& j, EffectiveRates& r) {
    r.p_single = j.value("p_single", 0.0);
    r.q_single = j.value("q_single", 0.0);
    r.p_hook = j.value("p_hook", 0.0);
    r.q_hook = j.value("q_hook", 0.0);
}

/// Versioned header for the bit-packed syndrome history payload.
inline nlohmann::json syndrome_history_header(const SurfaceCode& code, const SyndromeHistory& history) {
    return nlohmann::json{
        {"format_version", 1},
        {"L", code.lattice.extent()},
        {"kind", code.is_toric() ? "toric" : "planar"},
        {"rounds", history.rounds},
        {"final_round_perfect", history.final_round_perfect},
        {"n_site_checks", code.n_sites()},
        {"n_plaq_checks", code.n_plaquettes()},
    };
}

struct ExportedSyndromeHistory {
    nlohmann::json header;
    std::vector<uint8_t> payload;  // site rows then plaquette rows
};

inline ExportedSyndromeHistory export_syndrome_history(const SurfaceCode& code, const SyndromeHistory& history) {
    ExportedSyndromeHistory out;
    out.header = syndrome_history_header(code, history);
    out.payload = pack_syndrome_records(history.site_records, code.n_sites());
    auto plaq = pack_syndrome_records(history.plaq_records, code.n_plaquettes());
    out.payload.insert(out.payload.end(), plaq.begin(), plaq.end());
    return out;
}

inline SyndromeHistory import_syndrome_history(const ExportedSyndromeHistory& exported) {
    const auto& h = exported.header;
    if (h.at("format_version").get<int>() != 1) {
        throw std::invalid_argument("unsupported syndrome history format version");
    }
    SyndromeHistory history;
    history.rounds = h.at("rounds").get<int>();
    history.final_round_perfect = h.at("final_round_perfect").get<bool>();
    size_t n_sites = h.at("n_site_checks").get<size_t>();
    size_t n_plaqs = h.at("n_plaq_checks").get<size_t>();
    size_t site_bytes = (n_sites + 7) / 8 * history.rounds;
    if (exported.payload.size() != site_bytes + (n_plaqs + 7) / 8 * history.rounds) {
        throw std::invalid_argument("syndrome history payload size mismatch");
    }
    std::vector<uint8_t> site_part(exported.payload.begin(), exported.payload.begin() + site_bytes);
    std::vector<uint8_t> plaq_part(exported.payload.begin() + site_bytes, exported.payload.end());
    history.site_records = unpack_syndrome_records(site_part, n_sites, history.rounds);
    history.plaq_records = unpack_syndrome_records(plaq_part, n_plaqs, history.rounds);
    return history;
}

}  // namespace surflab

#endif
