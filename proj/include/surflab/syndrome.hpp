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

#ifndef SURFLAB_SYNDROME_H
#define SURFLAB_SYNDROME_H

#include <algorithm>
#include <cstdint>
#include <vector>

#include "surflab/code.hpp"
#include "surflab/noise.hpp"

namespace surflab {

/// Measured syndrome records, one row per round per check type. Row t holds
/// the checks that read -1 between error step t and t+1: the true syndrome of
/// all errors accumulated through round t, XOR the round-t misreads. When
/// final_round_perfect is set, one extra error-free row is appended, modeling
/// the destructive readout in which the last syndrome is computed classically
/// from single-qubit measurements.
struct SyndromeHistory {
    int rounds = 0;  // number of rows, including the perfect one if present
    bool final_round_perfect = false;
    std::vector<std::vector<uint32_t>> site_records;  // sorted check ids per round
    std::vector<std::vector<uint32_t>> plaq_records;
};

inline SyndromeHistory measure_history(
    const SurfaceCode& code, const SpacetimeErrorHistory& history, bool final_round_perfect = true) {
    const Lattice& lat = code.lattice;
    SyndromeHistory out;
    out.final_round_perfect = final_round_perfect;
    out.rounds = history.rounds + (final_round_perfect ? 1 : 0);
    out.site_records.resize(out.rounds);
    out.plaq_records.resize(out.rounds);

    std::vector<uint8_t> site_parity(code.n_sites(), 0);
    std::vector<uint8_t> plaq_parity(code.n_plaquettes(), 0);
    for (int t = 0; t < history.rounds; ++t) {
        for (uint32_t link : history.z_qubit_errors[t]) {
            for (uint32_t s : lat.boundary_of_cell(1, link)) {
                site_parity[s] ^= 1;
            }
        }
        for (uint32_t link : history.x_qubit_errors[t]) {
            for (uint32_t p : lat.coboundary_of_cell(1, link)) {
                plaq_parity[p] ^= 1;
            }
        }
        std::vector<uint8_t> site_row = site_parity;
        for (uint32_t s : history.site_meas_errors[t]) {
            site_row[s] ^= 1;
        }
        std::vector<uint8_t> plaq_row = plaq_parity;
        for (uint32_t p : history.plaq_meas_errors[t]) {
            plaq_row[p] ^= 1;
        }
        for (uint32_t s = 0; s < site_row.size(); ++s) {
            if (site_row[s]) {
                out.site_records[t].push_back(s);
            }
        }
        for (uint32_t p = 0; p < plaq_row.size(); ++p) {
            if (plaq_row[p]) {
                out.plaq_records[t].push_back(p);
            }
        }
    }
    if (final_round_perfect) {
        int t = history.rounds;
        for (uint32_t s = 0; s < site_parity.size(); ++s) {
            if (site_parity[s]) {
                out.site_records[t].push_back(s);
            }
        }
        for (uint32_t p = 0; p < plaq_parity.size(); ++p) {
            if (plaq_parity[p]) {
                out.plaq_records[t].push_back(p);
            }
        }
    }
    return out;
}

struct SpacetimeEvent {
    uint32_t check = 0;
    int round = 0;

    bool operator==(const SpacetimeEvent& other) const {
        return check == other.check && round == other.round;
    }
    bool operator<(const SpacetimeEvent& other) const {
        return round != other.round ? round < other.round : check < other.check;
    }
};

/// Spacetime detection events: one event wherever a check's record differs
/// from its previous round (with the round before the first defined as
/// trivial). These are the boundary points of the syndrome chain.
struct MonopoleSet {
    std::vector<SpacetimeEvent> site_events;
    std::vector<SpacetimeEvent> plaq_events;
};

namespace detail {

inline void diff_records(const std::vector<std::vector<uint32_t>>& records, std::vector<SpacetimeEvent>& out) {
    const std::vector<uint32_t> empty;
    for (size_t t = 0; t < records.size(); ++t) {
        const auto& prev = t == 0 ? empty : records[t - 1];
        const auto& cur = records[t];
        std::vector<uint32_t> changed;
        std::set_symmetric_difference(
            prev.begin(), prev.end(), cur.begin(), cur.end(), std::back_inserter(changed));
        for (uint32_t c : changed) {
            out.push_back({c, static_cast<int>(t)});
        }
    }
}

}  // namespace detail

inline MonopoleSet extract_monopoles(const SyndromeHistory& history) {
    MonopoleSet out;
    detail::diff_records(history.site_records, out.site_events);
    detail::diff_records(history.plaq_records, out.plaq_events);
    return out;
}

/// Bit-packed export of a syndrome history: rows are concatenated per check
/// type, each row padded to a whole byte. Pair with the JSON header emitted
/// by json_io.hpp; this is payload only.
inline std::vector<uint8_t> pack_syndrome_records(
    const std::vector<std::vector<uint32_t>>& records, size_t n_checks) {
    size_t row_bytes = (n_checks + 7) / 8;
    std::vector<uint8_t> out(row_bytes * records.size(), 0);
    for (size_t t = 0; t < records.size(); ++t) {
        for (uint32_t c : records[t]) {
            out[t * row_bytes + c / 8] |= static_cast<uint8_t>(1u << (c % 8));
        }
    }
    return out;
}

inline std::vector<std::vector<uint32_t>> unpack_syndrome_records(
    const std::vector<uint8_t>& bytes, size_t n_checks, int rounds) {
    size_t row_bytes = (n_checks + 7) / 8;
    if (bytes.size() != row_bytes * static_cast<size_t>(rounds)) {
        throw std::invalid_argument("packed syndrome payload has the wrong size");
    }
    std::vector<std::vector<uint32_t>> records(rounds);
    for (int t = 0; t < rounds; ++t) {
        for (uint32_t c = 0; c < n_checks; ++c) {
            if (bytes[t * row_bytes + c / 8] & (1u << (c % 8))) {
                records[t].push_back(c);
            }
        }
    }
    return records;
}

}  // namespace surflab

#endif
