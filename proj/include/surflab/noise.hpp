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

#ifndef SURFLAB_NOISE_H
#define SURFLAB_NOISE_H

#include <cstdint>
#include <iostream>
#include <stdexcept>
#include <vector>

#include "surflab/code.hpp"
#include "surflab/rng.hpp"

namespace surflab {

/// Elementary gate error probabilities.
struct GateRates {
    double p_s = 0;     // storage error per qubit per time step
    double p_cnot = 0;  // two-qubit gate error
    double p_prep = 0;  // faulty |0> preparation
    double p_meas = 0;  // single-qubit readout error
};

/// First-order effective rates of the syndrome-circuit error model: isolated
/// qubit errors (p_single), isolated syndrome misreads (q_single), correlated
/// two-link hooks (p_hook) and correlated link+misread hooks (q_hook).
struct EffectiveRates {
    double p_single = 0;
    double q_single = 0;
    double p_hook = 0;
    double q_hook = 0;
};

namespace detail {

inline double clip_probability(double value, const char* name) {
    if (value > 1.0) {
        std::cerr << "surflab: first-order rate " << name << " = " << value << " clipped to 1\n";
        return 1.0;
    }
    return value;
}

}  // namespace detail

/// First-order rates of the six-step check measurement circuit:
///   q_single = p_p + 4 p_CNOT + 6 p_s + p_m
///   q_hook   = 3 p_CNOT + 2 p_s
///   p_hook   = 2 p_CNOT + p_s
///   p_single = 5 p_CNOT + 7 p_s
/// No higher-order terms; values above 1 are clipped with a warning.
inline EffectiveRates derive_circuit_rates(const GateRates& g) {
    for (double v : {g.p_s, g.p_cnot, g.p_prep, g.p_meas}) {
        if (v < 0 || v > 1) {
            throw std::invalid_argument("gate rates must lie in [0, 1]");
        }
    }
    EffectiveRates r;
    r.q_single = detail::clip_probability(g.p_prep + 4 * g.p_cnot + 6 * g.p_s + g.p_meas, "q_single");
    r.q_hook = detail::clip_probability(3 * g.p_cnot + 2 * g.p_s, "q_hook");
    r.p_hook = detail::clip_probability(2 * g.p_cnot + g.p_s, "p_hook");
    r.p_single = detail::clip_probability(5 * g.p_cnot + 7 * g.p_s, "p_single");
    return r;
}

enum class HookKind : uint8_t { horizontal, vertical };

struct HookEvent {
    int round = 0;
    HookKind kind = HookKind::horizontal;
    Sector sector = Sector::z;
    // horizontal: the plaquette (z) or site (x) whose corner pair flipped;
    // vertical: the link whose error was missed by its first-scheduled check.
    uint32_t location = 0;
};

/// Per-round qubit and measurement errors for both sectors, plus a log of
/// correlated hook events for diagnostics.
struct SpacetimeErrorHistory {
    int rounds = 0;
    std::vector<std::vector<uint32_t>> z_qubit_errors;   // per round, sorted link ids
    std::vector<std::vector<uint32_t>> x_qubit_errors;   // per round, sorted link ids
    std::vector<std::vector<uint32_t>> site_meas_errors; // per round, misread site checks
    std::vector<std::vector<uint32_t>> plaq_meas_errors; // per round, misread plaquette checks
    std::vector<HookEvent> hook_log;

    bool empty() const {
        for (const auto* per_round : {&z_qubit_errors, &x_qubit_errors, &site_meas_errors, &plaq_meas_errors}) {
            for (const auto& r : *per_round) {
                if (!r.empty()) {
                    return false;
                }
            }
        }
        return true;
    }

    Chain total_z_errors() const {
        Chain total(1);
        for (const auto& r : z_qubit_errors) {
            total += Chain(1, r);
        }
        return total;
    }

    Chain total_x_errors() const {
        Chain total(1);
        for (const auto& r : x_qubit_errors) {
            total += Chain(1, r);
        }
        return total;
    }
};

namespace geometry {

// Hook geometry for the frozen measurement schedule (counterclockwise
// north-west-south-east, axis 0 increasing east, axis 1 increasing south).
// Functions return false when the named cell is absent (planar boundary).

inline bool plaq_north_xlink(const Lattice& lat, uint32_t plaq, uint32_t& link) {
    auto ref = lat.cell_ref(2, plaq);
    auto c = ref.coords;
    if (lat.boundary_kind() == BoundaryKind::periodic) {
        link = lat.cell_id(1, 0b01, c);
        return true;
    }
    int r = lat.rough_axis();
    c[r] -= 1;
    if (!lat.cell_exists(1, 1u << (1 - r), c)) {
        return false;
    }
    link = lat.cell_id(1, 1u << (1 - r), c);
    return true;
}

inline bool plaq_west_ylink(const Lattice& lat, uint32_t plaq, uint32_t& link) {
    auto ref = lat.cell_ref(2, plaq);
    if (lat.boundary_kind() == BoundaryKind::periodic) {
        link = lat.cell_id(1, 0b10, ref.coords);
        return true;
    }
    int r = lat.rough_axis();
    link = lat.cell_id(1, 1u << r, ref.coords);  // always exists
    return true;
}

inline bool site_north_ylink(const Lattice& lat, uint32_t site, uint32_t& link) {
    auto ref = lat.cell_ref(0, site);
    auto c = ref.coords;
    if (lat.boundary_kind() == BoundaryKind::periodic) {
        c[1] = (c[1] + lat.extent() - 1) % lat.extent();
        link = lat.cell_id(1, 0b10, c);
        return true;
    }
    int r = lat.rough_axis();
    link = lat.cell_id(1, 1u << r, c);  // always exists
    return true;
}

inline bool site_west_xlink(const Lattice& lat, uint32_t site, uint32_t& link) {
    auto ref = lat.cell_ref(0, site);
    auto c = ref.coords;
    int s_axis = lat.boundary_kind() == BoundaryKind::periodic ? 0 : 1 - lat.rough_axis();
    c[s_axis] -= 1;
    if (lat.boundary_kind() == BoundaryKind::periodic) {
        c[s_axis] = (c[s_axis] + lat.extent()) % lat.extent();
        link = lat.cell_id(1, 0b01, c);
        return true;
    }
    if (!lat.cell_exists(1, 1u << s_axis, c)) {
        return false;
    }
    link = lat.cell_id(1, 1u << s_axis, c);
    return true;
}

/// The first-scheduled of a link's two adjacent site checks (the one that
/// misses a mid-round error): the south site for north-south links, the east
/// site for east-west links.
inline bool first_scheduled_site(const Lattice& lat, uint32_t link, uint32_t& site) {
    auto ref = lat.cell_ref(1, link);
    auto c = ref.coords;
    bool periodic = lat.boundary_kind() == BoundaryKind::periodic;
    int r = periodic ? 1 : lat.rough_axis();
    if (ref.orientation == (1u << r)) {  // north-south link: south endpoint
        if (periodic) {
            c[r] = (c[r] + 1) % lat.extent();
            site = lat.cell_id(0, 0, c);
            return true;
        }
        if (!lat.cell_exists(0, 0, c)) {  // dangles into the south rough edge
            return false;
        }
        site = lat.cell_id(0, 0, c);
        return true;
    }
    int s_axis = periodic ? 0 : 1 - r;
    c[s_axis] = periodic ? (c[s_axis] + 1) % lat.extent() : c[s_axis] + 1;
    site = lat.cell_id(0, 0, c);  // east endpoint always exists
    return true;
}

/// The first-scheduled of a link's adjacent plaquette checks: the south
/// plaquette for east-west links, the east plaquette for north-south links.
inline bool first_scheduled_plaq(const Lattice& lat, uint32_t link, uint32_t& plaq) {
    auto ref = lat.cell_ref(1, link);
    auto c = ref.coords;
    bool periodic = lat.boundary_kind() == BoundaryKind::periodic;
    if (periodic) {
        plaq = lat.cell_id(2, 0b11, c);
        return true;
    }
    int r = lat.rough_axis();
    if (ref.orientation == (1u << (1 - r))) {  // east-west link: south plaquette
        c[r] += 1;
        plaq = lat.cell_id(2, 0b11, c);  // always exists
        return true;
    }
    if (!lat.cell_exists(2, 0b11, c)) {  // westmost/eastmost column handling
        return false;
    }
    plaq = lat.cell_id(2, 0b11, c);
    return true;
}

}  // namespace geometry

namespace detail {

class HistoryBuilder {
   public:
    explicit HistoryBuilder(const SurfaceCode& code, int rounds)
        : n_links_(code.n_qubits()),
          n_sites_(code.n_sites()),
          n_plaqs_(code.n_plaquettes()),
          z_flags_(n_links_, 0),
          x_flags_(n_links_, 0),
          site_flags_(n_sites_, 0),
          plaq_flags_(n_plaqs_, 0) {
        history_.rounds = rounds;
        history_.z_qubit_errors.resize(rounds);
        history_.x_qubit_errors.resize(rounds);
        history_.site_meas_errors.resize(rounds);
        history_.plaq_meas_errors.resize(rounds);
    }

    void toggle_z(uint32_t link) {
        z_flags_[link] ^= 1;
    }
    void toggle_x(uint32_t link) {
        x_flags_[link] ^= 1;
    }
    void toggle_site(uint32_t site) {
        site_flags_[site] ^= 1;
    }
    void toggle_plaq(uint32_t plaq) {
        plaq_flags_[plaq] ^= 1;
    }
    void log_hook(int round, HookKind kind, Sector sector, uint32_t location) {
        history_.hook_log.push_back({round, kind, sector, location});
    }

    void finish_round(int t) {
        collect(z_flags_, history_.z_qubit_errors[t]);
        collect(x_flags_, history_.x_qubit_errors[t]);
        collect(site_flags_, history_.site_meas_errors[t]);
        collect(plaq_flags_, history_.plaq_meas_errors[t]);
    }

    SpacetimeErrorHistory take() {
        return std::move(history_);
    }

   private:
    static void collect(std::vector<uint8_t>& flags, std::vector<uint32_t>& out) {
        for (uint32_t i = 0; i < flags.size(); ++i) {
            if (flags[i]) {
                out.push_back(i);
                flags[i] = 0;
            }
        }
    }

    size_t n_links_, n_sites_, n_plaqs_;
    std::vector<uint8_t> z_flags_, x_flags_, site_flags_, plaq_flags_;
    SpacetimeErrorHistory history_;
};

}  // namespace detail

/// Independent errors: each link takes a Z error and an X error with
/// probability p per round, each check is misread with probability q.
inline SpacetimeErrorHistory sample_phenomenological(
    const SurfaceCode& code, double p, double q, int rounds, Rng& rng) {
    if (p < 0 || p > 1 || q < 0 || q > 1) {
        throw std::invalid_argument("phenomenological rates must lie in [0, 1]");
    }
    if (rounds < 1) {
        throw std::invalid_argument("need at least one round");
    }
    detail::HistoryBuilder builder(code, rounds);
    const uint32_t n_links = static_cast<uint32_t>(code.n_qubits());
    const uint32_t n_sites = static_cast<uint32_t>(code.n_sites());
    const uint32_t n_plaqs = static_cast<uint32_t>(code.n_plaquettes());
    for (int t = 0; t < rounds; ++t) {
        for (uint32_t link = 0; link < n_links; ++link) {
            if (rng.bernoulli(p)) {
                builder.toggle_z(link);
            }
        }
        for (uint32_t link = 0; link < n_links; ++link) {
            if (rng.bernoulli(p)) {
                builder.toggle_x(link);
            }
        }
        if (q > 0) {
            for (uint32_t s = 0; s < n_sites; ++s) {
                if (rng.bernoulli(q)) {
                    builder.toggle_site(s);
                }
            }
            for (uint32_t pq = 0; pq < n_plaqs; ++pq) {
                if (rng.bernoulli(q)) {
                    builder.toggle_plaq(pq);
                }
            }
        }
        builder.finish_round(t);
    }
    return builder.take();
}

/// Effective circuit-level model: independent singles and misreads plus
/// correlated hooks. Horizontal ZZ hooks flip the northwest corner pair of a
/// plaquette; horizontal XX hooks flip the north and west links of a site;
/// a vertical hook pairs a link error with a misread of the link's
/// first-scheduled adjacent check in the same round. At a planar boundary a
/// hook whose partner cell does not exist degrades to its existing part and
/// is not logged (hook_log holds atomically applied pairs only).
inline SpacetimeErrorHistory sample_circuit_level(
    const SurfaceCode& code, const EffectiveRates& rates, int rounds, Rng& rng) {
    for (double v : {rates.p_single, rates.q_single, rates.p_hook, rates.q_hook}) {
        if (v < 0 || v > 1) {
            throw std::invalid_argument("effective rates must lie in [0, 1]");
        }
    }
    if (rounds < 1) {
        throw std::invalid_argument("need at least one round");
    }
    const Lattice& lat = code.lattice;
    detail::HistoryBuilder builder(code, rounds);
    const uint32_t n_links = static_cast<uint32_t>(code.n_qubits());
    const uint32_t n_sites = static_cast<uint32_t>(code.n_sites());
    const uint32_t n_plaqs = static_cast<uint32_t>(code.n_plaquettes());

    for (int t = 0; t < rounds; ++t) {
        // Z sector: qubit Z errors, site-check misreads
        for (uint32_t link = 0; link < n_links; ++link) {
            if (rng.bernoulli(rates.p_single)) {
                builder.toggle_z(link);
            }
        }
        for (uint32_t s = 0; s < n_sites; ++s) {
            if (rng.bernoulli(rates.q_single)) {
                builder.toggle_site(s);
            }
        }
        for (uint32_t pq = 0; pq < n_plaqs; ++pq) {
            if (rng.bernoulli(rates.p_hook)) {
                uint32_t north = 0, west = 0;
                bool has_north = geometry::plaq_north_xlink(lat, pq, north);
                bool has_west = geometry::plaq_west_ylink(lat, pq, west);
                if (has_north) {
                    builder.toggle_z(north);
                }
                if (has_west) {
                    builder.toggle_z(west);
                }
                if (has_north && has_west) {
                    builder.log_hook(t, HookKind::horizontal, Sector::z, pq);
                }
            }
        }
        for (uint32_t link = 0; link < n_links; ++link) {
            if (rng.bernoulli(rates.q_hook)) {
                builder.toggle_z(link);
                uint32_t site = 0;
                if (geometry::first_scheduled_site(lat, link, site)) {
                    builder.toggle_site(site);
                    builder.log_hook(t, HookKind::vertical, Sector::z, link);
                }
            }
        }

        // X sector: qubit X errors, plaquette-check misreads
        for (uint32_t link = 0; link < n_links; ++link) {
            if (rng.bernoulli(rates.p_single)) {
                builder.toggle_x(link);
            }
        }
        for (uint32_t pq = 0; pq < n_plaqs; ++pq) {
            if (rng.bernoulli(rates.q_single)) {
                builder.toggle_plaq(pq);
            }
        }
        for (uint32_t s = 0; s < n_sites; ++s) {
            if (rng.bernoulli(rates.p_hook)) {
                uint32_t north = 0, west = 0;
                bool has_north = geometry::site_north_ylink(lat, s, north);
                bool has_west = geometry::site_west_xlink(lat, s, west);
                if (has_north) {
                    builder.toggle_x(north);
                }
                if (has_west) {
                    builder.toggle_x(west);
                }
                if (has_north && has_west) {
                    builder.log_hook(t, HookKind::horizontal, Sector::x, s);
                }
            }
        }
        for (uint32_t link = 0; link < n_links; ++link) {
            if (rng.bernoulli(rates.q_hook)) {
                builder.toggle_x(link);
                uint32_t pq = 0;
                if (geometry::first_scheduled_plaq(lat, link, pq)) {
                    builder.toggle_plaq(pq);
                    builder.log_hook(t, HookKind::vertical, Sector::x, link);
                }
            }
        }

        builder.finish_round(t);
    }
    return builder.take();
}

}  // namespace surflab

#endif
