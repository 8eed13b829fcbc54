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

#ifndef SURFLAB_DECODER_H
#define SURFLAB_DECODER_H

#include <array>
#include <cfenv>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "surflab/code.hpp"
#include "surflab/matching.hpp"
#include "surflab/syndrome.hpp"

namespace surflab {

/// log((1-p)/p) in fixed point: six decimal digits, ties to even.
inline int64_t scaled_log_likelihood_ratio(double p) {
    double w = std::log((1.0 - p) / p) * 1e6;
    return static_cast<int64_t>(std::nearbyint(w));  // FE_TONEAREST = half-even
}

/// Decoder priors and derived anisotropic weights. Horizontal (qubit) moves
/// cost weight_h per link, vertical (round) moves cost weight_v.
struct DecoderConfig {
    double p = 0.01;
    double q = 0.01;
    int window_rounds = 0;  // overlapping-recovery window; 0 when unused
    int64_t weight_h = 0;
    int64_t weight_v = 0;
};

inline DecoderConfig make_decoder_config(double p, double q, int window_rounds = 0) {
    if (!(p > 0 && p < 0.5) || !(q > 0 && q < 0.5)) {
        throw std::invalid_argument("decoder priors must lie in (0, 1/2)");
    }
    if (window_rounds < 0) {
        throw std::invalid_argument("window_rounds must be non-negative");
    }
    DecoderConfig cfg;
    cfg.p = p;
    cfg.q = q;
    cfg.window_rounds = window_rounds;
    cfg.weight_h = scaled_log_likelihood_ratio(p);
    cfg.weight_v = scaled_log_likelihood_ratio(q);
    return cfg;
}

namespace detail {

inline int check_degree(Sector sector) {
    return sector == Sector::z ? 0 : 2;
}

/// Moves a check one step along `axis` (dir = +1 or -1) and reports the link
/// crossed. Works for sites (Z sector) and plaquettes (X sector) on toric and
/// planar lattices; coordinates may leave the grid on the final step of a
/// path into a planar boundary.
inline uint32_t step_check(const Lattice& lat, Sector sector, std::array<int, 4>& c, int axis, int dir) {
    const int L = lat.extent();
    const bool periodic = lat.boundary_kind() == BoundaryKind::periodic;
    // which of the two candidate links is crossed: the one at the coordinates
    // before the move (pre) or after it (post)
    bool post_on_positive = sector == Sector::x;
    if (!periodic && axis == lat.rough_axis()) {
        post_on_positive = !post_on_positive;
    }
    uint32_t orientation = sector == Sector::z ? (1u << axis) : (1u << (1 - axis));
    auto link_at = [&](const std::array<int, 4>& coords) { return lat.cell_id(1, orientation, coords); };

    uint32_t link = 0;
    if (dir > 0) {
        if (post_on_positive) {
            c[axis] += 1;
            if (periodic) {
                c[axis] %= L;
            }
            link = link_at(c);
        } else {
            link = link_at(c);
            c[axis] += 1;
            if (periodic) {
                c[axis] %= L;
            }
        }
    } else {
        if (post_on_positive) {
            link = link_at(c);
            c[axis] -= 1;
            if (periodic) {
                c[axis] = (c[axis] + L) % L;
            }
        } else {
            c[axis] -= 1;
            if (periodic) {
                c[axis] = (c[axis] + L) % L;
            }
            link = link_at(c);
        }
    }
    return link;
}

/// Signed per-axis displacement of the canonical minimal path from a to b:
/// shortest wraparound direction on the torus, positive direction on a tie.
inline int canonical_delta(int from, int to, int extent, bool periodic) {
    if (!periodic) {
        return to - from;
    }
    int forward = ((to - from) % extent + extent) % extent;
    if (forward <= extent - forward) {
        return forward;  // ties go in the positive direction
    }
    return forward - extent;
}

}  // namespace detail

/// Number of links on a minimal path between two same-type checks.
inline int check_distance(const SurfaceCode& code, Sector sector, uint32_t a, uint32_t b) {
    const Lattice& lat = code.lattice;
    int k = detail::check_degree(sector);
    auto ra = lat.cell_ref(k, a), rb = lat.cell_ref(k, b);
    bool periodic = lat.boundary_kind() == BoundaryKind::periodic;
    int d = 0;
    for (int axis = 0; axis < 2; ++axis) {
        d += std::abs(detail::canonical_delta(ra.coords[axis], rb.coords[axis], lat.extent(), periodic));
    }
    return d;
}

/// Distance from a check to its admissible planar boundary (rough edges for
/// site defects, smooth edges for plaquette defects).
inline int boundary_distance(const SurfaceCode& code, Sector sector, uint32_t check) {
    const Lattice& lat = code.lattice;
    if (lat.boundary_kind() != BoundaryKind::planar) {
        throw std::logic_error("boundary_distance is only defined for planar codes");
    }
    int k = detail::check_degree(sector);
    auto ref = lat.cell_ref(k, check);
    int axis = sector == Sector::z ? lat.rough_axis() : 1 - lat.rough_axis();
    int pos = ref.coords[axis];
    // both check grids have extent L-1 along their admissible axis
    int extent = lat.extent() - 1;
    return std::min(pos + 1, extent - pos);
}

/// Canonical minimal path between two checks: axis 0 first, then axis 1, the
/// shorter way around on the torus (positive direction on ties).
inline Chain canonical_path(const SurfaceCode& code, Sector sector, uint32_t a, uint32_t b) {
    const Lattice& lat = code.lattice;
    int k = detail::check_degree(sector);
    auto ra = lat.cell_ref(k, a), rb = lat.cell_ref(k, b);
    bool periodic = lat.boundary_kind() == BoundaryKind::periodic;
    ChainBuilder path(1, code.n_qubits());
    auto c = ra.coords;
    for (int axis = 0; axis < 2; ++axis) {
        int delta = detail::canonical_delta(c[axis], rb.coords[axis], lat.extent(), periodic);
        int dir = delta >= 0 ? 1 : -1;
        for (int step = 0; step < std::abs(delta); ++step) {
            path.toggle(detail::step_check(lat, sector, c, axis, dir));
        }
    }
    return path.take();
}

/// Canonical minimal path from a check to its nearest admissible planar
/// boundary (ties resolved toward the north/west side).
inline Chain boundary_path(const SurfaceCode& code, Sector sector, uint32_t check) {
    const Lattice& lat = code.lattice;
    int k = detail::check_degree(sector);
    auto ref = lat.cell_ref(k, check);
    int axis = sector == Sector::z ? lat.rough_axis() : 1 - lat.rough_axis();
    int pos = ref.coords[axis];
    int extent = lat.extent() - 1;
    int toward_low = pos + 1, toward_high = extent - pos;
    int dir = toward_low <= toward_high ? -1 : 1;
    int steps = std::min(toward_low, toward_high);
    ChainBuilder path(1, code.n_qubits());
    auto c = ref.coords;
    for (int step = 0; step < steps; ++step) {
        path.toggle(detail::step_check(lat, sector, c, axis, dir));
    }
    return path.take();
}

struct DecodeResult {
    Chain correction{1};
    Matching matching;        // weights include the tie-break perturbation
    int64_t base_weight = 0;  // matched weight in unperturbed units
    // matched real-real pairs and boundary-matched checks, for trial dumps
    std::vector<std::pair<uint32_t, uint32_t>> paired_checks;
    std::vector<uint32_t> boundary_matched;
};

namespace detail {

/// Shared 2D/3D matching-and-lift machinery. Events carry a round (0 in the
/// 2D case). Boundary nodes are one virtual node per real event (planar
/// spatial boundary and, in windowed mode, the open time boundary), with
/// virtual-virtual edges of weight zero.
struct SpacetimeDecodeSpec {
    std::vector<SpacetimeEvent> events;
    int64_t weight_h = 1;
    int64_t weight_v = 0;
    bool allow_time_boundary = false;
    int top_round = 0;  // first unmeasured round, when allow_time_boundary
};

struct SpacetimeDecodeOutcome {
    DecodeResult result;
    // per event: -2 not boundary, -1 spatial boundary, otherwise partner index
    std::vector<int> partner;
    std::vector<uint8_t> matched_to_time;  // per event
};

/// Deterministic 8-bit tie-break keyed on edge content (check ids only), so
/// the same degenerate subproblem resolves the same way no matter which
/// decode window or node ordering it appears in.
inline uint64_t pair_tiebreak(uint32_t a, uint32_t b) {
    uint64_t z = (static_cast<uint64_t>(std::min(a, b)) << 32) | std::max(a, b);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return (z ^ (z >> 31)) & 0xff;
}

inline SpacetimeDecodeOutcome decode_events(
    const SurfaceCode& code, Sector sector, const SpacetimeDecodeSpec& spec) {
    const bool planar = code.lattice.boundary_kind() == BoundaryKind::planar;
    const auto& events = spec.events;
    const int n = static_cast<int>(events.size());
    SpacetimeDecodeOutcome out;
    out.partner.assign(n, -2);
    out.matched_to_time.assign(n, 0);
    if (n == 0) {
        return out;
    }
    const bool use_virtual = planar || spec.allow_time_boundary;
    if (!use_virtual && n % 2 != 0) {
        throw std::invalid_argument("toric defect/event count must be even");
    }

    // Edge weights are base * scale + tiebreak. The scale exceeds any
    // possible tie-break sum, so optima are compared by base weight first
    // and by the deterministic perturbation second.
    const int n_nodes = use_virtual ? 2 * n : n;
    int64_t scale = 1;
    while (scale <= static_cast<int64_t>(n_nodes / 2 + 1) * 256) {
        scale *= 2;
    }
    // keep every scaled weight far below the matcher's own transform headroom
    const int64_t base_limit = std::numeric_limits<int64_t>::max() / (16 * static_cast<int64_t>(n_nodes + 2) * scale);
    auto guard_base = [&](int64_t base) {
        if (base > base_limit) {
            throw std::invalid_argument("decode weights too large for exact tie-broken matching");
        }
        return base;
    };

    MatchingProblem problem;
    problem.n_nodes = n_nodes;
    std::vector<std::vector<int64_t>> base(n_nodes, std::vector<int64_t>(n_nodes, 0));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            int64_t w = static_cast<int64_t>(check_distance(code, sector, events[i].check, events[j].check)) *
                            spec.weight_h +
                        static_cast<int64_t>(std::abs(events[i].round - events[j].round)) * spec.weight_v;
            base[i][j] = base[j][i] = guard_base(w);
            problem.add_edge(i, j, w * scale + static_cast<int64_t>(pair_tiebreak(events[i].check, events[j].check)));
        }
    }
    std::vector<int64_t> spatial_cost(n, -1), time_cost(n, -1);
    if (use_virtual) {
        for (int i = 0; i < n; ++i) {
            int64_t best = -1;
            if (planar) {
                spatial_cost[i] = static_cast<int64_t>(boundary_distance(code, sector, events[i].check)) *
                                  spec.weight_h;
                best = spatial_cost[i];
            }
            if (spec.allow_time_boundary) {
                time_cost[i] = static_cast<int64_t>(spec.top_round - events[i].round) * spec.weight_v;
                best = best < 0 ? time_cost[i] : std::min(best, time_cost[i]);
            }
            base[i][n + i] = base[n + i][i] = guard_base(best);
            problem.add_edge(i, n + i, best * scale + static_cast<int64_t>(pair_tiebreak(events[i].check, UINT32_MAX)));
            for (int j = i + 1; j < n; ++j) {
                problem.add_edge(n + i, n + j, 0);
            }
        }
    }

    Matching matching = min_weight_perfect_matching(problem);
    ChainBuilder correction(1, code.n_qubits());
    for (auto [u, v] : matching.pairs) {
        if (u >= static_cast<uint32_t>(n)) {
            continue;  // virtual-virtual
        }
        out.result.base_weight += base[u][v];
        if (v >= static_cast<uint32_t>(n)) {
            // real-virtual: spatial boundary wins ties against the open time
            // boundary, so matched histories stay as resolved as possible
            int i = static_cast<int>(u);
            bool spatial = planar && (!spec.allow_time_boundary || spatial_cost[i] <= time_cost[i]);
            if (spatial) {
                out.partner[i] = -1;
                for (uint32_t link : boundary_path(code, sector, events[i].check).cells) {
                    correction.toggle(link);
                }
                out.result.boundary_matched.push_back(events[i].check);
            } else {
                out.matched_to_time[i] = 1;
            }
            continue;
        }
        out.partner[u] = static_cast<int>(v);
        out.partner[v] = static_cast<int>(u);
        for (uint32_t link : canonical_path(code, sector, events[u].check, events[v].check).cells) {
            correction.toggle(link);
        }
        out.result.paired_checks.emplace_back(events[u].check, events[v].check);
    }
    out.result.correction = correction.take();
    out.result.matching = std::move(matching);
    return out;
}

}  // namespace detail

/// Minimum-weight correction for a perfect-measurement syndrome. The defect
/// chain degree selects the sector (0-chains are site defects, 2-chains are
/// plaquette defects). Returns a correction whose relative boundary equals
/// the defects.
inline DecodeResult decode_2d_full(const SurfaceCode& code, const Chain& defects, const DecoderConfig& cfg) {
    Sector sector;
    if (defects.degree == 0) {
        sector = Sector::z;
    } else if (defects.degree == 2) {
        sector = Sector::x;
    } else {
        throw std::invalid_argument("defects must be a 0-chain (sites) or 2-chain (plaquettes)");
    }
    detail::SpacetimeDecodeSpec spec;
    spec.weight_h = cfg.weight_h;
    spec.weight_v = 0;
    for (uint32_t check : defects.cells) {
        spec.events.push_back({check, 0});
    }
    return detail::decode_events(code, sector, spec).result;
}

inline Chain decode_2d(const SurfaceCode& code, const Chain& defects, const DecoderConfig& cfg) {
    return decode_2d_full(code, defects, cfg).correction;
}

/// Spacetime decoding of detection events from a closed syndrome history
/// (trailing perfect round): anisotropic minimum-weight matching, lifted to
/// minimal spacetime paths and projected onto the final time slice.
inline DecodeResult decode_3d_full(
    const SurfaceCode& code, Sector sector, const std::vector<SpacetimeEvent>& events, const DecoderConfig& cfg) {
    detail::SpacetimeDecodeSpec spec;
    spec.events = events;
    spec.weight_h = cfg.weight_h;
    spec.weight_v = cfg.weight_v;
    return detail::decode_events(code, sector, spec).result;
}

struct SpacetimeCorrections {
    Chain z_correction{1};
    Chain x_correction{1};
};

inline SpacetimeCorrections decode_3d(const SurfaceCode& code, const MonopoleSet& events, const DecoderConfig& cfg) {
    SpacetimeCorrections out;
    out.z_correction = decode_3d_full(code, Sector::z, events.site_events, cfg).correction;
    out.x_correction = decode_3d_full(code, Sector::x, events.plaq_events, cfg).correction;
    return out;
}

/// Exhaustive maximum-likelihood decoder for codes with at most 16 qubits.
/// Classes are labeled relative to the canonical minimum-weight correction:
/// the returned bits are the homology offset of the most probable class from
/// decode_2d's correction for the same syndrome.
class MaxLikelihoodDecoder {
   public:
    MaxLikelihoodDecoder(const SurfaceCode& code, Sector sector, double p)
        : code_(code), sector_(sector), n_(static_cast<int>(code.n_qubits())) {
        if (code.n_qubits() > 16) {
            throw std::invalid_argument("maximum-likelihood decoding is limited to 16 qubits");
        }
        if (!(p > 0 && p < 1)) {
            throw std::invalid_argument("error rate must lie in (0, 1)");
        }
        const Lattice& lat = code_.lattice;
        size_t n_checks = sector == Sector::z ? code.n_sites() : code.n_plaquettes();
        check_mask_.assign(n_, 0);
        class_mask_.assign(n_, 0);
        for (int link = 0; link < n_; ++link) {
            auto checks = sector == Sector::z ? lat.boundary_of_cell(1, link) : lat.coboundary_of_cell(1, link);
            for (uint32_t c : checks) {
                check_mask_[link] |= uint32_t{1} << c;
            }
            for (int k = 0; k < code.n_logical; ++k) {
                const Chain& probe = sector == Sector::z ? code.logical_x[k] : code.logical_z[k];
                if (probe.contains(static_cast<uint32_t>(link))) {
                    class_mask_[link] |= uint32_t{1} << k;
                }
            }
        }

        // weight by error multiplicity
        std::vector<double> w(n_ + 1);
        for (int k = 0; k <= n_; ++k) {
            w[k] = std::pow(p, k) * std::pow(1 - p, n_ - k);
        }
        std::map<uint32_t, std::array<double, 4>> sums;
        uint32_t n_patterns = 1u << n_;
        for (uint32_t mask = 0; mask < n_patterns; ++mask) {
            uint32_t syndrome = 0, cls = 0;
            for (int link = 0; link < n_; ++link) {
                if ((mask >> link) & 1u) {
                    syndrome ^= check_mask_[link];
                    cls ^= class_mask_[link];
                }
            }
            auto [it, inserted] = sums.try_emplace(syndrome, std::array<double, 4>{0, 0, 0, 0});
            it->second[cls] += w[__builtin_popcount(mask)];
        }
        (void)n_checks;

        // re-express classes relative to the canonical correction
        DecoderConfig cfg = make_decoder_config(std::min(p, 0.49), std::min(p, 0.49));
        for (auto& [syndrome, probs] : sums) {
            Chain defects(sector == Sector::z ? 0 : 2);
            for (uint32_t c = 0; c < 32; ++c) {
                if ((syndrome >> c) & 1u) {
                    defects.cells.push_back(c);
                }
            }
            uint32_t ref_cls = 0;
            for (uint32_t link : decode_2d(code_, defects, cfg).cells) {
                ref_cls ^= class_mask_[link];
            }
            std::array<double, 4> rel{0, 0, 0, 0};
            for (uint32_t cls = 0; cls < 4; ++cls) {
                rel[cls ^ ref_cls] = probs[cls];
            }
            uint32_t best = 0;
            for (uint32_t cls = 1; cls < 4; ++cls) {
                if (rel[cls] > rel[best]) {
                    best = cls;  // ties stay with the lower label, trivial first
                }
            }
            table_[syndrome] = best;
            class_probs_[syndrome] = rel;
        }
    }

    /// Most probable class offset from the canonical correction.
    uint32_t decode_class_bits(const Chain& defects) const {
        uint32_t key = 0;
        for (uint32_t c : defects.cells) {
            key |= uint32_t{1} << c;
        }
        auto it = table_.find(key);
        if (it == table_.end()) {
            throw std::invalid_argument("syndrome is not reachable by any error pattern");
        }
        return it->second;
    }

    /// Exact class probabilities (relative labels), for dominance analysis.
    const std::array<double, 4>& class_probabilities(const Chain& defects) const {
        uint32_t key = 0;
        for (uint32_t c : defects.cells) {
            key |= uint32_t{1} << c;
        }
        return class_probs_.at(key);
    }

    uint32_t class_bits_of_chain(const Chain& chain) const {
        uint32_t cls = 0;
        for (uint32_t link : chain.cells) {
            cls ^= class_mask_[link];
        }
        return cls;
    }

   private:
    const SurfaceCode& code_;
    Sector sector_;
    int n_;
    std::vector<uint32_t> check_mask_, class_mask_;
    std::map<uint32_t, uint32_t> table_;
    std::map<uint32_t, std::array<double, 4>> class_probs_;
};

inline HomologyClass decode_ml(const SurfaceCode& code, const Chain& defects, double p) {
    if (defects.degree != 0 && defects.degree != 2) {
        throw std::invalid_argument("defects must be a 0-chain (sites) or 2-chain (plaquettes)");
    }
    Sector sector = defects.degree == 0 ? Sector::z : Sector::x;
    MaxLikelihoodDecoder decoder(code, sector, p);
    HomologyClass cls;
    cls.n_generators = code.n_logical;
    cls.bits = decoder.decode_class_bits(defects);
    return cls;
}

/// Overlapping recovery: events whose matched chains are wholly confined to
/// the older half of the decode window are finalized and erased; everything
/// else is carried forward.
struct WindowState {
    std::vector<SpacetimeEvent> retained;
    int rounds_consumed = 0;
};

inline Chain window_step(
    WindowState& state,
    const SurfaceCode& code,
    Sector sector,
    const std::vector<SpacetimeEvent>& new_events,
    const DecoderConfig& cfg) {
    if (cfg.window_rounds < 1) {
        throw std::invalid_argument("window_step needs window_rounds >= 1");
    }
    const int old_cut = state.rounds_consumed;
    const int top = state.rounds_consumed + cfg.window_rounds;
    for (const auto& e : new_events) {
        if (e.round < old_cut || e.round >= top) {
            throw std::invalid_argument("new events must be timestamped within the incoming window");
        }
    }
    detail::SpacetimeDecodeSpec spec;
    spec.events = state.retained;
    spec.events.insert(spec.events.end(), new_events.begin(), new_events.end());
    spec.weight_h = cfg.weight_h;
    spec.weight_v = cfg.weight_v;
    spec.allow_time_boundary = true;
    spec.top_round = top;
    auto outcome = detail::decode_events(code, sector, spec);

    ChainBuilder finalized(1, code.n_qubits());
    std::vector<SpacetimeEvent> keep;
    const auto& events = spec.events;
    for (size_t i = 0; i < events.size(); ++i) {
        int partner = outcome.partner[i];
        if (outcome.matched_to_time[i]) {
            keep.push_back(events[i]);
            continue;
        }
        if (partner == -1) {  // spatial boundary
            if (events[i].round < old_cut) {
                for (uint32_t link : boundary_path(code, sector, events[i].check).cells) {
                    finalized.toggle(link);
                }
            } else {
                keep.push_back(events[i]);
            }
            continue;
        }
        if (partner >= 0 && static_cast<size_t>(partner) > i) {
            const auto& a = events[i];
            const auto& b = events[partner];
            if (a.round < old_cut && b.round < old_cut) {
                for (uint32_t link : canonical_path(code, sector, a.check, b.check).cells) {
                    finalized.toggle(link);
                }
            } else {
                keep.push_back(a);
                keep.push_back(b);
            }
        }
    }
    state.retained = std::move(keep);
    state.rounds_consumed = top;
    return finalized.take();
}

/// Closes a windowed history after its trailing perfect round: decodes all
/// retained events without an open time boundary and finalizes everything.
inline Chain window_flush(WindowState& state, const SurfaceCode& code, Sector sector, const DecoderConfig& cfg) {
    detail::SpacetimeDecodeSpec spec;
    spec.events = std::move(state.retained);
    spec.weight_h = cfg.weight_h;
    spec.weight_v = cfg.weight_v;
    auto outcome = detail::decode_events(code, sector, spec);
    state.retained.clear();
    return outcome.result.correction;
}

/// Destructive logical readout: per-qubit measurement bits are cleaned up by
/// decoding the classical parity-check defects, then the logical value is the
/// corrected parity along the logical representative.
///   basis = Sector::z reads logical Z (bits are Z-basis outcomes);
///   basis = Sector::x reads logical X.
inline int readout_logical(
    const SurfaceCode& code,
    const std::vector<uint8_t>& measured_bits,
    Sector basis,
    const DecoderConfig& cfg,
    int qubit = 0) {
    if (measured_bits.size() != code.n_qubits()) {
        throw std::invalid_argument("need one measured bit per qubit");
    }
    if (qubit < 0 || qubit >= code.n_logical) {
        throw std::invalid_argument("no such encoded qubit");
    }
    // Z-basis bits violate plaquette checks (bit flips look like X errors);
    // X-basis bits violate site checks.
    Chain defects(basis == Sector::z ? 2 : 0);
    const auto& checks = basis == Sector::z ? code.z_checks : code.x_checks;
    for (uint32_t c = 0; c < checks.size(); ++c) {
        int parity = 0;
        for (uint32_t link : checks[c]) {
            parity ^= measured_bits[link];
        }
        if (parity) {
            defects.cells.push_back(c);
        }
    }
    Chain correction = decode_2d(code, defects, cfg);
    const Chain& representative = basis == Sector::z ? code.logical_z[qubit] : code.logical_x[qubit];
    int value = 0;
    for (uint32_t link : representative.cells) {
        value ^= measured_bits[link];
        if (correction.contains(link)) {
            value ^= 1;
        }
    }
    return value;
}

}  // namespace surflab

#endif
