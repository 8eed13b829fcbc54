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

#ifndef SURFLAB_LOCAL4D_H
#define SURFLAB_LOCAL4D_H

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "surflab/lattice.hpp"
#include "surflab/rng.hpp"

namespace surflab {

/// One sector of the 4D toric code: qubit values on the 6L^4 plaquettes of a
/// periodic hypercubic lattice, with the derived string syndrome on links
/// (a link is "string" when an odd number of the six plaquettes containing
/// it are flipped). The cube-operator sector is symmetric and not duplicated.
class FourDState {
   public:
    explicit FourDState(int L)
        : lattice_(build_lattice(4, L, BoundaryKind::periodic)),
          plaq_(lattice_.cell_count(2), 0),
          string_(lattice_.cell_count(1), 0) {
        plaq_links_.resize(plaq_.size());
        for (uint32_t p = 0; p < plaq_.size(); ++p) {
            auto links = lattice_.boundary_of_cell(2, p);
            for (int i = 0; i < 4; ++i) {
                plaq_links_[p][i] = links[i];
            }
        }
        build_schedule();
    }

    const Lattice& lattice() const {
        return lattice_;
    }
    int extent() const {
        return lattice_.extent();
    }
    size_t n_plaquettes() const {
        return plaq_.size();
    }
    size_t n_links() const {
        return string_.size();
    }
    bool plaquette_value(uint32_t p) const {
        return plaq_[p] != 0;
    }
    bool link_is_string(uint32_t link) const {
        return string_[link] != 0;
    }
    long string_length() const {
        return string_length_;
    }

    int string_count(uint32_t p) const {
        int s = 0;
        for (uint32_t link : plaq_links_[p]) {
            s += string_[link];
        }
        return s;
    }

    void flip_plaquette(uint32_t p) {
        plaq_[p] ^= 1;
        for (uint32_t link : plaq_links_[p]) {
            string_[link] ^= 1;
            string_length_ += string_[link] ? 1 : -1;
        }
    }

    /// Nonoverlapping update sets: within one set no two plaquettes share a
    /// link. Sets are keyed by (orientation, coordinate classes along the two
    /// spanned axes) and applied round-robin in this frozen order.
    const std::vector<std::vector<uint32_t>>& schedule_sets() const {
        return schedule_;
    }

   private:
    void build_schedule() {
        const int L = lattice_.extent();
        // along each spanned axis, adjacent coordinates must differ in class;
        // odd extents need a third class for the wraparound column
        auto coord_class = [L](int x) { return (L % 2 == 1 && x == L - 1) ? 2 : x % 2; };
        const int n_classes = (L % 2 == 1) ? 3 : 2;
        schedule_.assign(6 * n_classes * n_classes, {});
        for (uint32_t p = 0; p < plaq_.size(); ++p) {
            auto ref = lattice_.cell_ref(2, p);
            int axes[2], n_axes = 0;
            for (int a = 0; a < 4; ++a) {
                if ((ref.orientation >> a) & 1u) {
                    axes[n_axes++] = a;
                }
            }
            int rank = 0;
            for (int r = 0; r < 6; ++r) {
                if (lattice_.orientation_mask(2, r) == ref.orientation) {
                    rank = r;
                }
            }
            int slot = (rank * n_classes + coord_class(ref.coords[axes[0]])) * n_classes +
                       coord_class(ref.coords[axes[1]]);
            schedule_[slot].push_back(p);
        }
    }

    Lattice lattice_;
    std::vector<uint8_t> plaq_;
    std::vector<uint8_t> string_;
    std::vector<std::array<uint32_t, 4>> plaq_links_;
    std::vector<std::vector<uint32_t>> schedule_;
    long string_length_ = 0;
};

inline FourDState build_4d_toric(int L) {
    if (L < 2 || L > 5) {
        throw std::invalid_argument("4d state supports 2 <= L <= 5");
    }
    return FourDState(L);
}

/// The local recovery rule: always flip on 3 or 4 string links, never on 0
/// or 1, fair coin on 2.
inline bool local_rule_flips(int n_string_links, Rng& rng) {
    if (n_string_links >= 3) {
        return true;
    }
    if (n_string_links == 2) {
        return rng.bernoulli(0.5);
    }
    return false;
}

/// Heat-bath comparison rule: flip probability 1/(1 + exp(beta * dE)) with
/// dE = 4 - 2s, which satisfies the Boltzmann ratios exp(-4 beta) for the
/// 0 <-> 4 transitions and exp(-2 beta) for 1 <-> 3.
inline bool heat_bath_flips(int n_string_links, double beta, Rng& rng) {
    double d_e = 4.0 - 2.0 * n_string_links;
    double p_flip = 1.0 / (1.0 + std::exp(beta * d_e));
    return rng.bernoulli(p_flip);
}

/// One full recovery round: every schedule set applied once in frozen order.
/// Without fresh noise the total string length never increases.
inline void local_update_round(FourDState& state, Rng& rng) {
    for (const auto& set : state.schedule_sets()) {
        for (uint32_t p : set) {
            if (local_rule_flips(state.string_count(p), rng)) {
                state.flip_plaquette(p);
            }
        }
    }
}

inline void heat_bath_round(FourDState& state, double beta, Rng& rng) {
    if (beta < 0) {
        throw std::invalid_argument("inverse temperature must be non-negative");
    }
    for (const auto& set : state.schedule_sets()) {
        for (uint32_t p : set) {
            if (heat_bath_flips(state.string_count(p), beta, rng)) {
                state.flip_plaquette(p);
            }
        }
    }
}

/// Independent qubit errors: each plaquette flips with the given rate.
inline void inject_plaquette_noise(FourDState& state, double rate, Rng& rng) {
    for (uint32_t p = 0; p < state.n_plaquettes(); ++p) {
        if (rng.bernoulli(rate)) {
            state.flip_plaquette(p);
        }
    }
}

/// Homology class of a string-free plaquette configuration: bit per
/// orientation pair, the parity of flipped plaquettes on the transversal
/// with both spanned coordinates zero. Requires an empty string syndrome.
inline uint32_t surface_class_bits(const FourDState& state) {
    if (state.string_length() != 0) {
        throw std::invalid_argument("surface classification needs an empty string syndrome");
    }
    const Lattice& lat = state.lattice();
    uint32_t bits = 0;
    for (uint32_t p = 0; p < state.n_plaquettes(); ++p) {
        if (!state.plaquette_value(p)) {
            continue;
        }
        auto ref = lat.cell_ref(2, p);
        bool on_transversal = true;
        for (int a = 0; a < 4; ++a) {
            if (((ref.orientation >> a) & 1u) && ref.coords[a] != 0) {
                on_transversal = false;
            }
        }
        if (!on_transversal) {
            continue;
        }
        for (int r = 0; r < 6; ++r) {
            if (lat.orientation_mask(2, r) == ref.orientation) {
                bits ^= 1u << r;
            }
        }
    }
    return bits;
}

struct RelaxationResult {
    std::vector<long> string_length_series;  // after each noisy recovery round
    bool cleaned = false;                    // cleanup reached an empty syndrome
    long cleanup_rounds = 0;
    bool logical_failure = false;
};

/// Noisy relaxation: alternate plaquette noise injection with recovery
/// rounds, then classify the residual error using the noiseless rule run to
/// convergence as the reliable classical cleanup.
inline RelaxationResult relaxation_experiment(int L, double noise_rate, int n_rounds, Rng& rng) {
    if (noise_rate < 0 || noise_rate > 1) {
        throw std::invalid_argument("noise rate must lie in [0, 1]");
    }
    if (n_rounds < 0) {
        throw std::invalid_argument("round count must be non-negative");
    }
    FourDState state = build_4d_toric(L);
    RelaxationResult result;
    result.string_length_series.reserve(n_rounds);
    for (int round = 0; round < n_rounds; ++round) {
        inject_plaquette_noise(state, noise_rate, rng);
        local_update_round(state, rng);
        result.string_length_series.push_back(state.string_length());
    }
    const long max_cleanup = 200000;
    while (state.string_length() != 0 && result.cleanup_rounds < max_cleanup) {
        local_update_round(state, rng);
        ++result.cleanup_rounds;
    }
    result.cleaned = state.string_length() == 0;
    result.logical_failure = !result.cleaned || surface_class_bits(state) != 0;
    return result;
}

}  // namespace surflab

#endif
