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

#ifndef SURFLAB_CODE_H
#define SURFLAB_CODE_H

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "surflab/chain.hpp"
#include "surflab/lattice.hpp"

namespace surflab {

/// Error sector. Z errors are detected by the X-type site checks; X errors
/// are detected by the Z-type plaquette checks (on the dual lattice).
enum class Sector { z, x };

struct PauliErrorState {
    Chain x_errors{1};
    Chain z_errors{1};
};

enum class PauliAction : uint8_t { i, x, z, y };

struct LogicalAction {
    std::vector<PauliAction> qubits;

    bool identity() const {
        for (PauliAction a : qubits) {
            if (a != PauliAction::i) {
                return false;
            }
        }
        return true;
    }
};

/// A toric or planar surface code. Qubits live on the links of `lattice`;
/// check and logical supports are sets of link ids.
struct SurfaceCode {
    explicit SurfaceCode(Lattice lat) : lattice(std::move(lat)) {
    }

    Lattice lattice;
    std::vector<std::vector<uint32_t>> x_checks;  // indexed by site id
    std::vector<std::vector<uint32_t>> z_checks;  // indexed by plaquette id
    std::vector<Chain> logical_z;                 // per encoded qubit
    std::vector<Chain> logical_x;
    int n_logical = 0;
    int distance = 0;

    size_t n_qubits() const {
        return lattice.cell_count(1);
    }
    size_t n_sites() const {
        return lattice.cell_count(0);
    }
    size_t n_plaquettes() const {
        return lattice.cell_count(2);
    }
    bool is_toric() const {
        return lattice.boundary_kind() == BoundaryKind::periodic;
    }
};

namespace detail {

inline void verify_check_commutation(const SurfaceCode& code) {
    for (const auto& xs : code.x_checks) {
        for (const auto& zs : code.z_checks) {
            size_t overlap = 0;
            for (uint32_t link : xs) {
                for (uint32_t other : zs) {
                    if (link == other) {
                        ++overlap;
                    }
                }
            }
            if (overlap % 2 != 0) {
                throw std::logic_error("surface code construction produced anticommuting checks");
            }
        }
    }
}

inline void finish_code(SurfaceCode& code) {
    const Lattice& lat = code.lattice;
    code.x_checks.resize(lat.cell_count(0));
    for (uint32_t s = 0; s < lat.cell_count(0); ++s) {
        code.x_checks[s] = lat.coboundary_of_cell(0, s);
    }
    code.z_checks.resize(lat.cell_count(2));
    for (uint32_t p = 0; p < lat.cell_count(2); ++p) {
        code.z_checks[p] = lat.boundary_of_cell(2, p);
    }
    if (lat.extent() <= 6) {
        verify_check_commutation(code);
    }
}

}  // namespace detail

/// Toric code on an LxL periodic lattice: 2L^2 qubits, two encoded qubits,
/// distance L. Encoded qubit 0 winds along axis 0, qubit 1 along axis 1.
inline SurfaceCode build_toric_code(int L) {
    if (L < 2) {
        throw std::invalid_argument("toric code needs L >= 2");
    }
    SurfaceCode code(build_lattice(2, L, BoundaryKind::periodic));
    const Lattice& lat = code.lattice;
    code.n_logical = 2;
    code.distance = L;

    Chain z0(1), x0(1), z1(1), x1(1);
    for (int c = 0; c < L; ++c) {
        z0.cells.push_back(lat.cell_id(1, 0b01, {c, 0, 0, 0}));  // row of axis-0 links
        x0.cells.push_back(lat.cell_id(1, 0b01, {0, c, 0, 0}));  // column of axis-0 links
        z1.cells.push_back(lat.cell_id(1, 0b10, {0, c, 0, 0}));  // column of axis-1 links
        x1.cells.push_back(lat.cell_id(1, 0b10, {c, 0, 0, 0}));  // row of axis-1 links
    }
    for (Chain* c : {&z0, &x0, &z1, &x1}) {
        std::sort(c->cells.begin(), c->cells.end());
    }
    code.logical_z = {z0, z1};
    code.logical_x = {x0, x1};
    detail::finish_code(code);
    return code;
}

/// Planar code of distance L with rough north/south edges: L^2 + (L-1)^2
/// qubits, one encoded qubit. The logical Z runs rough-to-rough along the
/// westernmost column; the logical X runs smooth-to-smooth along the
/// northernmost row of the dual lattice.
inline SurfaceCode build_planar_code(int L) {
    if (L < 2) {
        throw std::invalid_argument("planar code needs L >= 2");
    }
    SurfaceCode code(build_lattice(2, L, BoundaryKind::planar, PlanarEdgeLabels{}));
    const Lattice& lat = code.lattice;
    code.n_logical = 1;
    code.distance = L;

    Chain z0(1), x0(1);
    for (int c = 0; c < L; ++c) {
        z0.cells.push_back(lat.cell_id(1, 0b10, {0, c, 0, 0}));
        x0.cells.push_back(lat.cell_id(1, 0b10, {c, 0, 0, 0}));
    }
    std::sort(z0.cells.begin(), z0.cells.end());
    std::sort(x0.cells.begin(), x0.cells.end());
    code.logical_z = {z0};
    code.logical_x = {x0};
    detail::finish_code(code);
    return code;
}

struct SyndromePair {
    Chain site_defects{0};  // boundary points of the Z-error chain
    Chain plaq_defects{2};  // dual boundary points of the X-error chain
};

inline SyndromePair syndrome_of(const SurfaceCode& code, const PauliErrorState& errors) {
    const Lattice& lat = code.lattice;
    SyndromePair out;
    {
        ChainBuilder sites(0, lat.cell_count(0));
        for (uint32_t link : errors.z_errors.cells) {
            for (uint32_t s : lat.boundary_of_cell(1, link)) {
                sites.toggle(s);
            }
        }
        out.site_defects = sites.take();
    }
    {
        ChainBuilder plaqs(2, lat.cell_count(2));
        for (uint32_t link : errors.x_errors.cells) {
            for (uint32_t p : lat.coboundary_of_cell(1, link)) {
                plaqs.toggle(p);
            }
        }
        out.plaq_defects = plaqs.take();
    }
    return out;
}

namespace detail {

inline size_t overlap_parity(const Chain& a, const Chain& b) {
    size_t n = 0;
    auto it = a.cells.begin();
    for (uint32_t cell : b.cells) {
        it = std::lower_bound(it, a.cells.end(), cell);
        if (it != a.cells.end() && *it == cell) {
            ++n;
        }
    }
    return n % 2;
}

/// Checks that a link set is a cycle of the dual lattice (even overlap with
/// every plaquette boundary); throws naming an offending plaquette.
inline void require_dual_cycle(const SurfaceCode& code, const Chain& chain) {
    std::vector<uint8_t> parity(code.n_plaquettes(), 0);
    for (uint32_t link : chain.cells) {
        for (uint32_t p : code.lattice.coboundary_of_cell(1, link)) {
            parity[p] ^= 1;
        }
    }
    for (uint32_t p = 0; p < parity.size(); ++p) {
        if (parity[p]) {
            throw std::invalid_argument(
                "residual X chain is not a dual cycle, odd at plaquette " + std::to_string(p));
        }
    }
}

}  // namespace detail

/// Per-qubit logical action of residual (relative) cycles. The Z residual
/// must be a cycle of the lattice and the X residual a cycle of the dual;
/// class bits are intersection parities with the opposite logical supports.
inline LogicalAction logical_effect(const SurfaceCode& code, const Chain& residual_z, const Chain& residual_x) {
    code.lattice.homology_class(residual_z);  // validates the primal cycle condition
    detail::require_dual_cycle(code, residual_x);

    LogicalAction action;
    action.qubits.resize(code.n_logical, PauliAction::i);
    for (int k = 0; k < code.n_logical; ++k) {
        bool z_bit = detail::overlap_parity(residual_z, code.logical_x[k]) != 0;
        bool x_bit = detail::overlap_parity(residual_x, code.logical_z[k]) != 0;
        if (z_bit && x_bit) {
            action.qubits[k] = PauliAction::y;
        } else if (z_bit) {
            action.qubits[k] = PauliAction::z;
        } else if (x_bit) {
            action.qubits[k] = PauliAction::x;
        }
    }
    return action;
}

/// Class bits of a residual chain in one sector (bit k set = logical on
/// encoded qubit k). Validates the (dual) cycle condition.
inline uint32_t residual_class_bits(const SurfaceCode& code, Sector sector, const Chain& residual) {
    if (sector == Sector::z) {
        code.lattice.homology_class(residual);
    } else {
        detail::require_dual_cycle(code, residual);
    }
    uint32_t bits = 0;
    for (int k = 0; k < code.n_logical; ++k) {
        const Chain& probe = sector == Sector::z ? code.logical_x[k] : code.logical_z[k];
        if (detail::overlap_parity(residual, probe)) {
            bits |= 1u << k;
        }
    }
    return bits;
}

}  // namespace surflab

#endif
