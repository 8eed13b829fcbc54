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

#ifndef SURFLAB_LATTICE_H
#define SURFLAB_LATTICE_H

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "surflab/chain.hpp"

namespace surflab {

enum class BoundaryKind { periodic, planar };
enum class EdgeLabel { rough, smooth };

/// Side labels for a planar lattice. Opposite sides must carry the same
/// label, and the two pairs must differ.
struct PlanarEdgeLabels {
    EdgeLabel north = EdgeLabel::rough;
    EdgeLabel south = EdgeLabel::rough;
    EdgeLabel east = EdgeLabel::smooth;
    EdgeLabel west = EdgeLabel::smooth;
};

/// Per-generator winding parities of a 1-cycle. Periodic d-dimensional
/// lattices have d generators (one per axis); planar lattices have one.
struct HomologyClass {
    uint32_t bits = 0;
    int n_generators = 0;

    bool trivial() const {
        return bits == 0;
    }
    bool bit(int g) const {
        return (bits >> g) & 1u;
    }
    bool operator==(const HomologyClass& other) const {
        return bits == other.bits && n_generators == other.n_generators;
    }
};

/// A d-dimensional hypercubic cell complex with either periodic boundary or
/// (for d=2) a planar boundary with two rough and two smooth sides.
///
/// Cell indexing, frozen so serialized chains are portable:
///   - Each degree k has its own id space starting at 0.
///   - k-cell orientations are the k-element axis subsets, ordered by
///     ascending bitmask (axis 0 = east/x, axis 1 = south/y, then z, t).
///   - Within an orientation block, coordinates are flattened row-major with
///     the last axis varying fastest.
///   - id = orientation block offset + flattened coordinates.
///
/// Planar lattices (axis 0 increasing east, axis 1 increasing south) place
/// cells so that no cell lies on a rough edge; the boundary operator is
/// therefore automatically relative to the rough edges. With north/south
/// rough, a distance-L lattice has L^2 links along axis 1 (columns of L
/// reach from rough edge to rough edge), (L-1)^2 links along axis 0,
/// L(L-1) sites and L(L-1) plaquettes.
class Lattice {
   public:
    int dimension() const {
        return d_;
    }
    int extent() const {
        return L_;
    }
    BoundaryKind boundary_kind() const {
        return kind_;
    }
    const PlanarEdgeLabels& edge_labels() const {
        return labels_;
    }
    /// Axis along which primal chains run from rough edge to rough edge.
    int rough_axis() const {
        return rough_axis_;
    }

    int orientation_count(int k) const {
        return static_cast<int>(orients_[k].size());
    }
    uint32_t orientation_mask(int k, int rank) const {
        return orients_[k][rank];
    }

    size_t cell_count(int k) const {
        return degree_size_[k];
    }

    size_t cell_count(int k, uint32_t orientation_mask) const {
        return block_size_[k][orient_rank(k, orientation_mask)];
    }

    uint32_t cell_id(int k, uint32_t orientation_mask, const std::array<int, 4>& coords) const {
        int rank = orient_rank(k, orientation_mask);
        uint32_t flat = 0;
        for (int a = 0; a < d_; ++a) {
            flat = flat * ext_[k][rank][a] + static_cast<uint32_t>(coords[a]);
        }
        return block_offset_[k][rank] + flat;
    }

    struct CellRef {
        uint32_t orientation = 0;  // axis-set bitmask
        std::array<int, 4> coords{};
    };

    CellRef cell_ref(int k, uint32_t id) const {
        int rank = 0;
        while (rank + 1 < static_cast<int>(orients_[k].size()) && id >= block_offset_[k][rank + 1]) {
            ++rank;
        }
        uint32_t flat = id - block_offset_[k][rank];
        CellRef ref;
        ref.orientation = orients_[k][rank];
        for (int a = d_ - 1; a >= 0; --a) {
            ref.coords[a] = static_cast<int>(flat % ext_[k][rank][a]);
            flat /= ext_[k][rank][a];
        }
        return ref;
    }

    bool cell_exists(int k, uint32_t orientation_mask, const std::array<int, 4>& coords) const {
        int rank = orient_rank(k, orientation_mask);
        for (int a = 0; a < d_; ++a) {
            if (coords[a] < 0 || coords[a] >= static_cast<int>(ext_[k][rank][a])) {
                return false;
            }
        }
        return true;
    }

    /// Cells of degree k-1 with odd incidence in the boundary of one k-cell.
    /// For planar lattices the would-be boundary points lying on a rough edge
    /// are not cells of the complex, so the result is the relative boundary.
    ///
    /// Planar geometry note: along the rough axis, a cell whose orientation
    /// contains that axis at coordinate j spans rows [j, j+1], while a cell
    /// without that axis at coordinate j sits at row j+1. Boundary steps
    /// along the rough axis therefore reach coordinates j-1 and j.
    std::vector<uint32_t> boundary_of_cell(int k, uint32_t id) const {
        if (k < 1 || k > d_) {
            throw std::invalid_argument("boundary requires 1 <= degree <= dimension");
        }
        CellRef ref = cell_ref(k, id);
        std::vector<uint32_t> out;
        out.reserve(2 * static_cast<size_t>(k));
        for (int a = 0; a < d_; ++a) {
            if (!((ref.orientation >> a) & 1u)) {
                continue;
            }
            uint32_t sub = ref.orientation & ~(1u << a);
            int lo = (kind_ == BoundaryKind::planar && a == rough_axis_) ? -1 : 0;
            for (int step = lo; step <= lo + 1; ++step) {
                auto shifted = ref.coords;
                shifted[a] = wrap(shifted[a] + step);
                append_cell_if_exists(k - 1, sub, shifted, out);
            }
        }
        return out;
    }

    /// Cells of degree k+1 containing one k-cell (relative coboundary: for
    /// planar lattices, would-be cofaces beyond a smooth edge do not exist).
    std::vector<uint32_t> coboundary_of_cell(int k, uint32_t id) const {
        if (k < 0 || k >= d_) {
            throw std::invalid_argument("coboundary requires 0 <= degree < dimension");
        }
        CellRef ref = cell_ref(k, id);
        std::vector<uint32_t> out;
        for (int a = 0; a < d_; ++a) {
            if ((ref.orientation >> a) & 1u) {
                continue;
            }
            uint32_t super = ref.orientation | (1u << a);
            int lo = (kind_ == BoundaryKind::planar && a == rough_axis_) ? 0 : -1;
            for (int step = lo; step <= lo + 1; ++step) {
                auto shifted = ref.coords;
                shifted[a] = wrap(shifted[a] + step);
                append_cell_if_exists(k + 1, super, shifted, out);
            }
        }
        return out;
    }

    Chain boundary(const Chain& chain) const {
        if (chain.degree < 1) {
            throw std::invalid_argument("boundary of a 0-chain is undefined");
        }
        ChainBuilder builder(chain.degree - 1, cell_count(chain.degree - 1));
        for (uint32_t cell : chain.cells) {
            for (uint32_t b : boundary_of_cell(chain.degree, cell)) {
                builder.toggle(b);
            }
        }
        return builder.take();
    }

    /// Number of homology generators for 1-cycles.
    int n_generators() const {
        return kind_ == BoundaryKind::periodic ? d_ : 1;
    }

    /// Winding parities of a 1-cycle, computed as intersection parity with
    /// one fixed transversal cut per generator: for the periodic lattice the
    /// cut for axis a is all a-oriented links with a-coordinate 0; for the
    /// planar lattice it is all rough-axis links in the northernmost row
    /// (a cut from smooth edge to smooth edge). Throws if the input is not a
    /// (relative) cycle, naming an offending boundary cell.
    HomologyClass homology_class(const Chain& cycle) const {
        if (cycle.degree != 1) {
            throw std::invalid_argument("homology_class expects a 1-chain");
        }
        Chain b = boundary(cycle);
        if (!b.is_empty()) {
            throw std::invalid_argument(
                "homology_class: chain is not a cycle, boundary contains 0-cell " + std::to_string(b.cells[0]));
        }
        HomologyClass cls;
        cls.n_generators = n_generators();
        for (uint32_t cell : cycle.cells) {
            CellRef ref = cell_ref(1, cell);
            if (kind_ == BoundaryKind::periodic) {
                for (int a = 0; a < d_; ++a) {
                    if (ref.orientation == (1u << a) && ref.coords[a] == 0) {
                        cls.bits ^= 1u << a;
                    }
                }
            } else {
                if (ref.orientation == (1u << rough_axis_) && ref.coords[rough_axis_] == 0) {
                    cls.bits ^= 1u;
                }
            }
        }
        return cls;
    }

    friend Lattice build_lattice(int d, int L, BoundaryKind kind, std::optional<PlanarEdgeLabels> labels);

   private:
    Lattice() = default;

    int orient_rank(int k, uint32_t mask) const {
        for (size_t r = 0; r < orients_[k].size(); ++r) {
            if (orients_[k][r] == mask) {
                return static_cast<int>(r);
            }
        }
        throw std::invalid_argument("invalid cell orientation for this degree");
    }

    int wrap(int c) const {
        if (kind_ == BoundaryKind::periodic) {
            return (c % L_ + L_) % L_;
        }
        return c;  // planar validity handled by cell_exists
    }

    void append_cell_if_exists(
        int k, uint32_t orientation_mask, const std::array<int, 4>& coords, std::vector<uint32_t>& out) const {
        if (cell_exists(k, orientation_mask, coords)) {
            out.push_back(cell_id(k, orientation_mask, coords));
        }
    }

    int d_ = 2;
    int L_ = 2;
    BoundaryKind kind_ = BoundaryKind::periodic;
    PlanarEdgeLabels labels_;
    int rough_axis_ = 1;

    // Per degree: orientation bitmasks, per-orientation extents/sizes/offsets.
    std::array<std::vector<uint32_t>, 5> orients_;
    std::array<std::vector<std::array<uint32_t, 4>>, 5> ext_;
    std::array<std::vector<uint32_t>, 5> block_size_;
    std::array<std::vector<uint32_t>, 5> block_offset_;
    std::array<uint32_t, 5> degree_size_{};
};

inline Lattice build_lattice(
    int d, int L, BoundaryKind kind, std::optional<PlanarEdgeLabels> labels = std::nullopt) {
    if (d < 2 || d > 4) {
        throw std::invalid_argument("lattice dimension must be 2, 3 or 4");
    }
    if (L < 2) {
        throw std::invalid_argument("lattice extent must be at least 2");
    }
    if (kind == BoundaryKind::planar) {
        if (d != 2) {
            throw std::invalid_argument("planar boundary is only defined for the 2-dimensional base lattice");
        }
        if (!labels.has_value()) {
            throw std::invalid_argument("planar lattice requires edge labels");
        }
        const auto& lb = *labels;
        if (lb.north != lb.south || lb.east != lb.west || lb.north == lb.east) {
            throw std::invalid_argument("planar lattice needs two opposite rough sides and two opposite smooth sides");
        }
    } else if (labels.has_value()) {
        throw std::invalid_argument("edge labels are only meaningful for planar lattices");
    }

    Lattice lat;
    lat.d_ = d;
    lat.L_ = L;
    lat.kind_ = kind;
    if (kind == BoundaryKind::planar) {
        lat.labels_ = *labels;
        lat.rough_axis_ = (labels->north == EdgeLabel::rough) ? 1 : 0;
    }

    for (int k = 0; k <= d; ++k) {
        for (uint32_t mask = 0; mask < (1u << d); ++mask) {
            if (__builtin_popcount(mask) != k) {
                continue;
            }
            lat.orients_[k].push_back(mask);
            std::array<uint32_t, 4> ext{1, 1, 1, 1};
            for (int a = 0; a < d; ++a) {
                ext[a] = static_cast<uint32_t>(L);
            }
            if (kind == BoundaryKind::planar) {
                int r = lat.rough_axis_;
                int s = 1 - r;
                bool along_r = (mask >> r) & 1u;
                bool along_s = (mask >> s) & 1u;
                if (k == 0) {
                    ext[s] = L;
                    ext[r] = L - 1;
                } else if (k == 1 && along_r) {
                    ext[s] = L;
                    ext[r] = L;
                } else if (k == 1 && along_s) {
                    ext[s] = L - 1;
                    ext[r] = L - 1;
                } else {
                    ext[s] = L - 1;
                    ext[r] = L;
                }
            }
            lat.ext_[k].push_back(ext);
            uint32_t size = 1;
            for (int a = 0; a < d; ++a) {
                size *= ext[a];
            }
            lat.block_offset_[k].push_back(lat.degree_size_[k]);
            lat.block_size_[k].push_back(size);
            lat.degree_size_[k] += size;
        }
    }
    return lat;
}

}  // namespace surflab

#endif
