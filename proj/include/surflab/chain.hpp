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

#ifndef SURFLAB_CHAIN_H
#define SURFLAB_CHAIN_H

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace surflab {

/// A Z2-valued k-chain: a sparse set of k-cell indices. Addition is symmetric
/// difference, so every chain is its own inverse.
struct Chain {
    int degree = 0;
    std::vector<uint32_t> cells;  // sorted, unique

    Chain() = default;
    explicit Chain(int k) : degree(k) {
    }
    Chain(int k, std::vector<uint32_t> ids) : degree(k), cells(std::move(ids)) {
        std::sort(cells.begin(), cells.end());
        // cells appearing twice cancel over Z2
        std::vector<uint32_t> reduced;
        reduced.reserve(cells.size());
        for (size_t i = 0; i < cells.size();) {
            size_t j = i;
            while (j < cells.size() && cells[j] == cells[i]) {
                ++j;
            }
            if ((j - i) % 2 == 1) {
                reduced.push_back(cells[i]);
            }
            i = j;
        }
        cells = std::move(reduced);
    }

    bool is_empty() const {
        return cells.empty();
    }
    size_t weight() const {
        return cells.size();
    }
    bool contains(uint32_t cell) const {
        return std::binary_search(cells.begin(), cells.end(), cell);
    }

    bool operator==(const Chain& other) const {
        return degree == other.degree && cells == other.cells;
    }
};

inline Chain operator+(const Chain& a, const Chain& b) {
    if (a.degree != b.degree) {
        throw std::invalid_argument("chain addition requires equal degrees");
    }
    Chain out(a.degree);
    out.cells.reserve(a.cells.size() + b.cells.size());
    std::set_symmetric_difference(
        a.cells.begin(), a.cells.end(), b.cells.begin(), b.cells.end(), std::back_inserter(out.cells));
    return out;
}

inline Chain& operator+=(Chain& a, const Chain& b) {
    a = a + b;
    return a;
}

/// Order-insensitive accumulator for building chains by toggling cells.
class ChainBuilder {
   public:
    ChainBuilder(int degree, size_t n_cells) : degree_(degree), flags_(n_cells, 0) {
    }

    void toggle(uint32_t cell) {
        if (flags_[cell]) {
            flags_[cell] = 0;
        } else {
            flags_[cell] = 1;
        }
    }

    bool get(uint32_t cell) const {
        return flags_[cell] != 0;
    }

    Chain take() const {
        Chain out(degree_);
        for (uint32_t i = 0; i < flags_.size(); ++i) {
            if (flags_[i]) {
                out.cells.push_back(i);
            }
        }
        return out;
    }

   private:
    int degree_;
    std::vector<uint8_t> flags_;
};

}  // namespace surflab

#endif
