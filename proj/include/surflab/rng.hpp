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

#ifndef SURFLAB_RNG_H
#define SURFLAB_RNG_H

#include <cstdint>

namespace surflab {

/// Counter-based pseudo-random stream (SplitMix64).
///
/// Streams are keyed by (master_seed, trial_index), so independent trials
/// draw from independent streams regardless of scheduling order or thread
/// count. The n-th output is a pure function of (key, n).
class Rng {
   public:
    explicit Rng(uint64_t seed) : state_(seed) {
    }

    static Rng for_trial(uint64_t master_seed, uint64_t trial_index) {
        uint64_t key = mix64(master_seed + kGolden) ^ mix64(trial_index * 0xda942042e4dd58b5ULL + 1);
        return Rng(mix64(key));
    }

    uint64_t next_u64() {
        state_ += kGolden;
        return mix64(state_);
    }

    /// Uniform in [0, 1), 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) {
        return next_double() < p;
    }

    /// Uniform integer in [0, n). Uses rejection to avoid modulo bias.
    uint64_t next_below(uint64_t n) {
        uint64_t threshold = -n % n;
        while (true) {
            uint64_t r = next_u64();
            if (r >= threshold) {
                return r % n;
            }
        }
    }

   private:
    static constexpr uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

    static uint64_t mix64(uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }

    uint64_t state_;
};

}  // namespace surflab

#endif
