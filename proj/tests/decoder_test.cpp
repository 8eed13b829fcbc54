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

#include "surflab/decoder.hpp"

#include <queue>

#include "gtest/gtest.h"
#include "surflab/noise.hpp"

using namespace surflab;

namespace {

Chain defect_chain(const SurfaceCode& code, Sector sector, std::vector<uint32_t> checks) {
    return Chain(sector == Sector::z ? 0 : 2, std::move(checks));
}

// relative boundary of a link set in the given sector
Chain sector_boundary(const SurfaceCode& code, Sector sector, const Chain& links) {
    size_t n = sector == Sector::z ? code.n_sites() : code.n_plaquettes();
    ChainBuilder b(sector == Sector::z ? 0 : 2, n);
    for (uint32_t link : links.cells) {
        auto checks = sector == Sector::z ? code.lattice.boundary_of_cell(1, link)
                                          : code.lattice.coboundary_of_cell(1, link);
        for (uint32_t c : checks) {
            b.toggle(c);
        }
    }
    return b.take();
}

// Dijkstra over the explicit spacetime graph; independent route to the
// decoder's closed-form distances.
int64_t spacetime_dijkstra(
    const SurfaceCode& code,
    Sector sector,
    SpacetimeEvent from,
    SpacetimeEvent to,
    int rounds,
    const DecoderConfig& cfg) {
    size_t n_checks = sector == Sector::z ? code.n_sites() : code.n_plaquettes();
    auto node = [&](uint32_t check, int t) { return static_cast<size_t>(t) * n_checks + check; };
    std::vector<int64_t> dist(n_checks * rounds, INT64_MAX);
    using Item = std::pair<int64_t, size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[node(from.check, from.round)] = 0;
    heap.push({0, node(from.check, from.round)});
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[u]) {
            continue;
        }
        uint32_t check = static_cast<uint32_t>(u % n_checks);
        int t = static_cast<int>(u / n_checks);
        std::vector<std::pair<size_t, int64_t>> nexts;
        for (int dt : {-1, 1}) {
            if (t + dt >= 0 && t + dt < rounds) {
                nexts.push_back({node(check, t + dt), cfg.weight_v});
            }
        }
        // spatial neighbors: checks one link away
        for (uint32_t link = 0; link < code.n_qubits(); ++link) {
            auto ends = sector == Sector::z ? code.lattice.boundary_of_cell(1, link)
                                            : code.lattice.coboundary_of_cell(1, link);
            if (ends.size() == 2) {
                if (ends[0] == check) {
                    nexts.push_back({node(ends[1], t), cfg.weight_h});
                } else if (ends[1] == check) {
                    nexts.push_back({node(ends[0], t), cfg.weight_h});
                }
            }
        }
        for (auto [v, w] : nexts) {
            if (d + w < dist[v]) {
                dist[v] = d + w;
                heap.push({d + w, v});
            }
        }
    }
    return dist[node(to.check, to.round)];
}

}  // namespace

TEST(DecoderConfig, WeightsAreScaledLogRatios) {
    DecoderConfig cfg = make_decoder_config(0.1, 0.05);
    EXPECT_EQ(cfg.weight_h, 2197225);  // log(9) * 1e6, half-even
    EXPECT_EQ(cfg.weight_v, 2944439);  // log(19) * 1e6
    EXPECT_THROW(make_decoder_config(0.0, 0.1), std::invalid_argument);
    EXPECT_THROW(make_decoder_config(0.1, 0.5), std::invalid_argument);
    EXPECT_THROW(make_decoder_config(0.1, 0.1, -1), std::invalid_argument);
}

TEST(Paths, CanonicalPathsHaveCorrectBoundaryAndLength) {
    Rng rng(1234);
    for (bool planar : {false, true}) {
        SurfaceCode code = planar ? build_planar_code(5) : build_toric_code(5);
        for (Sector sector : {Sector::z, Sector::x}) {
            size_t n_checks = sector == Sector::z ? code.n_sites() : code.n_plaquettes();
            for (int trial = 0; trial < 50; ++trial) {
                uint32_t a = static_cast<uint32_t>(rng.next_below(n_checks));
                uint32_t b = static_cast<uint32_t>(rng.next_below(n_checks));
                Chain path = canonical_path(code, sector, a, b);
                EXPECT_EQ(path.weight(), static_cast<size_t>(check_distance(code, sector, a, b)));
                Chain expected = a == b ? Chain(sector == Sector::z ? 0 : 2)
                                        : defect_chain(code, sector, {std::min(a, b), std::max(a, b)});
                EXPECT_EQ(sector_boundary(code, sector, path), expected);
            }
        }
    }
}

TEST(Paths, BoundaryPathsTerminateOnAdmissibleEdge) {
    SurfaceCode code = build_planar_code(5);
    for (Sector sector : {Sector::z, Sector::x}) {
        size_t n_checks = sector == Sector::z ? code.n_sites() : code.n_plaquettes();
        for (uint32_t c = 0; c < n_checks; ++c) {
            Chain path = boundary_path(code, sector, c);
            EXPECT_EQ(path.weight(), static_cast<size_t>(boundary_distance(code, sector, c)));
            // relative boundary of the path is exactly the starting defect
            EXPECT_EQ(sector_boundary(code, sector, path), defect_chain(code, sector, {c}));
        }
    }
}

TEST(Decode2d, NoDefectsNoCorrection) {
    SurfaceCode code = build_toric_code(4);
    DecoderConfig cfg = make_decoder_config(0.1, 0.1);
    EXPECT_TRUE(decode_2d(code, Chain(0), cfg).is_empty());
}

TEST(Decode2d, PairsNearbyDefectsWithShortestPath) {
    SurfaceCode code = build_toric_code(8);
    DecoderConfig cfg = make_decoder_config(0.1, 0.1);
    // two site defects two links apart along axis 0
    uint32_t a = code.lattice.cell_id(0, 0, {1, 3, 0, 0});
    uint32_t b = code.lattice.cell_id(0, 0, {3, 3, 0, 0});
    Chain correction = decode_2d(code, defect_chain(code, Sector::z, {a, b}), cfg);
    EXPECT_EQ(correction.weight(), 2u);
    EXPECT_EQ(sector_boundary(code, Sector::z, correction), defect_chain(code, Sector::z, {a, b}));
}

TEST(Decode2d, PlanarDefectNextToRoughEdgeTakesOneLinkExit) {
    SurfaceCode code = build_planar_code(3);
    DecoderConfig cfg = make_decoder_config(0.1, 0.1);
    uint32_t defect = code.lattice.cell_id(0, 0, {1, 0, 0, 0});  // northern site row
    Chain defects = defect_chain(code, Sector::z, {defect});
    Chain correction = decode_2d(code, defects, cfg);
    EXPECT_EQ(correction.weight(), 1u);
    EXPECT_EQ(sector_boundary(code, Sector::z, correction), defects);

    // exhaustive oracle: no chain with this boundary is shorter
    size_t best = SIZE_MAX;
    for (uint32_t mask = 0; mask < (1u << 13); ++mask) {
        Chain chain(1);
        for (uint32_t link = 0; link < 13; ++link) {
            if ((mask >> link) & 1u) {
                chain.cells.push_back(link);
            }
        }
        if (sector_boundary(code, Sector::z, chain) == defects) {
            best = std::min(best, chain.weight());
        }
    }
    EXPECT_EQ(best, correction.weight());
}

TEST(Decode2d, ExhaustiveMinimalityOnPlanarL3) {
    // bucket the minimum chain weight for every reachable syndrome, then the
    // decoder must achieve it on all of them
    SurfaceCode code = build_planar_code(3);
    DecoderConfig cfg = make_decoder_config(0.1, 0.1);
    std::map<std::vector<uint32_t>, size_t> min_weight;
    for (uint32_t mask = 0; mask < (1u << 13); ++mask) {
        Chain chain(1);
        for (uint32_t link = 0; link < 13; ++link) {
            if ((mask >> link) & 1u) {
                chain.cells.push_back(link);
            }
        }
        auto key = sector_boundary(code, Sector::z, chain).cells;
        auto it = min_weight.find(key);
        if (it == min_weight.end() || chain.weight() < it->second) {
            min_weight[key] = chain.weight();
        }
    }
    EXPECT_EQ(min_weight.size(), 64u);
    for (const auto& [defects, weight] : min_weight) {
        Chain correction = decode_2d(code, Chain(0, defects), cfg);
        EXPECT_EQ(correction.weight(), weight);
        EXPECT_EQ(sector_boundary(code, Sector::z, correction).cells, defects);
    }
}

TEST(Decode2d, BoundaryCorrectnessAndMinimalityOnRandomErrors) {
    Rng rng(31337);
    DecoderConfig cfg = make_decoder_config(0.08, 0.08);
    for (bool planar : {false, true}) {
        SurfaceCode code = planar ? build_planar_code(6) : build_toric_code(6);
        for (int trial = 0; trial < 40; ++trial) {
            PauliErrorState errors;
            for (uint32_t link = 0; link < code.n_qubits(); ++link) {
                if (rng.bernoulli(0.08)) {
                    errors.z_errors.cells.push_back(link);
                }
                if (rng.bernoulli(0.08)) {
                    errors.x_errors.cells.push_back(link);
                }
            }
            SyndromePair syn = syndrome_of(code, errors);
            Chain cz = decode_2d(code, syn.site_defects, cfg);
            Chain cx = decode_2d(code, syn.plaq_defects, cfg);
            EXPECT_EQ(sector_boundary(code, Sector::z, cz), syn.site_defects);
            EXPECT_EQ(sector_boundary(code, Sector::x, cx), syn.plaq_defects);
            EXPECT_LE(cz.weight(), errors.z_errors.weight());
            EXPECT_LE(cx.weight(), errors.x_errors.weight());
            // residuals must be cycles, so logical_effect accepts them
            logical_effect(code, errors.z_errors + cz, errors.x_errors + cx);
        }
    }
}

TEST(Decode2d, OddToricDefectsRejected) {
    SurfaceCode code = build_toric_code(4);
    DecoderConfig cfg = make_decoder_config(0.1, 0.1);
    EXPECT_THROW(decode_2d(code, Chain(0, {3}), cfg), std::invalid_argument);
    EXPECT_THROW(decode_2d(code, Chain(1, {3}), cfg), std::invalid_argument);
}

TEST(Decode3d, EmptyEventsGiveEmptyCorrection) {
    SurfaceCode code = build_toric_code(4);
    DecoderConfig cfg = make_decoder_config(0.05, 0.05);
    EXPECT_TRUE(decode_3d_full(code, Sector::z, {}, cfg).correction.is_empty());
}

TEST(Decode3d, IsolatedMeasurementErrorIsIgnored) {
    SurfaceCode code = build_toric_code(3);
    DecoderConfig cfg = make_decoder_config(0.05, 0.05);
    SpacetimeErrorHistory h;
    h.rounds = 3;
    h.z_qubit_errors.resize(3);
    h.x_qubit_errors.resize(3);
    h.site_meas_errors.resize(3);
    h.plaq_meas_errors.resize(3);
    h.site_meas_errors[1] = {4};
    MonopoleSet events = extract_monopoles(measure_history(code, h));
    ASSERT_EQ(events.site_events.size(), 2u);
    Chain correction = decode_3d(code, events, cfg).z_correction;
    EXPECT_TRUE(correction.is_empty());
}

TEST(Decode3d, PersistentQubitErrorIsRepaired) {
    SurfaceCode code = build_toric_code(3);
    DecoderConfig cfg = make_decoder_config(0.05, 0.05);
    SpacetimeErrorHistory h;
    h.rounds = 3;
    h.z_qubit_errors.resize(3);
    h.x_qubit_errors.resize(3);
    h.site_meas_errors.resize(3);
    h.plaq_meas_errors.resize(3);
    uint32_t link = code.lattice.cell_id(1, 0b01, {1, 1, 0, 0});
    h.z_qubit_errors[1] = {link};
    MonopoleSet events = extract_monopoles(measure_history(code, h));
    Chain correction = decode_3d(code, events, cfg).z_correction;
    EXPECT_EQ(correction, Chain(1, {link}));
}

TEST(Decode3d, DistanceFormulaMatchesSpacetimeDijkstra) {
    Rng rng(777);
    DecoderConfig cfg = make_decoder_config(0.03, 0.07);
    const int rounds = 5;
    for (bool planar : {false, true}) {
        SurfaceCode code = planar ? build_planar_code(4) : build_toric_code(4);
        for (Sector sector : {Sector::z, Sector::x}) {
            size_t n_checks = sector == Sector::z ? code.n_sites() : code.n_plaquettes();
            for (int trial = 0; trial < 20; ++trial) {
                SpacetimeEvent a{static_cast<uint32_t>(rng.next_below(n_checks)),
                                 static_cast<int>(rng.next_below(rounds))};
                SpacetimeEvent b{static_cast<uint32_t>(rng.next_below(n_checks)),
                                 static_cast<int>(rng.next_below(rounds))};
                int64_t formula =
                    static_cast<int64_t>(check_distance(code, sector, a.check, b.check)) * cfg.weight_h +
                    std::abs(a.round - b.round) * cfg.weight_v;
                EXPECT_EQ(formula, spacetime_dijkstra(code, sector, a, b, rounds, cfg));
            }
        }
    }
}

TEST(Decode3d, CorrectionWeightNeverExceedsErrorWeight) {
    DecoderConfig cfg = make_decoder_config(0.04, 0.04);
    SurfaceCode code = build_toric_code(5);
    for (uint64_t trial = 0; trial < 30; ++trial) {
        Rng rng = Rng::for_trial(2024, trial);
        SpacetimeErrorHistory h = sample_phenomenological(code, 0.04, 0.04, 5, rng);
        MonopoleSet events = extract_monopoles(measure_history(code, h));
        auto full = decode_3d_full(code, Sector::z, events.site_events, cfg);
        int64_t error_weight = 0;
        for (int t = 0; t < h.rounds; ++t) {
            error_weight += static_cast<int64_t>(h.z_qubit_errors[t].size()) * cfg.weight_h;
            error_weight += static_cast<int64_t>(h.site_meas_errors[t].size()) * cfg.weight_v;
        }
        EXPECT_LE(full.base_weight, error_weight);
        // horizontal projection of the residual world lines is a cycle
        Chain residual = h.total_z_errors() + full.correction;
        code.lattice.homology_class(residual);  // throws if not
    }
}

TEST(DecodeMl, TrivialSyndromePrefersTrivialClass) {
    SurfaceCode code = build_planar_code(3);
    EXPECT_TRUE(decode_ml(code, Chain(0), 0.05).trivial());
}

TEST(DecodeMl, SingleErrorSyndromeAgreesWithMinimumWeight) {
    SurfaceCode code = build_planar_code(3);
    uint32_t site = code.lattice.cell_id(0, 0, {1, 0, 0, 0});
    HomologyClass cls = decode_ml(code, Chain(0, {site}), 0.1);
    EXPECT_TRUE(cls.trivial());  // agrees with the one-link correction's class
}

TEST(DecodeMl, FairCoinTiesBreakTrivial) {
    SurfaceCode code = build_planar_code(3);
    MaxLikelihoodDecoder decoder(code, Sector::z, 0.5);
    uint32_t site = code.lattice.cell_id(0, 0, {0, 1, 0, 0});
    Chain defects(0, {site});
    auto probs = decoder.class_probabilities(defects);
    EXPECT_EQ(probs[0], probs[1]);
    EXPECT_EQ(decoder.decode_class_bits(defects), 0u);
}

TEST(DecodeMl, RejectsLargeCodes) {
    SurfaceCode code = build_planar_code(4);
    EXPECT_THROW(decode_ml(code, Chain(0), 0.1), std::invalid_argument);
}

TEST(DecodeMl, NeverBeatenByMinimumWeightOnPlanarL3) {
    // exact failure probabilities over every error pattern at one rate
    SurfaceCode code = build_planar_code(3);
    const double p = 0.1;
    MaxLikelihoodDecoder ml(code, Sector::z, p);
    DecoderConfig cfg = make_decoder_config(p, p);
    double ml_fail = 0, mwpm_fail = 0;
    for (uint32_t mask = 0; mask < (1u << 13); ++mask) {
        Chain errors(1);
        for (uint32_t link = 0; link < 13; ++link) {
            if ((mask >> link) & 1u) {
                errors.cells.push_back(link);
            }
        }
        Chain defects = sector_boundary(code, Sector::z, errors);
        double prob = std::pow(p, errors.weight()) * std::pow(1 - p, 13 - errors.weight());
        Chain correction = decode_2d(code, defects, cfg);
        uint32_t true_cls = ml.class_bits_of_chain(errors + correction);
        if (true_cls != 0) {
            mwpm_fail += prob;
        }
        if (true_cls != ml.decode_class_bits(defects)) {
            ml_fail += prob;
        }
    }
    EXPECT_LE(ml_fail, mwpm_fail + 1e-12);
    EXPECT_GT(mwpm_fail, 0.0);
}

TEST(Window, EmptyInputsStayEmpty) {
    SurfaceCode code = build_toric_code(4);
    DecoderConfig cfg = make_decoder_config(0.05, 0.05, 3);
    WindowState state;
    Chain finalized = window_step(state, code, Sector::z, {}, cfg);
    EXPECT_TRUE(finalized.is_empty());
    EXPECT_TRUE(state.retained.empty());
    EXPECT_EQ(state.rounds_consumed, 3);
}

TEST(Window, PairInOlderHalfFinalizesAndErases) {
    SurfaceCode code = build_toric_code(4);
    DecoderConfig cfg = make_decoder_config(0.05, 0.05, 3);
    uint32_t link = code.lattice.cell_id(1, 0b01, {1, 2, 0, 0});
    auto ends = code.lattice.boundary_of_cell(1, link);
    WindowState state;
    std::vector<SpacetimeEvent> events{{ends[0], 1}, {ends[1], 1}};
    Chain first = window_step(state, code, Sector::z, events, cfg);
    EXPECT_TRUE(first.is_empty());  // too recent to act on
    EXPECT_EQ(state.retained.size(), 2u);

    Chain second = window_step(state, code, Sector::z, {}, cfg);
    EXPECT_EQ(second, Chain(1, {link}));  // now in the older half: applied
    EXPECT_TRUE(state.retained.empty());  // and erased from the record
}

TEST(Window, ChainTouchingNewerHalfIsRetained) {
    SurfaceCode code = build_toric_code(4);
    DecoderConfig cfg = make_decoder_config(0.05, 0.05, 3);
    uint32_t link = code.lattice.cell_id(1, 0b01, {0, 0, 0, 0});
    auto ends = code.lattice.boundary_of_cell(1, link);
    WindowState state;
    Chain none = window_step(state, code, Sector::z, {{ends[0], 2}}, cfg);
    EXPECT_TRUE(none.is_empty());
    Chain still_none = window_step(state, code, Sector::z, {{ends[1], 4}}, cfg);
    EXPECT_TRUE(still_none.is_empty());  // straddles the halves: kept whole
    EXPECT_EQ(state.retained.size(), 2u);

    // replay equivalence: closing the history applies what a one-shot
    // spacetime decode of both events would have applied
    Chain flushed = window_flush(state, code, Sector::z, cfg);
    Chain oneshot =
        decode_3d_full(code, Sector::z, {{ends[0], 2}, {ends[1], 4}}, cfg).correction;
    EXPECT_EQ(flushed, oneshot);
    EXPECT_TRUE(state.retained.empty());
}

TEST(Window, RejectsMistimedEvents) {
    SurfaceCode code = build_toric_code(4);
    DecoderConfig cfg = make_decoder_config(0.05, 0.05, 2);
    WindowState state;
    EXPECT_THROW(window_step(state, code, Sector::z, {{0, 5}}, cfg), std::invalid_argument);
    DecoderConfig no_window = make_decoder_config(0.05, 0.05);
    EXPECT_THROW(window_step(state, code, Sector::z, {}, no_window), std::invalid_argument);
}

TEST(Window, PerfectSyndromeWindowingMatchesOneShot) {
    // q = 0 sampling with an overwhelming vertical prior: every event pairs
    // within its own round, so windowed and one-shot decoding agree
    SurfaceCode code = build_toric_code(6);
    DecoderConfig cfg = make_decoder_config(0.05, 1e-16, 2);
    const int rounds = 8;
    for (uint64_t trial = 0; trial < 10; ++trial) {
        Rng rng = Rng::for_trial(5150, trial);
        SpacetimeErrorHistory h = sample_phenomenological(code, 0.05, 0.0, rounds, rng);
        MonopoleSet events = extract_monopoles(measure_history(code, h));

        WindowState state;
        ChainBuilder windowed(1, code.n_qubits());
        for (int start = 0; start < rounds + 1; start += cfg.window_rounds) {
            std::vector<SpacetimeEvent> batch;
            for (const auto& e : events.site_events) {
                if (e.round >= start && e.round < start + cfg.window_rounds) {
                    batch.push_back(e);
                }
            }
            for (uint32_t link : window_step(state, code, Sector::z, batch, cfg).cells) {
                windowed.toggle(link);
            }
        }
        for (uint32_t link : window_flush(state, code, Sector::z, cfg).cells) {
            windowed.toggle(link);
        }
        Chain total = windowed.take();
        // with the content-keyed tie-break, windowed, one-shot, and
        // independent per-round 2D decoding agree exactly
        Chain oneshot = decode_3d_full(code, Sector::z, events.site_events, cfg).correction;
        EXPECT_EQ(total, oneshot);

        ChainBuilder per_round(1, code.n_qubits());
        for (int t = 0; t <= rounds; ++t) {
            Chain defects(0);
            for (const auto& e : events.site_events) {
                if (e.round == t) {
                    defects.cells.push_back(e.check);
                }
            }
            std::sort(defects.cells.begin(), defects.cells.end());
            for (uint32_t link : decode_2d(code, defects, cfg).cells) {
                per_round.toggle(link);
            }
        }
        EXPECT_EQ(total, per_round.take());
    }
}

TEST(Readout, AllZeroBitsReadLogicalZero) {
    SurfaceCode code = build_planar_code(5);
    DecoderConfig cfg = make_decoder_config(0.05, 0.05);
    std::vector<uint8_t> bits(code.n_qubits(), 0);
    EXPECT_EQ(readout_logical(code, bits, Sector::z, cfg), 0);
    EXPECT_EQ(readout_logical(code, bits, Sector::x, cfg), 0);
}

TEST(Readout, SingleFlippedBitIsRepaired) {
    SurfaceCode code = build_planar_code(5);
    DecoderConfig cfg = make_decoder_config(0.05, 0.05);
    for (uint32_t link = 0; link < code.n_qubits(); ++link) {
        std::vector<uint8_t> bits(code.n_qubits(), 0);
        bits[link] = 1;
        EXPECT_EQ(readout_logical(code, bits, Sector::z, cfg), 0) << "link " << link;
    }
}

TEST(Readout, LogicalXFlipsTheZReading) {
    SurfaceCode code = build_planar_code(5);
    DecoderConfig cfg = make_decoder_config(0.05, 0.05);
    std::vector<uint8_t> bits(code.n_qubits(), 0);
    for (uint32_t link : code.logical_x[0].cells) {
        bits[link] ^= 1;
    }
    EXPECT_EQ(readout_logical(code, bits, Sector::z, cfg), 1);

    // stabilizer applications and a stray error do not change the reading
    Rng rng(12);
    for (int i = 0; i < 3; ++i) {
        const auto& star = code.x_checks[rng.next_below(code.n_sites())];
        for (uint32_t link : star) {
            bits[link] ^= 1;
        }
    }
    bits[rng.next_below(code.n_qubits())] ^= 1;
    EXPECT_EQ(readout_logical(code, bits, Sector::z, cfg), 1);
}

TEST(Readout, ValidatesInput) {
    SurfaceCode code = build_planar_code(3);
    DecoderConfig cfg = make_decoder_config(0.05, 0.05);
    EXPECT_THROW(readout_logical(code, std::vector<uint8_t>(5, 0), Sector::z, cfg), std::invalid_argument);
    std::vector<uint8_t> bits(code.n_qubits(), 0);
    EXPECT_THROW(readout_logical(code, bits, Sector::z, cfg, 2), std::invalid_argument);
}
