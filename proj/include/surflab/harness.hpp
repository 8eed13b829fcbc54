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

#ifndef SURFLAB_HARNESS_H
#define SURFLAB_HARNESS_H

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "surflab/decoder.hpp"
#include "surflab/json_io.hpp"
#include "surflab/noise.hpp"
#include "surflab/syndrome.hpp"

namespace surflab {

class ConfigError : public std::runtime_error {
   public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {
    }
};

class BracketError : public std::runtime_error {
   public:
    explicit BracketError(const std::string& what) : std::runtime_error(what) {
    }
};

enum class CodeKind { toric, planar };
enum class NoiseKind { phenomenological, circuit_level };
enum class DecoderKind { mwpm2d, mwpm3d, window, ml };

/// One Monte Carlo experiment: code family and sizes, noise model, decoder,
/// trial budget and seeding. Serialized as versioned JSON.
struct ExperimentConfig {
    int schema_version = 1;
    CodeKind code = CodeKind::toric;
    std::vector<int> l_values = {8};
    NoiseKind noise = NoiseKind::phenomenological;
    double p = 0.05;
    double q = 0.0;
    bool tie_q_to_p = false;  // threshold sweeps with p = q
    GateRates gates;          // circuit-level noise only
    int rounds = 0;           // measurement rounds; 0 means T = L
    int window_rounds = 0;    // overlapping-recovery window; 0 means L
    DecoderKind decoder = DecoderKind::mwpm2d;
    long trials = 10000;
    uint64_t master_seed = 1;
    double prior_p = -1;  // decoder priors; non-positive = generator rates
    double prior_q = -1;
    std::vector<double> p_grid;  // threshold sweeps
    int jobs = 0;                // worker threads; 0 = hardware concurrency
    bool dump_trials = false;
    std::string output_path;
};

inline void validate_config(const ExperimentConfig& cfg) {
    if (cfg.schema_version != 1) {
        throw ConfigError("unsupported config schema version");
    }
    if (cfg.l_values.empty()) {
        throw ConfigError("need at least one lattice size");
    }
    for (int l : cfg.l_values) {
        if (l < 2) {
            throw ConfigError("lattice sizes must be at least 2");
        }
    }
    if (cfg.trials < 1) {
        throw ConfigError("trial count must be at least 1");
    }
    if (cfg.p < 0 || cfg.p > 1 || cfg.q < 0 || cfg.q > 1) {
        throw ConfigError("noise rates must lie in [0, 1]");
    }
    if (cfg.rounds < 0) {
        throw ConfigError("rounds must be non-negative");
    }
    if (cfg.window_rounds < 0) {
        throw ConfigError("window_rounds must be non-negative");
    }
    if (cfg.jobs < 0) {
        throw ConfigError("jobs must be non-negative");
    }
    if (cfg.decoder == DecoderKind::mwpm2d || cfg.decoder == DecoderKind::ml) {
        if (cfg.noise != NoiseKind::phenomenological || cfg.q != 0) {
            throw ConfigError("single-shot decoders need phenomenological noise with q = 0");
        }
        if (cfg.rounds > 1) {
            throw ConfigError("single-shot decoders use exactly one round");
        }
    }
    if (cfg.decoder == DecoderKind::ml) {
        for (int l : cfg.l_values) {
            size_t n = cfg.code == CodeKind::toric ? 2u * l * l : static_cast<size_t>(l) * l + (l - 1) * (l - 1);
            if (n > 16) {
                throw ConfigError("maximum-likelihood decoding needs at most 16 qubits");
            }
        }
    }
    for (double v : {cfg.gates.p_s, cfg.gates.p_cnot, cfg.gates.p_prep, cfg.gates.p_meas}) {
        if (v < 0 || v > 1) {
            throw ConfigError("gate rates must lie in [0, 1]");
        }
    }
}

// ---------------------------------------------------------------------------
// JSON round-trip

inline void to_json(nlohmann::json& j, const ExperimentConfig& cfg) {
    j = nlohmann::json{
        {"schema", cfg.schema_version},
        {"code", cfg.code == CodeKind::toric ? "toric" : "planar"},
        {"l_values", cfg.l_values},
        {"noise", cfg.noise == NoiseKind::phenomenological ? "phenomenological" : "circuit_level"},
        {"p", cfg.p},
        {"q", cfg.q},
        {"tie_q_to_p", cfg.tie_q_to_p},
        {"gates", cfg.gates},
        {"rounds", cfg.rounds},
        {"window_rounds", cfg.window_rounds},
        {"decoder",
         cfg.decoder == DecoderKind::mwpm2d
             ? "mwpm2d"
             : (cfg.decoder == DecoderKind::mwpm3d ? "mwpm3d"
                                                   : (cfg.decoder == DecoderKind::window ? "window" : "ml"))},
        {"trials", cfg.trials},
        {"master_seed", cfg.master_seed},
        {"prior_p", cfg.prior_p},
        {"prior_q", cfg.prior_q},
        {"p_grid", cfg.p_grid},
        {"jobs", cfg.jobs},
        {"dump_trials", cfg.dump_trials},
        {"output", cfg.output_path},
    };
}

inline void from_json(const nlohmann::json& j, ExperimentConfig& cfg) {
    cfg.schema_version = j.value("schema", 1);
    std::string code = j.value("code", "toric");
    if (code == "toric") {
        cfg.code = CodeKind::toric;
    } else if (code == "planar") {
        cfg.code = CodeKind::planar;
    } else {
        throw ConfigError("unknown code kind: " + code);
    }
    cfg.l_values = j.value("l_values", std::vector<int>{8});
    std::string noise = j.value("noise", "phenomenological");
    if (noise == "phenomenological") {
        cfg.noise = NoiseKind::phenomenological;
    } else if (noise == "circuit_level") {
        cfg.noise = NoiseKind::circuit_level;
    } else {
        throw ConfigError("unknown noise model: " + noise);
    }
    cfg.p = j.value("p", 0.0);
    cfg.q = j.value("q", 0.0);
    cfg.tie_q_to_p = j.value("tie_q_to_p", false);
    cfg.gates = j.value("gates", GateRates{});
    cfg.rounds = j.value("rounds", 0);
    cfg.window_rounds = j.value("window_rounds", 0);
    std::string decoder = j.value("decoder", "mwpm2d");
    if (decoder == "mwpm2d") {
        cfg.decoder = DecoderKind::mwpm2d;
    } else if (decoder == "mwpm3d") {
        cfg.decoder = DecoderKind::mwpm3d;
    } else if (decoder == "window") {
        cfg.decoder = DecoderKind::window;
    } else if (decoder == "ml") {
        cfg.decoder = DecoderKind::ml;
    } else {
        throw ConfigError("unknown decoder: " + decoder);
    }
    cfg.trials = j.value("trials", 10000L);
    cfg.master_seed = j.value("master_seed", uint64_t{1});
    cfg.prior_p = j.value("prior_p", -1.0);
    cfg.prior_q = j.value("prior_q", -1.0);
    cfg.p_grid = j.value("p_grid", std::vector<double>{});
    cfg.jobs = j.value("jobs", 0);
    cfg.dump_trials = j.value("dump_trials", false);
    cfg.output_path = j.value("output", std::string{});
}

// ---------------------------------------------------------------------------
// Trials

struct TrialOutcome {
    uint32_t z_bits = 0;  // bit k: logical Z error on encoded qubit k
    uint32_t x_bits = 0;

    bool failed() const {
        return z_bits != 0 || x_bits != 0;
    }
};

namespace detail {

inline double clamp_prior(double rate) {
    return std::min(std::max(rate, 1e-12), 0.499999);
}

/// Everything reusable across the trials of one (config, L) pair.
struct TrialContext {
    TrialContext(const ExperimentConfig& config, int l)
        : cfg(config),
          code(config.code == CodeKind::toric ? build_toric_code(l) : build_planar_code(l)),
          rounds(config.rounds > 0 ? config.rounds : l) {
        if (cfg.noise == NoiseKind::circuit_level) {
            rates = derive_circuit_rates(cfg.gates);
        }
        double gen_p = cfg.noise == NoiseKind::circuit_level ? rates.p_single : cfg.p;
        double gen_q = cfg.noise == NoiseKind::circuit_level ? rates.q_single : cfg.q;
        double prior_p = cfg.prior_p > 0 ? cfg.prior_p : gen_p;
        double prior_q = cfg.prior_q > 0 ? cfg.prior_q : gen_q;
        int window = cfg.window_rounds > 0 ? cfg.window_rounds : l;
        decoder_cfg = make_decoder_config(clamp_prior(prior_p), clamp_prior(prior_q), window);
        if (cfg.decoder == DecoderKind::ml) {
            ml_z.emplace(code, Sector::z, clamp_prior(gen_p));
            ml_x.emplace(code, Sector::x, clamp_prior(gen_p));
        }
    }

    ExperimentConfig cfg;
    SurfaceCode code;
    int rounds;
    EffectiveRates rates;
    DecoderConfig decoder_cfg;
    std::optional<MaxLikelihoodDecoder> ml_z, ml_x;
};

struct TrialRecord {
    TrialOutcome outcome;
    MonopoleSet events;
    Chain z_correction{1};
    Chain x_correction{1};
};

inline void require_matching_boundary(
    const SurfaceCode& code, Sector sector, const Chain& correction, const Chain& defects) {
    size_t n = sector == Sector::z ? code.n_sites() : code.n_plaquettes();
    ChainBuilder b(defects.degree, n);
    for (uint32_t link : correction.cells) {
        auto checks = sector == Sector::z ? code.lattice.boundary_of_cell(1, link)
                                          : code.lattice.coboundary_of_cell(1, link);
        for (uint32_t c : checks) {
            b.toggle(c);
        }
    }
    if (!(b.take() == defects)) {
        throw std::logic_error("decoder bug: correction boundary does not match the defects");
    }
}

inline TrialRecord run_trial_record(const TrialContext& ctx, uint64_t trial_index) {
    Rng rng = Rng::for_trial(ctx.cfg.master_seed, trial_index);
    const SurfaceCode& code = ctx.code;
    TrialRecord record;

    if (ctx.cfg.decoder == DecoderKind::mwpm2d || ctx.cfg.decoder == DecoderKind::ml) {
        SpacetimeErrorHistory history = sample_phenomenological(code, ctx.cfg.p, 0.0, 1, rng);
        PauliErrorState errors;
        errors.z_errors = history.total_z_errors();
        errors.x_errors = history.total_x_errors();
        SyndromePair syn = syndrome_of(code, errors);
        record.z_correction = decode_2d(code, syn.site_defects, ctx.decoder_cfg);
        record.x_correction = decode_2d(code, syn.plaq_defects, ctx.decoder_cfg);
        require_matching_boundary(code, Sector::z, record.z_correction, syn.site_defects);
        require_matching_boundary(code, Sector::x, record.x_correction, syn.plaq_defects);
        uint32_t z_bits = residual_class_bits(code, Sector::z, errors.z_errors + record.z_correction);
        uint32_t x_bits = residual_class_bits(code, Sector::x, errors.x_errors + record.x_correction);
        if (ctx.cfg.decoder == DecoderKind::ml) {
            // failure when the most probable class differs from the truth
            z_bits ^= ctx.ml_z->decode_class_bits(syn.site_defects);
            x_bits ^= ctx.ml_x->decode_class_bits(syn.plaq_defects);
        }
        record.outcome = {z_bits, x_bits};
        for (uint32_t c : syn.site_defects.cells) {
            record.events.site_events.push_back({c, 0});
        }
        for (uint32_t c : syn.plaq_defects.cells) {
            record.events.plaq_events.push_back({c, 0});
        }
        return record;
    }

    SpacetimeErrorHistory history =
        ctx.cfg.noise == NoiseKind::circuit_level
            ? sample_circuit_level(code, ctx.rates, ctx.rounds, rng)
            : sample_phenomenological(code, ctx.cfg.p, ctx.cfg.q, ctx.rounds, rng);
    record.events = extract_monopoles(measure_history(code, history, true));
    if (ctx.cfg.decoder == DecoderKind::window) {
        // overlapping recovery: feed events window by window, then close the
        // history after the trailing perfect round
        auto windowed_decode = [&](Sector sector, const std::vector<SpacetimeEvent>& events) {
            WindowState state;
            ChainBuilder total(1, code.n_qubits());
            const int last_round = ctx.rounds;  // perfect-round record index
            for (int start = 0; start <= last_round; start += ctx.decoder_cfg.window_rounds) {
                std::vector<SpacetimeEvent> batch;
                for (const auto& e : events) {
                    if (e.round >= start && e.round < start + ctx.decoder_cfg.window_rounds) {
                        batch.push_back(e);
                    }
                }
                for (uint32_t link : window_step(state, code, sector, batch, ctx.decoder_cfg).cells) {
                    total.toggle(link);
                }
            }
            for (uint32_t link : window_flush(state, code, sector, ctx.decoder_cfg).cells) {
                total.toggle(link);
            }
            return total.take();
        };
        record.z_correction = windowed_decode(Sector::z, record.events.site_events);
        record.x_correction = windowed_decode(Sector::x, record.events.plaq_events);
    } else {
        record.z_correction =
            decode_3d_full(code, Sector::z, record.events.site_events, ctx.decoder_cfg).correction;
        record.x_correction =
            decode_3d_full(code, Sector::x, record.events.plaq_events, ctx.decoder_cfg).correction;
    }
    // residual class computation validates the cycle condition, which is
    // exactly the boundary-correctness check for the spacetime decode
    uint32_t z_bits = residual_class_bits(code, Sector::z, history.total_z_errors() + record.z_correction);
    uint32_t x_bits = residual_class_bits(code, Sector::x, history.total_x_errors() + record.x_correction);
    record.outcome = {z_bits, x_bits};
    return record;
}

}  // namespace detail

/// Runs one trial from scratch. For bulk runs use estimate_failure_rate,
/// which shares the per-size setup across trials.
inline TrialOutcome run_trial(const ExperimentConfig& cfg, int l, uint64_t trial_index) {
    validate_config(cfg);
    detail::TrialContext ctx(cfg, l);
    return detail::run_trial_record(ctx, trial_index).outcome;
}

struct FailureEstimate {
    int l = 0;
    double p = 0;
    double q = 0;
    long trials = 0;
    long failures = 0;
    double rate = 0;
    double ci_low = 0;
    double ci_high = 0;
    std::vector<long> z_sector_failures;  // per encoded qubit
    std::vector<long> x_sector_failures;
};

/// 95% Wilson score interval.
inline std::pair<double, double> wilson_interval(long failures, long trials, double z = 1.959964) {
    double n = static_cast<double>(trials);
    double p_hat = failures / n;
    double z2 = z * z;
    double denom = 1 + z2 / n;
    double center = (p_hat + z2 / (2 * n)) / denom;
    double half = z * std::sqrt(p_hat * (1 - p_hat) / n + z2 / (4 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

/// Aggregates cfg.trials outcomes for one lattice size. Trials are keyed by
/// (master_seed, trial_index), so counts are identical for any worker count.
/// When dump is set the trials run serially and one JSON line per trial is
/// written to it.
inline FailureEstimate estimate_failure_rate(
    const ExperimentConfig& cfg, int l, std::ostream* dump = nullptr) {
    validate_config(cfg);
    detail::TrialContext ctx(cfg, l);

    FailureEstimate est;
    est.l = l;
    est.p = cfg.noise == NoiseKind::circuit_level ? ctx.rates.p_single : cfg.p;
    est.q = cfg.noise == NoiseKind::circuit_level ? ctx.rates.q_single : cfg.q;
    est.trials = cfg.trials;
    est.z_sector_failures.assign(ctx.code.n_logical, 0);
    est.x_sector_failures.assign(ctx.code.n_logical, 0);

    struct Tally {
        long failures = 0;
        std::vector<long> z, x;
    };
    auto run_range = [&](uint64_t begin, uint64_t end, Tally& tally) {
        tally.z.assign(ctx.code.n_logical, 0);
        tally.x.assign(ctx.code.n_logical, 0);
        for (uint64_t i = begin; i < end; ++i) {
            TrialOutcome outcome = detail::run_trial_record(ctx, i).outcome;
            tally.failures += outcome.failed() ? 1 : 0;
            for (int k = 0; k < ctx.code.n_logical; ++k) {
                tally.z[k] += (outcome.z_bits >> k) & 1u;
                tally.x[k] += (outcome.x_bits >> k) & 1u;
            }
        }
    };

    if (dump != nullptr) {
        Tally tally;
        tally.z.assign(ctx.code.n_logical, 0);
        tally.x.assign(ctx.code.n_logical, 0);
        for (uint64_t i = 0; i < static_cast<uint64_t>(cfg.trials); ++i) {
            detail::TrialRecord record = detail::run_trial_record(ctx, i);
            tally.failures += record.outcome.failed() ? 1 : 0;
            for (int k = 0; k < ctx.code.n_logical; ++k) {
                tally.z[k] += (record.outcome.z_bits >> k) & 1u;
                tally.x[k] += (record.outcome.x_bits >> k) & 1u;
            }
            nlohmann::json line;
            line["trial"] = i;
            auto events_json = [](const std::vector<SpacetimeEvent>& events) {
                nlohmann::json arr = nlohmann::json::array();
                for (const auto& e : events) {
                    arr.push_back({e.check, e.round});
                }
                return arr;
            };
            line["z_events"] = events_json(record.events.site_events);
            line["x_events"] = events_json(record.events.plaq_events);
            line["z_correction"] = record.z_correction.cells;
            line["x_correction"] = record.x_correction.cells;
            line["z_bits"] = record.outcome.z_bits;
            line["x_bits"] = record.outcome.x_bits;
            (*dump) << line.dump() << '\n';
        }
        est.failures = tally.failures;
        est.z_sector_failures = tally.z;
        est.x_sector_failures = tally.x;
    } else {
        long n_workers = cfg.jobs > 0 ? cfg.jobs : static_cast<long>(std::thread::hardware_concurrency());
        n_workers = std::max<long>(1, std::min<long>(n_workers, cfg.trials));
        std::vector<Tally> tallies(n_workers);
        std::vector<std::thread> workers;
        uint64_t chunk = (cfg.trials + n_workers - 1) / n_workers;
        for (int w = 0; w < n_workers; ++w) {
            uint64_t begin = w * chunk;
            uint64_t end = std::min<uint64_t>(begin + chunk, cfg.trials);
            workers.emplace_back([&, begin, end, w] { run_range(begin, end, tallies[w]); });
        }
        for (auto& worker : workers) {
            worker.join();
        }
        for (const Tally& tally : tallies) {
            est.failures += tally.failures;
            for (int k = 0; k < ctx.code.n_logical; ++k) {
                est.z_sector_failures[k] += tally.z[k];
                est.x_sector_failures[k] += tally.x[k];
            }
        }
    }

    est.rate = static_cast<double>(est.failures) / est.trials;
    auto [lo, hi] = wilson_interval(est.failures, est.trials);
    est.ci_low = lo;
    est.ci_high = hi;
    return est;
}

struct ThresholdEstimate {
    struct Crossing {
        int l_low = 0;
        int l_high = 0;
        double p_cross = 0;
    };
    std::vector<FailureEstimate> points;
    std::vector<Crossing> crossings;
    double mean_crossing = 0;
    double spread = 0;
};

namespace detail {

/// First downward crossing of two piecewise-linear failure curves: the
/// abscissa where the smaller lattice stops failing more than the larger one.
inline std::optional<double> find_curve_crossing(
    const std::vector<double>& grid, const std::vector<double>& rates_small_l, const std::vector<double>& rates_large_l) {
    for (size_t g = 0; g + 1 < grid.size(); ++g) {
        double d0 = rates_small_l[g] - rates_large_l[g];
        double d1 = rates_small_l[g + 1] - rates_large_l[g + 1];
        if (d0 > 0 && d1 <= 0) {
            double t = d0 / (d0 - d1);
            return grid[g] + t * (grid[g + 1] - grid[g]);
        }
    }
    return std::nullopt;
}

}  // namespace detail

/// Sweeps the p grid for every lattice size and locates the pairwise
/// crossings of the failure curves by monotone (piecewise linear)
/// interpolation. Throws BracketError when a pair of curves does not cross
/// within the grid.
inline ThresholdEstimate find_threshold(const ExperimentConfig& cfg) {
    validate_config(cfg);
    if (cfg.l_values.size() < 2) {
        throw ConfigError("threshold estimation needs at least two lattice sizes");
    }
    if (cfg.p_grid.size() < 4) {
        throw ConfigError("threshold estimation needs at least four grid points");
    }
    if (cfg.noise != NoiseKind::phenomenological) {
        throw ConfigError("threshold sweeps are defined for phenomenological noise");
    }
    std::vector<double> grid = cfg.p_grid;
    std::sort(grid.begin(), grid.end());

    ThresholdEstimate est;
    std::vector<std::vector<double>> rates(cfg.l_values.size());
    for (size_t li = 0; li < cfg.l_values.size(); ++li) {
        for (double p : grid) {
            ExperimentConfig point_cfg = cfg;
            point_cfg.p = p;
            if (cfg.tie_q_to_p) {
                point_cfg.q = p;
            }
            // decorrelate trials across grid points and sizes
            point_cfg.master_seed =
                cfg.master_seed + 0x9e3779b9u * (li + 1) + static_cast<uint64_t>(p * 1e9);
            FailureEstimate point = estimate_failure_rate(point_cfg, cfg.l_values[li]);
            rates[li].push_back(point.rate);
            est.points.push_back(point);
        }
    }

    std::vector<int> ls(cfg.l_values.begin(), cfg.l_values.end());
    for (size_t a = 0; a < ls.size(); ++a) {
        for (size_t b = a + 1; b < ls.size(); ++b) {
            const auto& small_l = ls[a] < ls[b] ? rates[a] : rates[b];
            const auto& large_l = ls[a] < ls[b] ? rates[b] : rates[a];
            auto crossing = detail::find_curve_crossing(grid, small_l, large_l);
            if (!crossing.has_value()) {
                throw BracketError(
                    "grid does not bracket the crossing of L=" + std::to_string(ls[a]) + " and L=" +
                    std::to_string(ls[b]));
            }
            est.crossings.push_back({std::min(ls[a], ls[b]), std::max(ls[a], ls[b]), *crossing});
        }
    }
    double sum = 0, lo = 1, hi = 0;
    for (const auto& crossing : est.crossings) {
        sum += crossing.p_cross;
        lo = std::min(lo, crossing.p_cross);
        hi = std::max(hi, crossing.p_cross);
    }
    est.mean_crossing = sum / est.crossings.size();
    est.spread = hi - lo;
    return est;
}

}  // namespace surflab

#endif
