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
//
// End-to-end acceptance suite. Each test prints one PASS/FAIL line; the
// heavier Monte Carlo criteria take a few minutes each.

#include <cmath>
#include <cstdio>

#include "gtest/gtest.h"
#include "surflab/bounds.hpp"
#include "surflab/harness.hpp"
#include "surflab/local4d.hpp"
#include "surflab/matching.hpp"

using namespace surflab;

namespace {

void report(int criterion, const char* name, bool pass, const std::string& detail) {
    std::printf("[criterion %d] %-32s %s  %s\n", criterion, name, pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
}

double find_check(const BoundReport& r, const std::string& label) {
    for (const auto& c : r.checks) {
        if (c.label == label) {
            return c.computed;
        }
    }
    return NAN;
}

double exhaustive_failure(
    const SurfaceCode& code, Sector sector, double p, const DecoderConfig& cfg, const MaxLikelihoodDecoder* ml) {
    const size_t n = code.n_qubits();
    double fail = 0;
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
        Chain errors(1);
        for (uint32_t link = 0; link < n; ++link) {
            if ((mask >> link) & 1u) {
                errors.cells.push_back(link);
            }
        }
        PauliErrorState state;
        (sector == Sector::z ? state.z_errors : state.x_errors) = errors;
        SyndromePair syn = syndrome_of(code, state);
        const Chain& defects = sector == Sector::z ? syn.site_defects : syn.plaq_defects;
        Chain correction = decode_2d(code, defects, cfg);
        uint32_t true_bits = residual_class_bits(code, sector, errors + correction);
        uint32_t decoded_bits = ml != nullptr ? ml->decode_class_bits(defects) : 0;
        if (true_bits != decoded_bits) {
            fail += std::pow(p, errors.weight()) * std::pow(1 - p, n - errors.weight());
        }
    }
    return fail;
}

}  // namespace

TEST(Acceptance, Criterion1AnalyticBounds) {
    BoundReport storage = storage_threshold_bounds();
    double p3d = find_check(storage, "3d isotropic p bound");
    double p2d = find_check(storage, "2d perfect-syndrome p bound");
    double css = css_capacity_root();
    double q4d = find_check(local4d_threshold_bound(), "q_c >= mu4^-4");

    EffectiveRates at_bound = derive_circuit_rates({1.75e-4, 0, 0, 0});
    BoundReport gate = gate_level_condition(derive_circuit_rates({1e-5, 1e-4, 1e-4, 1e-4}));

    bool pass = true;
    pass &= std::abs(p3d - 0.0114) <= 5e-5;    // last printed decimal
    pass &= std::abs(p2d - 0.0373) <= 5e-5;
    pass &= std::abs(css - 0.1100) <= 5e-5;
    pass &= std::abs(q4d - 4.8e-4) <= 5e-6;    // rounds to 4.8e-4 at 2 s.f.
    pass &= at_bound.q_hook == 3.5e-4;         // 2 * 1.75e-4, exact in binary
    pass &= find_check(gate, "(p_s)_c at p_CNOT = 0") == 1.75e-4;
    pass &= storage.all_pass() && gate.all_pass() && css_capacity_report().all_pass() &&
            local4d_threshold_bound().all_pass();

    char detail[160];
    std::snprintf(
        detail, sizeof detail, "p3d=%.6f p2d=%.6f css=%.6f q4d=%.3e headline@1.75e-4=%.3e", p3d, p2d, css,
        q4d, at_bound.q_hook);
    report(1, "analytic bound reproduction", pass, detail);
    EXPECT_TRUE(pass);
}

TEST(Acceptance, Criterion2TwoDimensionalThreshold) {
    ExperimentConfig cfg;
    cfg.code = CodeKind::toric;
    cfg.l_values = {8, 12, 16};
    cfg.decoder = DecoderKind::mwpm2d;
    cfg.trials = 20000;
    cfg.master_seed = 701;
    cfg.p_grid = {0.090, 0.095, 0.100, 0.105, 0.110, 0.115, 0.120};
    ThresholdEstimate est = find_threshold(cfg);

    bool pass = !est.crossings.empty();
    std::string detail = "crossings:";
    for (const auto& crossing : est.crossings) {
        pass &= crossing.p_cross >= 0.095 && crossing.p_cross <= 0.115;
        char buf[64];
        std::snprintf(buf, sizeof buf, " L%d/L%d=%.4f", crossing.l_low, crossing.l_high, crossing.p_cross);
        detail += buf;
    }
    pass &= est.mean_crossing >= 0.095 && est.mean_crossing <= 0.115;
    char buf[48];
    std::snprintf(buf, sizeof buf, " mean=%.4f", est.mean_crossing);
    detail += buf;
    report(2, "2d MWPM threshold", pass, detail);
    EXPECT_TRUE(pass);
}

TEST(Acceptance, Criterion3ThreeDimensionalConsistency) {
    ExperimentConfig cfg;
    cfg.code = CodeKind::toric;
    cfg.l_values = {6, 8, 10};
    cfg.decoder = DecoderKind::mwpm3d;
    cfg.tie_q_to_p = true;
    cfg.rounds = 0;  // T = L
    cfg.trials = 6000;
    cfg.master_seed = 702;
    cfg.p_grid = {0.020, 0.025, 0.030, 0.035, 0.040};
    ThresholdEstimate est = find_threshold(cfg);

    bool pass = !est.crossings.empty();
    std::string detail = "crossings:";
    for (const auto& crossing : est.crossings) {
        pass &= crossing.p_cross >= 0.0114;  // the proven lower bound
        char buf[64];
        std::snprintf(buf, sizeof buf, " L%d/L%d=%.4f", crossing.l_low, crossing.l_high, crossing.p_cross);
        detail += buf;
    }

    // below-threshold suppression at p = q = 0.01, CI-separated in L
    ExperimentConfig low = cfg;
    low.p = 0.01;
    low.q = 0.01;
    low.trials = 30000;
    FailureEstimate f6 = estimate_failure_rate(low, 6);
    FailureEstimate f8 = estimate_failure_rate(low, 8);
    FailureEstimate f10 = estimate_failure_rate(low, 10);
    pass &= f6.ci_low > f8.ci_high && f8.ci_low > f10.ci_high;
    char buf[96];
    std::snprintf(
        buf, sizeof buf, " rates@0.01: L6=%.4f L8=%.4f L10=%.4f", f6.rate, f8.rate, f10.rate);
    detail += buf;
    report(3, "3d phenomenological consistency", pass, detail);
    EXPECT_TRUE(pass);
}

TEST(Acceptance, Criterion4MlDominance) {
    SurfaceCode code = build_planar_code(3);
    bool pass = true;
    std::string detail;
    for (double p : {0.05, 0.10, 0.15}) {
        DecoderConfig cfg = make_decoder_config(p, p);
        for (Sector sector : {Sector::z, Sector::x}) {
            MaxLikelihoodDecoder ml(code, sector, p);
            double mwpm_fail = exhaustive_failure(code, sector, p, cfg, nullptr);
            double ml_fail = exhaustive_failure(code, sector, p, cfg, &ml);
            pass &= ml_fail <= mwpm_fail + 1e-15;
            if (sector == Sector::z) {
                char buf[64];
                std::snprintf(buf, sizeof buf, " p=%.2f: ml=%.5f mwpm=%.5f", p, ml_fail, mwpm_fail);
                detail += buf;
            }
        }
    }
    report(4, "ML vs MWPM dominance (exact)", pass, detail);
    EXPECT_TRUE(pass);
}

TEST(Acceptance, Criterion5MatchingOracle) {
    Rng rng(73000);
    int checked = 0;
    bool pass = true;
    for (int trial = 0; trial < 1000; ++trial) {
        int n = 2 * (1 + static_cast<int>(rng.next_below(6)));  // 2..12
        MatchingProblem problem;
        problem.n_nodes = n;
        for (int u = 0; u < n; ++u) {
            for (int v = u + 1; v < n; ++v) {
                problem.add_edge(u, v, 1 + static_cast<int64_t>(rng.next_below(1000)));
            }
        }
        if (min_weight_perfect_matching(problem).total_weight != brute_force_matching(problem).total_weight) {
            pass = false;
            break;
        }
        ++checked;
    }
    report(5, "matching oracle equivalence", pass, "instances=" + std::to_string(checked));
    EXPECT_TRUE(pass);
}

TEST(Acceptance, Criterion6CircuitRates) {
    Rng rng(74000);
    const double denom = 1048576.0;  // 2^20: dyadic rates are exact in double
    bool pass = true;
    for (int i = 0; i < 10; ++i) {
        int64_t s = static_cast<int64_t>(rng.next_below(1 << 16));
        int64_t c = static_cast<int64_t>(rng.next_below(1 << 16));
        int64_t pp = static_cast<int64_t>(rng.next_below(1 << 16));
        int64_t m = static_cast<int64_t>(rng.next_below(1 << 16));
        EffectiveRates r = derive_circuit_rates({s / denom, c / denom, pp / denom, m / denom});
        pass &= r.q_single == static_cast<double>(pp + 4 * c + 6 * s + m) / denom;
        pass &= r.q_hook == static_cast<double>(3 * c + 2 * s) / denom;
        pass &= r.p_hook == static_cast<double>(2 * c + s) / denom;
        pass &= r.p_single == static_cast<double>(5 * c + 7 * s) / denom;
    }
    report(6, "circuit-level rate formulas", pass, "10 exact rational fixtures");
    EXPECT_TRUE(pass);
}

TEST(Acceptance, Criterion7SapGrowth) {
    SapCounts counts = enumerate_saps(2, 16);
    double mu = estimate_mu(counts);
    bool pass = std::abs(mu - 2.638) <= 0.1 * 2.638;
    char detail[64];
    std::snprintf(detail, sizeof detail, "mu_hat=%.4f target=2.638", mu);
    report(7, "SAP growth constant", pass, detail);
    EXPECT_TRUE(pass);
}

TEST(Acceptance, Criterion8FourDimensionalLocalRule) {
    // noiseless relaxation: monotone decrease and eventual emptiness on 100
    // dilute random initial errors at L=4
    bool pass = true;
    for (uint64_t trial = 0; trial < 100 && pass; ++trial) {
        Rng rng = Rng::for_trial(75000, trial);
        FourDState state = build_4d_toric(4);
        for (int i = 0; i < 8; ++i) {
            state.flip_plaquette(static_cast<uint32_t>(rng.next_below(state.n_plaquettes())));
        }
        long length = state.string_length();
        long rounds = 0;
        while (state.string_length() != 0 && rounds < 100000) {
            local_update_round(state, rng);
            pass &= state.string_length() <= length;
            length = state.string_length();
            ++rounds;
        }
        pass &= state.string_length() == 0;
    }

    // heat-bath Boltzmann ratio exp(-4 beta) at 3 sigma with 1e5 samples
    Rng rng = Rng::for_trial(75001, 0);
    const double beta = 1.0;
    const int n = 100000;
    int flips = 0;
    for (int i = 0; i < n; ++i) {
        flips += heat_bath_flips(0, beta, rng);
    }
    double ratio = static_cast<double>(flips) / (n - flips);
    double p_flip = 1.0 / (1.0 + std::exp(4 * beta));
    double sigma = std::sqrt(p_flip * (1 - p_flip) / n) / ((1 - p_flip) * (1 - p_flip));
    bool ratio_ok = std::abs(ratio - std::exp(-4 * beta)) <= 3 * sigma;
    pass &= ratio_ok;

    char detail[96];
    std::snprintf(detail, sizeof detail, "ratio=%.5f exp(-4)=%.5f (3sigma=%.5f)", ratio, std::exp(-4.0), 3 * sigma);
    report(8, "4d local rule invariants", pass, detail);
    EXPECT_TRUE(pass);
}

TEST(Acceptance, Criterion9Determinism) {
    ExperimentConfig cfg;
    cfg.code = CodeKind::toric;
    cfg.l_values = {8};
    cfg.decoder = DecoderKind::mwpm2d;
    cfg.p = 0.105;
    cfg.trials = 20000;
    cfg.master_seed = 701;
    cfg.jobs = 1;
    FailureEstimate serial = estimate_failure_rate(cfg, 8);
    cfg.jobs = 2;
    FailureEstimate dual = estimate_failure_rate(cfg, 8);
    cfg.jobs = 5;
    FailureEstimate many = estimate_failure_rate(cfg, 8);

    ExperimentConfig cfg3;
    cfg3.code = CodeKind::toric;
    cfg3.l_values = {6};
    cfg3.decoder = DecoderKind::mwpm3d;
    cfg3.p = 0.03;
    cfg3.q = 0.03;
    cfg3.trials = 6000;
    cfg3.master_seed = 702;
    cfg3.jobs = 1;
    FailureEstimate serial3 = estimate_failure_rate(cfg3, 6);
    cfg3.jobs = 3;
    FailureEstimate many3 = estimate_failure_rate(cfg3, 6);

    bool pass = serial.failures == dual.failures && serial.failures == many.failures &&
                serial.z_sector_failures == many.z_sector_failures &&
                serial3.failures == many3.failures && serial3.x_sector_failures == many3.x_sector_failures;
    char detail[96];
    std::snprintf(
        detail, sizeof detail, "2d failures=%ld (jobs 1/2/5), 3d failures=%ld (jobs 1/3)", serial.failures,
        serial3.failures);
    report(9, "determinism across jobs", pass, detail);
    EXPECT_TRUE(pass);
}
