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

#include <fstream>
#include <iostream>
#include <memory>

#include "CLI11.hpp"
#include "surflab/bounds.hpp"
#include "surflab/harness.hpp"
#include "surflab/local4d.hpp"

namespace {

using namespace surflab;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitBracket = 3;

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file: " + path);
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return j.get<ExperimentConfig>();
}

std::unique_ptr<std::ofstream> open_output(const std::string& path) {
    if (path.empty()) {
        return nullptr;
    }
    auto out = std::make_unique<std::ofstream>(path);
    if (!*out) {
        throw ConfigError("cannot open output file: " + path);
    }
    return out;
}

void print_estimate(std::ostream& os, const FailureEstimate& est) {
    os << "L=" << est.l << " p=" << est.p << " q=" << est.q << " trials=" << est.trials
       << " failures=" << est.failures << " rate=" << est.rate << " ci=[" << est.ci_low << ","
       << est.ci_high << "]\n";
}

int cmd_simulate(const std::string& config_path, uint64_t seed, bool seed_set, int jobs, bool dump,
                 const std::string& output) {
    ExperimentConfig cfg = load_config(config_path);
    if (seed_set) {
        cfg.master_seed = seed;
    }
    if (jobs > 0) {
        cfg.jobs = jobs;
    }
    if (dump) {
        cfg.dump_trials = true;
    }
    if (!output.empty()) {
        cfg.output_path = output;
    }
    validate_config(cfg);

    auto file = open_output(cfg.output_path);
    nlohmann::json summary = nlohmann::json::array();
    for (int l : cfg.l_values) {
        FailureEstimate est;
        if (cfg.dump_trials) {
            std::ostream& dump_stream = file ? *file : std::cout;
            est = estimate_failure_rate(cfg, l, &dump_stream);
        } else {
            est = estimate_failure_rate(cfg, l);
        }
        print_estimate(std::cout, est);
        summary.push_back({{"L", est.l},
                           {"p", est.p},
                           {"q", est.q},
                           {"trials", est.trials},
                           {"failures", est.failures},
                           {"rate", est.rate},
                           {"ci_low", est.ci_low},
                           {"ci_high", est.ci_high},
                           {"z_sector_failures", est.z_sector_failures},
                           {"x_sector_failures", est.x_sector_failures}});
    }
    if (file && !cfg.dump_trials) {
        *file << summary.dump(2) << '\n';
    }
    return kExitOk;
}

int cmd_threshold(const std::string& config_path, uint64_t seed, bool seed_set, int jobs,
                  const std::string& output) {
    ExperimentConfig cfg = load_config(config_path);
    if (seed_set) {
        cfg.master_seed = seed;
    }
    if (jobs > 0) {
        cfg.jobs = jobs;
    }
    if (!output.empty()) {
        cfg.output_path = output;
    }
    ThresholdEstimate est = find_threshold(cfg);

    auto file = open_output(cfg.output_path);
    std::ostream& csv = file ? *file : std::cout;
    csv << "L,p,q,trials,failures,rate,ci_lo,ci_hi\n";
    for (const auto& point : est.points) {
        csv << point.l << ',' << point.p << ',' << point.q << ',' << point.trials << ','
            << point.failures << ',' << point.rate << ',' << point.ci_low << ',' << point.ci_high
            << '\n';
    }
    for (const auto& crossing : est.crossings) {
        std::cout << "crossing L" << crossing.l_low << "/L" << crossing.l_high << " at p=" << crossing.p_cross
                  << '\n';
    }
    std::cout << "mean crossing " << est.mean_crossing << " spread " << est.spread << '\n';
    return kExitOk;
}

void print_report(std::ostream& os, const BoundReport& report) {
    os << report.name << '\n';
    for (const auto& check : report.checks) {
        os << "  " << check.label << ": " << check.computed << " (reference " << check.reference << ") "
           << (check.pass ? "PASS" : "FAIL") << '\n';
    }
}

nlohmann::json report_to_json(const BoundReport& report) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& check : report.checks) {
        checks.push_back({{"label", check.label},
                          {"computed", check.computed},
                          {"reference", check.reference},
                          {"pass", check.pass}});
    }
    return {{"name", report.name}, {"checks", checks}, {"all_pass", report.all_pass()}};
}

int cmd_bounds(bool as_json, const GateRates& gates) {
    std::vector<BoundReport> reports = {
        storage_threshold_bounds(),
        css_capacity_report(),
        local4d_threshold_bound(),
        gate_level_condition(derive_circuit_rates(gates)),
    };
    if (as_json) {
        nlohmann::json out = nlohmann::json::array();
        for (const auto& report : reports) {
            out.push_back(report_to_json(report));
        }
        std::cout << out.dump(2) << '\n';
    } else {
        for (const auto& report : reports) {
            print_report(std::cout, report);
        }
    }
    return kExitOk;
}

int cmd_enumerate_sap(int dim, int max_len, bool as_json) {
    SapCounts counts = enumerate_saps(dim, max_len);
    double mu = NAN;
    try {
        mu = estimate_mu(counts);
    } catch (const std::invalid_argument&) {
        // too few lengths for the ratio fit; counts are still printed
    }
    if (as_json) {
        nlohmann::json j;
        j["dimension"] = counts.dimension;
        j["max_len"] = counts.max_len;
        j["counts"] = counts.count_by_length;
        if (!std::isnan(mu)) {
            j["mu_estimate"] = mu;
        }
        if (dim == 3) {
            nlohmann::json hv = nlohmann::json::array();
            for (const auto& [key, n] : counts.count_by_hv) {
                hv.push_back({{"h", key.first}, {"v", key.second}, {"count", n}});
            }
            j["counts_by_hv"] = hv;
        }
        std::cout << j.dump(2) << '\n';
    } else {
        for (int len = 4; len <= counts.max_len; ++len) {
            if (counts.count_by_length[len] > 0) {
                std::cout << "length " << len << ": " << counts.count_by_length[len] << '\n';
            }
        }
        if (!std::isnan(mu)) {
            std::cout << "mu estimate: " << mu << '\n';
        }
    }
    return kExitOk;
}

int cmd_local4d(int size, double rate, int rounds, uint64_t seed, const std::string& output) {
    Rng rng = Rng::for_trial(seed, 0);
    RelaxationResult result = relaxation_experiment(size, rate, rounds, rng);
    auto file = open_output(output);
    std::ostream& csv = file ? *file : std::cout;
    csv << "round,string_length\n";
    for (size_t t = 0; t < result.string_length_series.size(); ++t) {
        csv << t << ',' << result.string_length_series[t] << '\n';
    }
    std::cout << "cleaned=" << (result.cleaned ? "yes" : "no") << " cleanup_rounds=" << result.cleanup_rounds
              << " logical_failure=" << (result.logical_failure ? "yes" : "no") << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"surface-code fault-tolerance laboratory"};
    app.require_subcommand(1);

    std::string config_path, output;
    uint64_t seed = 0;
    int jobs = 0;
    bool dump = false;

    auto* simulate = app.add_subcommand("simulate", "estimate logical failure rates for one configuration");
    simulate->add_option("--config", config_path, "experiment config (JSON)")->required();
    auto* sim_seed = simulate->add_option("--seed", seed, "override the master seed");
    simulate->add_option("--jobs", jobs, "worker threads (0 = hardware)");
    simulate->add_flag("--dump-trials", dump, "write one JSON line per trial");
    simulate->add_option("--output", output, "output file (trial dump or JSON summary)");

    auto* threshold = app.add_subcommand("threshold", "sweep a p grid and locate failure-curve crossings");
    threshold->add_option("--config", config_path, "experiment config (JSON)")->required();
    auto* thr_seed = threshold->add_option("--seed", seed, "override the master seed");
    threshold->add_option("--jobs", jobs, "worker threads (0 = hardware)");
    threshold->add_option("--output", output, "CSV output file");

    bool as_json = false;
    GateRates gates{1e-5, 1e-4, 1e-4, 1e-4};
    auto* bounds = app.add_subcommand("bounds", "evaluate the closed-form threshold bounds");
    bounds->add_flag("--json", as_json, "machine-readable output");
    bounds->add_option("--ps", gates.p_s, "storage error rate for the gate-level report");
    bounds->add_option("--pcnot", gates.p_cnot, "CNOT error rate");
    bounds->add_option("--pprep", gates.p_prep, "preparation error rate");
    bounds->add_option("--pmeas", gates.p_meas, "measurement error rate");

    int dim = 2, max_len = 12;
    auto* sap = app.add_subcommand("enumerate-sap", "count rooted self-avoiding polygons");
    sap->add_option("--dim", dim, "lattice dimension (2 or 3)");
    sap->add_option("--max-len", max_len, "maximum polygon length");
    sap->add_flag("--json", as_json, "machine-readable output");

    int size = 3, rounds = 100;
    double rate = 1e-3;
    auto* local4d = app.add_subcommand("local4d", "run the 4d local-recovery relaxation experiment");
    local4d->add_option("--size", size, "lattice extent (2..5)");
    local4d->add_option("--rate", rate, "plaquette error rate per round");
    local4d->add_option("--rounds", rounds, "noisy rounds before cleanup");
    local4d->add_option("--seed", seed, "random seed");
    local4d->add_option("--output", output, "CSV output file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) {
            return cmd_simulate(config_path, seed, !sim_seed->empty(), jobs, dump, output);
        }
        if (threshold->parsed()) {
            return cmd_threshold(config_path, seed, !thr_seed->empty(), jobs, output);
        }
        if (bounds->parsed()) {
            return cmd_bounds(as_json, gates);
        }
        if (sap->parsed()) {
            return cmd_enumerate_sap(dim, max_len, as_json);
        }
        if (local4d->parsed()) {
            return cmd_local4d(size, rate, rounds, seed, output);
        }
    } catch (const surflab::BracketError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBracket;
    } catch (const surflab::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return kExitOk;
}
