#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pass_noma/ao_driver.hpp"
#include "pass_noma/config.hpp"
#include "pass_noma/error.hpp"
#include "pass_noma/experiment.hpp"
#include "pass_noma/oracle.hpp"
#include "pass_noma/outputs.hpp"

namespace {

using namespace pass_noma;
using json = nlohmann::json;

constexpr int exit_config = 2;
constexpr int exit_io = 3;
constexpr int exit_other = 1;

std::vector<double> vec(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

void print_summary(const ExperimentResult& result) {
    std::printf("%-8s %-16s %7s %9s %12s %10s %12s\n", "sweep", "scheme", "trials", "feasible", "mean", "stderr",
                "paired_gain");
    for (const auto& s : result.summary) {
        std::printf("%-8d %-16s %7d %9d %12.6f %10.6f", s.sweep_value, to_string(s.scheme).c_str(), s.trials,
                    s.feasible, s.mean, s.std_error);
        if (!s.reference.empty() && s.pairs > 0) {
            std::printf(" %+11.4f%% vs %s", 100.0 * s.paired_gain, s.reference.c_str());
        } else if (!s.reference.empty()) {
            std::printf("         n/a vs %s", s.reference.c_str());
        }
        std::printf("\n");
    }
}

struct RunOptions {
    std::string config;
    std::string experiment;
    int trials = 0;
    long long seed = -1;
    std::string out;
    std::vector<std::string> overrides;
};

int run(const RunOptions& o) {
    std::vector<std::string> overrides;
    if (!o.experiment.empty()) overrides.push_back("experiment.kind=" + o.experiment);
    if (o.trials > 0) overrides.push_back("experiment.trials=" + std::to_string(o.trials));
    if (o.seed >= 0) overrides.push_back("experiment.seed=" + std::to_string(o.seed));
    if (!o.out.empty()) overrides.push_back("experiment.output_dir=" + o.out);
    overrides.insert(overrides.end(), o.overrides.begin(), o.overrides.end());

    const ExperimentConfig config = load_config(o.config, overrides);
    const ExperimentResult result = run_experiment(config);
    const OutputPaths paths = emit_outputs(result, config.output_dir);
    print_summary(result);
    std::printf("wrote %s\nwrote %s\nwrote %s\nwrote %s\n", paths.records.c_str(), paths.summary.c_str(),
                paths.timings.c_str(), paths.chart.c_str());
    return 0;
}

struct GridOptions {
    std::vector<double> gains;
    double r_min = 0.5;
    double noise_dbm = -90.0;
    double resolution = 1e-2;
};

int grid(const GridOptions& o) {
    const Eigen::VectorXd gains = Eigen::Map<const Eigen::VectorXd>(o.gains.data(), static_cast<Eigen::Index>(o.gains.size()));
    const int k = static_cast<int>(gains.size());
    const QosParams qos = QosParams::uniform(k, o.r_min);
    const double noise = dbm_to_watts(o.noise_dbm);
    const auto found = oracle::grid_alpha(gains, qos, noise, o.resolution);
    json out{{"oracle", "grid-alpha"}, {"feasible", found.feasible}, {"evaluated", found.evaluated}};
    if (found.feasible) {
        out["alpha"] = vec(found.alpha);
        out["sum_rate"] = found.sum_rate;
    }
    try {
        const Eigen::VectorXd alpha = closed_form_alpha(gains, order_by_gains(gains), qos, noise);
        out["closed_form"] = {{"alpha", vec(alpha)},
                              {"sum_rate", user_rates(gains, alpha, order_by_gains(gains), noise).sum()}};
    } catch (const Error& e) {
        out["closed_form"] = {{"error", e.what()}};
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

struct RandomOptions {
    std::string config;
    std::vector<std::string> overrides;
    int users = 2;
    int antennas = 3;
    int trial = 0;
    long long samples = 100000;
    unsigned long long seed = 1;
};

int random_search(const RandomOptions& o) {
    const ExperimentConfig config = o.config.empty() ? parse_config("", "<defaults>", o.overrides)
                                                     : load_config(o.config, o.overrides);
    const ChannelMatrix channels = trial_channels(config, o.users, o.antennas, o.trial);
    const QosParams qos = QosParams::uniform(o.users, config.physical.r_min);
    const double p_t = config.physical.power_budget;
    const auto found = oracle::random_p(channels, qos, p_t, o.samples, o.seed);
    const AoResult ao = ao_optimize(channels, qos, p_t, config.solver);
    json out{{"oracle", "random-p"}, {"feasible", found.feasible}, {"feasible_samples", found.feasible_samples}};
    if (found.feasible) {
        out["p"] = vec(found.p);
        out["alpha"] = vec(found.alpha);
        out["sum_rate"] = found.sum_rate;
    }
    out["ao"] = {{"status", to_string(ao.status)}, {"sum_rate", ao.sum_rate}, {"p", vec(ao.p_star)},
                 {"alpha", vec(ao.alpha_star)}, {"order", ao.order_star.sequence()}};
    std::cout << out.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Joint transmit and radiation power optimisation for NOMA pinching-antenna downlinks"};
    app.require_subcommand(1);

    RunOptions run_opts;
    auto* run_cmd = app.add_subcommand("run", "Run a Monte Carlo experiment and write CSV and SVG outputs");
    run_cmd->add_option("--config", run_opts.config, "INI configuration file")->required();
    run_cmd->add_option("--experiment", run_opts.experiment, "vary-antennas, vary-users, sic-compare or single");
    run_cmd->add_option("--trials", run_opts.trials, "Number of channel realisations");
    run_cmd->add_option("--seed", run_opts.seed, "Base seed; trial t uses seed + t");
    run_cmd->add_option("--out", run_opts.out, "Output directory");
    run_cmd->add_option("--override", run_opts.overrides, "section.key=value, repeatable");

    auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force reference searches");
    oracle_cmd->require_subcommand(1);

    GridOptions grid_opts;
    auto* grid_cmd = oracle_cmd->add_subcommand("grid-alpha", "Simplex grid search over power shares");
    grid_cmd->add_option("--gains", grid_opts.gains, "Effective gains |h_k p|^2, one per user")->required()->delimiter(',');
    grid_cmd->add_option("--r-min", grid_opts.r_min, "Minimum rate (bits/s/Hz)");
    grid_cmd->add_option("--noise-dbm", grid_opts.noise_dbm, "Noise power (dBm)");
    grid_cmd->add_option("--resolution", grid_opts.resolution, "Grid step (>= 1e-3)");

    RandomOptions random_opts;
    auto* random_cmd = oracle_cmd->add_subcommand("random-p", "Random search over radiation vectors, compared with AO");
    random_cmd->add_option("--config", random_opts.config, "INI configuration file (defaults if omitted)");
    random_cmd->add_option("--override", random_opts.overrides, "section.key=value, repeatable");
    random_cmd->add_option("--users", random_opts.users, "K");
    random_cmd->add_option("--antennas", random_opts.antennas, "N_t");
    random_cmd->add_option("--trial", random_opts.trial, "Trial index selecting the user drop");
    random_cmd->add_option("--samples", random_opts.samples, "Number of samples");
    random_cmd->add_option("--seed", random_opts.seed, "Sampler seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) return run(run_opts);
        if (grid_cmd->parsed()) return grid(grid_opts);
        if (random_cmd->parsed()) return random_search(random_opts);
    } catch (const Error& e) {
        std::cerr << "pass-noma-opt: " << e.what() << "\n";
        if (e.kind() == ErrorKind::config) return exit_config;
        if (e.kind() == ErrorKind::io) return exit_io;
        return exit_other;
    } catch (const std::exception& e) {
        std::cerr << "pass-noma-opt: " << e.what() << "\n";
        return exit_other;
    }
    return exit_other;
}
