#include "pass_noma/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <thread>

#include "pass_noma/ao_driver.hpp"
#include "pass_noma/baselines.hpp"
#include "pass_noma/error.hpp"

namespace pass_noma {

std::string to_string(Scheme scheme) {
    switch (scheme) {
        case Scheme::gpr: return "gpr";
        case Scheme::epr_all: return "epr-all";
        case Scheme::epr_activation: return "epr-activation";
        case Scheme::exhaustive_sic: return "exhaustive-sic";
    }
    return "unknown";
}

Scheme parse_scheme(const std::string& text) {
    for (auto s : {Scheme::gpr, Scheme::epr_all, Scheme::epr_activation, Scheme::exhaustive_sic}) {
        if (text == to_string(s)) return s;
    }
    throw Error(ErrorKind::invalid_parameter, "unknown scheme '" + text + "'");
}

std::vector<Scheme> schemes_for(ExperimentKind kind) {
    if (kind == ExperimentKind::sic_compare) return {Scheme::gpr, Scheme::exhaustive_sic};
    return {Scheme::gpr, Scheme::epr_all, Scheme::epr_activation};
}

bool TrialRecord::operator==(const TrialRecord& o) const {
    return trial == o.trial && sweep_value == o.sweep_value && num_users == o.num_users &&
           num_antennas == o.num_antennas && scheme == o.scheme && feasible == o.feasible && status == o.status &&
           sum_rate == o.sum_rate && rates == o.rates && outer_iterations == o.outer_iterations &&
           channel_hash == o.channel_hash;
}

std::uint64_t channel_hash(const ChannelMatrix& channels) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&](double v) {
        unsigned char bytes[sizeof(double)];
        std::memcpy(bytes, &v, sizeof v);
        for (unsigned char b : bytes) {
            h ^= b;
            h *= 0x100000001b3ULL;
        }
    };
    for (Eigen::Index c = 0; c < channels.h.cols(); ++c) {
        for (Eigen::Index r = 0; r < channels.h.rows(); ++r) {
            mix(channels.h(r, c).real());
            mix(channels.h(r, c).imag());
        }
    }
    mix(channels.noise_variance);
    return h;
}

ChannelMatrix trial_channels(const ExperimentConfig& config, int num_users, int num_antennas, int trial) {
    const auto& ph = config.physical;
    const SystemLayout layout = SystemLayout::make(ph.layout(num_antennas));
    const auto users = sample_users(num_users, ph.d1, ph.d2, config.seed + static_cast<std::uint64_t>(trial));
    return build_channels(users, layout, ph.noise_variance());
}

namespace {

void fill_from(TrialRecord& r, const AoResult& ao) {
    r.feasible = ao.feasible();
    r.status = to_string(ao.status);
    r.outer_iterations = ao.outer_iterations;
    if (r.feasible) {
        r.sum_rate = ao.sum_rate;
        r.rates.assign(ao.rates.data(), ao.rates.data() + ao.rates.size());
    }
}

void fill_from(TrialRecord& r, const EprResult& epr) {
    r.feasible = epr.feasible;
    r.status = epr.feasible ? "ok" : "qos-infeasible";
    if (r.feasible) {
        r.sum_rate = epr.sum_rate;
        r.rates.assign(epr.rates.data(), epr.rates.data() + epr.rates.size());
    }
}

}  // namespace

std::vector<TrialRecord> run_trial(const ExperimentConfig& config, int sweep_value, int trial) {
    const bool users_swept = config.kind == ExperimentKind::vary_users;
    const int k = users_swept ? sweep_value : config.num_users;
    const int n = users_swept ? config.num_antennas : sweep_value;
    const ChannelMatrix channels = trial_channels(config, k, n, trial);
    const std::uint64_t hash = channel_hash(channels);
    const QosParams qos = QosParams::uniform(k, config.physical.r_min);
    const double p_t = config.physical.power_budget;
    const BudgetReading reading = config.physical.budget_reading;

    std::vector<TrialRecord> out;
    for (Scheme scheme : schemes_for(config.kind)) {
        TrialRecord r;
        r.trial = trial;
        r.sweep_value = sweep_value;
        r.num_users = k;
        r.num_antennas = n;
        r.scheme = scheme;
        r.channel_hash = hash;
        const auto start = std::chrono::steady_clock::now();
        try {
            switch (scheme) {
                case Scheme::gpr: {
                    AoConfig solver = config.solver;
                    if (config.kind == ExperimentKind::sic_compare) solver.sic_mode = SicMode::dynamic;
                    fill_from(r, ao_solve(channels, qos, p_t, solver));
                    break;
                }
                case Scheme::exhaustive_sic:
                    fill_from(r, ao_exhaustive_sic(channels, qos, p_t, config.solver));
                    break;
                case Scheme::epr_all:
                    fill_from(r, epr_rate(channels, ActivationMask::all(n), qos, p_t, reading));
                    break;
                case Scheme::epr_activation:
                    fill_from(r, best_activation(channels, qos, p_t, config.activation, reading).epr);
                    break;
            }
        } catch (const std::exception& e) {
            std::string what = e.what();
            std::replace_if(what.begin(), what.end(), [](char ch) { return ch == '"' || ch == '\n'; }, '\'');
            r = TrialRecord{trial, sweep_value, k, n, scheme, false, "error: " + what, 0.0, {}, 0, hash};
        }
        r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records) {
    // Keep first-seen order of sweep values and schemes.
    std::vector<int> sweeps;
    std::vector<Scheme> schemes;
    for (const auto& r : records) {
        if (std::find(sweeps.begin(), sweeps.end(), r.sweep_value) == sweeps.end()) sweeps.push_back(r.sweep_value);
        if (std::find(schemes.begin(), schemes.end(), r.scheme) == schemes.end()) schemes.push_back(r.scheme);
    }
    auto reference_of = [&](Scheme s) -> std::optional<Scheme> {
        auto has = [&](Scheme x) { return std::find(schemes.begin(), schemes.end(), x) != schemes.end(); };
        if (s == Scheme::gpr && has(Scheme::epr_activation)) return Scheme::epr_activation;
        if (s == Scheme::exhaustive_sic && has(Scheme::gpr)) return Scheme::gpr;
        return std::nullopt;
    };

    std::vector<SummaryRow> rows;
    for (int v : sweeps) {
        for (Scheme s : schemes) {
            SummaryRow row;
            row.sweep_value = v;
            row.scheme = s;
            std::map<int, double> by_trial;
            for (const auto& r : records) {
                if (r.sweep_value != v || r.scheme != s) continue;
                ++row.trials;
                if (r.feasible) by_trial[r.trial] = r.sum_rate;
            }
            if (row.trials == 0) continue;
            row.feasible = static_cast<int>(by_trial.size());
            row.feasible_fraction = static_cast<double>(row.feasible) / row.trials;
            double sum = 0.0;
            for (const auto& [t, x] : by_trial) sum += x;
            row.mean = row.feasible > 0 ? sum / row.feasible : std::numeric_limits<double>::quiet_NaN();
            if (row.feasible > 1) {
                double ss = 0.0;
                for (const auto& [t, x] : by_trial) ss += (x - row.mean) * (x - row.mean);
                row.std_error = std::sqrt(ss / (row.feasible - 1)) / std::sqrt(static_cast<double>(row.feasible));
            }
            if (auto ref = reference_of(s)) {
                row.reference = to_string(*ref);
                double gain = 0.0;
                for (const auto& r : records) {
                    if (r.sweep_value != v || r.scheme != *ref || !r.feasible) continue;
                    const auto it = by_trial.find(r.trial);
                    if (it == by_trial.end() || r.sum_rate == 0.0) continue;
                    gain += (it->second - r.sum_rate) / r.sum_rate;
                    ++row.pairs;
                }
                row.paired_gain = row.pairs > 0 ? gain / row.pairs : std::numeric_limits<double>::quiet_NaN();
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

int workers_from_env() {
    if (const char* env = std::getenv("PASS_NOMA_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 1) {
            throw Error(ErrorKind::config, std::string("PASS_NOMA_WORKERS must be a positive integer, got '") + env + "'");
        }
        return static_cast<int>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

ExperimentResult run_experiment(const ExperimentConfig& config, int workers) {
    config.validate();
    if (workers <= 0) workers = workers_from_env();
    const std::vector<int> sweep = config.sweep_values();
    const std::size_t tasks = sweep.size() * static_cast<std::size_t>(config.trials);
    std::vector<std::vector<TrialRecord>> slots(tasks);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto work = [&] {
        for (std::size_t i = next++; i < tasks; i = next++) {
            try {
                const int v = sweep[i / static_cast<std::size_t>(config.trials)];
                const int trial = static_cast<int>(i % static_cast<std::size_t>(config.trials));
                slots[i] = run_trial(config, v, trial);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    const int threads = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(workers), tasks));
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);

    ExperimentResult result;
    result.config = config;
    for (auto& slot : slots) {
        for (auto& r : slot) result.records.push_back(std::move(r));
    }
    result.summary = summarize(result.records);
    return result;
}

}  // namespace pass_noma
