#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pass_noma/ao_driver.hpp"
#include "pass_noma/baselines.hpp"
#include "pass_noma/config.hpp"
#include "pass_noma/error.hpp"
#include "pass_noma/experiment.hpp"
#include "pass_noma/noma_core.hpp"
#include "pass_noma/oracle.hpp"
#include "pass_noma/outputs.hpp"
#include "pass_noma/power_model.hpp"

namespace py = pybind11;
using namespace pass_noma;

namespace {

QosParams qos_for(int k, double r_min) { return QosParams::uniform(k, r_min); }

py::dict ao_dict(const AoResult& r) {
    py::dict d;
    d["status"] = to_string(r.status);
    d["feasible"] = r.feasible();
    d["sum_rate"] = r.sum_rate;
    d["p"] = r.p_star;
    d["alpha"] = r.alpha_star;
    d["order"] = r.order_star.sequence();
    d["rates"] = r.rates;
    d["outer_trajectory"] = r.outer_trajectory;
    d["outer_iterations"] = r.outer_iterations;
    return d;
}

py::dict epr_dict(const EprResult& r) {
    py::dict d;
    d["feasible"] = r.feasible;
    d["sum_rate"] = r.sum_rate;
    d["p"] = r.p;
    d["alpha"] = r.alpha;
    d["rates"] = r.rates;
    d["order"] = r.order.sequence();
    return d;
}

py::dict record_dict(const TrialRecord& r) {
    py::dict d;
    d["trial"] = r.trial;
    d["sweep_value"] = r.sweep_value;
    d["users"] = r.num_users;
    d["antennas"] = r.num_antennas;
    d["scheme"] = to_string(r.scheme);
    d["feasible"] = r.feasible;
    d["status"] = r.status;
    d["sum_rate"] = r.sum_rate;
    d["rates"] = r.rates;
    d["outer_iterations"] = r.outer_iterations;
    d["channel_hash"] = r.channel_hash;
    d["wall_time"] = r.wall_time;
    return d;
}

py::dict summary_dict(const SummaryRow& s) {
    py::dict d;
    d["sweep_value"] = s.sweep_value;
    d["scheme"] = to_string(s.scheme);
    d["trials"] = s.trials;
    d["feasible"] = s.feasible;
    d["feasible_fraction"] = s.feasible_fraction;
    d["mean"] = s.mean;
    d["std_error"] = s.std_error;
    d["reference"] = s.reference;
    d["paired_gain"] = s.paired_gain;
    d["pairs"] = s.pairs;
    return d;
}

ChannelMatrix make_channels(const Eigen::MatrixXcd& h, double noise_variance) {
    ChannelMatrix ch;
    ch.h = h;
    ch.noise_variance = noise_variance;
    return ch;
}

DecodingOrder order_from(const std::vector<int>& order, const Eigen::VectorXd& gains) {
    return order.empty() ? order_by_gains(gains) : DecodingOrder::from_sequence(order);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Joint transmit and radiation power optimisation for NOMA pinching-antenna downlinks";

    py::register_exception<Error>(m, "PassNomaError", PyExc_RuntimeError);

    m.def("dbm_to_watts", &dbm_to_watts);
    m.def("watts_to_dbm", &watts_to_dbm);

    m.def(
        "channels",
        [](int num_users, int num_antennas, int trial, const std::string& config_text,
           const std::vector<std::string>& overrides) {
            const auto cfg = parse_config(config_text, "<python>", overrides);
            const auto ch = trial_channels(cfg, num_users, num_antennas, trial);
            return py::make_tuple(ch.h, ch.noise_variance);
        },
        py::arg("num_users"), py::arg("num_antennas"), py::arg("trial") = 0, py::arg("config_text") = "",
        py::arg("overrides") = std::vector<std::string>{},
        "Channel rows (K x N_t, complex) and noise power for one seeded trial.");

    m.def(
        "effective_gains",
        [](const Eigen::MatrixXcd& h, const Eigen::VectorXd& p) { return effective_gains(make_channels(h, 1.0), p); },
        py::arg("h"), py::arg("p"));

    m.def(
        "closed_form_alpha",
        [](const Eigen::VectorXd& gains, double r_min, double noise_variance, const std::vector<int>& order) {
            return closed_form_alpha(gains, order_from(order, gains), qos_for(static_cast<int>(gains.size()), r_min),
                                     noise_variance);
        },
        py::arg("gains"), py::arg("r_min"), py::arg("noise_variance"), py::arg("order") = std::vector<int>{},
        "Shares by user; the order (weakest first) defaults to ascending gains.");

    m.def(
        "user_rates",
        [](const Eigen::VectorXd& gains, const Eigen::VectorXd& alpha, double noise_variance,
           const std::vector<int>& order) { return user_rates(gains, alpha, order_from(order, gains), noise_variance); },
        py::arg("gains"), py::arg("alpha"), py::arg("noise_variance"), py::arg("order") = std::vector<int>{});

    m.def(
        "optimize",
        [](const Eigen::MatrixXcd& h, double noise_variance, double r_min, double power_budget,
           const std::string& sic_mode, bool multi_start) {
            AoConfig cfg;
            cfg.sic_mode = parse_sic_mode(sic_mode);
            cfg.multi_start = multi_start;
            const auto ch = make_channels(h, noise_variance);
            py::gil_scoped_release release;
            auto r = ao_solve(ch, qos_for(ch.num_users(), r_min), power_budget, cfg);
            py::gil_scoped_acquire acquire;
            return ao_dict(r);
        },
        py::arg("h"), py::arg("noise_variance"), py::arg("r_min") = 0.5, py::arg("power_budget") = 1.0,
        py::arg("sic_mode") = "dynamic", py::arg("multi_start") = true,
        "Alternating optimisation of the NOMA shares and the radiation vector.");

    m.def(
        "epr_rate",
        [](const Eigen::MatrixXcd& h, double noise_variance, const std::vector<bool>& mask, double r_min,
           double power_budget) {
            const auto ch = make_channels(h, noise_variance);
            ActivationMask am{mask.empty() ? std::vector<bool>(static_cast<std::size_t>(ch.num_antennas()), true)
                                           : mask};
            return epr_dict(epr_rate(ch, am, qos_for(ch.num_users(), r_min), power_budget));
        },
        py::arg("h"), py::arg("noise_variance"), py::arg("mask") = std::vector<bool>{}, py::arg("r_min") = 0.5,
        py::arg("power_budget") = 1.0);

    m.def(
        "best_activation",
        [](const Eigen::MatrixXcd& h, double noise_variance, const std::string& strategy, double r_min,
           double power_budget) {
            const auto ch = make_channels(h, noise_variance);
            const auto r = best_activation(ch, qos_for(ch.num_users(), r_min), power_budget,
                                           parse_activation_strategy(strategy));
            py::dict d = epr_dict(r.epr);
            d["mask"] = r.mask.active;
            d["evaluated"] = r.evaluated;
            return d;
        },
        py::arg("h"), py::arg("noise_variance"), py::arg("strategy") = "greedy", py::arg("r_min") = 0.5,
        py::arg("power_budget") = 1.0);

    m.def(
        "grid_alpha",
        [](const Eigen::VectorXd& gains, double r_min, double noise_variance, double resolution) {
            const auto r = oracle::grid_alpha(gains, qos_for(static_cast<int>(gains.size()), r_min), noise_variance,
                                              resolution);
            py::dict d;
            d["feasible"] = r.feasible;
            d["alpha"] = r.alpha;
            d["sum_rate"] = r.sum_rate;
            d["evaluated"] = r.evaluated;
            return d;
        },
        py::arg("gains"), py::arg("r_min"), py::arg("noise_variance"), py::arg("resolution") = 1e-2);

    m.def(
        "random_p",
        [](const Eigen::MatrixXcd& h, double noise_variance, double r_min, double power_budget, long long samples,
           std::uint64_t seed) {
            const auto ch = make_channels(h, noise_variance);
            const auto r = oracle::random_p(ch, qos_for(ch.num_users(), r_min), power_budget, samples, seed);
            py::dict d;
            d["feasible"] = r.feasible;
            d["p"] = r.p;
            d["alpha"] = r.alpha;
            d["sum_rate"] = r.sum_rate;
            d["feasible_samples"] = r.feasible_samples;
            return d;
        },
        py::arg("h"), py::arg("noise_variance"), py::arg("r_min") = 0.5, py::arg("power_budget") = 1.0,
        py::arg("samples") = 100000, py::arg("seed") = 1);

    m.def(
        "couplings_to_fractions",
        [](const std::vector<double>& delta) { return couplings_to_fractions({delta}).beta; }, py::arg("delta"));
    m.def(
        "fractions_to_couplings",
        [](const std::vector<double>& beta) { return fractions_to_couplings({beta}).delta; }, py::arg("beta"));
    m.def(
        "epr_couplings", [](int n, double p_eq) { return epr_couplings(n, p_eq).delta; }, py::arg("num_antennas"),
        py::arg("p_eq"));

    m.def(
        "run_experiment",
        [](const std::string& config_text, const std::vector<std::string>& overrides, int workers,
           const std::string& out_dir) {
            const auto cfg = parse_config(config_text, "<python>", overrides);
            ExperimentResult result;
            {
                py::gil_scoped_release release;
                result = run_experiment(cfg, workers);
                if (!out_dir.empty()) emit_outputs(result, out_dir);
            }
            py::list records, summary;
            for (const auto& r : result.records) records.append(record_dict(r));
            for (const auto& s : result.summary) summary.append(summary_dict(s));
            return py::make_tuple(records, summary);
        },
        py::arg("config_text") = "", py::arg("overrides") = std::vector<std::string>{}, py::arg("workers") = 1,
        py::arg("out_dir") = "", "Run a configured experiment; returns (records, summary) as lists of dicts.");

    m.def(
        "render_config",
        [](const std::string& text, const std::vector<std::string>& overrides) {
            return render_config(parse_config(text, "<python>", overrides));
        },
        py::arg("config_text") = "", py::arg("overrides") = std::vector<std::string>{});
}
