#include "pass_noma/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include <boost/algorithm/string/trim.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "pass_noma/error.hpp"

namespace pass_noma {

namespace pt = boost::property_tree;

std::string to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::vary_antennas: return "vary-antennas";
        case ExperimentKind::vary_users: return "vary-users";
        case ExperimentKind::sic_compare: return "sic-compare";
        case ExperimentKind::single: return "single";
    }
    return "unknown";
}

ExperimentKind parse_experiment_kind(const std::string& text) {
    for (auto kind : {ExperimentKind::vary_antennas, ExperimentKind::vary_users, ExperimentKind::sic_compare,
                      ExperimentKind::single}) {
        if (text == to_string(kind)) return kind;
    }
    throw Error(ErrorKind::config, "unknown experiment kind '" + text + "'");
}

LayoutParams PhysicalParams::layout(int num_antennas) const {
    LayoutParams p;
    p.d1 = d1;
    p.d2 = d2;
    p.height = height;
    p.num_antennas = num_antennas;
    p.carrier_frequency = carrier_frequency;
    p.n_eff = n_eff;
    p.kappa_db_per_m = kappa_db_per_m;
    p.free_space_phase = free_space_phase;
    return p;
}

std::vector<int> ExperimentConfig::sweep_values() const {
    if (!sweep.empty()) return sweep;
    switch (kind) {
        case ExperimentKind::vary_antennas: return {4, 8, 12, 16, 20};
        case ExperimentKind::vary_users: return {2, 3, 4, 5};
        case ExperimentKind::sic_compare: return {8};
        case ExperimentKind::single: return {num_antennas};
    }
    return {};
}

void ExperimentConfig::validate() const {
    auto fail = [](const std::string& field, const std::string& why) {
        throw Error(ErrorKind::config, field + ": " + why);
    };
    if (trials < 1) fail("experiment.trials", "must be >= 1");
    if (num_users < 1) fail("experiment.users", "must be >= 1");
    if (num_antennas < 1) fail("experiment.antennas", "must be >= 1");
    for (int v : sweep_values()) {
        if (v < 1) fail("experiment.sweep", "values must be >= 1");
    }
    if (kind == ExperimentKind::single && sweep.size() > 1) fail("experiment.sweep", "single takes at most one value");
    const auto& ph = physical;
    const std::pair<const char*, double> positive[] = {
        {"physical.carrier_frequency_hz", ph.carrier_frequency}, {"physical.n_eff", ph.n_eff},
        {"physical.height_m", ph.height}, {"physical.d1_m", ph.d1}, {"physical.d2_m", ph.d2},
        {"physical.power_budget_w", ph.power_budget}};
    for (const auto& [name, value] : positive) {
        if (!(value > 0.0)) fail(name, "must be positive");
    }
    if (!(ph.kappa_db_per_m >= 0.0)) fail("physical.kappa_db_per_m", "must be >= 0");
    if (!(ph.r_min >= 0.0)) fail("physical.r_min", "must be >= 0");
    if (!std::isfinite(ph.noise_dbm)) fail("physical.noise_dbm", "must be finite");
    try {
        solver.validate();
    } catch (const Error& e) {
        fail("solver", e.what());
    }
}

namespace {

// Line of `key` inside `[section]`, or 0 when it cannot be located.
int locate(const std::string& text, const std::string& section, const std::string& key) {
    std::istringstream in(text);
    std::string line;
    std::string current;
    for (int number = 1; std::getline(in, line); ++number) {
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == ';' || line[first] == '#') continue;
        if (line[first] == '[') {
            const auto close = line.find(']', first);
            current = line.substr(first + 1, close == std::string::npos ? std::string::npos : close - first - 1);
            continue;
        }
        const auto eq = line.find('=', first);
        if (eq == std::string::npos) continue;
        std::string name = line.substr(first, eq - first);
        name.erase(name.find_last_not_of(" \t") + 1);
        if (current == section && name == key) return number;
    }
    return 0;
}

class Reader {
public:
    Reader(const pt::ptree& tree, const std::string& text, const std::string& source,
           std::set<std::string> overridden)
        : tree_(tree), text_(text), source_(source), overridden_(std::move(overridden)) {}

    [[noreturn]] void fail(const std::string& path, const std::string& why) const {
        const auto dot = path.find('.');
        std::string where = source_;
        if (overridden_.count(path)) {
            where += " (override)";
        } else if (dot != std::string::npos) {
            const int line = locate(text_, path.substr(0, dot), path.substr(dot + 1));
            if (line > 0) where += ":" + std::to_string(line);
        }
        throw Error(ErrorKind::config, where + ": " + path + ": " + why);
    }

    std::optional<std::string> raw(const std::string& path) {
        seen_.insert(path);
        auto v = tree_.get_optional<std::string>(pt::ptree::path_type(path, '.'));
        if (!v) return std::nullopt;
        std::string s = *v;
        s.erase(0, s.find_first_not_of(" \t"));
        s.erase(s.find_last_not_of(" \t") + 1);
        return s;
    }

    void number(const std::string& path, double& out) {
        if (auto s = raw(path)) {
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(s->data(), s->data() + s->size(), v);
            if (ec != std::errc() || ptr != s->data() + s->size()) fail(path, "expected a number, got '" + *s + "'");
            out = v;
        }
    }

    template <typename Int>
    void integer(const std::string& path, Int& out) {
        if (auto s = raw(path)) {
            Int v{};
            const auto [ptr, ec] = std::from_chars(s->data(), s->data() + s->size(), v);
            if (ec != std::errc() || ptr != s->data() + s->size()) fail(path, "expected an integer, got '" + *s + "'");
            out = v;
        }
    }

    void boolean(const std::string& path, bool& out) {
        if (auto s = raw(path)) {
            if (*s == "true" || *s == "on" || *s == "1") {
                out = true;
            } else if (*s == "false" || *s == "off" || *s == "0") {
                out = false;
            } else {
                fail(path, "expected true/false, got '" + *s + "'");
            }
        }
    }

    void int_list(const std::string& path, std::vector<int>& out) {
        if (auto s = raw(path)) {
            std::vector<int> values;
            std::istringstream in(*s);
            std::string item;
            while (std::getline(in, item, ',')) {
                item.erase(0, item.find_first_not_of(" \t"));
                item.erase(item.find_last_not_of(" \t") + 1);
                int v = 0;
                const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
                if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
                    fail(path, "expected a comma-separated integer list, got '" + *s + "'");
                }
                values.push_back(v);
            }
            out = std::move(values);
        }
    }

    template <typename F>
    void text(const std::string& path, F&& apply) {
        if (auto s = raw(path)) {
            try {
                apply(*s);
            } catch (const Error& e) {
                fail(path, e.what());
            }
        }
    }

    void reject_unknown() const {
        for (const auto& [section, body] : tree_) {
            if (body.empty() && !body.data().empty()) fail(section, "key outside of any section");
            for (const auto& [key, value] : body) {
                const std::string path = section + "." + key;
                if (!seen_.count(path)) fail(path, "unknown field");
            }
        }
    }

private:
    const pt::ptree& tree_;
    const std::string& text_;
    std::string source_;
    std::set<std::string> overridden_;
    std::set<std::string> seen_;
};

BudgetReading parse_budget_reading(const std::string& s) {
    if (s == "squared") return BudgetReading::squared_amplitudes;
    if (s == "sum") return BudgetReading::sum_of_amplitudes;
    throw Error(ErrorKind::config, "expected squared or sum, got '" + s + "'");
}

SicConstraintForm parse_sic_form(const std::string& s) {
    if (s == "gain-order") return SicConstraintForm::gain_order;
    if (s == "log-surrogate") return SicConstraintForm::log_surrogate;
    throw Error(ErrorKind::config, "expected gain-order or log-surrogate, got '" + s + "'");
}

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

}  // namespace

ExperimentConfig parse_config(const std::string& text, const std::string& source_name,
                              const std::vector<std::string>& overrides) {
    pt::ptree tree;
    try {
        std::istringstream in(text);
        pt::ini_parser::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw Error(ErrorKind::config, source_name + ":" + std::to_string(e.line()) + ": " + e.message());
    }
    std::set<std::string> overridden;
    for (const auto& item : overrides) {
        const auto eq = item.find('=');
        const std::string key = boost::algorithm::trim_copy(item.substr(0, eq));
        if (eq == std::string::npos || key.find('.') == std::string::npos) {
            throw Error(ErrorKind::config, "override '" + item + "': expected section.key=value");
        }
        tree.put(pt::ptree::path_type(key, '.'), boost::algorithm::trim_copy(item.substr(eq + 1)));
        overridden.insert(key);
    }

    ExperimentConfig c;
    Reader r(tree, text, source_name, std::move(overridden));
    r.text("experiment.kind", [&](const std::string& s) { c.kind = parse_experiment_kind(s); });
    r.integer("experiment.trials", c.trials);
    r.integer("experiment.seed", c.seed);
    r.int_list("experiment.sweep", c.sweep);
    r.integer("experiment.users", c.num_users);
    r.integer("experiment.antennas", c.num_antennas);
    r.text("experiment.activation", [&](const std::string& s) { c.activation = parse_activation_strategy(s); });
    r.text("experiment.output_dir", [&](const std::string& s) { c.output_dir = s; });

    auto& ph = c.physical;
    r.number("physical.carrier_frequency_hz", ph.carrier_frequency);
    r.number("physical.n_eff", ph.n_eff);
    r.number("physical.kappa_db_per_m", ph.kappa_db_per_m);
    r.number("physical.height_m", ph.height);
    r.number("physical.d1_m", ph.d1);
    r.number("physical.d2_m", ph.d2);
    r.number("physical.noise_dbm", ph.noise_dbm);
    r.number("physical.power_budget_w", ph.power_budget);
    r.number("physical.r_min", ph.r_min);
    r.boolean("physical.free_space_phase", ph.free_space_phase);
    r.text("physical.budget_reading", [&](const std::string& s) { ph.budget_reading = parse_budget_reading(s); });

    auto& s = c.solver;
    r.number("solver.eps_outer", s.eps_outer);
    r.integer("solver.max_outer", s.max_outer);
    r.text("solver.sic_mode", [&](const std::string& v) { s.sic_mode = parse_sic_mode(v); });
    r.boolean("solver.multi_start", s.multi_start);
    r.integer("solver.start_search_samples", s.start_search_samples);
    r.number("solver.sca_eps", s.sca.eps);
    r.integer("solver.sca_max_iters", s.sca.max_iters);
    r.text("solver.sic_form", [&](const std::string& v) { s.sca.sic_form = parse_sic_form(v); });
    r.reject_unknown();

    c.solver.budget_reading = ph.budget_reading;
    try {
        c.validate();
    } catch (const Error& e) {
        throw Error(ErrorKind::config, source_name + ": " + e.what());
    }
    return c;
}

ExperimentConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::io, "cannot open config file " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), path, overrides);
}

std::string render_config(const ExperimentConfig& c) {
    std::ostringstream out;
    std::string sweep;
    for (std::size_t i = 0; i < c.sweep.size(); ++i) sweep += (i ? "," : "") + std::to_string(c.sweep[i]);
    const auto& ph = c.physical;
    const auto& s = c.solver;
    out << "[experiment]\n"
        << "kind = " << to_string(c.kind) << "\n"
        << "trials = " << c.trials << "\n"
        << "seed = " << c.seed << "\n";
    if (!sweep.empty()) out << "sweep = " << sweep << "\n";
    out << "users = " << c.num_users << "\n"
        << "antennas = " << c.num_antennas << "\n"
        << "activation = " << to_string(c.activation) << "\n"
        << "output_dir = " << c.output_dir << "\n\n"
        << "[physical]\n"
        << "carrier_frequency_hz = " << format_double(ph.carrier_frequency) << "\n"
        << "n_eff = " << format_double(ph.n_eff) << "\n"
        << "kappa_db_per_m = " << format_double(ph.kappa_db_per_m) << "\n"
        << "height_m = " << format_double(ph.height) << "\n"
        << "d1_m = " << format_double(ph.d1) << "\n"
        << "d2_m = " << format_double(ph.d2) << "\n"
        << "noise_dbm = " << format_double(ph.noise_dbm) << "\n"
        << "power_budget_w = " << format_double(ph.power_budget) << "\n"
        << "r_min = " << format_double(ph.r_min) << "\n"
        << "free_space_phase = " << (ph.free_space_phase ? "true" : "false") << "\n"
        << "budget_reading = " << (ph.budget_reading == BudgetReading::squared_amplitudes ? "squared" : "sum")
        << "\n\n"
        << "[solver]\n"
        << "eps_outer = " << format_double(s.eps_outer) << "\n"
        << "max_outer = " << s.max_outer << "\n"
        << "sic_mode = " << to_string(s.sic_mode) << "\n"
        << "multi_start = " << (s.multi_start ? "true" : "false") << "\n"
        << "start_search_samples = " << s.start_search_samples << "\n"
        << "sca_eps = " << format_double(s.sca.eps) << "\n"
        << "sca_max_iters = " << s.sca.max_iters << "\n"
        << "sic_form = "
        << (s.sca.sic_form == SicConstraintForm::gain_order ? "gain-order" : "log-surrogate") << "\n";
    return out.str();
}

}  // namespace pass_noma
