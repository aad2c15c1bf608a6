#include "pass_noma/outputs.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "pass_noma/error.hpp"

namespace pass_noma {

namespace {

// Shortest representation that parses back to the same double; locale independent.
std::string num(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string fixed(double v, int digits) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
    return std::string(buf, ptr);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) parts.push_back(item);
    if (!s.empty() && s.back() == sep) parts.emplace_back();
    return parts;
}

template <typename T>
T parse_number(const std::string& s, int line) {
    T v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw Error(ErrorKind::io, "records.csv line " + std::to_string(line) + ": bad number '" + s + "'");
    }
    return v;
}

constexpr const char* records_header =
    "trial,sweep_value,users,antennas,scheme,feasible,status,sum_rate,rates,outer_iterations,channel_hash";

}  // namespace

void write_records_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
    out << records_header << '\n';
    for (const auto& r : records) {
        std::string rates;
        for (std::size_t i = 0; i < r.rates.size(); ++i) rates += (i ? ";" : "") + num(r.rates[i]);
        out << r.trial << ',' << r.sweep_value << ',' << r.num_users << ',' << r.num_antennas << ','
            << to_string(r.scheme) << ',' << (r.feasible ? 1 : 0) << ',' << '"' << r.status << '"' << ','
            << num(r.sum_rate) << ',' << rates << ',' << r.outer_iterations << ',' << r.channel_hash << '\n';
    }
}

std::vector<TrialRecord> read_records_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != records_header) {
        throw Error(ErrorKind::io, "records.csv: missing or unexpected header");
    }
    std::vector<TrialRecord> records;
    for (int number = 2; std::getline(in, line); ++number) {
        if (line.empty()) continue;
        // The quoted status is the only field that may contain commas.
        const auto q1 = line.find('"');
        const auto q2 = line.rfind('"');
        if (q1 == std::string::npos || q2 == q1) {
            throw Error(ErrorKind::io, "records.csv line " + std::to_string(number) + ": missing quoted status");
        }
        const auto head = split(line.substr(0, q1), ',');
        const auto tail = split(line.substr(q2 + 1), ',');
        if (head.size() != 7 || tail.size() != 5) {
            throw Error(ErrorKind::io, "records.csv line " + std::to_string(number) + ": wrong field count");
        }
        TrialRecord r;
        r.trial = parse_number<int>(head[0], number);
        r.sweep_value = parse_number<int>(head[1], number);
        r.num_users = parse_number<int>(head[2], number);
        r.num_antennas = parse_number<int>(head[3], number);
        r.scheme = parse_scheme(head[4]);
        r.feasible = parse_number<int>(head[5], number) != 0;
        r.status = line.substr(q1 + 1, q2 - q1 - 1);
        r.sum_rate = parse_number<double>(tail[1], number);
        if (!tail[2].empty()) {
            for (const auto& x : split(tail[2], ';')) r.rates.push_back(parse_number<double>(x, number));
        }
        r.outer_iterations = parse_number<int>(tail[3], number);
        r.channel_hash = parse_number<std::uint64_t>(tail[4], number);
        records.push_back(std::move(r));
    }
    return records;
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& summary) {
    out << "sweep_value,scheme,trials,feasible,feasible_fraction,mean_sum_rate,std_error,reference,paired_gain,"
           "pairs\n";
    for (const auto& s : summary) {
        out << s.sweep_value << ',' << to_string(s.scheme) << ',' << s.trials << ',' << s.feasible << ','
            << num(s.feasible_fraction) << ',' << num(s.mean) << ',' << num(s.std_error) << ',' << s.reference << ','
            << (s.reference.empty() ? std::string() : num(s.paired_gain)) << ',' << s.pairs << '\n';
    }
}

void write_timings_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
    out << "trial,sweep_value,scheme,wall_time_s\n";
    for (const auto& r : records) {
        out << r.trial << ',' << r.sweep_value << ',' << to_string(r.scheme) << ',' << num(r.wall_time) << '\n';
    }
}

std::string render_chart_svg(const std::vector<SummaryRow>& summary, const std::string& title,
                             const std::string& x_label) {
    constexpr double width = 640, height = 420, left = 70, right = 150, top = 40, bottom = 60;
    const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

    std::vector<Scheme> schemes;
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : summary) {
        if (std::find(schemes.begin(), schemes.end(), s.scheme) == schemes.end()) schemes.push_back(s.scheme);
        if (std::isnan(s.mean)) continue;
        xmin = std::min(xmin, double(s.sweep_value));
        xmax = std::max(xmax, double(s.sweep_value));
        ymin = std::min(ymin, s.mean - s.std_error);
        ymax = std::max(ymax, s.mean + s.std_error);
    }
    if (!std::isfinite(xmin)) xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    if (xmax == xmin) xmin -= 1, xmax += 1;
    const double pad = std::max(0.05 * (ymax - ymin), 1e-3);
    ymin -= pad;
    ymax += pad;
    const double pw = width - left - right, ph = height - top - bottom;
    auto sx = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
    auto sy = [&](double y) { return top + (ymax - y) / (ymax - ymin) * ph; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n";
    svg << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double y = ymin + (ymax - ymin) * i / 5.0;
        svg << "<line x1=\"" << left - 4 << "\" y1=\"" << fixed(sy(y), 2) << "\" x2=\"" << left << "\" y2=\""
            << fixed(sy(y), 2) << "\" stroke=\"black\"/><text x=\"" << left - 6 << "\" y=\"" << fixed(sy(y) + 4, 2)
            << "\" text-anchor=\"end\">" << fixed(y, 2) << "</text>\n";
    }
    std::vector<int> xs;
    for (const auto& s : summary) {
        if (std::find(xs.begin(), xs.end(), s.sweep_value) == xs.end()) xs.push_back(s.sweep_value);
    }
    for (int x : xs) {
        svg << "<text x=\"" << fixed(sx(x), 2) << "\" y=\"" << top + ph + 16 << "\" text-anchor=\"middle\">" << x
            << "</text>\n";
    }
    svg << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 18 << "\" text-anchor=\"middle\">" << x_label
        << "</text>\n";
    svg << "<text x=\"18\" y=\"" << top + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
        << top + ph / 2 << ")\">Sum rate (bits/s/Hz)</text>\n";

    for (std::size_t k = 0; k < schemes.size(); ++k) {
        const char* color = colors[k % 5];
        std::string points;
        std::ostringstream marks;
        for (const auto& s : summary) {
            if (s.scheme != schemes[k] || std::isnan(s.mean)) continue;
            const std::string x = fixed(sx(s.sweep_value), 2);
            points += (points.empty() ? "" : " ") + x + "," + fixed(sy(s.mean), 2);
            marks << "<line class=\"error-bar\" x1=\"" << x << "\" y1=\"" << fixed(sy(s.mean - s.std_error), 2)
                  << "\" x2=\"" << x << "\" y2=\"" << fixed(sy(s.mean + s.std_error), 2) << "\" stroke=\"" << color
                  << "\"/>\n<circle class=\"point\" cx=\"" << x << "\" cy=\"" << fixed(sy(s.mean), 2)
                  << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        }
        svg << "<g data-scheme=\"" << to_string(schemes[k]) << "\">\n<polyline class=\"series\" points=\"" << points
            << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
            << marks.str() << "</g>\n";
        const double ly = top + 14 + 18.0 * k;
        svg << "<line x1=\"" << left + pw + 12 << "\" y1=\"" << ly << "\" x2=\"" << left + pw + 32 << "\" y2=\"" << ly
            << "\" stroke=\"" << color << "\" stroke-width=\"2\"/><text x=\"" << left + pw + 38 << "\" y=\""
            << ly + 4 << "\">" << to_string(schemes[k]) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

OutputPaths emit_outputs(const ExperimentResult& result, const std::string& out_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw Error(ErrorKind::io, "cannot create output directory " + out_dir + ": " + ec.message());

    const fs::path dir(out_dir);
    const std::string kind = to_string(result.config.kind);
    OutputPaths paths{(dir / "records.csv").string(), (dir / "summary.csv").string(),
                      (dir / "timings.csv").string(), (dir / (kind + ".svg")).string()};
    auto write = [](const std::string& path, auto&& body) {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorKind::io, "cannot open " + path + " for writing");
        body(out);
        out.flush();
        if (!out) throw Error(ErrorKind::io, "write failed for " + path);
    };
    write(paths.records, [&](std::ostream& o) { write_records_csv(o, result.records); });
    write(paths.summary, [&](std::ostream& o) { write_summary_csv(o, result.summary); });
    write(paths.timings, [&](std::ostream& o) { write_timings_csv(o, result.records); });
    const std::string x_label =
        result.config.kind == ExperimentKind::vary_users ? "Number of users K" : "Number of pinching antennas N_t";
    write(paths.chart, [&](std::ostream& o) {
        o << render_chart_svg(result.summary, "Mean sum rate (" + kind + ")", x_label);
    });
    return paths;
}

}  // namespace pass_noma
