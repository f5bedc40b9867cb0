#include "falsify/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

#include <json.hpp>

#include "falsify/svg.hpp"

namespace falsify {

namespace {

using nlohmann::json;

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json counterexample_json(const Counterexample& c, const std::string& scenario) {
    return {
        {"scenario", scenario},
        {"seed", c.seed},
        {"state",
         {{"x", c.state.x},
          {"y", c.state.y},
          {"theta", c.state.theta},
          {"omega", c.state.omega},
          {"x_T", c.state.x_target},
          {"y_T", c.state.y_target}}},
        {"omega_applied", c.omega_applied},
        {"successor", {{"x", c.successor.x}, {"y", c.successor.y}, {"theta", c.successor.theta}}},
        {"objective", c.objective_value},
        {"evaluations", c.evaluations_to_find},
    };
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ReportError("cannot open " + path.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw ReportError("failed writing " + path.string());
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc{}) return "nan";
    return std::string(buf, end);
}

std::string counterexamples_json(const CampaignReport& report) {
    json found = json::array();
    json runs = json::array();
    for (const auto& r : report.runs) {
        if (r.counterexample) found.push_back(counterexample_json(*r.counterexample, report.scenario_name));
        runs.push_back({
            {"run", r.run},
            {"seed", r.seed},
            {"best_value", finite_or_null(r.result.best_value)},
            {"iterations", r.result.iterations_used},
            {"evaluations", r.result.evaluations},
            {"terminated_early", r.result.terminated_early},
            {"counterexample", r.counterexample.has_value()},
        });
    }
    const bool any = !found.empty();
    json doc = {
        {"scenario", report.scenario_name},
        {"status", any ? kStatusFound : kStatusNone},
        {"counterexamples", found},
        {"runs", runs},
    };
    return doc.dump(2) + "\n";
}

std::string visited_csv(const CampaignReport& report) {
    std::string out(kVisitedCsvHeader);
    out += '\n';
    for (const auto& r : report.runs) {
        const auto& log = r.result.visited_log;
        for (std::size_t i = 0; i < log.size(); ++i) {
            out += std::to_string(r.run);
            out += ',';
            out += std::to_string(i);
            for (double v : log[i].position) {
                out += ',';
                out += format_double(v);
            }
            out += ',';
            out += format_double(log[i].value);
            out += '\n';
        }
    }
    return out;
}

ParsedCounterexamples parse_counterexamples_json(std::string_view text) {
    ParsedCounterexamples parsed;
    try {
        const json doc = json::parse(text);
        parsed.scenario_name = doc.at("scenario").get<std::string>();
        for (const auto& item : doc.at("counterexamples")) {
            Counterexample c;
            const auto& st = item.at("state");
            c.state = {st.at("x").get<double>(),     st.at("y").get<double>(),
                       st.at("theta").get<double>(), st.at("omega").get<double>(),
                       st.at("x_T").get<double>(),   st.at("y_T").get<double>()};
            const auto& succ = item.at("successor");
            c.successor = {succ.at("x").get<double>(), succ.at("y").get<double>(),
                           succ.at("theta").get<double>()};
            c.omega_applied = item.at("omega_applied").get<double>();
            c.objective_value = item.at("objective").get<double>();
            c.seed = item.at("seed").get<std::uint64_t>();
            c.evaluations_to_find = item.at("evaluations").get<std::size_t>();
            parsed.counterexamples.push_back(c);
        }
    } catch (const json::exception& e) {
        throw ReportError(std::string("malformed results document: ") + e.what());
    }
    return parsed;
}

EmittedFiles emit_report(const CampaignReport& report, const Scenario& scenario,
                         const std::filesystem::path& dir, bool plots) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw ReportError("cannot create directory " + dir.string() + ": " + ec.message());

    EmittedFiles files;
    files.json = dir / "counterexamples.json";
    files.csv = dir / "visited.csv";
    write_file(files.json, counterexamples_json(report));
    write_file(files.csv, visited_csv(report));
    if (plots) {
        for (const auto& r : report.runs) {
            auto path = dir / ("run_" + std::to_string(r.run) + ".svg");
            write_file(path, render_run_svg(r, scenario));
            files.svgs.push_back(std::move(path));
        }
    }
    return files;
}

}  // namespace falsify
