#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "falsify/falsifier.hpp"

namespace falsify {

inline constexpr std::string_view kVisitedCsvHeader = "run,evaluation,x,y,theta,omega,x_T,y_T,J";
inline constexpr std::string_view kStatusFound = "counterexample found";
inline constexpr std::string_view kStatusNone = "no counterexample found";

/// I/O failure while writing or reading report files; the message names the path.
class ReportError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Results document:
///
///     {"scenario": name, "status": "counterexample found" | "no counterexample found",
///      "counterexamples": [{"scenario", "seed", "state": {x, y, theta, omega, x_T, y_T},
///                           "omega_applied", "successor": {x, y, theta},
///                           "objective", "evaluations"}, ...],
///      "runs": [{"run", "seed", "best_value", "iterations", "evaluations",
///                "terminated_early", "counterexample"}, ...]}
///
/// Timing is deliberately absent so identical campaigns give identical bytes.
std::string counterexamples_json(const CampaignReport& report);

/// One row per objective evaluation, all runs, in order.
std::string visited_csv(const CampaignReport& report);

struct ParsedCounterexamples {
    std::string scenario_name;
    std::vector<Counterexample> counterexamples;
};

/// Reads a results document written by counterexamples_json.
ParsedCounterexamples parse_counterexamples_json(std::string_view text);

struct EmittedFiles {
    std::filesystem::path json;
    std::filesystem::path csv;
    std::vector<std::filesystem::path> svgs;
};

/// Writes counterexamples.json, visited.csv and, with plots enabled, one
/// run_<k>.svg per run into dir (created if missing).
EmittedFiles emit_report(const CampaignReport& report, const Scenario& scenario,
                         const std::filesystem::path& dir, bool plots);

/// Shortest decimal that round-trips the double.
std::string format_double(double value);

}  // namespace falsify
