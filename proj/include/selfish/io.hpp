#pragma once

// Output formats shared by the command-line tool and the tests.

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "selfish/metrics.hpp"
#include "selfish/tournament.hpp"

namespace selfish {

std::string_view tool_version();

/// "# selfish-ca v<version> flags: <flags>"
std::string provenance_line(std::string_view flags);

inline constexpr std::string_view kTrialCsvHeader =
    "black_rule,grey_rule,sample,separation,seed,steps,outcome,black_count,grey_count,white_count,row_entropy,"
    "block_entropy_k,lz_complexity";

/// One CSV row without the trailing newline. Entropies use "%.10f".
std::string to_csv_row(const TrialRecord& r);

/// "# records: <n>", the last line of a complete CSV file.
std::string csv_footer(std::size_t records);

std::optional<Outcome> parse_outcome(std::string_view name);

nlohmann::json to_json(const MetricsReport& report);
nlohmann::json to_json(const PairSummary& summary);
nlohmann::json to_json(const ExperimentPlan& plan);

}  // namespace selfish
