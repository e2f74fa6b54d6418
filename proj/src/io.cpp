#include "selfish/io.hpp"

#include <cinttypes>
#include <cstdio>

namespace selfish {

std::string_view tool_version() { return SELFISH_CA_VERSION; }

std::string provenance_line(std::string_view flags) {
  std::string line = "# selfish-ca v";
  line += tool_version();
  line += " flags: ";
  line += flags;
  return line;
}

std::string to_csv_row(const TrialRecord& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%d,%d,%zu,%" PRId64 ",%" PRIu64 ",%zu,%s,%zu,%zu,%zu,%.10f,%.10f,%zu", r.black_rule,
                r.grey_rule, r.sample_index, r.separation, r.derived_seed, r.steps, to_string(r.outcome).data(),
                r.counts.black, r.counts.grey, r.counts.white, r.row_entropy, r.block_entropy, r.lz_complexity);
  return buf;
}

std::string csv_footer(std::size_t records) { return "# records: " + std::to_string(records); }

std::optional<Outcome> parse_outcome(std::string_view name) {
  for (Outcome o : {Outcome::BlackOnly, Outcome::GreyOnly, Outcome::Coexist, Outcome::Extinct}) {
    if (to_string(o) == name) return o;
  }
  return std::nullopt;
}

nlohmann::json to_json(const MetricsReport& report) {
  nlohmann::json counts = nlohmann::json::array();
  for (const auto& c : report.counts) counts.push_back({{"white", c.white}, {"grey", c.grey}, {"black", c.black}});
  return {
      {"window", {{"begin", report.window.begin}, {"end", report.window.end}}},
      {"block_length", report.block_length},
      {"outcome", to_string(report.outcome)},
      {"final_row_entropy", report.final_row_entropy()},
      {"block_entropy_k", report.block_entropy},
      {"lz_complexity", report.lz_complexity},
      {"lz_complexity_diagram", report.lz_complexity_diagram},
      {"row_entropy", report.row_entropy},
      {"counts", std::move(counts)},
  };
}

namespace {

nlohmann::json stats_json(const MetricStats& s) { return {{"mean", s.mean}, {"stddev", s.stddev}}; }

}  // namespace

nlohmann::json to_json(const PairSummary& s) {
  nlohmann::json j = {
      {"black_rule", s.black_rule},
      {"grey_rule", s.grey_rule},
      {"trials", s.trials},
      {"outcomes",
       {{"black_only", s.black_only}, {"grey_only", s.grey_only}, {"coexist", s.coexist}, {"extinct", s.extinct}}},
      {"black_count", stats_json(s.black_count)},
      {"grey_count", stats_json(s.grey_count)},
      {"white_count", stats_json(s.white_count)},
      {"row_entropy", stats_json(s.row_entropy)},
      {"block_entropy_k", stats_json(s.block_entropy)},
      {"lz_complexity", stats_json(s.lz_complexity)},
  };
  if (s.separation) j["separation"] = *s.separation;
  return j;
}

nlohmann::json to_json(const ExperimentPlan& plan) {
  return {
      {"black_rules", plan.black_rules},
      {"grey_rules", plan.grey_rules},
      {"samples_per_pair", plan.samples_per_pair},
      {"steps", plan.steps},
      {"separations", plan.separations},
      {"master_seed", plan.master_seed},
      {"block_length", plan.block_length},
  };
}

}  // namespace selfish
