#include "selfish/cli.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>

#include "selfish/ca_core.hpp"
#include "selfish/io.hpp"
#include "selfish/metrics.hpp"
#include "selfish/render.hpp"
#include "selfish/rng.hpp"
#include "selfish/tournament.hpp"

namespace selfish::cli {

namespace fs = std::filesystem;

std::vector<int> parse_rule_set(std::string_view text) {
  auto number = [&](std::string_view s) {
    int v = -1;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || end != s.data() + s.size() || s.empty()) {
      throw std::invalid_argument("malformed rule set '" + std::string(text) + "'");
    }
    if (v < 0 || v > 255) throw std::invalid_argument("rule " + std::to_string(v) + " outside 0..255");
    return v;
  };
  std::vector<int> rules;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view item = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    if (const auto dash = item.find('-'); dash != std::string_view::npos) {
      const int lo = number(item.substr(0, dash));
      const int hi = number(item.substr(dash + 1));
      if (lo > hi) throw std::invalid_argument("empty rule range '" + std::string(item) + "'");
      for (int r = lo; r <= hi; ++r) rules.push_back(r);
    } else {
      rules.push_back(number(item));
    }
  }
  if (rules.empty()) throw std::invalid_argument("empty rule set");
  return rules;
}

namespace {

// A file written under a temporary name and moved into place on commit().
// Dropping it uncommitted removes the temporary.
class PendingFile {
 public:
  explicit PendingFile(fs::path target)
      : target_(std::move(target)), temp_(target_.string() + ".tmp"), stream_(temp_, std::ios::binary) {
    if (!stream_) throw std::runtime_error("cannot open " + target_.string() + " for writing");
  }
  PendingFile(const PendingFile&) = delete;
  PendingFile& operator=(const PendingFile&) = delete;

  ~PendingFile() {
    if (committed_) return;
    stream_.close();
    std::error_code ec;
    fs::remove(temp_, ec);
  }

  std::ostream& stream() { return stream_; }

  void commit() { commit_as(target_); }

  void commit_as(const fs::path& path) {
    stream_.flush();
    if (!stream_) throw std::runtime_error("write to " + target_.string() + " failed");
    stream_.close();
    fs::rename(temp_, path);
    committed_ = true;
  }

 private:
  fs::path target_;
  fs::path temp_;
  std::ofstream stream_;
  bool committed_ = false;
};

std::string join(const std::vector<std::int64_t>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(values[i]);
  }
  return s;
}

std::string format_sub_table(const ElementaryRule& rule) {
  std::string s;
  for (int k = 7; k >= 0; --k) {
    if (k != 7) s += ' ';
    s += std::to_string((k >> 2) & 1) + std::to_string((k >> 1) & 1) + std::to_string(k & 1);
    s += ':';
    s += std::to_string(rule.output((k >> 2) & 1, (k >> 1) & 1, k & 1));
  }
  return s;
}

std::string angle(const Neighborhood& n) {
  std::string s = "⟨";
  s += std::to_string(to_int(n.left)) + "," + std::to_string(to_int(n.center)) + "," + std::to_string(to_int(n.right));
  s += "⟩";
  return s;
}

struct RunOptions {
  int black = 90;
  int grey = 110;
  std::string solo;  // "", "black" or "grey"
  std::size_t steps = 200;
  std::int64_t separation = kDefaultSeparation;
  std::uint64_t seed = 1;
  std::size_t sample = 0;
  std::size_t block_length = kDefaultBlockLength;
  std::size_t scale = 1;
  std::string out = "diagram.ppm";
  std::string metrics = "metrics.json";
};

void add_run_options(CLI::App& cmd, RunOptions& o, bool with_metrics) {
  cmd.add_option("--black", o.black, "Wolfram number of the black organism")
      ->check(CLI::Range(0, 255))
      ->capture_default_str();
  cmd.add_option("--grey", o.grey, "Wolfram number of the grey organism")
      ->check(CLI::Range(0, 255))
      ->capture_default_str();
  cmd.add_option("--solo", o.solo, "Run one organism alone from a single cell: black or grey (default: interaction)")
      ->check(CLI::IsMember({"black", "grey"}));
  cmd.add_option("--steps", o.steps, "Time steps to evolve")->check(CLI::Range(std::size_t{0}, std::size_t{1} << 20))
      ->capture_default_str();
  cmd.add_option("--sep", o.separation, "Distance from the black seed to the grey seed")
      ->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 30))
      ->capture_default_str();
  cmd.add_option("--seed", o.seed, "Master seed for the contact rule")->capture_default_str();
  cmd.add_option("--sample", o.sample, "Sample index for the contact rule")
      ->check(CLI::Range(std::size_t{0}, std::size_t{0xffffffff}))
      ->capture_default_str();
  cmd.add_option("--scale", o.scale, "Pixels per cell")->check(CLI::Range(1, 64))->capture_default_str();
  cmd.add_option("--out", o.out, "Output PPM image")->capture_default_str();
  if (with_metrics) {
    cmd.add_option("--k", o.block_length, "Block length for block entropy")
        ->check(CLI::Range(1, 64))
        ->capture_default_str();
    cmd.add_option("--metrics", o.metrics, "Output metrics JSON")->capture_default_str();
  }
}

std::string run_flags(const std::string& command, const RunOptions& o, bool with_metrics) {
  std::string f = command + " --black " + std::to_string(o.black) + " --grey " + std::to_string(o.grey);
  if (!o.solo.empty()) f += " --solo " + o.solo;
  f += " --steps " + std::to_string(o.steps) + " --sep " + std::to_string(o.separation) + " --seed " +
       std::to_string(o.seed) + " --sample " + std::to_string(o.sample) + " --scale " + std::to_string(o.scale);
  if (with_metrics) f += " --k " + std::to_string(o.block_length);
  return f;
}

SpacetimeDiagram build_run(const RunOptions& o) {
  const MixedAssignment mixed = trial_assignment(o.seed, o.black, o.grey, o.sample);
  const CompositeRule rule = compose(decode_elementary(o.black), decode_elementary(o.grey), mixed);
  Configuration initial;
  if (o.solo == "black") {
    initial = standard_initial(InitialKind::SoloBlack);
  } else if (o.solo == "grey") {
    initial = standard_initial(InitialKind::SoloGrey);
  } else {
    initial = standard_initial(InitialKind::Interaction, o.separation);
  }
  return evolve(initial, rule, o.steps);
}

int cmd_run(const RunOptions& o, bool with_metrics, std::ostream& out, std::ostream& err) {
  PendingFile image_file(o.out);
  std::optional<PendingFile> metrics_file;
  if (with_metrics) metrics_file.emplace(o.metrics);

  const SpacetimeDiagram diagram = build_run(o);
  const RenderedImage image = render_ppm(diagram, default_image_spec(diagram, o.scale));
  image_file.stream() << image.bytes;

  const std::string provenance = provenance_line(run_flags(with_metrics ? "run" : "render", o, with_metrics));
  if (with_metrics) {
    const MetricsReport report = summarize(diagram, o.block_length);
    nlohmann::json mixed = nlohmann::json::array();
    for (Color c : diagram.rule.mixed().outcomes) mixed.push_back(to_int(c));
    nlohmann::json doc = {
        {"provenance", provenance},
        {"black_rule", o.black},
        {"grey_rule", o.grey},
        {"solo", o.solo.empty() ? nlohmann::json(nullptr) : nlohmann::json(o.solo)},
        {"steps", o.steps},
        {"separation", o.separation},
        {"master_seed", o.seed},
        {"sample", o.sample},
        {"derived_seed", derive_seed(o.seed, o.black, o.grey, o.sample)},
        {"mixed_outcomes", std::move(mixed)},
        {"zero_overridden", diagram.rule.zero_overridden()},
        {"image", {{"path", o.out}, {"width", image.width}, {"height", image.height}, {"clipped", image.clipped}}},
        {"metrics", to_json(report)},
    };
    metrics_file->stream() << doc.dump(2) << '\n';
  }

  image_file.commit();
  if (metrics_file) metrics_file->commit();
  if (image.clipped) err << "warning: live cells fall outside the rendered window\n";
  out << "wrote " << o.out;
  if (with_metrics) out << " and " << o.metrics;
  out << " (outcome " << to_string(classify_outcome(diagram)) << ")\n";
  return kOk;
}

struct DecodeOptions {
  int black = 90;
  int grey = 110;
  std::uint64_t seed = 1;
  std::size_t sample = 0;
};

int cmd_decode(const DecodeOptions& o, std::ostream& out) {
  const auto derived = derive_seed(o.seed, o.black, o.grey, o.sample);
  const CompositeRule rule =
      compose(decode_elementary(o.black), decode_elementary(o.grey), trial_assignment(o.seed, o.black, o.grey, o.sample));
  out << provenance_line("decode --black " + std::to_string(o.black) + " --grey " + std::to_string(o.grey) +
                         " --seed " + std::to_string(o.seed) + " --sample " + std::to_string(o.sample))
      << '\n';
  out << "# black rule " << o.black << ": " << format_sub_table(rule.black_rule()) << '\n';
  out << "# grey rule " << o.grey << ": " << format_sub_table(rule.grey_rule()) << '\n';
  if (rule.zero_overridden()) out << "# note: odd rule output for 000 overridden to 0\n";
  for (const auto& n : all_neighborhoods()) {
    out << angle(n) << " -> " << to_int(rule(n));
    if (classify(n) == NeighborhoodClass::Mixed) {
      out << "  [mixed " << mixed_index(n) << ", seed " << o.seed << " sample " << o.sample << " stream " << derived
          << "]";
    }
    out << '\n';
  }
  return kOk;
}

struct TournamentOptions {
  std::string black_rules = "0-255";
  std::string grey_rules = "0-255";
  std::size_t samples = 32;
  std::size_t steps = 256;
  std::vector<std::int64_t> separations{1, 20, 40};
  std::uint64_t seed = 1;
  std::size_t block_length = kDefaultBlockLength;
  std::size_t workers = 0;
  std::string out = "results.csv";
  std::string summary = "summary.json";
};

int cmd_tournament(const TournamentOptions& o, std::ostream& out, std::ostream& err) {
  ExperimentPlan plan;
  plan.black_rules = parse_rule_set(o.black_rules);
  plan.grey_rules = parse_rule_set(o.grey_rules);
  plan.samples_per_pair = o.samples;
  plan.steps = o.steps;
  plan.separations = o.separations;
  plan.master_seed = o.seed;
  plan.block_length = o.block_length;
  plan.validate();

  // Output paths and the worker count do not affect content and stay out of
  // the provenance line, so equal plans give byte-identical files.
  const std::string provenance = provenance_line(
      "tournament --black-rules " + o.black_rules + " --grey-rules " + o.grey_rules + " --samples " +
      std::to_string(o.samples) + " --steps " + std::to_string(o.steps) + " --seps " + join(o.separations) +
      " --seed " + std::to_string(o.seed) + " --k " + std::to_string(o.block_length));

  PendingFile csv(o.out);
  PendingFile summary_file(o.summary);

  const std::size_t workers = o.workers ? o.workers : std::max(1u, std::thread::hardware_concurrency());
  std::size_t written = 0;
  std::vector<PairSummary> summaries;
  try {
    csv.stream() << provenance << '\n' << kTrialCsvHeader << '\n';
    summaries = run_tournament(plan, workers, [&](const TrialRecord& r) {
      csv.stream() << to_csv_row(r) << '\n';
      if (!csv.stream()) throw std::runtime_error("write to " + o.out + " failed");
      ++written;
    });
  } catch (const std::exception& e) {
    csv.stream().clear();
    csv.stream() << "# partial: aborted after " << written << " records\n";
    try {
      csv.commit_as(o.out + ".partial");
    } catch (const std::exception&) {
    }
    throw;
  }
  csv.stream() << csv_footer(written) << '\n';

  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& s : summaries) pairs.push_back(to_json(s));
  const nlohmann::json doc = {
      {"provenance", provenance},
      {"plan", to_json(plan)},
      {"records", written},
      {"pairs", std::move(pairs)},
  };
  summary_file.stream() << doc.dump(1) << '\n';

  csv.commit();
  summary_file.commit();
  out << "wrote " << written << " records to " << o.out << " and " << summaries.size() << " pair summaries to "
      << o.summary << '\n';
  (void)err;
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Composite three-color cellular automata: two elementary rules competing for white cells",
               "selfish-ca"};
  app.set_version_flag("--version", std::string(tool_version()));
  app.require_subcommand(1);

  RunOptions run_opts;
  auto* run_cmd = app.add_subcommand("run", "Evolve one run and write its image and metrics");
  add_run_options(*run_cmd, run_opts, true);

  RunOptions render_opts;
  auto* render_cmd = app.add_subcommand("render", "Evolve one run and write only its image");
  add_run_options(*render_cmd, render_opts, false);

  DecodeOptions decode_opts;
  auto* decode_cmd = app.add_subcommand("decode", "Print the composed 27-entry rule table");
  decode_cmd->add_option("--black", decode_opts.black, "Wolfram number of the black organism")
      ->check(CLI::Range(0, 255))
      ->capture_default_str();
  decode_cmd->add_option("--grey", decode_opts.grey, "Wolfram number of the grey organism")
      ->check(CLI::Range(0, 255))
      ->capture_default_str();
  decode_cmd->add_option("--seed", decode_opts.seed, "Master seed for the contact rule")->capture_default_str();
  decode_cmd->add_option("--sample", decode_opts.sample, "Sample index for the contact rule")
      ->check(CLI::Range(std::size_t{0}, std::size_t{0xffffffff}))
      ->capture_default_str();

  TournamentOptions t_opts;
  auto* t_cmd = app.add_subcommand("tournament", "Run every rule pair over sampled contact rules");
  t_cmd->add_option("--black-rules", t_opts.black_rules, "Black rule set, e.g. 0-255 or 90,110")
      ->capture_default_str();
  t_cmd->add_option("--grey-rules", t_opts.grey_rules, "Grey rule set")->capture_default_str();
  t_cmd->add_option("--samples", t_opts.samples, "Contact rules sampled per pair")
      ->check(CLI::Range(std::size_t{1}, std::size_t{0xffffffff}))
      ->capture_default_str();
  t_cmd->add_option("--steps", t_opts.steps, "Time steps per trial")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1} << 20))
      ->capture_default_str();
  t_cmd->add_option("--seps", t_opts.separations, "Seed separations, comma separated")
      ->delimiter(',')
      ->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 30))
      ->capture_default_str();
  t_cmd->add_option("--seed", t_opts.seed, "Master seed")->capture_default_str();
  t_cmd->add_option("--k", t_opts.block_length, "Block length for block entropy")
      ->check(CLI::Range(1, 64))
      ->capture_default_str();
  t_cmd->add_option("--workers", t_opts.workers, "Worker threads (0 = hardware concurrency)")->capture_default_str();
  t_cmd->add_option("--out", t_opts.out, "Output CSV of trial records")->capture_default_str();
  t_cmd->add_option("--summary", t_opts.summary, "Output JSON of pair summaries")->capture_default_str();

  // CLI11 wants the arguments reversed when given as a vector.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << tool_version() << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (*run_cmd) return cmd_run(run_opts, true, out, err);
    if (*render_cmd) return cmd_run(render_opts, false, out, err);
    if (*decode_cmd) return cmd_decode(decode_opts, out);
    if (*t_cmd) {
      try {
        parse_rule_set(t_opts.black_rules);
      } catch (const std::invalid_argument& e) {
        err << "error: --black-rules: " << e.what() << '\n';
        return kUsageError;
      }
      try {
        parse_rule_set(t_opts.grey_rules);
      } catch (const std::invalid_argument& e) {
        err << "error: --grey-rules: " << e.what() << '\n';
        return kUsageError;
      }
      return cmd_tournament(t_opts, out, err);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kUsageError;
}

}  // namespace selfish::cli
