#pragma once

// Exhaustive pairwise tournament between elementary rules.
//
// Every trial is a pure function of (master seed, black rule, grey rule,
// sample index, separation, steps, block length): a contact rule is drawn from
// the derived seed, the composite rule is evolved from the two-seed initial
// condition, and the final row is measured.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "selfish/ca_core.hpp"
#include "selfish/metrics.hpp"

namespace selfish {

struct ExperimentPlan {
  std::vector<int> black_rules;
  std::vector<int> grey_rules;
  std::size_t samples_per_pair = 32;
  std::size_t steps = 256;
  std::vector<std::int64_t> separations{1, 20, 40};
  std::uint64_t master_seed = 1;
  std::size_t block_length = kDefaultBlockLength;

  /// All 256 x 256 pairs with the default sampling parameters.
  static ExperimentPlan full();

  /// Throws std::invalid_argument naming the first violated constraint.
  void validate() const;

  std::size_t pair_count() const { return black_rules.size() * grey_rules.size(); }
  std::size_t trials_per_pair() const { return samples_per_pair * separations.size(); }
  std::size_t trial_count() const { return pair_count() * trials_per_pair(); }
};

struct TrialParams {
  int black_rule = 0;
  int grey_rule = 0;
  std::size_t sample_index = 0;
  std::int64_t separation = kDefaultSeparation;
  std::size_t steps = 256;
  std::size_t block_length = kDefaultBlockLength;
  std::uint64_t master_seed = 1;
};

struct TrialRecord {
  int black_rule = 0;
  int grey_rule = 0;
  std::size_t sample_index = 0;
  std::int64_t separation = 0;
  std::uint64_t derived_seed = 0;
  std::size_t steps = 0;
  Outcome outcome = Outcome::Extinct;
  // Measured on the final row over the light-cone span [-steps, separation + steps].
  ColorCounts counts;
  double row_entropy = 0.0;
  double block_entropy = 0.0;
  std::size_t lz_complexity = 0;  // canonical final row

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

/// The contact rule a trial draws from its derived seed.
MixedAssignment trial_assignment(std::uint64_t master_seed, int black_rule, int grey_rule, std::size_t sample_index);

TrialRecord run_trial(const TrialParams& params);

/// run_trial with the contact rule supplied directly instead of sampled.
/// The record's derived_seed is still the seed the sampled path would use.
TrialRecord run_trial_with(const TrialParams& params, const MixedAssignment& mixed);

struct MetricStats {
  double mean = 0.0;
  double stddev = 0.0;  // population
};

struct PairSummary {
  int black_rule = 0;
  int grey_rule = 0;
  std::optional<std::int64_t> separation;  // set when aggregated per separation
  std::size_t trials = 0;
  double black_only = 0.0;
  double grey_only = 0.0;
  double coexist = 0.0;
  double extinct = 0.0;
  MetricStats black_count;
  MetricStats grey_count;
  MetricStats white_count;
  MetricStats row_entropy;
  MetricStats block_entropy;
  MetricStats lz_complexity;

  double frequency_sum() const { return black_only + grey_only + coexist + extinct; }
};

/// Aggregates records that share one (black, grey) pair. Records are folded
/// in the given order.
PairSummary summarize_trials(std::span<const TrialRecord> records);

using RecordSink = std::function<void(const TrialRecord&)>;

/// Runs every (black, grey, sample, separation) trial of the plan on
/// `workers` threads. Records reach `sink` on the calling thread in canonical
/// (black, grey, sample, separation) order, following the plan's rule and
/// separation order. Returns one summary per pair in the same order.
/// An exception thrown by the sink stops the run and propagates.
std::vector<PairSummary> run_tournament(const ExperimentPlan& plan, std::size_t workers, const RecordSink& sink);

/// Per-separation summaries for a single pair: `samples` trials each.
std::vector<PairSummary> sensitivity_sweep(int black_rule, int grey_rule, std::span<const std::int64_t> separations,
                                           std::size_t samples, std::size_t steps, std::size_t block_length,
                                           std::uint64_t master_seed, std::size_t workers = 1);

}  // namespace selfish
