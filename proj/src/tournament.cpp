#include "selfish/tournament.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

#include "selfish/rng.hpp"

namespace selfish {

ExperimentPlan ExperimentPlan::full() {
  ExperimentPlan plan;
  plan.black_rules.resize(256);
  std::iota(plan.black_rules.begin(), plan.black_rules.end(), 0);
  plan.grey_rules = plan.black_rules;
  return plan;
}

void ExperimentPlan::validate() const {
  auto check_rules = [](const std::vector<int>& rules, const char* name) {
    if (rules.empty()) throw std::invalid_argument(std::string(name) + " must not be empty");
    for (int r : rules) {
      if (r < 0 || r > 255) {
        throw std::invalid_argument(std::string(name) + " contains " + std::to_string(r) + ", outside 0..255");
      }
    }
  };
  check_rules(black_rules, "black rules");
  check_rules(grey_rules, "grey rules");
  if (samples_per_pair < 1) throw std::invalid_argument("samples per pair must be >= 1");
  if (samples_per_pair > 0xffffffffULL) throw std::invalid_argument("samples per pair must be < 2^32");
  if (steps < 1) throw std::invalid_argument("steps must be >= 1");
  if (block_length < 1) throw std::invalid_argument("block length must be >= 1");
  if (separations.empty()) throw std::invalid_argument("separations must not be empty");
  for (auto d : separations) {
    if (d < 1) throw std::invalid_argument("separation must be >= 1, got " + std::to_string(d));
  }
}

MixedAssignment trial_assignment(std::uint64_t master_seed, int black_rule, int grey_rule, std::size_t sample_index) {
  Xoshiro256 stream(derive_seed(master_seed, black_rule, grey_rule, sample_index));
  return sample_mixed_assignment(stream);
}

TrialRecord run_trial_with(const TrialParams& p, const MixedAssignment& mixed) {
  const CompositeRule rule = compose(decode_elementary(p.black_rule), decode_elementary(p.grey_rule), mixed);
  const Configuration initial = standard_initial(InitialKind::Interaction, p.separation);
  const Configuration last = evolve_final(initial, rule, p.steps);

  const auto t = static_cast<std::int64_t>(p.steps);
  const IndexRange window{-t, p.separation + t + 1};
  const auto cells = last.window(window);

  TrialRecord rec;
  rec.black_rule = p.black_rule;
  rec.grey_rule = p.grey_rule;
  rec.sample_index = p.sample_index;
  rec.separation = p.separation;
  rec.derived_seed = derive_seed(p.master_seed, p.black_rule, p.grey_rule, p.sample_index);
  rec.steps = p.steps;
  rec.outcome = classify_outcome(last);
  rec.counts = count_colors(last, window);
  rec.row_entropy = row_entropy(cells);
  rec.block_entropy = block_entropy(cells, std::min(p.block_length, cells.size()));
  rec.lz_complexity = lz_complexity(last.cells());
  return rec;
}

TrialRecord run_trial(const TrialParams& p) {
  return run_trial_with(p, trial_assignment(p.master_seed, p.black_rule, p.grey_rule, p.sample_index));
}

namespace {

MetricStats stats_of(std::span<const TrialRecord> records, double (*get)(const TrialRecord&)) {
  MetricStats s;
  const auto n = static_cast<double>(records.size());
  for (const auto& r : records) s.mean += get(r);
  s.mean /= n;
  double var = 0.0;
  for (const auto& r : records) {
    const double d = get(r) - s.mean;
    var += d * d;
  }
  s.stddev = std::sqrt(var / n);
  return s;
}

}  // namespace

PairSummary summarize_trials(std::span<const TrialRecord> records) {
  if (records.empty()) throw std::invalid_argument("summarize_trials: no records");
  PairSummary s;
  s.black_rule = records.front().black_rule;
  s.grey_rule = records.front().grey_rule;
  s.trials = records.size();

  std::array<std::size_t, 4> tally{};
  for (const auto& r : records) ++tally[static_cast<std::size_t>(r.outcome)];
  const auto n = static_cast<double>(records.size());
  s.black_only = static_cast<double>(tally[static_cast<std::size_t>(Outcome::BlackOnly)]) / n;
  s.grey_only = static_cast<double>(tally[static_cast<std::size_t>(Outcome::GreyOnly)]) / n;
  s.coexist = static_cast<double>(tally[static_cast<std::size_t>(Outcome::Coexist)]) / n;
  s.extinct = static_cast<double>(tally[static_cast<std::size_t>(Outcome::Extinct)]) / n;

  s.black_count = stats_of(records, [](const TrialRecord& r) { return static_cast<double>(r.counts.black); });
  s.grey_count = stats_of(records, [](const TrialRecord& r) { return static_cast<double>(r.counts.grey); });
  s.white_count = stats_of(records, [](const TrialRecord& r) { return static_cast<double>(r.counts.white); });
  s.row_entropy = stats_of(records, [](const TrialRecord& r) { return r.row_entropy; });
  s.block_entropy = stats_of(records, [](const TrialRecord& r) { return r.block_entropy; });
  s.lz_complexity = stats_of(records, [](const TrialRecord& r) { return static_cast<double>(r.lz_complexity); });
  return s;
}

namespace {

// Runs job(i) for i in [0, count) on up to `workers` threads. The first
// exception thrown by a job is rethrown after all threads have joined.
template <class Job>
void parallel_for(std::size_t count, std::size_t workers, Job&& job) {
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
          try {
            job(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            next.store(count);
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

// Pairs computed between two flushes to the sink.
constexpr std::size_t kPairsPerBatch = 512;

}  // namespace

std::vector<PairSummary> run_tournament(const ExperimentPlan& plan, std::size_t workers, const RecordSink& sink) {
  plan.validate();
  const std::size_t pairs = plan.pair_count();
  const std::size_t per_pair = plan.trials_per_pair();

  std::vector<PairSummary> summaries;
  summaries.reserve(pairs);
  std::vector<std::vector<TrialRecord>> batch;

  for (std::size_t first = 0; first < pairs; first += kPairsPerBatch) {
    const std::size_t size = std::min(kPairsPerBatch, pairs - first);
    batch.assign(size, {});
    parallel_for(size, workers, [&](std::size_t i) {
      const std::size_t pair = first + i;
      TrialParams p;
      p.black_rule = plan.black_rules[pair / plan.grey_rules.size()];
      p.grey_rule = plan.grey_rules[pair % plan.grey_rules.size()];
      p.steps = plan.steps;
      p.block_length = plan.block_length;
      p.master_seed = plan.master_seed;
      auto& out = batch[i];
      out.reserve(per_pair);
      for (std::size_t s = 0; s < plan.samples_per_pair; ++s) {
        p.sample_index = s;
        const MixedAssignment mixed = trial_assignment(p.master_seed, p.black_rule, p.grey_rule, s);
        for (auto d : plan.separations) {
          p.separation = d;
          out.push_back(run_trial_with(p, mixed));
        }
      }
    });
    for (const auto& records : batch) {
      for (const auto& r : records) sink(r);
      summaries.push_back(summarize_trials(records));
    }
  }
  return summaries;
}

std::vector<PairSummary> sensitivity_sweep(int black_rule, int grey_rule, std::span<const std::int64_t> separations,
                                           std::size_t samples, std::size_t steps, std::size_t block_length,
                                           std::uint64_t master_seed, std::size_t workers) {
  ExperimentPlan plan;
  plan.black_rules = {black_rule};
  plan.grey_rules = {grey_rule};
  plan.samples_per_pair = samples;
  plan.steps = steps;
  plan.separations.assign(separations.begin(), separations.end());
  plan.master_seed = master_seed;
  plan.block_length = block_length;
  plan.validate();

  std::vector<std::vector<TrialRecord>> per_d(separations.size());
  std::vector<TrialRecord> all(samples * separations.size());
  parallel_for(all.size(), workers, [&](std::size_t i) {
    TrialParams p;
    p.black_rule = black_rule;
    p.grey_rule = grey_rule;
    p.sample_index = i / separations.size();
    p.separation = separations[i % separations.size()];
    p.steps = steps;
    p.block_length = block_length;
    p.master_seed = master_seed;
    all[i] = run_trial(p);
  });
  for (std::size_t i = 0; i < all.size(); ++i) per_d[i % separations.size()].push_back(all[i]);

  std::vector<PairSummary> out;
  out.reserve(separations.size());
  for (std::size_t j = 0; j < separations.size(); ++j) {
    auto s = summarize_trials(per_d[j]);
    s.separation = separations[j];
    out.push_back(s);
  }
  return out;
}

}  // namespace selfish
