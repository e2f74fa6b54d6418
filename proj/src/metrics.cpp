#include "selfish/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

namespace selfish {

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::BlackOnly: return "black_only";
    case Outcome::GreyOnly: return "grey_only";
    case Outcome::Coexist: return "coexist";
    case Outcome::Extinct: return "extinct";
  }
  return "unknown";
}

namespace {

// Sums over the sorted nonzero counts, so the result depends only on the
// multiset of counts and is bit-identical under any relabeling of colors.
template <class Counts>
double entropy_of_counts(const Counts& counts, double total) {
  std::vector<std::size_t> nonzero;
  for (const auto c : counts)
    if (c != 0) nonzero.push_back(static_cast<std::size_t>(c));
  std::sort(nonzero.begin(), nonzero.end());
  double h = 0.0;
  for (const auto c : nonzero) {
    const double p = static_cast<double>(c) / total;
    h -= p * std::log2(p);
  }
  return h;
}

}  // namespace

double row_entropy(std::span<const Color> cells) {
  if (cells.empty()) throw std::invalid_argument("row_entropy: empty window");
  std::array<std::size_t, kNumColors> counts{};
  for (Color c : cells) ++counts[static_cast<std::size_t>(c)];
  return entropy_of_counts(counts, static_cast<double>(cells.size()));
}

double row_entropy(const Configuration& row, IndexRange window) { return row_entropy(row.window(window)); }

double block_entropy(std::span<const Color> cells, std::size_t k) {
  if (k == 0) throw std::invalid_argument("block_entropy: block length must be >= 1");
  if (k > cells.size()) {
    throw std::invalid_argument("block_entropy: block length " + std::to_string(k) + " exceeds window of " +
                                std::to_string(cells.size()));
  }
  const std::size_t words = cells.size() - k + 1;
  const auto total = static_cast<double>(words);

  // Words up to length 10 fit a dense table (3^10 = 59049 entries).
  if (k <= 10) {
    std::uint64_t radix = 1;
    for (std::size_t i = 0; i < k; ++i) radix *= 3;
    std::vector<std::uint32_t> counts(radix, 0);
    std::uint64_t code = 0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      code = (code * 3 + static_cast<std::uint64_t>(cells[i])) % radix;
      if (i + 1 >= k) ++counts[code];
    }
    return entropy_of_counts(counts, total);
  }

  std::map<std::string, std::size_t> counts;
  for (std::size_t i = 0; i < words; ++i) {
    std::string word(k, '0');
    for (std::size_t j = 0; j < k; ++j) word[j] = static_cast<char>('0' + to_int(cells[i + j]));
    ++counts[word];
  }
  std::vector<std::size_t> values;
  values.reserve(counts.size());
  for (const auto& [word, n] : counts) values.push_back(n);
  return entropy_of_counts(values, total);
}

double block_entropy(const Configuration& row, IndexRange window, std::size_t k) {
  return block_entropy(row.window(window), k);
}

std::size_t lz_complexity(std::span<const Color> cells) {
  // Trie over phrases; node 0 is the empty phrase.
  std::vector<std::array<std::int32_t, kNumColors>> children(1, {-1, -1, -1});
  std::size_t phrases = 0;
  std::int32_t node = 0;
  for (Color c : cells) {
    auto& child = children[static_cast<std::size_t>(node)][static_cast<std::size_t>(c)];
    if (child >= 0) {
      node = child;
      continue;
    }
    child = static_cast<std::int32_t>(children.size());
    children.push_back({-1, -1, -1});
    ++phrases;
    node = 0;
  }
  if (node != 0) ++phrases;
  return phrases;
}

Outcome classify_outcome(const Configuration& final_row) {
  const bool grey = final_row.count(Color::Grey) > 0;
  const bool black = final_row.count(Color::Black) > 0;
  if (grey && black) return Outcome::Coexist;
  if (black) return Outcome::BlackOnly;
  if (grey) return Outcome::GreyOnly;
  return Outcome::Extinct;
}

Outcome classify_outcome(const SpacetimeDiagram& diagram) {
  if (diagram.rows.empty()) throw std::invalid_argument("classify_outcome: empty diagram");
  return classify_outcome(diagram.final_row());
}

ColorCounts count_colors(const Configuration& row, IndexRange window) {
  ColorCounts counts;
  counts.white = static_cast<std::size_t>(window.size());
  const IndexRange s = row.support();
  const std::int64_t lo = std::max(s.begin, window.begin);
  const std::int64_t hi = std::min(s.end, window.end);
  for (std::int64_t i = lo; i < hi; ++i) {
    switch (row.at(i)) {
      case Color::Grey: ++counts.grey; --counts.white; break;
      case Color::Black: ++counts.black; --counts.white; break;
      case Color::White: break;
    }
  }
  return counts;
}

MetricsReport summarize(const SpacetimeDiagram& diagram, std::size_t k) {
  if (diagram.rows.empty()) throw std::invalid_argument("summarize: empty diagram");
  if (k == 0) throw std::invalid_argument("summarize: block length must be >= 1");

  MetricsReport report;
  report.window = diagram.light_cone_span();
  report.block_length = k;
  report.outcome = classify_outcome(diagram);

  report.counts.reserve(diagram.rows.size());
  report.row_entropy.reserve(diagram.rows.size());
  for (const auto& row : diagram.rows) {
    report.counts.push_back(count_colors(row, report.window));
    report.row_entropy.push_back(report.window.empty() ? 0.0 : row_entropy(row, report.window));
  }
  if (!report.window.empty()) {
    const auto last = diagram.final_row().window(report.window);
    report.block_entropy = block_entropy(last, std::min(k, last.size()));

    std::vector<Color> flattened;
    flattened.reserve(static_cast<std::size_t>(report.window.size()) * diagram.rows.size());
    for (std::int64_t x = report.window.begin; x < report.window.end; ++x) {
      for (const auto& row : diagram.rows) flattened.push_back(row.at(x));
    }
    report.lz_complexity_diagram = lz_complexity(flattened);
  }
  report.lz_complexity = lz_complexity(diagram.final_row().cells());
  return report;
}

}  // namespace selfish
