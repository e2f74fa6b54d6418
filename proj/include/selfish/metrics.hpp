#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "selfish/ca_core.hpp"

namespace selfish {

enum class Outcome { BlackOnly, GreyOnly, Coexist, Extinct };

/// Serialized name: black_only, grey_only, coexist, extinct.
std::string_view to_string(Outcome o);

/// Shannon entropy in bits of the color histogram of `cells`.
/// Throws std::invalid_argument on an empty sequence.
double row_entropy(std::span<const Color> cells);
double row_entropy(const Configuration& row, IndexRange window);

/// Entropy in bits of the distribution of overlapping length-k words.
/// Throws std::invalid_argument unless 1 <= k <= cells.size().
double block_entropy(std::span<const Color> cells, std::size_t k);
double block_entropy(const Configuration& row, IndexRange window, std::size_t k);

/// Number of phrases in the LZ78 parse of `cells`. A trailing phrase that
/// already exists in the dictionary still counts.
std::size_t lz_complexity(std::span<const Color> cells);

Outcome classify_outcome(const Configuration& final_row);
Outcome classify_outcome(const SpacetimeDiagram& diagram);

struct ColorCounts {
  std::size_t white = 0;
  std::size_t grey = 0;
  std::size_t black = 0;

  std::size_t total() const { return white + grey + black; }
  friend bool operator==(const ColorCounts&, const ColorCounts&) = default;
};

ColorCounts count_colors(const Configuration& row, IndexRange window);

inline constexpr std::size_t kDefaultBlockLength = 4;

struct MetricsReport {
  IndexRange window;                 // analysis window, shared by every row
  std::size_t block_length = kDefaultBlockLength;
  std::vector<ColorCounts> counts;   // per row
  std::vector<double> row_entropy;   // per row, bits per cell
  double block_entropy = 0.0;        // final row, bits per block
  std::size_t lz_complexity = 0;     // canonical final row
  std::size_t lz_complexity_diagram = 0;  // window flattened column by column
  Outcome outcome = Outcome::Extinct;

  double final_row_entropy() const { return row_entropy.empty() ? 0.0 : row_entropy.back(); }
};

/// Metrics over the diagram's light-cone span. A diagram whose first row is
/// all white has an empty window and reports zeros throughout. If the window
/// is shorter than k, block entropy is computed with k clamped to the window.
MetricsReport summarize(const SpacetimeDiagram& diagram, std::size_t k = kDefaultBlockLength);

}  // namespace selfish
