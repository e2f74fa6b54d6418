#pragma once

// Three-color radius-1 cellular automata composed from two elementary rules.
//
// Colors: 0 = white (resource), 1 = grey organism, 2 = black organism.
// Configurations live on an unbounded tape whose background is white; since
// the all-white neighborhood always maps to white, evolution is computed
// exactly on a finite window that grows by at most one cell per side per step.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace selfish {

enum class Color : std::uint8_t { White = 0, Grey = 1, Black = 2 };

inline constexpr int kNumColors = 3;

constexpr int to_int(Color c) { return static_cast<int>(c); }

/// Throws std::out_of_range unless 0 <= value <= 2.
Color color_from_int(int value);

// ---------------------------------------------------------------------------
// Neighborhoods

struct Neighborhood {
  Color left = Color::White;
  Color center = Color::White;
  Color right = Color::White;

  /// Base-3 numeral left*9 + center*3 + right; equals the lexicographic rank.
  constexpr int index() const { return 9 * to_int(left) + 3 * to_int(center) + to_int(right); }

  static constexpr Neighborhood from_index(int i) {
    return {static_cast<Color>(i / 9), static_cast<Color>((i / 3) % 3), static_cast<Color>(i % 3)};
  }

  friend constexpr bool operator==(const Neighborhood&, const Neighborhood&) = default;
};

inline constexpr int kNumNeighborhoods = 27;
inline constexpr int kNumMixed = 12;

enum class NeighborhoodClass { Quiescent, GreyDomain, BlackDomain, Mixed };

NeighborhoodClass classify(const Neighborhood& n);

/// All 27 neighborhoods in lexicographic order.
std::array<Neighborhood, kNumNeighborhoods> all_neighborhoods();

/// The 12 neighborhoods holding at least one grey and one black cell, in
/// lexicographic order. Position in this list is the mixed index.
const std::array<Neighborhood, kNumMixed>& mixed_neighborhoods();

/// Position of `n` in mixed_neighborhoods(), or -1 if `n` is not mixed.
int mixed_index(const Neighborhood& n);

std::string to_string(const Neighborhood& n);

// ---------------------------------------------------------------------------
// Rules

/// Two-color radius-1 rule in Wolfram numbering: bit k of the number is the
/// output for the neighborhood whose cells read as the binary numeral k.
class ElementaryRule {
 public:
  ElementaryRule() = default;

  int number() const { return number_; }

  /// Output (0 or 1) for the binary neighborhood (left, center, right).
  int output(int left, int center, int right) const {
    return (number_ >> (4 * left + 2 * center + right)) & 1;
  }

  /// Eight outputs indexed by the neighborhood numeral (entry 7 is 111).
  std::array<std::uint8_t, 8> table() const;

  /// Rebuilds the rule number from a table; inverse of table().
  static int encode(const std::array<std::uint8_t, 8>& table);

  bool maps_zero_to_one() const { return (number_ & 1) != 0; }

  friend bool operator==(const ElementaryRule&, const ElementaryRule&) = default;

 private:
  friend ElementaryRule decode_elementary(int number);
  explicit ElementaryRule(int number) : number_(number) {}

  int number_ = 0;
};

/// Throws std::out_of_range unless 0 <= number <= 255.
ElementaryRule decode_elementary(int number);

/// Contact outcomes for the 12 mixed neighborhoods, indexed by mixed index.
/// Entries are independent of one another.
struct MixedAssignment {
  std::array<Color, kNumMixed> outcomes{};

  static MixedAssignment constant(Color c);

  friend bool operator==(const MixedAssignment&, const MixedAssignment&) = default;
};

/// Draws the 12 outcomes in mixed-index order, one generator call each.
/// `Stream` is any callable returning std::uint64_t; each 64-bit draw maps to
/// floor(x * 3 / 2^64).
template <class Stream>
MixedAssignment sample_mixed_assignment(Stream& stream) {
  MixedAssignment m;
  for (auto& outcome : m.outcomes) {
    const std::uint64_t x = stream();
    // High word of the 128-bit product x * 3, from 32-bit halves.
    const std::uint64_t high = (3 * (x >> 32) + ((3 * (x & 0xffffffffULL)) >> 32)) >> 32;
    outcome = static_cast<Color>(high);
  }
  return m;
}

/// The full 27-entry three-color table together with the parts it was built from.
class CompositeRule {
 public:
  const ElementaryRule& black_rule() const { return black_; }
  const ElementaryRule& grey_rule() const { return grey_; }
  const MixedAssignment& mixed() const { return mixed_; }

  /// True when an odd elementary rule wanted 000 -> 1 and was forced to 0.
  bool zero_overridden() const { return zero_overridden_; }

  Color operator()(const Neighborhood& n) const { return table_[static_cast<std::size_t>(n.index())]; }
  Color at(int index) const { return table_[static_cast<std::size_t>(index)]; }
  const std::array<Color, kNumNeighborhoods>& table() const { return table_; }

  friend bool operator==(const CompositeRule&, const CompositeRule&) = default;

 private:
  friend CompositeRule compose(const ElementaryRule&, const ElementaryRule&, const MixedAssignment&);

  std::array<Color, kNumNeighborhoods> table_{};
  ElementaryRule black_;
  ElementaryRule grey_;
  MixedAssignment mixed_;
  bool zero_overridden_ = false;
};

CompositeRule compose(const ElementaryRule& black, const ElementaryRule& grey, const MixedAssignment& mixed);

// ---------------------------------------------------------------------------
// Configurations

/// Half-open range of tape indices [begin, end).
struct IndexRange {
  std::int64_t begin = 0;
  std::int64_t end = 0;

  std::int64_t size() const { return end > begin ? end - begin : 0; }
  bool empty() const { return end <= begin; }
  bool contains(std::int64_t i) const { return i >= begin && i < end; }

  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

/// Finitely supported tape. Always stored canonically: the window is trimmed
/// so that its first and last cells are non-white, and an all-white tape has
/// an empty window with offset 0.
class Configuration {
 public:
  Configuration() = default;

  /// `cells[i]` sits at tape index `offset + i`; the result is canonicalized.
  Configuration(std::int64_t offset, std::vector<Color> cells);

  static Configuration single(std::int64_t index, Color c);

  std::int64_t offset() const { return offset_; }
  std::span<const Color> cells() const { return cells_; }
  bool all_white() const { return cells_.empty(); }

  /// Support as a half-open range; empty for the all-white tape.
  IndexRange support() const { return {offset_, offset_ + static_cast<std::int64_t>(cells_.size())}; }

  Color at(std::int64_t index) const;

  /// Colors over an arbitrary range, white outside the support.
  std::vector<Color> window(IndexRange range) const;

  std::size_t count(Color c) const;

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  void canonicalize();

  std::int64_t offset_ = 0;
  std::vector<Color> cells_;
};

Configuration step(const Configuration& config, const CompositeRule& rule);

struct SpacetimeDiagram {
  CompositeRule rule;
  std::vector<Configuration> rows;

  std::size_t steps() const { return rows.empty() ? 0 : rows.size() - 1; }
  const Configuration& final_row() const { return rows.back(); }

  /// [min0 - T, max0 + T] as a half-open range, where [min0, max0] bounds the
  /// initial support. Empty when the initial row is all white.
  IndexRange light_cone_span() const;
};

SpacetimeDiagram evolve(const Configuration& initial, const CompositeRule& rule, std::size_t steps);

/// Last row of evolve(initial, rule, steps) without materializing the diagram.
Configuration evolve_final(const Configuration& initial, const CompositeRule& rule, std::size_t steps);

enum class InitialKind { SoloBlack, SoloGrey, Interaction };

/// Solo kinds place one seed at index 0. Interaction places black at 0 and
/// grey at `separation`, which must be >= 1 (std::invalid_argument otherwise).
Configuration standard_initial(InitialKind kind, std::int64_t separation = 40);

inline constexpr std::int64_t kDefaultSeparation = 40;

}  // namespace selfish
