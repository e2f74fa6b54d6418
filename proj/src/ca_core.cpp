#include "selfish/ca_core.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace selfish {

Color color_from_int(int value) {
  if (value < 0 || value > 2) {
    throw std::out_of_range("color must be 0, 1 or 2, got " + std::to_string(value));
  }
  return static_cast<Color>(value);
}

NeighborhoodClass classify(const Neighborhood& n) {
  bool grey = false;
  bool black = false;
  for (Color c : {n.left, n.center, n.right}) {
    grey |= c == Color::Grey;
    black |= c == Color::Black;
  }
  if (grey && black) return NeighborhoodClass::Mixed;
  if (grey) return NeighborhoodClass::GreyDomain;
  if (black) return NeighborhoodClass::BlackDomain;
  return NeighborhoodClass::Quiescent;
}

std::array<Neighborhood, kNumNeighborhoods> all_neighborhoods() {
  std::array<Neighborhood, kNumNeighborhoods> out{};
  for (int i = 0; i < kNumNeighborhoods; ++i) out[static_cast<std::size_t>(i)] = Neighborhood::from_index(i);
  return out;
}

namespace {

struct MixedTables {
  std::array<Neighborhood, kNumMixed> list{};
  std::array<int, kNumNeighborhoods> index_of{};
};

const MixedTables& mixed_tables() {
  static const MixedTables tables = [] {
    MixedTables t;
    t.index_of.fill(-1);
    std::size_t next = 0;
    for (const auto& n : all_neighborhoods()) {
      if (classify(n) != NeighborhoodClass::Mixed) continue;
      t.index_of[static_cast<std::size_t>(n.index())] = static_cast<int>(next);
      t.list[next++] = n;
    }
    return t;
  }();
  return tables;
}

}  // namespace

const std::array<Neighborhood, kNumMixed>& mixed_neighborhoods() { return mixed_tables().list; }

int mixed_index(const Neighborhood& n) { return mixed_tables().index_of[static_cast<std::size_t>(n.index())]; }

std::string to_string(const Neighborhood& n) {
  std::string s = "<";
  s += static_cast<char>('0' + to_int(n.left));
  s += ',';
  s += static_cast<char>('0' + to_int(n.center));
  s += ',';
  s += static_cast<char>('0' + to_int(n.right));
  s += '>';
  return s;
}

// ---------------------------------------------------------------------------

std::array<std::uint8_t, 8> ElementaryRule::table() const {
  std::array<std::uint8_t, 8> t{};
  for (int k = 0; k < 8; ++k) t[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>((number_ >> k) & 1);
  return t;
}

int ElementaryRule::encode(const std::array<std::uint8_t, 8>& table) {
  int number = 0;
  for (int k = 0; k < 8; ++k) number |= (table[static_cast<std::size_t>(k)] & 1) << k;
  return number;
}

ElementaryRule decode_elementary(int number) {
  if (number < 0 || number > 255) {
    throw std::out_of_range("elementary rule number must be in 0..255, got " + std::to_string(number));
  }
  return ElementaryRule(number);
}

MixedAssignment MixedAssignment::constant(Color c) {
  MixedAssignment m;
  m.outcomes.fill(c);
  return m;
}

CompositeRule compose(const ElementaryRule& black, const ElementaryRule& grey, const MixedAssignment& mixed) {
  CompositeRule rule;
  rule.black_ = black;
  rule.grey_ = grey;
  rule.mixed_ = mixed;

  for (const auto& n : all_neighborhoods()) {
    const auto slot = static_cast<std::size_t>(n.index());
    // Binary digits of the neighborhood once the organism color is read as 1.
    const int l = n.left != Color::White;
    const int c = n.center != Color::White;
    const int r = n.right != Color::White;
    switch (classify(n)) {
      case NeighborhoodClass::Quiescent:
        rule.table_[slot] = Color::White;
        break;
      case NeighborhoodClass::GreyDomain:
        rule.table_[slot] = grey.output(l, c, r) ? Color::Grey : Color::White;
        break;
      case NeighborhoodClass::BlackDomain:
        rule.table_[slot] = black.output(l, c, r) ? Color::Black : Color::White;
        break;
      case NeighborhoodClass::Mixed:
        rule.table_[slot] = mixed.outcomes[static_cast<std::size_t>(mixed_index(n))];
        break;
    }
  }
  rule.zero_overridden_ = black.maps_zero_to_one() || grey.maps_zero_to_one();
  return rule;
}

// ---------------------------------------------------------------------------

Configuration::Configuration(std::int64_t offset, std::vector<Color> cells)
    : offset_(offset), cells_(std::move(cells)) {
  canonicalize();
}

Configuration Configuration::single(std::int64_t index, Color c) { return Configuration(index, {c}); }

void Configuration::canonicalize() {
  const auto first = std::find_if(cells_.begin(), cells_.end(), [](Color c) { return c != Color::White; });
  if (first == cells_.end()) {
    cells_.clear();
    offset_ = 0;
    return;
  }
  const auto last = std::find_if(cells_.rbegin(), cells_.rend(), [](Color c) { return c != Color::White; });
  cells_.erase(last.base(), cells_.end());
  const auto lead = first - cells_.begin();
  cells_.erase(cells_.begin(), cells_.begin() + lead);
  offset_ += lead;
}

Color Configuration::at(std::int64_t index) const {
  const std::int64_t i = index - offset_;
  if (i < 0 || i >= static_cast<std::int64_t>(cells_.size())) return Color::White;
  return cells_[static_cast<std::size_t>(i)];
}

std::vector<Color> Configuration::window(IndexRange range) const {
  std::vector<Color> out(static_cast<std::size_t>(range.size()), Color::White);
  const std::int64_t lo = std::max(range.begin, offset_);
  const std::int64_t hi = std::min(range.end, offset_ + static_cast<std::int64_t>(cells_.size()));
  for (std::int64_t i = lo; i < hi; ++i) {
    out[static_cast<std::size_t>(i - range.begin)] = cells_[static_cast<std::size_t>(i - offset_)];
  }
  return out;
}

std::size_t Configuration::count(Color c) const {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), c));
}

namespace {

// Writes the n + 2 successor cells of `in` (tape indices offset-1 .. offset+n)
// into `out`. `padded` is scratch space.
void step_cells(std::span<const Color> in, const std::array<Color, kNumNeighborhoods>& table,
                std::vector<Color>& padded, std::vector<Color>& out) {
  const std::size_t n = in.size();
  padded.assign(n + 4, Color::White);
  for (std::size_t i = 0; i < n; ++i) padded[i + 2] = in[i];
  out.resize(n + 2);
  const auto* p = reinterpret_cast<const std::uint8_t*>(padded.data());
  for (std::size_t j = 0; j < n + 2; ++j) {
    out[j] = table[9u * p[j] + 3u * p[j + 1] + p[j + 2]];
  }
}

}  // namespace

Configuration step(const Configuration& config, const CompositeRule& rule) {
  if (config.all_white()) return {};
  std::vector<Color> padded;
  std::vector<Color> out;
  step_cells(config.cells(), rule.table(), padded, out);
  return Configuration(config.offset() - 1, std::move(out));
}

IndexRange SpacetimeDiagram::light_cone_span() const {
  if (rows.empty() || rows.front().all_white()) return {};
  const auto t = static_cast<std::int64_t>(steps());
  const IndexRange s = rows.front().support();
  return {s.begin - t, s.end + t};
}

SpacetimeDiagram evolve(const Configuration& initial, const CompositeRule& rule, std::size_t steps) {
  SpacetimeDiagram d{rule, {}};
  d.rows.reserve(steps + 1);
  d.rows.push_back(initial);
  for (std::size_t t = 0; t < steps; ++t) d.rows.push_back(step(d.rows.back(), rule));
  return d;
}

Configuration evolve_final(const Configuration& initial, const CompositeRule& rule, std::size_t steps) {
  if (initial.all_white()) return {};
  std::vector<Color> current(initial.cells().begin(), initial.cells().end());
  std::vector<Color> next;
  std::vector<Color> padded;
  std::int64_t offset = initial.offset();
  for (std::size_t t = 0; t < steps; ++t) {
    step_cells(current, rule.table(), padded, next);
    --offset;
    // Trim here so the window tracks the live support instead of the full cone.
    auto first = std::find_if(next.begin(), next.end(), [](Color c) { return c != Color::White; });
    if (first == next.end()) return {};
    auto last = std::find_if(next.rbegin(), next.rend(), [](Color c) { return c != Color::White; }).base();
    offset += first - next.begin();
    current.assign(first, last);
  }
  return Configuration(offset, std::move(current));
}

Configuration standard_initial(InitialKind kind, std::int64_t separation) {
  switch (kind) {
    case InitialKind::SoloBlack:
      return Configuration::single(0, Color::Black);
    case InitialKind::SoloGrey:
      return Configuration::single(0, Color::Grey);
    case InitialKind::Interaction:
      break;
  }
  if (separation < 1) {
    throw std::invalid_argument("separation must be >= 1, got " + std::to_string(separation));
  }
  std::vector<Color> cells(static_cast<std::size_t>(separation) + 1, Color::White);
  cells.front() = Color::Black;
  cells.back() = Color::Grey;
  return Configuration(0, std::move(cells));
}

}  // namespace selfish
