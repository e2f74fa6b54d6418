#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>

#include "selfish/ca_core.hpp"

namespace selfish {

using Rgb = std::array<std::uint8_t, 3>;

struct ImageSpec {
  std::array<Rgb, kNumColors> palette{Rgb{255, 255, 255}, Rgb{128, 128, 128}, Rgb{0, 0, 0}};
  std::size_t scale = 1;           // pixels per cell edge, >= 1
  IndexRange window;               // tape columns
  std::size_t first_row = 0;       // time range [first_row, last_row)
  std::size_t last_row = 0;
};

/// Full time range over the light-cone span, or the single column [0, 1)
/// when the diagram starts all white.
ImageSpec default_image_spec(const SpacetimeDiagram& diagram, std::size_t scale = 1);

struct RenderedImage {
  std::string bytes;  // complete P6 file
  std::size_t width = 0;
  std::size_t height = 0;
  /// Some live cell of the rendered rows falls outside the window.
  bool clipped = false;
};

/// Binary PPM: "P6\n<w> <h>\n255\n" then rows of RGB triples, t = first_row on
/// top. Throws std::invalid_argument for a zero scale, an empty window or an
/// empty/out-of-range time range.
RenderedImage render_ppm(const SpacetimeDiagram& diagram, const ImageSpec& spec);

}  // namespace selfish
