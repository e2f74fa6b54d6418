#include "selfish/render.hpp"

#include <stdexcept>
#include <string>

namespace selfish {

ImageSpec default_image_spec(const SpacetimeDiagram& diagram, std::size_t scale) {
  ImageSpec spec;
  spec.scale = scale;
  spec.window = diagram.light_cone_span();
  if (spec.window.empty()) spec.window = {0, 1};
  spec.first_row = 0;
  spec.last_row = diagram.rows.size();
  return spec;
}

RenderedImage render_ppm(const SpacetimeDiagram& diagram, const ImageSpec& spec) {
  if (spec.scale == 0) throw std::invalid_argument("render: scale must be >= 1");
  if (spec.window.empty()) throw std::invalid_argument("render: empty window");
  if (spec.first_row >= spec.last_row || spec.last_row > diagram.rows.size()) {
    throw std::invalid_argument("render: row range outside the diagram");
  }

  RenderedImage img;
  img.width = static_cast<std::size_t>(spec.window.size()) * spec.scale;
  img.height = (spec.last_row - spec.first_row) * spec.scale;

  const std::string header = "P6\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
  img.bytes.reserve(header.size() + 3 * img.width * img.height);
  img.bytes = header;

  std::string line;
  line.reserve(3 * img.width);
  for (std::size_t t = spec.first_row; t < spec.last_row; ++t) {
    const Configuration& row = diagram.rows[t];
    const IndexRange support = row.support();
    if (!row.all_white() && (support.begin < spec.window.begin || support.end > spec.window.end)) {
      img.clipped = true;
    }
    line.clear();
    for (std::int64_t x = spec.window.begin; x < spec.window.end; ++x) {
      const Rgb& px = spec.palette[static_cast<std::size_t>(row.at(x))];
      for (std::size_t s = 0; s < spec.scale; ++s) line.append(reinterpret_cast<const char*>(px.data()), 3);
    }
    for (std::size_t s = 0; s < spec.scale; ++s) img.bytes += line;
  }
  return img;
}

}  // namespace selfish
