#pragma once

#include <filesystem>
#include <string>

#include "kstab/envelope.hpp"
#include "kstab/futaki.hpp"

namespace kstab {

struct SvgLayers {
  const Polytope* polygon = nullptr;  // required, rank 2
  const EnvelopeResult* envelope = nullptr;
  const CreaseResult* crease = nullptr;
  const ThetaFunction* theta = nullptr;  // shades {Theta < 0} on a grid
};

/// Standalone SVG figure of the polygon and whatever layers are given.
std::string render_svg(const SvgLayers& layers);
/// Error: Io.
void write_svg(const std::filesystem::path& path, const SvgLayers& layers);

}  // namespace kstab
