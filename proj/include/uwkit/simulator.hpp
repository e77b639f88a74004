#pragma once

// Forward degradation I = J t + B (1 - t) and synthetic test cases on disk.
//
// Case directory layout:
//   clear.png  degraded.png  degraded.f32  depth.png  tm_r.png tm_g.png tm_b.png
//   manifest.txt
// degraded.f32 holds the unquantized degraded image as little-endian float32,
// row-major, interleaved R G B.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "uwkit/background_light.hpp"
#include "uwkit/priors.hpp"
#include "uwkit/transmission.hpp"

namespace uwkit {

ImageRGB degrade(const ImageRGB& clear, const Rgb& bl, const TransmissionMaps& tm);

struct DepthKind {
  enum class Shape { RampVertical, RampHorizontal, Radial, Constant };
  Shape shape = Shape::RampVertical;
  double value = 0.0;  // Constant only

  /// "ramp-vertical", "ramp-horizontal", "radial", "constant:<v>".
  static DepthKind parse(std::string_view text);
  std::string name() const;
};

/// Ramps run 0 at the top/left edge to 1 at the bottom/right edge; radial
/// is the Euclidean distance from the image centre over the corner distance.
DepthMap make_depth(const DepthKind& kind, int width, int height);

/// Deterministic procedural scene in [0,1]: smooth colour gradients, blobs
/// and stripes. Same seed, same image.
ImageRGB synthetic_scene(int width, int height, std::uint64_t seed);

struct SyntheticCase {
  ImageRGB clear;
  DepthMap depth;
  BackgroundLight bl;
  TransmissionMaps tm;
  ImageRGB degraded;
  std::string clear_source;  // path or "synthetic:<seed>:<w>x<h>"
  DepthKind depth_kind;
};

/// Source is either an image path or "synthetic:<seed>:<w>x<h>".
ImageRGB load_clear_source(const std::string& source);

/// The clear image is quantized to 8 bits first, so clear.png reloads to
/// exactly the clear image the degradation used.
SyntheticCase make_case(const std::string& clear_source, const DepthKind& depth, const Rgb& bl,
                        const PriorConstants& consts);

/// make_case, then writes the case directory (created if missing).
SyntheticCase generate_case(const std::string& clear_source, const DepthKind& depth, const Rgb& bl,
                            const PriorConstants& consts, const std::filesystem::path& out_dir);

/// Rebuilds a case from manifest.txt alone (clear.png is re-read).
SyntheticCase reproduce_case(const std::filesystem::path& case_dir);

void write_raw_f32(const ImageRGB& img, const std::filesystem::path& path);
ImageRGB read_raw_f32(const std::filesystem::path& path, int width, int height);

}  // namespace uwkit
