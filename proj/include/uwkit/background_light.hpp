#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "uwkit/image.hpp"
#include "uwkit/priors.hpp"

namespace uwkit {

enum class BlMethod {
  DcpBrightest,  // pixel maximising the dark channel
  DcpTop01,      // top 0.1% dark channel, then brightest R+G+B
  DcpMipDiff,    // top 0.1% dark channel, then max(B-G, G-R)
  Mip,           // pixel minimising the MIP map
  MipAvg,        // mean over all MIP argmin ties
  Udcp,          // pixel maximising the G/B dark channel
  RcpTop10,      // top 10% red-inverted dark channel, then brightest R+G+B
  BlurTop01Avg,  // mean over top 0.1% dark channel
  Fusion,        // agreement-weighted blend of DcpTop01, Mip, Ulap
  Ulap,          // mean over top 0.1% farthest ULAP depth
};

inline constexpr BlMethod kAllBlMethods[] = {BlMethod::DcpBrightest, BlMethod::DcpTop01, BlMethod::DcpMipDiff,
                                             BlMethod::Mip,          BlMethod::MipAvg,   BlMethod::Udcp,
                                             BlMethod::RcpTop10,     BlMethod::BlurTop01Avg, BlMethod::Fusion,
                                             BlMethod::Ulap};

std::string_view to_string(BlMethod m);
/// Parses the stable CLI name (dcp-bright, dcp-top01, ...).
BlMethod parse_bl_method(std::string_view name);

struct PixelPos {
  int x = 0;
  int y = 0;
  friend bool operator==(const PixelPos&, const PixelPos&) = default;
};

struct BackgroundLight {
  Rgb color;
  BlMethod source = BlMethod::DcpBrightest;
  std::optional<PixelPos> pixel;  // set by single-pixel selectors
};

/// Number of pixels in a "top p" set: max(1, round(fraction * count)).
std::size_t top_count(std::size_t pixels, double fraction);

/// Indices of the k largest values, ordered by value descending then index
/// ascending (smallest row-major index wins ties).
std::vector<std::size_t> top_k_indices(std::span<const double> values, std::size_t k);

/// Among the top `fraction` of pixels by `score`, the index of the pixel with
/// the largest R+G+B. Shared by DcpTop01 (0.1%) and RcpTop10 (10%).
std::size_t brightest_of_top(const ImageRGB& img, const ImageGray& score, double fraction);

/// Throws when the image is smaller than one window.
BackgroundLight estimate_background_light(const ImageRGB& img, BlMethod method, WindowSpec win,
                                          const PriorConstants& consts);

/// Mean color over the top 0.1% farthest pixels of `depth`.
BackgroundLight ulap_background_light(const ImageRGB& img, const DepthMap& depth);

/// Every method in enum order.
std::vector<std::pair<BlMethod, BackgroundLight>> rank_bl_candidates(const ImageRGB& img, WindowSpec win,
                                                                     const PriorConstants& consts);

}  // namespace uwkit
