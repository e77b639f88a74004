#include "uwkit/background_light.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace uwkit {
namespace {

struct NamedMethod {
  BlMethod method;
  std::string_view name;
};

constexpr NamedMethod kNames[] = {
    {BlMethod::DcpBrightest, "dcp-bright"}, {BlMethod::DcpTop01, "dcp-top01"}, {BlMethod::DcpMipDiff, "dcp-mip"},
    {BlMethod::Mip, "mip"},                 {BlMethod::MipAvg, "mip-avg"},     {BlMethod::Udcp, "udcp"},
    {BlMethod::RcpTop10, "rcp-top10"},      {BlMethod::BlurTop01Avg, "blur-top01"}, {BlMethod::Fusion, "fusion"},
    {BlMethod::Ulap, "ulap"},
};

constexpr double kTop01 = 0.001;
constexpr double kTop10 = 0.10;

std::size_t argmax(std::span<const double> v) {
  // std::max_element returns the first maximum: smallest index wins ties.
  return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

std::size_t argmin(std::span<const double> v) {
  return static_cast<std::size_t>(std::min_element(v.begin(), v.end()) - v.begin());
}

BackgroundLight at_pixel(const ImageRGB& img, std::size_t index, BlMethod method) {
  const int w = img.width();
  return {img.pixel(index), method, PixelPos{static_cast<int>(index % static_cast<std::size_t>(w)),
                                             static_cast<int>(index / static_cast<std::size_t>(w))}};
}

BackgroundLight mean_over(const ImageRGB& img, std::span<const std::size_t> indices, BlMethod method) {
  Rgb sum;
  for (std::size_t i : indices) {
    const Rgb p = img.pixel(i);
    sum.r += p.r;
    sum.g += p.g;
    sum.b += p.b;
  }
  const double n = static_cast<double>(indices.size());
  return {{sum.r / n, sum.g / n, sum.b / n}, method, std::nullopt};
}

// Among `candidates`, the pixel maximising score(pixel); ties -> smallest index.
template <typename Score>
std::size_t best_of(const ImageRGB& img, std::vector<std::size_t> candidates, Score score) {
  std::sort(candidates.begin(), candidates.end());
  std::size_t best = candidates.front();
  double best_score = score(img.pixel(best));
  for (std::size_t i : candidates) {
    const double s = score(img.pixel(i));
    if (s > best_score) {
      best_score = s;
      best = i;
    }
  }
  return best;
}

double brightness(const Rgb& p) { return p.r + p.g + p.b; }

BackgroundLight fusion(const ImageRGB& img, WindowSpec win, const PriorConstants& consts) {
  const BackgroundLight candidates[] = {estimate_background_light(img, BlMethod::DcpTop01, win, consts),
                                        estimate_background_light(img, BlMethod::Mip, win, consts),
                                        estimate_background_light(img, BlMethod::Ulap, win, consts)};
  constexpr std::size_t n = std::size(candidates);
  double weights[n];
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double distance = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      for (int c = 0; c < 3; ++c) distance += std::fabs(candidates[i].color[c] - candidates[j].color[c]);
    }
    distance /= 3.0 * static_cast<double>(n - 1);
    weights[i] = 1.0 / (1e-6 + distance);
    total += weights[i];
  }
  Rgb out;
  for (std::size_t i = 0; i < n; ++i)
    for (int c = 0; c < 3; ++c) out[c] += weights[i] / total * candidates[i].color[c];
  for (int c = 0; c < 3; ++c) out[c] = std::clamp(out[c], 0.0, 1.0);
  return {out, BlMethod::Fusion, std::nullopt};
}

}  // namespace

std::string_view to_string(BlMethod m) {
  for (const auto& [method, name] : kNames)
    if (method == m) return name;
  return "?";
}

BlMethod parse_bl_method(std::string_view name) {
  for (const auto& [method, n] : kNames)
    if (n == name) return method;
  throw Error("unknown background-light method: " + std::string(name));
}

std::size_t top_count(std::size_t pixels, double fraction) {
  const auto k = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(pixels)));
  return std::clamp<std::size_t>(k, 1, pixels);
}

std::vector<std::size_t> top_k_indices(std::span<const double> values, std::size_t k) {
  std::vector<std::size_t> idx(values.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  k = std::min(k, idx.size());
  auto before = [&](std::size_t a, std::size_t b) { return values[a] > values[b] || (values[a] == values[b] && a < b); };
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end(), before);
  idx.resize(k);
  return idx;
}

std::size_t brightest_of_top(const ImageRGB& img, const ImageGray& score, double fraction) {
  require_same_shape(img, score, "brightest_of_top");
  return best_of(img, top_k_indices(score.pixels(), top_count(img.pixel_count(), fraction)), brightness);
}

BackgroundLight ulap_background_light(const ImageRGB& img, const DepthMap& depth) {
  require_same_shape(img, depth.values(), "ulap background light");
  const auto far = top_k_indices(depth.values().pixels(), top_count(img.pixel_count(), kTop01));
  return mean_over(img, far, BlMethod::Ulap);
}

BackgroundLight estimate_background_light(const ImageRGB& img, BlMethod method, WindowSpec win,
                                          const PriorConstants& consts) {
  require_valid(img, "estimate_background_light");
  if (img.width() < win.side() || img.height() < win.side())
    throw Error("estimate_background_light: image smaller than one " + std::to_string(win.side()) + "x" +
                std::to_string(win.side()) + " window");
  const std::size_t n = img.pixel_count();

  switch (method) {
    case BlMethod::DcpBrightest: {
      const ImageGray dark = dark_channel(img, win);
      return at_pixel(img, argmax(dark.pixels()), method);
    }

    case BlMethod::DcpTop01: {
      return at_pixel(img, brightest_of_top(img, dark_channel(img, win), kTop01), method);
    }

    case BlMethod::DcpMipDiff: {
      if (consts.dcp_mip_mode == DcpMipMode::DarkChannelDifference) {
        const ImageGray dark_r = window_min(img.channel(0), win);
        const ImageGray dark_g = window_min(img.channel(1), win);
        const ImageGray dark_b = window_min(img.channel(2), win);
        ImageGray diff(img.width(), img.height());
        for (std::size_t i = 0; i < n; ++i) diff[i] = dark_r[i] - std::max(dark_g[i], dark_b[i]);
        return at_pixel(img, argmin(diff.pixels()), method);
      }
      const ImageGray dark = dark_channel(img, win);
      auto channel_gap = [](const Rgb& p) { return std::max(p.b - p.g, p.g - p.r); };
      return at_pixel(img, best_of(img, top_k_indices(dark.pixels(), top_count(n, kTop01)), channel_gap), method);
    }

    case BlMethod::Mip: {
      const ImageGray mip = mip_map(img, win);
      return at_pixel(img, argmin(mip.pixels()), method);
    }

    case BlMethod::MipAvg: {
      const ImageGray mip = mip_map(img, win);
      const double lowest = *std::min_element(mip.pixels().begin(), mip.pixels().end());
      std::vector<std::size_t> ties;
      for (std::size_t i = 0; i < n; ++i)
        if (mip[i] == lowest) ties.push_back(i);
      return mean_over(img, ties, method);
    }

    case BlMethod::Udcp: {
      const ImageGray udark = underwater_dark_channel(img, win);
      return at_pixel(img, argmax(udark.pixels()), method);
    }

    case BlMethod::RcpTop10: {
      return at_pixel(img, brightest_of_top(img, red_inverted_dark(img, win), kTop10), method);
    }

    case BlMethod::BlurTop01Avg: {
      const ImageGray dark = dark_channel(img, win);
      return mean_over(img, top_k_indices(dark.pixels(), top_count(n, kTop01)), method);
    }

    case BlMethod::Fusion:
      return fusion(img, win, consts);

    case BlMethod::Ulap:
      return ulap_background_light(img, ulap_depth(img, consts));
  }
  throw Error("estimate_background_light: unknown method");
}

std::vector<std::pair<BlMethod, BackgroundLight>> rank_bl_candidates(const ImageRGB& img, WindowSpec win,
                                                                     const PriorConstants& consts) {
  std::vector<std::pair<BlMethod, BackgroundLight>> out;
  for (BlMethod m : kAllBlMethods) out.emplace_back(m, estimate_background_light(img, m, win, consts));
  return out;
}

}  // namespace uwkit
