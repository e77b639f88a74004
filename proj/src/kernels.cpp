#include "uwkit/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "uwkit/simd/row_ops.hpp"

namespace uwkit {
namespace {

using RowBinary = void (*)(const double*, const double*, double*, std::size_t);

// van Herk / Gil-Werman over one padded 1-D sequence of length n with
// window w. `g` holds block prefixes, `h` block suffixes.
template <typename Pick>
void vhgw_1d(std::span<const double> padded, int w, std::span<double> out, std::vector<double>& g,
             std::vector<double>& h, Pick pick) {
  const std::size_t n = padded.size();
  g.resize(n);
  h.resize(n);
  const auto uw = static_cast<std::size_t>(w);
  for (std::size_t j = 0; j < n; ++j) g[j] = (j % uw == 0) ? padded[j] : pick(g[j - 1], padded[j]);
  for (std::size_t j = n; j-- > 0;)
    h[j] = (j % uw == uw - 1 || j == n - 1) ? padded[j] : pick(h[j + 1], padded[j]);
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = pick(h[x], g[x + uw - 1]);
}

// Same recurrence with whole rows as elements. Each row op is a SIMD
// primitive from the active backend.
void vhgw_rows(const ImageGray& src, int radius, ImageGray& dst, RowBinary pick) {
  const int w = 2 * radius + 1;
  const int height = src.height();
  const auto width = static_cast<std::size_t>(src.width());
  const int n = height + 2 * radius;
  std::vector<double> g(static_cast<std::size_t>(n) * width);
  std::vector<double> h(g.size());
  auto src_row = [&](int j) { return src.row(replicate_index(j - radius, height)).data(); };
  auto grow = [&](int j) { return g.data() + static_cast<std::size_t>(j) * width; };
  auto hrow = [&](int j) { return h.data() + static_cast<std::size_t>(j) * width; };

  for (int j = 0; j < n; ++j) {
    if (j % w == 0)
      std::copy_n(src_row(j), width, grow(j));
    else
      pick(grow(j - 1), src_row(j), grow(j), width);
  }
  for (int j = n - 1; j >= 0; --j) {
    if (j % w == w - 1 || j == n - 1)
      std::copy_n(src_row(j), width, hrow(j));
    else
      pick(hrow(j + 1), src_row(j), hrow(j), width);
  }
  for (int y = 0; y < height; ++y) pick(hrow(y), grow(y + w - 1), dst.row(y).data(), width);
}

template <typename Pick>
ImageGray window_extremum(const ImageGray& img, WindowSpec win, Pick pick, RowBinary row_pick) {
  if (win.radius == 0) return img;
  const int r = win.radius;
  const int width = img.width();
  ImageGray horizontal(width, img.height());
  std::vector<double> padded(static_cast<std::size_t>(width + 2 * r));
  std::vector<double> g, h;
  for (int y = 0; y < img.height(); ++y) {
    auto row = img.row(y);
    for (int j = 0; j < width + 2 * r; ++j) padded[static_cast<std::size_t>(j)] = row[replicate_index(j - r, width)];
    vhgw_1d(padded, win.side(), horizontal.row(y), g, h, pick);
  }
  ImageGray out(width, img.height());
  vhgw_rows(horizontal, r, out, row_pick);
  return out;
}

// Fenwick tree over value ranks; supports k-th smallest lookup.
class RankHistogram {
 public:
  explicit RankHistogram(std::size_t bins) : tree_(bins + 1, 0) {
    top_ = 1;
    while (top_ * 2 <= bins) top_ *= 2;
  }
  void add(std::size_t rank, int delta) {
    for (std::size_t i = rank + 1; i < tree_.size(); i += i & (~i + 1)) tree_[i] += delta;
  }
  // Smallest rank whose cumulative count exceeds k (0-based k).
  std::size_t kth(int k) const {
    std::size_t pos = 0;
    for (std::size_t step = top_; step > 0; step >>= 1) {
      if (pos + step < tree_.size() && tree_[pos + step] <= k) {
        pos += step;
        k -= tree_[pos];
      }
    }
    return pos;
  }
  void clear() { std::fill(tree_.begin(), tree_.end(), 0); }

 private:
  std::vector<int> tree_;
  std::size_t top_;
};

}  // namespace

ImageGray window_min(const ImageGray& img, WindowSpec win) {
  return window_extremum(img, win, [](double a, double b) { return a < b ? a : b; }, simd::ops().min_rows);
}

ImageGray window_max(const ImageGray& img, WindowSpec win) {
  return window_extremum(img, win, [](double a, double b) { return a > b ? a : b; }, simd::ops().max_rows);
}

ImageGray window_median(const ImageGray& img, WindowSpec win) {
  if (win.radius == 0) return img;
  const int width = img.width();
  const int height = img.height();
  const int r = win.radius;

  std::vector<double> levels(img.pixels().begin(), img.pixels().end());
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  std::vector<std::size_t> rank(img.size());
  for (std::size_t i = 0; i < img.size(); ++i)
    rank[i] = static_cast<std::size_t>(std::lower_bound(levels.begin(), levels.end(), img[i]) - levels.begin());
  auto rank_at = [&](int x, int y) {
    return rank[static_cast<std::size_t>(replicate_index(y, height)) * static_cast<std::size_t>(width) +
                static_cast<std::size_t>(replicate_index(x, width))];
  };

  const int middle = (win.side() * win.side()) / 2;
  ImageGray out(width, height);
  RankHistogram hist(levels.size());
  for (int y = 0; y < height; ++y) {
    hist.clear();
    for (int dy = -r; dy <= r; ++dy)
      for (int dx = -r; dx <= r; ++dx) hist.add(rank_at(dx, y + dy), 1);
    out.at(0, y) = levels[hist.kth(middle)];
    for (int x = 1; x < width; ++x) {
      for (int dy = -r; dy <= r; ++dy) {
        hist.add(rank_at(x - r - 1, y + dy), -1);
        hist.add(rank_at(x + r, y + dy), 1);
      }
      out.at(x, y) = levels[hist.kth(middle)];
    }
  }
  return out;
}

ImageGray box_filter(const ImageGray& img, WindowSpec win) {
  const int r = win.radius;
  const int width = img.width();
  const int height = img.height();
  const auto uw = static_cast<std::size_t>(width);
  const auto& ops = simd::ops();

  // Vertical running sums over rows, then horizontal running sums.
  std::vector<double> column(uw, 0.0);
  for (int k = -r; k <= r; ++k) ops.accumulate(column.data(), img.row(replicate_index(k, height)).data(), uw);

  const double count = static_cast<double>(win.side()) * static_cast<double>(win.side());
  ImageGray out(width, height);
  for (int y = 0; y < height; ++y) {
    if (y > 0)
      ops.slide_sum(column.data(), img.row(replicate_index(y + r, height)).data(),
                    img.row(replicate_index(y - r - 1, height)).data(), uw);
    double sum = 0.0;
    for (int k = -r; k <= r; ++k) sum += column[static_cast<std::size_t>(replicate_index(k, width))];
    auto dst = out.row(y);
    dst[0] = sum / count;
    for (int x = 1; x < width; ++x) {
      sum = (sum + column[static_cast<std::size_t>(replicate_index(x + r, width))]) -
            column[static_cast<std::size_t>(replicate_index(x - r - 1, width))];
      dst[static_cast<std::size_t>(x)] = sum / count;
    }
  }
  return out;
}

ImageGray gaussian_blur(const ImageGray& img, double sigma) {
  if (sigma <= 0.0) return img;
  const int half = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> taps(static_cast<std::size_t>(2 * half + 1));
  for (int k = -half; k <= half; ++k)
    taps[static_cast<std::size_t>(k + half)] = std::exp(-(k * k) / (2.0 * sigma * sigma));
  const double total = std::accumulate(taps.begin(), taps.end(), 0.0);
  for (double& t : taps) t /= total;

  const int width = img.width();
  const int height = img.height();
  const auto uw = static_cast<std::size_t>(width);
  const auto& ops = simd::ops();
  ImageGray vertical(width, height);
  for (int y = 0; y < height; ++y) {
    double* dst = vertical.row(y).data();
    for (int k = -half; k <= half; ++k)
      ops.axpy(dst, taps[static_cast<std::size_t>(k + half)], img.row(replicate_index(y + k, height)).data(), uw);
  }
  ImageGray out(width, height);
  for (int y = 0; y < height; ++y) {
    auto src = vertical.row(y);
    auto dst = out.row(y);
    for (int x = 0; x < width; ++x) {
      double acc = 0.0;
      for (int k = -half; k <= half; ++k)
        acc += taps[static_cast<std::size_t>(k + half)] * src[static_cast<std::size_t>(replicate_index(x + k, width))];
      dst[static_cast<std::size_t>(x)] = acc;
    }
  }
  return out;
}

ImageGray guided_filter(const ImageGray& p, const ImageGray& guide, int radius, double eps) {
  require_same_shape(p, guide, "guided_filter");
  if (radius < 0) throw Error("guided_filter: radius must be >= 0");
  if (eps < 0.0) throw Error("guided_filter: eps must be >= 0");
  const WindowSpec win(radius);
  const auto& ops = simd::ops();
  const std::size_t n = p.size();

  ImageGray gp(guide.width(), guide.height());
  ImageGray gg(guide.width(), guide.height());
  ops.multiply(guide.pixels().data(), p.pixels().data(), gp.pixels().data(), n);
  ops.multiply(guide.pixels().data(), guide.pixels().data(), gg.pixels().data(), n);

  const ImageGray mean_g = box_filter(guide, win);
  const ImageGray mean_p = box_filter(p, win);
  const ImageGray corr_gg = box_filter(gg, win);
  const ImageGray corr_gp = box_filter(gp, win);

  // Variances this small are rounding residue of a flat window.
  constexpr double kFlatFloor = 1e-12;
  ImageGray a(p.width(), p.height());
  ImageGray b(p.width(), p.height());
  ops.regression(mean_g.pixels().data(), mean_p.pixels().data(), corr_gg.pixels().data(), corr_gp.pixels().data(),
                 eps, kFlatFloor, a.pixels().data(), b.pixels().data(), n);

  const ImageGray mean_a = box_filter(a, win);
  const ImageGray mean_b = box_filter(b, win);
  ImageGray q(p.width(), p.height());
  ops.affine(mean_a.pixels().data(), guide.pixels().data(), mean_b.pixels().data(), q.pixels().data(), n);
  return q;
}

ImageGray resize_bilinear(const ImageGray& img, int width, int height) {
  if (width < 1 || height < 1) throw Error("resize_bilinear: target size must be >= 1");
  ImageGray out(width, height);
  const double sx = static_cast<double>(img.width()) / width;
  const double sy = static_cast<double>(img.height()) / height;
  for (int y = 0; y < height; ++y) {
    const double fy = std::clamp((y + 0.5) * sy - 0.5, 0.0, static_cast<double>(img.height() - 1));
    const int y0 = static_cast<int>(std::floor(fy));
    const int y1 = std::min(y0 + 1, img.height() - 1);
    const double wy = fy - y0;
    for (int x = 0; x < width; ++x) {
      const double fx = std::clamp((x + 0.5) * sx - 0.5, 0.0, static_cast<double>(img.width() - 1));
      const int x0 = static_cast<int>(std::floor(fx));
      const int x1 = std::min(x0 + 1, img.width() - 1);
      const double wx = fx - x0;
      const double top = img.at(x0, y0) + wx * (img.at(x1, y0) - img.at(x0, y0));
      const double bottom = img.at(x0, y1) + wx * (img.at(x1, y1) - img.at(x0, y1));
      out.at(x, y) = top + wy * (bottom - top);
    }
  }
  return out;
}

ImageRGB resize_bilinear(const ImageRGB& img, int width, int height) {
  return ImageRGB(resize_bilinear(img.channel(0), width, height), resize_bilinear(img.channel(1), width, height),
                  resize_bilinear(img.channel(2), width, height));
}

ImageGray sobel_magnitude(const ImageGray& img) {
  const int w = img.width();
  const int h = img.height();
  ImageGray out(w, h);
  auto v = [&](int x, int y) { return img.at(replicate_index(x, w), replicate_index(y, h)); };
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const double gx = (v(x + 1, y - 1) + 2 * v(x + 1, y) + v(x + 1, y + 1)) -
                        (v(x - 1, y - 1) + 2 * v(x - 1, y) + v(x - 1, y + 1));
      const double gy = (v(x - 1, y + 1) + 2 * v(x, y + 1) + v(x + 1, y + 1)) -
                        (v(x - 1, y - 1) + 2 * v(x, y - 1) + v(x + 1, y - 1));
      out.at(x, y) = std::sqrt(gx * gx + gy * gy);
    }
  return out;
}

ImageGray laplacian(const ImageGray& img) {
  const int w = img.width();
  const int h = img.height();
  ImageGray out(w, h);
  auto v = [&](int x, int y) { return img.at(replicate_index(x, w), replicate_index(y, h)); };
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      out.at(x, y) = v(x - 1, y) + v(x + 1, y) + v(x, y - 1) + v(x, y + 1) - 4.0 * v(x, y);
  return out;
}

int max_pyramid_levels(int width, int height) {
  int levels = 1;
  int m = std::min(width, height);
  while (m >= 2) {
    m = (m + 1) / 2;
    ++levels;
    if (m == 1) break;
  }
  return levels;
}

ImageGray pyramid_reduce(const ImageGray& img) {
  static constexpr double kTaps[5] = {1.0 / 16, 4.0 / 16, 6.0 / 16, 4.0 / 16, 1.0 / 16};
  const int w = img.width();
  const int h = img.height();
  const int cw = (w + 1) / 2;
  const int ch = (h + 1) / 2;
  ImageGray rows(cw, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < cw; ++x) {
      double acc = 0.0;
      for (int k = -2; k <= 2; ++k) acc += kTaps[k + 2] * img.at(replicate_index(2 * x + k, w), y);
      rows.at(x, y) = acc;
    }
  ImageGray out(cw, ch);
  for (int y = 0; y < ch; ++y)
    for (int x = 0; x < cw; ++x) {
      double acc = 0.0;
      for (int k = -2; k <= 2; ++k) acc += kTaps[k + 2] * rows.at(x, replicate_index(2 * y + k, h));
      out.at(x, y) = acc;
    }
  return out;
}

namespace {

// Expand weights: even fine index -> (1,6,1)/8 over coarse i-1,i,i+1;
// odd fine index -> (1,1)/2 over coarse i, i+1.
double expand_1d(int fine, int coarse_n, auto&& at) {
  const int i = fine / 2;
  if (fine % 2 == 0)
    return (at(replicate_index(i - 1, coarse_n)) + 6.0 * at(i) + at(replicate_index(i + 1, coarse_n))) / 8.0;
  return 0.5 * (at(i) + at(replicate_index(i + 1, coarse_n)));
}

}  // namespace

ImageGray pyramid_expand(const ImageGray& coarse, int width, int height) {
  const int cw = coarse.width();
  const int ch = coarse.height();
  if ((width + 1) / 2 != cw || (height + 1) / 2 != ch) throw Error("pyramid_expand: size mismatch");
  ImageGray rows(width, ch);
  for (int y = 0; y < ch; ++y)
    for (int x = 0; x < width; ++x) rows.at(x, y) = expand_1d(x, cw, [&](int i) { return coarse.at(i, y); });
  ImageGray out(width, height);
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x) out.at(x, y) = expand_1d(y, ch, [&](int j) { return rows.at(x, j); });
  return out;
}

std::vector<ImageGray> gaussian_pyramid(const ImageGray& img, int levels) {
  if (levels < 1) throw Error("pyramid: levels must be >= 1");
  if (levels > max_pyramid_levels(img.width(), img.height()))
    throw Error("pyramid: " + std::to_string(levels) + " levels too deep for " + std::to_string(img.width()) + "x" +
                std::to_string(img.height()));
  std::vector<ImageGray> pyr{img};
  for (int l = 1; l < levels; ++l) pyr.push_back(pyramid_reduce(pyr.back()));
  return pyr;
}

std::vector<ImageGray> laplacian_pyramid(const ImageGray& img, int levels) {
  std::vector<ImageGray> pyr = gaussian_pyramid(img, levels);
  for (std::size_t l = 0; l + 1 < pyr.size(); ++l) {
    const ImageGray up = pyramid_expand(pyr[l + 1], pyr[l].width(), pyr[l].height());
    for (std::size_t i = 0; i < up.size(); ++i) pyr[l][i] -= up[i];
  }
  return pyr;
}

ImageGray collapse_pyramid(const std::vector<ImageGray>& laplacian) {
  if (laplacian.empty()) throw Error("collapse_pyramid: empty pyramid");
  ImageGray acc = laplacian.back();
  for (std::size_t l = laplacian.size() - 1; l-- > 0;) {
    ImageGray up = pyramid_expand(acc, laplacian[l].width(), laplacian[l].height());
    for (std::size_t i = 0; i < up.size(); ++i) up[i] += laplacian[l][i];
    acc = std::move(up);
  }
  return acc;
}

ImageGray normalize_minmax(const ImageGray& img, double degenerate) {
  const auto [lo, hi] = std::minmax_element(img.pixels().begin(), img.pixels().end());
  ImageGray out(img.width(), img.height(), degenerate);
  if (*hi - *lo <= 0.0) return out;
  const double lo_v = *lo;
  const double span = *hi - *lo;
  for (std::size_t i = 0; i < img.size(); ++i) out[i] = (img[i] - lo_v) / span;
  return out;
}

}  // namespace uwkit
