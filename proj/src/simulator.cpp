#include "uwkit/simulator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <random>

#include "uwkit/config.hpp"
#include "uwkit/format.hpp"
#include "uwkit/io.hpp"

namespace uwkit {

ImageRGB degrade(const ImageRGB& clear, const Rgb& bl, const TransmissionMaps& tm) {
  require_valid(clear, "degrade");
  for (int c = 0; c < 3; ++c) require_same_shape(clear, tm.channel(c), "degrade");
  ImageRGB out(clear.width(), clear.height());
  for (int c = 0; c < 3; ++c) {
    const ImageGray& j = clear.channel(c);
    const ImageGray& t = tm.channel(c);
    ImageGray& dst = out.channel(c);
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = j[i] * t[i] + bl[c] * (1.0 - t[i]);
  }
  return out;
}

DepthKind DepthKind::parse(std::string_view text) {
  DepthKind k;
  if (text == "ramp-vertical") {
    k.shape = Shape::RampVertical;
  } else if (text == "ramp-horizontal") {
    k.shape = Shape::RampHorizontal;
  } else if (text == "radial") {
    k.shape = Shape::Radial;
  } else if (text.starts_with("constant:")) {
    k.shape = Shape::Constant;
    if (!parse_double(text.substr(9), k.value) || k.value < 0.0 || k.value > 1.0)
      throw Error("constant depth must be a number in [0,1]: " + std::string(text));
  } else {
    throw Error("unknown depth kind: " + std::string(text));
  }
  return k;
}

std::string DepthKind::name() const {
  switch (shape) {
    case Shape::RampVertical: return "ramp-vertical";
    case Shape::RampHorizontal: return "ramp-horizontal";
    case Shape::Radial: return "radial";
    case Shape::Constant: return "constant:" + format_double(value);
  }
  return {};
}

DepthMap make_depth(const DepthKind& kind, int width, int height) {
  ImageGray d(width, height);
  const double cx = (width - 1) / 2.0;
  const double cy = (height - 1) / 2.0;
  const double corner = std::hypot(cx, cy);
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x) {
      double v = 0.0;
      switch (kind.shape) {
        case DepthKind::Shape::RampVertical: v = height > 1 ? static_cast<double>(y) / (height - 1) : 0.0; break;
        case DepthKind::Shape::RampHorizontal: v = width > 1 ? static_cast<double>(x) / (width - 1) : 0.0; break;
        case DepthKind::Shape::Radial: v = corner > 0.0 ? std::min(1.0, std::hypot(x - cx, y - cy) / corner) : 0.0; break;
        case DepthKind::Shape::Constant: v = kind.value; break;
      }
      d.at(x, y) = v;
    }
  return DepthMap(std::move(d));
}

ImageRGB synthetic_scene(int width, int height, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ImageRGB img(width, height);

  Rgb top{u(rng), u(rng), u(rng)};
  Rgb bottom{u(rng), u(rng), u(rng)};
  struct Blob {
    double x, y, radius;
    Rgb color;
  };
  std::vector<Blob> blobs(6);
  for (Blob& b : blobs)
    b = {u(rng) * width, u(rng) * height, (0.05 + 0.2 * u(rng)) * std::min(width, height),
         Rgb{u(rng), u(rng), u(rng)}};
  const double freq = 2.0 + 10.0 * u(rng);
  const double phase = 6.28318530717958647692 * u(rng);

  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x) {
      const double fy = height > 1 ? static_cast<double>(y) / (height - 1) : 0.0;
      const double fx = width > 1 ? static_cast<double>(x) / (width - 1) : 0.0;
      Rgb p;
      const double stripe = 0.08 * std::sin(freq * 6.28318530717958647692 * fx + phase);
      for (int c = 0; c < 3; ++c) p[c] = top[c] * (1.0 - fy) + bottom[c] * fy + stripe;
      for (const Blob& b : blobs) {
        const double dist = std::hypot(x - b.x, y - b.y) / b.radius;
        const double w = std::exp(-dist * dist);
        for (int c = 0; c < 3; ++c) p[c] = p[c] * (1.0 - w) + b.color[c] * w;
      }
      for (int c = 0; c < 3; ++c) p[c] = std::clamp(0.05 + 0.9 * p[c], 0.0, 1.0);
      img.set(x, y, p);
    }
  return img;
}

ImageRGB load_clear_source(const std::string& source) {
  if (source.starts_with("synthetic:")) {
    // synthetic:<seed>:<w>x<h>
    const std::string_view rest = std::string_view(source).substr(10);
    const auto colon = rest.find(':');
    const auto x = rest.find('x', colon == std::string_view::npos ? 0 : colon);
    double seed = 0.0;
    int w = 0, h = 0;
    if (colon == std::string_view::npos || x == std::string_view::npos || !parse_double(rest.substr(0, colon), seed) ||
        seed < 0.0 || seed != std::floor(seed) || !parse_int(rest.substr(colon + 1, x - colon - 1), w) ||
        !parse_int(rest.substr(x + 1), h) || w < 1 || h < 1)
      throw Error("bad synthetic source '" + source + "', expected synthetic:<seed>:<w>x<h>");
    return synthetic_scene(w, h, static_cast<std::uint64_t>(seed));
  }
  return load_image(source);
}

SyntheticCase make_case(const std::string& clear_source, const DepthKind& depth, const Rgb& bl,
                        const PriorConstants& consts) {
  consts.validate();
  for (int c = 0; c < 3; ++c)
    if (!(bl[c] >= 0.0 && bl[c] <= 1.0)) throw Error("background light must lie in [0,1]");
  SyntheticCase sc;
  sc.clear_source = clear_source;
  sc.depth_kind = depth;
  sc.clear = quantize8(load_clear_source(clear_source));
  sc.depth = make_depth(depth, sc.clear.width(), sc.clear.height());
  sc.bl = BackgroundLight{bl, BlMethod::Ulap, std::nullopt};
  sc.tm = tm_from_depth(sc.depth, consts);
  sc.degraded = degrade(sc.clear, bl, sc.tm);
  return sc;
}

namespace {

std::string rgb_text(const Rgb& p) {
  return format_double(p.r) + ", " + format_double(p.g) + ", " + format_double(p.b);
}

void write_manifest(const SyntheticCase& sc, const PriorConstants& consts, const std::filesystem::path& path) {
  ToolkitConfig cfg;
  cfg.priors = consts;
  const KeyValueFile all = cfg.to_key_values();
  KeyValueFile kv;
  for (const auto& [k, v] : all.entries())
    if (k.starts_with("priors.")) kv.set(k, v);
  kv.set("case.clear_source", sc.clear_source);
  kv.set("case.clear_file", "clear.png");
  kv.set("case.width", std::to_string(sc.clear.width()));
  kv.set("case.height", std::to_string(sc.clear.height()));
  kv.set("case.depth", sc.depth_kind.name());
  kv.set("case.bl", rgb_text(sc.bl.color));
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << "# synthetic degradation case; I = J t + B (1 - t), t_c = nrer_c ^ depth\n";
  kv.write(out);
  if (!out) throw Error("write failed: " + path.string());
}

}  // namespace

SyntheticCase generate_case(const std::string& clear_source, const DepthKind& depth, const Rgb& bl,
                            const PriorConstants& consts, const std::filesystem::path& out_dir) {
  SyntheticCase sc = make_case(clear_source, depth, bl, consts);
  std::filesystem::create_directories(out_dir);
  save_image(sc.clear, out_dir / "clear.png");
  save_image(sc.degraded, out_dir / "degraded.png");
  write_raw_f32(sc.degraded, out_dir / "degraded.f32");
  save_gray(sc.depth.values(), out_dir / "depth.png");
  save_gray(sc.tm.channel(0), out_dir / "tm_r.png");
  save_gray(sc.tm.channel(1), out_dir / "tm_g.png");
  save_gray(sc.tm.channel(2), out_dir / "tm_b.png");
  write_manifest(sc, consts, out_dir / "manifest.txt");
  return sc;
}

SyntheticCase reproduce_case(const std::filesystem::path& case_dir) {
  const KeyValueFile kv = KeyValueFile::load(case_dir / "manifest.txt");
  KeyValueFile priors;
  for (const auto& [k, v] : kv.entries())
    if (k.starts_with("priors.")) priors.set(k, v);
  ToolkitConfig cfg;
  cfg.apply(priors);

  const auto bl = kv.numbers("case.bl");
  if (bl.size() != 3) throw Error("manifest: case.bl needs three values");
  const auto clear_file = kv.text("case.clear_file");
  const auto depth = kv.text("case.depth");
  if (!clear_file || !depth) throw Error("manifest: missing case.clear_file or case.depth");

  SyntheticCase sc = make_case((case_dir / *clear_file).string(), DepthKind::parse(*depth), Rgb{bl[0], bl[1], bl[2]},
                               cfg.priors);
  sc.clear_source = kv.text("case.clear_source").value_or(sc.clear_source);
  if (sc.clear.width() != static_cast<int>(kv.number("case.width")) ||
      sc.clear.height() != static_cast<int>(kv.number("case.height")))
    throw Error("manifest: clear image size does not match case.width/case.height");
  return sc;
}

void write_raw_f32(const ImageRGB& img, const std::filesystem::path& path) {
  std::vector<std::uint32_t> words(img.pixel_count() * 3);
  for (std::size_t i = 0; i < img.pixel_count(); ++i)
    for (int c = 0; c < 3; ++c) {
      std::uint32_t w = std::bit_cast<std::uint32_t>(static_cast<float>(img.channel(c)[i]));
      if constexpr (std::endian::native == std::endian::big) w = __builtin_bswap32(w);
      words[i * 3 + static_cast<std::size_t>(c)] = w;
    }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(words.data()), static_cast<std::streamsize>(words.size() * 4));
  if (!out) throw Error("write failed: " + path.string());
}

ImageRGB read_raw_f32(const std::filesystem::path& path, int width, int height) {
  ImageRGB img(width, height);
  std::vector<std::uint32_t> words(img.pixel_count() * 3);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  in.read(reinterpret_cast<char*>(words.data()), static_cast<std::streamsize>(words.size() * 4));
  if (in.gcount() != static_cast<std::streamsize>(words.size() * 4) || in.peek() != std::char_traits<char>::eof())
    throw Error(path.string() + ": size does not match " + std::to_string(width) + "x" + std::to_string(height));
  for (std::size_t i = 0; i < img.pixel_count(); ++i)
    for (int c = 0; c < 3; ++c) {
      std::uint32_t w = words[i * 3 + static_cast<std::size_t>(c)];
      if constexpr (std::endian::native == std::endian::big) w = __builtin_bswap32(w);
      img.channel(c)[i] = static_cast<double>(std::bit_cast<float>(w));
    }
  return img;
}

}  // namespace uwkit
