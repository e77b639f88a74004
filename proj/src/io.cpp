#include "uwkit/io.hpp"

#include <png.h>
// jpeglib.h needs FILE and size_t declared first.
#include <cstdio>
#include <jpeglib.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <csetjmp>
#include <cstring>
#include <fstream>
#include <memory>
#include <vector>

namespace uwkit {
namespace {

enum class Format { Png, Jpeg, Unknown };

Format sniff(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open image: " + path.string());
  std::array<unsigned char, 8> sig{};
  in.read(reinterpret_cast<char*>(sig.data()), sig.size());
  if (in.gcount() >= 8 && png_sig_cmp(sig.data(), 0, 8) == 0) return Format::Png;
  if (in.gcount() >= 3 && sig[0] == 0xFF && sig[1] == 0xD8 && sig[2] == 0xFF) return Format::Jpeg;
  return Format::Unknown;
}

struct RawRgb8 {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bytes;  // interleaved RGB
};

RawRgb8 read_png(const std::filesystem::path& path) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str()))
    throw Error("cannot read PNG " + path.string() + ": " + image.message);
  image.format = PNG_FORMAT_RGB;
  RawRgb8 raw;
  raw.width = static_cast<int>(image.width);
  raw.height = static_cast<int>(image.height);
  raw.bytes.resize(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, raw.bytes.data(), 0, nullptr)) {
    png_image_free(&image);
    throw Error("cannot decode PNG " + path.string() + ": " + image.message);
  }
  return raw;
}

struct JpegError {
  jpeg_error_mgr mgr;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegError*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->jump, 1);
}

using FilePtr = std::unique_ptr<std::FILE, int (*)(std::FILE*)>;

FilePtr open_file(const std::filesystem::path& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode), &std::fclose);
  if (!f) throw Error("cannot open " + path.string());
  return f;
}

RawRgb8 read_jpeg(const std::filesystem::path& path) {
  FilePtr file = open_file(path, "rb");
  jpeg_decompress_struct cinfo;
  JpegError err;
  cinfo.err = jpeg_std_error(&err.mgr);
  err.mgr.error_exit = jpeg_error_exit;
  RawRgb8 raw;
  if (setjmp(err.jump)) {
    jpeg_destroy_decompress(&cinfo);
    throw Error("cannot decode JPEG " + path.string() + ": " + err.message);
  }
  jpeg_create_decompress(&cinfo);
  jpeg_stdio_src(&cinfo, file.get());
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = JCS_RGB;
  jpeg_start_decompress(&cinfo);
  raw.width = static_cast<int>(cinfo.output_width);
  raw.height = static_cast<int>(cinfo.output_height);
  raw.bytes.resize(static_cast<std::size_t>(raw.width) * static_cast<std::size_t>(raw.height) * 3);
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = raw.bytes.data() + static_cast<std::size_t>(cinfo.output_scanline) * raw.width * 3;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return raw;
}

void write_png(const std::filesystem::path& path, int width, int height, const std::vector<std::uint8_t>& bytes,
               bool gray) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(width);
  image.height = static_cast<png_uint_32>(height);
  image.format = gray ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;
  if (!png_image_write_to_file(&image, path.c_str(), 0, bytes.data(), 0, nullptr))
    throw Error("cannot write PNG " + path.string() + ": " + image.message);
}

void write_jpeg(const std::filesystem::path& path, int width, int height, const std::vector<std::uint8_t>& bytes) {
  FilePtr file = open_file(path, "wb");
  jpeg_compress_struct cinfo;
  JpegError err;
  cinfo.err = jpeg_std_error(&err.mgr);
  err.mgr.error_exit = jpeg_error_exit;
  if (setjmp(err.jump)) {
    jpeg_destroy_compress(&cinfo);
    throw Error("cannot encode JPEG " + path.string() + ": " + err.message);
  }
  jpeg_create_compress(&cinfo);
  jpeg_stdio_dest(&cinfo, file.get());
  cinfo.image_width = static_cast<JDIMENSION>(width);
  cinfo.image_height = static_cast<JDIMENSION>(height);
  cinfo.input_components = 3;
  cinfo.in_color_space = JCS_RGB;
  jpeg_set_defaults(&cinfo);
  jpeg_set_quality(&cinfo, 95, TRUE);
  jpeg_start_compress(&cinfo, TRUE);
  while (cinfo.next_scanline < cinfo.image_height) {
    auto* row = const_cast<JSAMPROW>(bytes.data() + static_cast<std::size_t>(cinfo.next_scanline) * width * 3);
    jpeg_write_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_compress(&cinfo);
  jpeg_destroy_compress(&cinfo);
}

bool has_jpeg_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".jpg" || ext == ".jpeg";
}

}  // namespace

std::uint8_t to_byte(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::round(v * 255.0), 0.0, 255.0));
}

bool is_image_file(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

ImageRGB load_image(const std::filesystem::path& path) {
  RawRgb8 raw;
  switch (sniff(path)) {
    case Format::Png: raw = read_png(path); break;
    case Format::Jpeg: raw = read_jpeg(path); break;
    case Format::Unknown: throw Error("unsupported image format: " + path.string());
  }
  if (raw.width < 1 || raw.height < 1) throw Error("zero-size image: " + path.string());
  ImageRGB img(raw.width, raw.height);
  for (std::size_t i = 0; i < img.pixel_count(); ++i)
    img.set(i, {raw.bytes[3 * i] / 255.0, raw.bytes[3 * i + 1] / 255.0, raw.bytes[3 * i + 2] / 255.0});
  return img;
}

ImageGray load_gray(const std::filesystem::path& path) { return to_gray(load_image(path)); }

void save_image(const ImageRGB& img, const std::filesystem::path& path) {
  if (img.empty()) throw Error("save_image: empty image");
  std::vector<std::uint8_t> bytes(img.pixel_count() * 3);
  for (std::size_t i = 0; i < img.pixel_count(); ++i) {
    const Rgb p = img.pixel(i);
    bytes[3 * i] = to_byte(p.r);
    bytes[3 * i + 1] = to_byte(p.g);
    bytes[3 * i + 2] = to_byte(p.b);
  }
  if (has_jpeg_extension(path))
    write_jpeg(path, img.width(), img.height(), bytes);
  else
    write_png(path, img.width(), img.height(), bytes, false);
}

void save_gray(const ImageGray& img, const std::filesystem::path& path) {
  std::vector<std::uint8_t> bytes(img.size());
  for (std::size_t i = 0; i < img.size(); ++i) bytes[i] = to_byte(img[i]);
  write_png(path, img.width(), img.height(), bytes, true);
}

}  // namespace uwkit
