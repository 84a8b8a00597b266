#pragma once

#include <png.h>

#include <array>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <span>
#include <string>
#include <system_error>
#include <vector>

#include "skeltex/error.hpp"

namespace skeltex {

/// 8-bit RGB raster, row-major, channels interleaved.
struct TextureImage {
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<std::uint8_t> pixels;

  TextureImage() = default;
  TextureImage(std::size_t h, std::size_t w) : height(h), width(w), pixels(h * w * 3, 0) {}

  std::uint8_t& at(std::size_t row, std::size_t col, std::size_t channel) {
    return pixels[(row * width + col) * 3 + channel];
  }
  std::uint8_t at(std::size_t row, std::size_t col, std::size_t channel) const {
    return pixels[(row * width + col) * 3 + channel];
  }

  friend bool operator==(const TextureImage&, const TextureImage&) = default;
};

/// Encodes as 8-bit RGB, non-interlaced, no palette. Output bytes depend only on
/// the pixels (and the linked libpng/zlib build).
inline std::vector<std::uint8_t> encode_png(const TextureImage& img) {
  png_image desc{};
  desc.version = PNG_IMAGE_VERSION;
  desc.width = static_cast<png_uint_32>(img.width);
  desc.height = static_cast<png_uint_32>(img.height);
  desc.format = PNG_FORMAT_RGB;

  png_alloc_size_t size = 0;
  if (!png_image_write_get_memory_size(desc, size, 0, img.pixels.data(), 0, nullptr))
    throw IoError(std::string("PNG encoding failed: ") + desc.message);
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&desc, out.data(), &size, 0, img.pixels.data(), 0, nullptr))
    throw IoError(std::string("PNG encoding failed: ") + desc.message);
  out.resize(size);
  return out;
}

inline TextureImage decode_png(std::span<const std::uint8_t> bytes) {
  png_image desc{};
  desc.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&desc, bytes.data(), bytes.size()))
    throw IoError(std::string("PNG decoding failed: ") + desc.message);
  desc.format = PNG_FORMAT_RGB;
  TextureImage img(desc.height, desc.width);
  if (!png_image_finish_read(&desc, nullptr, img.pixels.data(), 0, nullptr)) {
    png_image_free(&desc);
    throw IoError(std::string("PNG decoding failed: ") + desc.message);
  }
  return img;
}

inline std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Writes to a sibling temporary file and renames it into place.
inline void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + ": " + ec.message());
}

inline void write_png(const std::filesystem::path& path, const TextureImage& img) {
  const auto bytes = encode_png(img);
  write_file_atomic(path, bytes);
}

inline TextureImage read_png(const std::filesystem::path& path) {
  const auto bytes = read_file_bytes(path);
  return decode_png(bytes);
}

}  // namespace skeltex
