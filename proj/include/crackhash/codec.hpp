#pragma once

#include <csetjmp>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include <jpeglib.h>
#include <png.h>

#include "crackhash/image.hpp"

namespace crackhash {

namespace detail {

struct JpegErrorMgr {
  jpeg_error_mgr pub;
  std::jmp_buf jump;
};

inline void jpeg_error_exit(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegErrorMgr*>(cinfo->err);
  std::longjmp(err->jump, 1);
}

inline void jpeg_silence(j_common_ptr, int) {}

}  // namespace detail

inline RgbImage load_png(const std::string& path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) {
    throw std::runtime_error("png read failed: " + path + ": " + image.message);
  }
  image.format = PNG_FORMAT_RGB;
  RgbImage out(static_cast<int>(image.width), static_cast<int>(image.height));
  if (!png_image_finish_read(&image, nullptr, out.data.data(), 0, nullptr)) {
    std::string msg = image.message;
    png_image_free(&image);
    throw std::runtime_error("png read failed: " + path + ": " + msg);
  }
  return out;
}

inline RgbImage load_jpeg(const std::string& path) {
  std::FILE* file = std::fopen(path.c_str(), "rb");
  if (!file) throw std::runtime_error("cannot open file: " + path);

  jpeg_decompress_struct cinfo{};
  detail::JpegErrorMgr jerr{};
  RgbImage out;
  cinfo.err = jpeg_std_error(&jerr.pub);
  jerr.pub.error_exit = detail::jpeg_error_exit;
  jerr.pub.emit_message = detail::jpeg_silence;
  if (setjmp(jerr.jump)) {
    jpeg_destroy_decompress(&cinfo);
    std::fclose(file);
    throw std::runtime_error("jpeg decode failed: " + path);
  }
  jpeg_create_decompress(&cinfo);
  jpeg_stdio_src(&cinfo, file);
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = JCS_RGB;
  jpeg_start_decompress(&cinfo);
  out = RgbImage(static_cast<int>(cinfo.output_width),
                 static_cast<int>(cinfo.output_height));
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = out.data.data() +
                   static_cast<std::size_t>(cinfo.output_scanline) * out.width * 3;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  std::fclose(file);
  return out;
}

// Decodes a PNG or JPEG file (8-bit RGB or grayscale) to RGB. The format is
// sniffed from the leading bytes, not the extension.
inline RgbImage load_image(const std::string& path) {
  unsigned char magic[8] = {0};
  {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    in.read(reinterpret_cast<char*>(magic), sizeof(magic));
  }
  if (png_sig_cmp(magic, 0, 8) == 0) return load_png(path);
  if (magic[0] == 0xFF && magic[1] == 0xD8) return load_jpeg(path);
  throw std::runtime_error("unsupported image format: " + path);
}

// Debug/fixture dumps.
inline void save_png(const std::string& path, const RgbImage& img) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(img.width);
  image.height = static_cast<png_uint_32>(img.height);
  image.format = PNG_FORMAT_RGB;
  if (!png_image_write_to_file(&image, path.c_str(), 0, img.data.data(), 0, nullptr)) {
    throw std::runtime_error("png write failed: " + path + ": " + image.message);
  }
}

inline void save_png(const std::string& path, const GrayImage& img) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(img.width);
  image.height = static_cast<png_uint_32>(img.height);
  image.format = PNG_FORMAT_GRAY;
  if (!png_image_write_to_file(&image, path.c_str(), 0, img.data.data(), 0, nullptr)) {
    throw std::runtime_error("png write failed: " + path + ": " + image.message);
  }
}

}  // namespace crackhash
