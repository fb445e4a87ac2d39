// Copyright 2026 The planvec Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "planvec/image.h"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <memory>
#include <string>

#include "planvec/error.h"

namespace planvec {

RasterImage::RasterImage(int h, int w, int c, float fill)
    : height(h), width(w), channels(c) {
  if (h <= 0 || w <= 0) fail(ErrorKind::kInvalidArgument, "image dims must be positive");
  if (c != 1 && c != 3) fail(ErrorKind::kInvalidArgument, "image needs 1 or 3 channels");
  samples.assign(static_cast<std::size_t>(h) * w * c, fill);
}

void clamp_unit(RasterImage& image) {
  for (float& v : image.samples) v = std::clamp(v, 0.0f, 1.0f);
}

Tensor to_planar(const RasterImage& image) {
  const std::size_t c = image.channels, h = image.height, w = image.width;
  Tensor t({c, h, w});
  for (std::size_t y = 0; y < h; ++y)
    for (std::size_t x = 0; x < w; ++x)
      for (std::size_t k = 0; k < c; ++k)
        t.at(k, y, x) = image.samples[(y * w + x) * c + k];
  return t;
}

RasterImage from_planar(const Tensor& planar) {
  if (planar.ndim() != 3) fail(ErrorKind::kShapeMismatch, "expected [C,H,W]");
  RasterImage image(static_cast<int>(planar.dim(1)), static_cast<int>(planar.dim(2)),
                    static_cast<int>(planar.dim(0)));
  const std::size_t c = planar.dim(0), h = planar.dim(1), w = planar.dim(2);
  for (std::size_t y = 0; y < h; ++y)
    for (std::size_t x = 0; x < w; ++x)
      for (std::size_t k = 0; k < c; ++k)
        image.samples[(y * w + x) * c + k] = planar.at(k, y, x);
  return image;
}

RasterImage rgb_to_ycbcr(const RasterImage& rgb) {
  if (rgb.channels != 3) fail(ErrorKind::kInvalidArgument, "rgb_to_ycbcr needs 3 channels");
  RasterImage out = rgb;
  for (std::size_t i = 0; i < rgb.samples.size(); i += 3) {
    const float r = rgb.samples[i], g = rgb.samples[i + 1], b = rgb.samples[i + 2];
    out.samples[i] = 0.299f * r + 0.587f * g + 0.114f * b;
    out.samples[i + 1] = 0.5f - 0.168736f * r - 0.331264f * g + 0.5f * b;
    out.samples[i + 2] = 0.5f + 0.5f * r - 0.418688f * g - 0.081312f * b;
  }
  return out;
}

RasterImage ycbcr_to_rgb(const RasterImage& ycbcr) {
  if (ycbcr.channels != 3) fail(ErrorKind::kInvalidArgument, "ycbcr_to_rgb needs 3 channels");
  RasterImage out = ycbcr;
  for (std::size_t i = 0; i < ycbcr.samples.size(); i += 3) {
    const float y = ycbcr.samples[i];
    const float cb = ycbcr.samples[i + 1] - 0.5f;
    const float cr = ycbcr.samples[i + 2] - 0.5f;
    out.samples[i] = y + 1.402f * cr;
    out.samples[i + 1] = y - 0.344136f * cb - 0.714136f * cr;
    out.samples[i + 2] = y + 1.772f * cb;
  }
  return out;
}

RasterImage to_luma(const RasterImage& image) {
  if (image.channels == 1) return image;
  RasterImage out(image.height, image.width, 1);
  for (std::size_t i = 0, j = 0; j < out.samples.size(); i += 3, ++j) {
    out.samples[j] = 0.299f * image.samples[i] + 0.587f * image.samples[i + 1] +
                     0.114f * image.samples[i + 2];
  }
  return out;
}

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

}  // namespace

RasterImage read_png(const std::filesystem::path& path) {
  FilePtr file(std::fopen(path.c_str(), "rb"));
  if (!file) fail(ErrorKind::kIo, "cannot open " + path.string());

  png_byte sig[8];
  if (std::fread(sig, 1, 8, file.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0) {
    fail(ErrorKind::kParse, path.string() + " is not a PNG file");
  }

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (png == nullptr) fail(ErrorKind::kIo, "png_create_read_struct failed");
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    fail(ErrorKind::kIo, "png_create_info_struct failed");
  }

  RasterImage image;
  std::vector<png_bytep> rows;
  std::vector<png_byte> buffer;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    fail(ErrorKind::kParse, "corrupt PNG " + path.string());
  }

  png_init_io(png, file.get());
  png_set_sig_bytes(png, 8);
  png_read_info(png, info);

  const png_uint_32 width = png_get_image_width(png, info);
  const png_uint_32 height = png_get_image_height(png, info);
  const int color = png_get_color_type(png, info);
  if (png_get_bit_depth(png, info) == 16) png_set_strip_16(png);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY && png_get_bit_depth(png, info) < 8) {
    png_set_expand_gray_1_2_4_to_8(png);
  }
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  png_set_strip_alpha(png);
  png_read_update_info(png, info);

  const int out_channels = png_get_channels(png, info);
  const std::size_t stride = png_get_rowbytes(png, info);
  buffer.resize(stride * height);
  rows.resize(height);
  for (png_uint_32 y = 0; y < height; ++y) rows[y] = buffer.data() + y * stride;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  if (out_channels != 1 && out_channels != 3) {
    fail(ErrorKind::kParse, "unsupported PNG channel layout in " + path.string());
  }
  image = RasterImage(static_cast<int>(height), static_cast<int>(width), out_channels);
  for (png_uint_32 y = 0; y < height; ++y) {
    for (std::size_t i = 0; i < static_cast<std::size_t>(width) * out_channels; ++i) {
      image.samples[y * width * out_channels + i] = rows[y][i] / 255.0f;
    }
  }
  return image;
}

void write_png(const RasterImage& image, const std::filesystem::path& path) {
  if (image.empty()) fail(ErrorKind::kInvalidArgument, "cannot write an empty image");
  FilePtr file(std::fopen(path.c_str(), "wb"));
  if (!file) fail(ErrorKind::kIo, "cannot open " + path.string() + " for writing");

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (png == nullptr) fail(ErrorKind::kIo, "png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_write_struct(&png, nullptr);
    fail(ErrorKind::kIo, "png_create_info_struct failed");
  }

  const std::size_t stride = static_cast<std::size_t>(image.width) * image.channels;
  std::vector<png_byte> buffer(stride * image.height);
  for (std::size_t i = 0; i < buffer.size(); ++i) {
    const float v = std::clamp(image.samples[i], 0.0f, 1.0f);
    buffer[i] = static_cast<png_byte>(std::lround(v * 255.0f));
  }
  std::vector<png_bytep> rows(image.height);
  for (int y = 0; y < image.height; ++y) rows[y] = buffer.data() + y * stride;

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    fail(ErrorKind::kWriteFailure, "libpng failed writing " + path.string());
  }
  png_init_io(png, file.get());
  png_set_IHDR(png, info, image.width, image.height, 8,
               image.channels == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

}  // namespace planvec
