/*
Copyright 2026 The fusesgm Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "fusesgm/png_io.hpp"

#include <png.h>

#include <cstdio>
#include <cstring>
#include <vector>

namespace fusesgm {

namespace {

struct FileHandle {
    std::FILE* fp = nullptr;
    explicit FileHandle(const std::string& path, const char* mode) : fp(std::fopen(path.c_str(), mode)) {}
    ~FileHandle()
    {
        if (fp) std::fclose(fp);
    }
    FileHandle(const FileHandle&) = delete;
    FileHandle& operator=(const FileHandle&) = delete;
};

// Integer BT.601 luma with half-up rounding.
inline std::uint8_t luma601(std::uint8_t r, std::uint8_t g, std::uint8_t b)
{
    return static_cast<std::uint8_t>((299 * r + 587 * g + 114 * b + 500) / 1000);
}

struct Decoded8 {
    int width = 0;
    int height = 0;
    int channels = 0;  // 1 or 3 after transforms
    std::vector<std::uint8_t> pixels;
};

Decoded8 decode_to_8bit(const std::string& path)
{
    FileHandle file(path, "rb");
    if (!file.fp)
        throw IoError("cannot open PNG: " + path);

    std::uint8_t sig[8];
    if (std::fread(sig, 1, 8, file.fp) != 8 || png_sig_cmp(sig, 0, 8) != 0)
        throw IoError("not a PNG file: " + path);

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("libpng allocation failed");
    }

    Decoded8 out;
    std::vector<png_bytep> rows;

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("failed to decode PNG: " + path);
    }

    png_init_io(png, file.fp);
    png_set_sig_bytes(png, 8);
    png_read_info(png, info);

    const int color_type = png_get_color_type(png, info);
    if (color_type == PNG_COLOR_TYPE_PALETTE)
        png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && png_get_bit_depth(png, info) < 8)
        png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS))
        png_set_tRNS_to_alpha(png);
    if (png_get_bit_depth(png, info) == 16)
        png_set_strip_16(png);  // keeps the high byte
    if (color_type & PNG_COLOR_MASK_ALPHA)
        png_set_strip_alpha(png);
    png_read_update_info(png, info);

    out.width = static_cast<int>(png_get_image_width(png, info));
    out.height = static_cast<int>(png_get_image_height(png, info));
    out.channels = png_get_channels(png, info);
    if (out.width < 1 || out.height < 1) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("PNG has zero dimension: " + path);
    }
    if (out.channels != 1 && out.channels != 3) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("unsupported PNG channel layout: " + path);
    }

    out.pixels.resize(static_cast<std::size_t>(out.width) * out.height * out.channels);
    rows.resize(out.height);
    for (int y = 0; y < out.height; ++y)
        rows[y] = out.pixels.data() + static_cast<std::size_t>(y) * out.width * out.channels;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return out;
}

std::vector<std::uint16_t> decode_16bit_gray(const std::string& path, int& width, int& height)
{
    FileHandle file(path, "rb");
    if (!file.fp)
        throw IoError("cannot open PNG: " + path);

    std::uint8_t sig[8];
    if (std::fread(sig, 1, 8, file.fp) != 8 || png_sig_cmp(sig, 0, 8) != 0)
        throw IoError("not a PNG file: " + path);

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("libpng allocation failed");
    }

    std::vector<std::uint8_t> raw;
    std::vector<png_bytep> rows;

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("failed to decode PNG: " + path);
    }

    png_init_io(png, file.fp);
    png_set_sig_bytes(png, 8);
    png_read_info(png, info);

    if (png_get_bit_depth(png, info) != 16 || png_get_color_type(png, info) != PNG_COLOR_TYPE_GRAY) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("disparity PNG must be 16-bit single-channel: " + path);
    }

    width = static_cast<int>(png_get_image_width(png, info));
    height = static_cast<int>(png_get_image_height(png, info));

    raw.resize(static_cast<std::size_t>(width) * height * 2);
    rows.resize(height);
    for (int y = 0; y < height; ++y)
        rows[y] = raw.data() + static_cast<std::size_t>(y) * width * 2;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    std::vector<std::uint16_t> values(static_cast<std::size_t>(width) * height);
    for (std::size_t i = 0; i < values.size(); ++i)
        values[i] = static_cast<std::uint16_t>((raw[2 * i] << 8) | raw[2 * i + 1]);  // PNG is big-endian
    return values;
}

void encode_16bit_gray(const std::vector<std::uint16_t>& values, int width, int height,
                       const std::string& path)
{
    FileHandle file(path, "wb");
    if (!file.fp)
        throw IoError("cannot open for writing: " + path);

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        throw IoError("libpng allocation failed");
    }

    std::vector<std::uint8_t> raw(static_cast<std::size_t>(width) * height * 2);
    for (std::size_t i = 0; i < values.size(); ++i) {
        raw[2 * i] = static_cast<std::uint8_t>(values[i] >> 8);
        raw[2 * i + 1] = static_cast<std::uint8_t>(values[i] & 0xff);
    }
    std::vector<png_bytep> rows(height);
    for (int y = 0; y < height; ++y)
        rows[y] = raw.data() + static_cast<std::size_t>(y) * width * 2;

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError("failed to encode PNG: " + path);
    }

    png_init_io(png, file.fp);
    png_set_IHDR(png, info, width, height, 16, PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

}  // namespace

GrayImage read_gray_png(const std::string& path)
{
    Decoded8 dec = decode_to_8bit(path);
    GrayImage img(dec.width, dec.height);
    if (dec.channels == 1) {
        std::memcpy(img.data().data(), dec.pixels.data(), dec.pixels.size());
    } else {
        const std::uint8_t* src = dec.pixels.data();
        for (std::size_t i = 0; i < img.data().size(); ++i, src += 3)
            img.data()[i] = luma601(src[0], src[1], src[2]);
    }
    return img;
}

void write_gray_png(const GrayImage& img, const std::string& path)
{
    FileHandle file(path, "wb");
    if (!file.fp)
        throw IoError("cannot open for writing: " + path);

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        throw IoError("libpng allocation failed");
    }

    std::vector<png_bytep> rows(img.height());
    for (int y = 0; y < img.height(); ++y)
        rows[y] = const_cast<std::uint8_t*>(img.row(y));

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError("failed to encode PNG: " + path);
    }

    png_init_io(png, file.fp);
    png_set_IHDR(png, info, img.width(), img.height(), 8, PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

SparseDisparityMap read_sparse_disparity_png(const std::string& path, std::optional<int> dmax,
                                             RangePolicy policy)
{
    int w = 0, h = 0;
    const auto stored = decode_16bit_gray(path, w, h);
    SparseDisparityMap map(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::uint16_t v = stored[static_cast<std::size_t>(y) * w + x];
            if (v == 0)
                continue;  // no measurement
            int d = v / DenseValue::kScale;
            if (dmax && d >= *dmax) {
                if (policy == RangePolicy::kMarkInvalid)
                    continue;
                d = *dmax - 1;
            }
            map.set(x, y, SparseValue::of(d));
        }
    }
    return map;
}

DenseDisparityMap read_dense_disparity_png(const std::string& path)
{
    int w = 0, h = 0;
    const auto stored = decode_16bit_gray(path, w, h);
    DenseDisparityMap map(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::uint16_t v = stored[static_cast<std::size_t>(y) * w + x];
            if (v != 0)
                map.set(x, y, DenseValue::from_fixed(v));
        }
    }
    return map;
}

void write_disparity_png(const DenseDisparityMap& map, const std::string& path)
{
    std::vector<std::uint16_t> stored(static_cast<std::size_t>(map.width()) * map.height(), 0);
    for (int y = 0; y < map.height(); ++y) {
        for (int x = 0; x < map.width(); ++x) {
            const DenseValue v = map.at(x, y);
            if (!v.valid())
                continue;
            if (v.fixed() > 0xffff)
                throw IoError("disparity " + std::to_string(v.pixels()) + " not encodable (>= 256 px)");
            stored[static_cast<std::size_t>(y) * map.width() + x] = static_cast<std::uint16_t>(v.fixed());
        }
    }
    encode_16bit_gray(stored, map.width(), map.height(), path);
}

void write_disparity_png(const SparseDisparityMap& map, const std::string& path)
{
    std::vector<std::uint16_t> stored(static_cast<std::size_t>(map.width()) * map.height(), 0);
    for (int y = 0; y < map.height(); ++y) {
        for (int x = 0; x < map.width(); ++x) {
            const SparseValue v = map.at(x, y);
            if (!v.valid())
                continue;
            if (v.get() >= 256)
                throw IoError("disparity " + std::to_string(v.get()) + " not encodable (>= 256 px)");
            stored[static_cast<std::size_t>(y) * map.width() + x] =
                static_cast<std::uint16_t>(v.get() * DenseValue::kScale);
        }
    }
    encode_16bit_gray(stored, map.width(), map.height(), path);
}

}  // namespace fusesgm
