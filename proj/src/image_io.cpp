// Copyright 2026 the docsr authors
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

// PNG container (chunks, filters, policy checks) implemented here; DEFLATE
// and CRC32 come from zlib. Only 8-bit gray/RGB without alpha is accepted --
// palette, alpha, 16-bit and interlaced files are rejected with a message
// telling the user to convert, never silently rescaled.

#include <zlib.h>

#include <algorithm>
#include <cctype>
#include <cstring>
#include <string>

#include "docsr/error.hpp"
#include "docsr/io.hpp"
#include "docsr/raster.hpp"

namespace docsr {
namespace {

constexpr std::uint8_t kPngSignature[8] = {137, 80, 78, 71, 13, 10, 26, 10};
constexpr int kMaxDimension = 1 << 24;

std::uint32_t be32(const std::uint8_t* p) {
    return (std::uint32_t(p[0]) << 24) | (std::uint32_t(p[1]) << 16) |
           (std::uint32_t(p[2]) << 8) | std::uint32_t(p[3]);
}

void push_be32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

std::uint8_t paeth_predictor(int a, int b, int c) {
    const int p = a + b - c;
    const int pa = std::abs(p - a);
    const int pb = std::abs(p - b);
    const int pc = std::abs(p - c);
    if (pa <= pb && pa <= pc)
        return static_cast<std::uint8_t>(a);
    if (pb <= pc)
        return static_cast<std::uint8_t>(b);
    return static_cast<std::uint8_t>(c);
}

std::vector<std::uint8_t> inflate_exact(const std::vector<std::uint8_t>& in,
                                        std::size_t expected, const std::string& name) {
    std::vector<std::uint8_t> out(expected);
    z_stream zs{};
    if (inflateInit(&zs) != Z_OK)
        fail(Errc::io_error, "zlib init failed");
    zs.next_in = const_cast<Bytef*>(in.data());
    zs.avail_in = static_cast<uInt>(in.size());
    zs.next_out = out.data();
    zs.avail_out = static_cast<uInt>(expected);
    const int rc = inflate(&zs, Z_FINISH);
    const std::size_t produced = zs.total_out;
    inflateEnd(&zs);
    if (rc != Z_STREAM_END || produced != expected)
        fail(Errc::corrupt_image, name + ": truncated or corrupt compressed image data");
    return out;
}

Raster decode_png(const std::vector<std::uint8_t>& bytes, const std::string& name) {
    std::size_t pos = 8;
    bool seen_ihdr = false, seen_iend = false;
    std::uint32_t width = 0, height = 0;
    int channels = 0;
    std::vector<std::uint8_t> idat;

    while (!seen_iend) {
        if (pos + 8 > bytes.size())
            fail(Errc::corrupt_image, name + ": truncated chunk header");
        const std::uint32_t len = be32(&bytes[pos]);
        if (pos + 12 + static_cast<std::size_t>(len) > bytes.size())
            fail(Errc::corrupt_image, name + ": truncated chunk data");
        const char* type = reinterpret_cast<const char*>(&bytes[pos + 4]);
        const std::uint8_t* data = &bytes[pos + 8];
        const std::uint32_t stored_crc = be32(&bytes[pos + 8 + len]);
        const std::uint32_t actual_crc = static_cast<std::uint32_t>(
            crc32(crc32(0, &bytes[pos + 4], 4), data, len));
        if (stored_crc != actual_crc)
            fail(Errc::corrupt_image, name + ": chunk CRC mismatch");

        const std::string chunk(type, 4);
        if (!seen_ihdr && chunk != "IHDR")
            fail(Errc::corrupt_image, name + ": first chunk is not IHDR");

        if (chunk == "IHDR") {
            if (len != 13)
                fail(Errc::corrupt_image, name + ": bad IHDR length");
            width = be32(data);
            height = be32(data + 4);
            const int bit_depth = data[8];
            const int color_type = data[9];
            const int compression = data[10];
            const int filter = data[11];
            const int interlace = data[12];
            if (width == 0 || height == 0 || width > kMaxDimension || height > kMaxDimension)
                fail(Errc::corrupt_image, name + ": implausible dimensions");
            if (bit_depth == 16)
                fail(Errc::unsupported_format,
                     name + ": 16-bit PNG rejected; convert to 8-bit first");
            if (color_type == 3)
                fail(Errc::unsupported_format,
                     name + ": palette PNG not supported; convert to 8-bit gray or RGB");
            if (color_type == 4 || color_type == 6)
                fail(Errc::unsupported_format,
                     name + ": PNG with alpha channel rejected; flatten it first");
            if (color_type != 0 && color_type != 2)
                fail(Errc::unsupported_format,
                     name + ": unsupported PNG color type " + std::to_string(color_type));
            if (bit_depth != 8)
                fail(Errc::unsupported_format, name + ": PNG bit depth " +
                                                   std::to_string(bit_depth) +
                                                   " not supported; only 8-bit");
            if (compression != 0 || filter != 0)
                fail(Errc::corrupt_image, name + ": reserved compression/filter method");
            if (interlace != 0)
                fail(Errc::unsupported_format,
                     name + ": interlaced PNG not supported; re-encode non-interlaced");
            channels = color_type == 2 ? 3 : 1;
            seen_ihdr = true;
        } else if (chunk == "IDAT") {
            idat.insert(idat.end(), data, data + len);
        } else if (chunk == "tRNS") {
            fail(Errc::unsupported_format,
                 name + ": PNG with transparency (tRNS) rejected; flatten it first");
        } else if (chunk == "IEND") {
            seen_iend = true;
        } else if (!(type[0] & 0x20)) {
            // unknown critical chunk
            fail(Errc::unsupported_format, name + ": unsupported critical chunk " + chunk);
        }
        pos += 12 + len;
    }

    if (idat.empty())
        fail(Errc::corrupt_image, name + ": no image data");

    const std::size_t row_bytes = static_cast<std::size_t>(width) * channels;
    const std::size_t raw_size = (row_bytes + 1) * height;
    std::vector<std::uint8_t> raw = inflate_exact(idat, raw_size, name);

    Raster img = Raster::make(static_cast<int>(width), static_cast<int>(height), channels);
    const int bpp = channels;
    std::uint8_t* prev = nullptr;
    for (std::uint32_t y = 0; y < height; ++y) {
        const std::uint8_t* src = &raw[y * (row_bytes + 1)];
        const int filter = src[0];
        std::uint8_t* dst = &img.samples[y * row_bytes];
        std::memcpy(dst, src + 1, row_bytes);
        switch (filter) {
        case 0:
            break;
        case 1:
            for (std::size_t i = bpp; i < row_bytes; ++i)
                dst[i] = static_cast<std::uint8_t>(dst[i] + dst[i - bpp]);
            break;
        case 2:
            if (prev)
                for (std::size_t i = 0; i < row_bytes; ++i)
                    dst[i] = static_cast<std::uint8_t>(dst[i] + prev[i]);
            break;
        case 3:
            for (std::size_t i = 0; i < row_bytes; ++i) {
                const int left = i >= static_cast<std::size_t>(bpp) ? dst[i - bpp] : 0;
                const int up = prev ? prev[i] : 0;
                dst[i] = static_cast<std::uint8_t>(dst[i] + ((left + up) >> 1));
            }
            break;
        case 4:
            for (std::size_t i = 0; i < row_bytes; ++i) {
                const int left = i >= static_cast<std::size_t>(bpp) ? dst[i - bpp] : 0;
                const int up = prev ? prev[i] : 0;
                const int upleft =
                    (prev && i >= static_cast<std::size_t>(bpp)) ? prev[i - bpp] : 0;
                dst[i] = static_cast<std::uint8_t>(dst[i] + paeth_predictor(left, up, upleft));
            }
            break;
        default:
            fail(Errc::corrupt_image, name + ": invalid scanline filter " +
                                          std::to_string(filter));
        }
        prev = dst;
    }
    return img;
}

void push_chunk(std::vector<std::uint8_t>& out, const char* type,
                const std::vector<std::uint8_t>& data) {
    push_be32(out, static_cast<std::uint32_t>(data.size()));
    const std::size_t type_pos = out.size();
    out.insert(out.end(), type, type + 4);
    out.insert(out.end(), data.begin(), data.end());
    const std::uint32_t crc = static_cast<std::uint32_t>(
        crc32(0, &out[type_pos], static_cast<uInt>(4 + data.size())));
    push_be32(out, crc);
}

std::vector<std::uint8_t> encode_png(const Raster& img) {
    const std::size_t row_bytes = static_cast<std::size_t>(img.width) * img.channels;
    std::vector<std::uint8_t> raw((row_bytes + 1) * img.height);
    for (int y = 0; y < img.height; ++y) {
        raw[y * (row_bytes + 1)] = 0; // filter: none
        std::memcpy(&raw[y * (row_bytes + 1) + 1], &img.samples[y * row_bytes], row_bytes);
    }

    uLongf comp_size = compressBound(static_cast<uLong>(raw.size()));
    std::vector<std::uint8_t> comp(comp_size);
    if (compress2(comp.data(), &comp_size, raw.data(), static_cast<uLong>(raw.size()),
                  Z_DEFAULT_COMPRESSION) != Z_OK)
        fail(Errc::io_error, "zlib compression failed");
    comp.resize(comp_size);

    std::vector<std::uint8_t> out(kPngSignature, kPngSignature + 8);
    std::vector<std::uint8_t> ihdr;
    push_be32(ihdr, static_cast<std::uint32_t>(img.width));
    push_be32(ihdr, static_cast<std::uint32_t>(img.height));
    ihdr.push_back(8);                                 // bit depth
    ihdr.push_back(img.channels == 3 ? 2 : 0);         // color type
    ihdr.push_back(0);                                 // compression
    ihdr.push_back(0);                                 // filter
    ihdr.push_back(0);                                 // no interlace
    push_chunk(out, "IHDR", ihdr);
    push_chunk(out, "IDAT", comp);
    push_chunk(out, "IEND", {});
    return out;
}

struct PnmParser {
    const std::uint8_t* p;
    const std::uint8_t* end;
    const std::string& name;

    void skip_space_and_comments() {
        while (p < end) {
            if (*p == '#') {
                while (p < end && *p != '\n')
                    ++p;
            } else if (std::isspace(*p)) {
                ++p;
            } else {
                break;
            }
        }
    }

    long next_int() {
        skip_space_and_comments();
        if (p >= end || !std::isdigit(*p))
            fail(Errc::corrupt_image, name + ": malformed PNM header");
        long v = 0;
        while (p < end && std::isdigit(*p)) {
            v = v * 10 + (*p - '0');
            if (v > 1L << 40)
                fail(Errc::corrupt_image, name + ": absurd value in PNM header");
            ++p;
        }
        return v;
    }
};

Raster decode_pnm(const std::vector<std::uint8_t>& bytes, const std::string& name) {
    const int channels = bytes[1] == '5' ? 1 : 3;
    PnmParser parser{bytes.data() + 2, bytes.data() + bytes.size(), name};
    const long w = parser.next_int();
    const long h = parser.next_int();
    const long maxval = parser.next_int();
    if (w <= 0 || h <= 0 || w > kMaxDimension || h > kMaxDimension)
        fail(Errc::corrupt_image, name + ": implausible PNM dimensions");
    if (maxval > 255)
        fail(Errc::unsupported_format,
             name + ": 16-bit PNM rejected (maxval " + std::to_string(maxval) +
                 "); convert to maxval 255 first");
    if (maxval < 1)
        fail(Errc::corrupt_image, name + ": invalid PNM maxval");
    // exactly one whitespace byte separates the header from the raster data
    if (parser.p >= parser.end || !std::isspace(*parser.p))
        fail(Errc::corrupt_image, name + ": missing whitespace after PNM maxval");
    ++parser.p;

    const std::size_t need = static_cast<std::size_t>(w) * h * channels;
    const std::size_t have = static_cast<std::size_t>(parser.end - parser.p);
    if (have < need)
        fail(Errc::corrupt_image, name + ": truncated PNM data (need " +
                                      std::to_string(need) + " bytes, have " +
                                      std::to_string(have) + ")");
    Raster img = Raster::make(static_cast<int>(w), static_cast<int>(h), channels);
    std::memcpy(img.samples.data(), parser.p, need);
    return img;
}

std::vector<std::uint8_t> encode_pnm(const Raster& img) {
    std::string header = std::string(img.channels == 1 ? "P5" : "P6") + "\n" +
                         std::to_string(img.width) + " " + std::to_string(img.height) +
                         "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.insert(out.end(), img.samples.begin(), img.samples.end());
    return out;
}

std::string lower_extension(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return ext;
}

} // namespace

Raster load_image(const std::filesystem::path& path) {
    const std::vector<std::uint8_t> bytes = read_file_bytes(path);
    const std::string name = path.string();

    if (bytes.size() >= 8 && std::memcmp(bytes.data(), kPngSignature, 8) == 0)
        return decode_png(bytes, name);
    if (bytes.size() >= 3 && bytes[0] == 'P' && (bytes[1] == '5' || bytes[1] == '6'))
        return decode_pnm(bytes, name);
    if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] >= '1' && bytes[1] <= '7')
        fail(Errc::unsupported_format,
             name + ": only binary PGM (P5) and PPM (P6) are supported");
    if (bytes.size() >= 4 && (std::memcmp(bytes.data(), "II*\0", 4) == 0 ||
                              std::memcmp(bytes.data(), "MM\0*", 4) == 0))
        fail(Errc::unsupported_format,
             name + ": TIFF input is not supported; convert to PNG, PGM or PPM first");
    if (bytes.size() >= 2 && bytes[0] == 'B' && bytes[1] == 'M')
        fail(Errc::unsupported_format,
             name + ": BMP input is not supported; convert to PNG, PGM or PPM first");
    fail(Errc::unsupported_format,
         name + ": unrecognized image format (supported: PNG, PGM, PPM; TIFF/BMP sources "
                "must be converted first)");
}

void save_image(const Raster& img, const std::filesystem::path& path) {
    if (img.width <= 0 || img.height <= 0 || (img.channels != 1 && img.channels != 3) ||
        img.samples.size() != static_cast<std::size_t>(img.width) * img.height * img.channels)
        fail(Errc::corrupt_image, "refusing to save malformed raster");

    const std::string ext = lower_extension(path);
    std::vector<std::uint8_t> bytes;
    if (ext == ".png") {
        bytes = encode_png(img);
    } else if (ext == ".pgm") {
        if (img.channels != 1)
            fail(Errc::unsupported_format,
                 path.string() + ": PGM is single-channel; use .ppm or .png for RGB");
        bytes = encode_pnm(img);
    } else if (ext == ".ppm") {
        if (img.channels != 3)
            fail(Errc::unsupported_format,
                 path.string() + ": PPM is three-channel; use .pgm or .png for grayscale");
        bytes = encode_pnm(img);
    } else {
        fail(Errc::unsupported_format,
             path.string() + ": unsupported output extension (use .png, .pgm or .ppm)");
    }
    write_file_atomic(path, bytes.data(), bytes.size());
}

} // namespace docsr
