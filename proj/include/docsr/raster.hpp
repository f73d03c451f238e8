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

#ifndef DOCSR_RASTER_HPP
#define DOCSR_RASTER_HPP

#include <cstdint>
#include <filesystem>
#include <vector>

namespace docsr {

/// 8-bit image, row-major, channel-interleaved. channels is 1 (gray) or 3 (RGB).
struct Raster {
    int width = 0;
    int height = 0;
    int channels = 1;
    std::vector<std::uint8_t> samples;

    static Raster make(int width, int height, int channels, std::uint8_t fill = 0);

    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }

    std::uint8_t& at(int x, int y, int c = 0) {
        return samples[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }
    std::uint8_t at(int x, int y, int c = 0) const {
        return samples[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }

    bool same_size(const Raster& other) const {
        return width == other.width && height == other.height;
    }

    bool operator==(const Raster&) const = default;
};

/// Per-pixel text/background decision, row-major. 1 = text (foreground).
/// Convention throughout: text renders black (0), background white (255).
struct BinaryMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> foreground;

    static BinaryMask make(int width, int height, bool fill = false);

    bool at(int x, int y) const {
        return foreground[static_cast<std::size_t>(y) * width + x] != 0;
    }
    void set(int x, int y, bool fg) {
        foreground[static_cast<std::size_t>(y) * width + x] = fg ? 1 : 0;
    }

    std::uint64_t foreground_count() const;

    bool operator==(const BinaryMask&) const = default;
};

/// BT.601 luma, round half up. 1-channel inputs come back unchanged.
Raster to_grayscale(const Raster& img);

/// foreground[i] = samples[i] < threshold (strict). 1-channel only.
BinaryMask mask_from_raster(const Raster& img, int threshold = 128);

/// foreground -> 0 (black), background -> 255 (white).
Raster raster_from_mask(const BinaryMask& mask);

// File I/O. Supported: PNG (8-bit gray/RGB, no alpha), binary PGM (P5) and
// PPM (P6) with maxval 255. Format detected by magic bytes on load, by
// extension on save. Writes are atomic (temp file + rename).
Raster load_image(const std::filesystem::path& path);
void save_image(const Raster& img, const std::filesystem::path& path);

} // namespace docsr

#endif // DOCSR_RASTER_HPP
