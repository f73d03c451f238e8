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

#include "docsr/raster.hpp"

#include <cmath>
#include <cstdint>

#include "docsr/error.hpp"

namespace docsr {

const char* errc_name(Errc code) {
    switch (code) {
    case Errc::file_not_found: return "FileNotFound";
    case Errc::unsupported_format: return "UnsupportedFormat";
    case Errc::corrupt_image: return "CorruptImage";
    case Errc::io_error: return "IoError";
    case Errc::channels_mismatch: return "ChannelsMismatch";
    case Errc::size_mismatch: return "SizeMismatch";
    case Errc::image_too_small: return "ImageTooSmall";
    case Errc::invalid_kernel: return "InvalidKernel";
    case Errc::even_window: return "EvenWindow";
    case Errc::empty_histogram: return "EmptyHistogram";
    case Errc::external_output_missing: return "ExternalOutputMissing";
    case Errc::external_size_mismatch: return "ExternalSizeMismatch";
    case Errc::empty_dataset: return "EmptyDataset";
    case Errc::config_invalid: return "ConfigInvalid";
    case Errc::all_entries_failed: return "AllEntriesFailed";
    case Errc::empty_input: return "EmptyInput";
    }
    return "UnknownError";
}

Raster Raster::make(int width, int height, int channels, std::uint8_t fill) {
    if (width <= 0 || height <= 0)
        fail(Errc::image_too_small, "raster dimensions must be positive, got " +
                                        std::to_string(width) + "x" + std::to_string(height));
    if (channels != 1 && channels != 3)
        fail(Errc::channels_mismatch,
             "channels must be 1 or 3, got " + std::to_string(channels));
    Raster r;
    r.width = width;
    r.height = height;
    r.channels = channels;
    r.samples.assign(static_cast<std::size_t>(width) * height * channels, fill);
    return r;
}

BinaryMask BinaryMask::make(int width, int height, bool fill) {
    if (width <= 0 || height <= 0)
        fail(Errc::image_too_small, "mask dimensions must be positive, got " +
                                        std::to_string(width) + "x" + std::to_string(height));
    BinaryMask m;
    m.width = width;
    m.height = height;
    m.foreground.assign(static_cast<std::size_t>(width) * height, fill ? 1 : 0);
    return m;
}

std::uint64_t BinaryMask::foreground_count() const {
    std::uint64_t n = 0;
    for (std::uint8_t f : foreground)
        n += f;
    return n;
}

Raster to_grayscale(const Raster& img) {
    if (img.channels == 1)
        return img;
    if (img.channels != 3)
        fail(Errc::channels_mismatch,
             "expected 1 or 3 channels, got " + std::to_string(img.channels));
    Raster out = Raster::make(img.width, img.height, 1);
    const std::size_t n = img.pixel_count();
    for (std::size_t i = 0; i < n; ++i) {
        const double r = img.samples[i * 3 + 0];
        const double g = img.samples[i * 3 + 1];
        const double b = img.samples[i * 3 + 2];
        const double luma = 0.299 * r + 0.587 * g + 0.114 * b;
        int v = static_cast<int>(std::floor(luma + 0.5));
        if (v > 255)
            v = 255;
        out.samples[i] = static_cast<std::uint8_t>(v);
    }
    return out;
}

BinaryMask mask_from_raster(const Raster& img, int threshold) {
    if (img.channels != 1)
        fail(Errc::channels_mismatch, "mask_from_raster needs a 1-channel raster, got " +
                                          std::to_string(img.channels) + " channels");
    BinaryMask m = BinaryMask::make(img.width, img.height);
    const std::size_t n = img.pixel_count();
    for (std::size_t i = 0; i < n; ++i)
        m.foreground[i] = img.samples[i] < threshold ? 1 : 0;
    return m;
}

Raster raster_from_mask(const BinaryMask& mask) {
    Raster r = Raster::make(mask.width, mask.height, 1);
    const std::size_t n = mask.foreground.size();
    for (std::size_t i = 0; i < n; ++i)
        r.samples[i] = mask.foreground[i] ? 0 : 255;
    return r;
}

} // namespace docsr
