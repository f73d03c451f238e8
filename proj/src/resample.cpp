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

#include "docsr/resample.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "docsr/error.hpp"

namespace docsr {

const char* kernel_name(KernelKind kind) {
    switch (kind) {
    case KernelKind::nearest: return "nearest";
    case KernelKind::bilinear: return "bilinear";
    case KernelKind::bicubic: return "bicubic";
    case KernelKind::lanczos3: return "lanczos3";
    case KernelKind::box: return "box";
    }
    return "?";
}

std::optional<KernelKind> kernel_from_name(std::string_view name) {
    if (name == "nearest") return KernelKind::nearest;
    if (name == "bilinear") return KernelKind::bilinear;
    if (name == "bicubic") return KernelKind::bicubic;
    if (name == "lanczos3") return KernelKind::lanczos3;
    if (name == "box") return KernelKind::box;
    return std::nullopt;
}

double kernel_support(KernelKind kind) {
    switch (kind) {
    case KernelKind::nearest: return 0.5;
    case KernelKind::bilinear: return 1.0;
    case KernelKind::bicubic: return 2.0;
    case KernelKind::lanczos3: return 3.0;
    case KernelKind::box: return 0.5;
    }
    return 0.0;
}

double kernel_weight(KernelKind kind, double x) {
    x = std::abs(x);
    switch (kind) {
    case KernelKind::nearest:
    case KernelKind::box:
        return x <= 0.5 ? 1.0 : 0.0;
    case KernelKind::bilinear:
        return x < 1.0 ? 1.0 - x : 0.0;
    case KernelKind::bicubic: {
        // Keys cubic, a = -0.5
        constexpr double a = -0.5;
        if (x <= 1.0)
            return ((a + 2.0) * x - (a + 3.0)) * x * x + 1.0;
        if (x < 2.0)
            return ((a * x - 5.0 * a) * x + 8.0 * a) * x - 4.0 * a;
        return 0.0;
    }
    case KernelKind::lanczos3: {
        if (x >= 3.0)
            return 0.0;
        if (x < 1e-12)
            return 1.0;
        const double px = std::numbers::pi * x;
        return 3.0 * std::sin(px) * std::sin(px / 3.0) / (px * px);
    }
    }
    return 0.0;
}

namespace {

int clamp_index(int i, int n) { return i < 0 ? 0 : (i >= n ? n - 1 : i); }

// Per-axis tap table: `count` taps per output coordinate starting at
// first[o], weights normalized to sum 1. Out-of-range taps are stored
// unclamped; the fetch clamps.
struct AxisTaps {
    int count = 0;
    std::vector<int> first;
    std::vector<double> weights; // count entries per output coordinate
};

AxisTaps build_taps(int in_size, int out_size, KernelKind kernel) {
    AxisTaps taps;
    taps.first.resize(out_size);

    if (kernel == KernelKind::box) {
        const double ratio = static_cast<double>(in_size) / out_size;
        taps.count = static_cast<int>(std::ceil(ratio)) + 1;
        taps.weights.assign(static_cast<std::size_t>(out_size) * taps.count, 0.0);
        for (int o = 0; o < out_size; ++o) {
            const double lo = o * ratio;
            const double hi = std::min((o + 1) * ratio, static_cast<double>(in_size));
            const int first = static_cast<int>(std::floor(lo));
            taps.first[o] = first;
            double sum = 0.0;
            for (int k = 0; k < taps.count; ++k) {
                const double cell_lo = first + k;
                const double w = std::max(0.0, std::min(hi, cell_lo + 1.0) -
                                                   std::max(lo, cell_lo));
                taps.weights[static_cast<std::size_t>(o) * taps.count + k] = w;
                sum += w;
            }
            for (int k = 0; k < taps.count; ++k)
                taps.weights[static_cast<std::size_t>(o) * taps.count + k] /= sum;
        }
        return taps;
    }

    if (kernel == KernelKind::nearest) {
        taps.count = 1;
        taps.weights.assign(out_size, 1.0);
        const double ratio = static_cast<double>(in_size) / out_size;
        for (int o = 0; o < out_size; ++o) {
            const double src = (o + 0.5) * ratio - 0.5;
            taps.first[o] = clamp_index(static_cast<int>(std::floor(src + 0.5)), in_size);
        }
        return taps;
    }

    const int radius = static_cast<int>(kernel_support(kernel));
    taps.count = 2 * radius;
    taps.weights.assign(static_cast<std::size_t>(out_size) * taps.count, 0.0);
    const double ratio = static_cast<double>(in_size) / out_size;
    for (int o = 0; o < out_size; ++o) {
        const double src = (o + 0.5) * ratio - 0.5;
        const int first = static_cast<int>(std::floor(src)) - radius + 1;
        taps.first[o] = first;
        double sum = 0.0;
        for (int k = 0; k < taps.count; ++k) {
            const double w = kernel_weight(kernel, src - (first + k));
            taps.weights[static_cast<std::size_t>(o) * taps.count + k] = w;
            sum += w;
        }
        for (int k = 0; k < taps.count; ++k)
            taps.weights[static_cast<std::size_t>(o) * taps.count + k] /= sum;
    }
    return taps;
}

std::uint8_t round_clamp(double v) {
    const double r = std::floor(v + 0.5);
    if (r <= 0.0)
        return 0;
    if (r >= 255.0)
        return 255;
    return static_cast<std::uint8_t>(r);
}

} // namespace

Raster downscale_half(const Raster& img) {
    const int out_w = img.width / 2;
    const int out_h = img.height / 2;
    if (out_w < 1 || out_h < 1)
        fail(Errc::image_too_small, "cannot halve a " + std::to_string(img.width) + "x" +
                                        std::to_string(img.height) + " image");
    Raster out = Raster::make(out_w, out_h, img.channels);
    for (int y = 0; y < out_h; ++y) {
        for (int x = 0; x < out_w; ++x) {
            for (int c = 0; c < img.channels; ++c) {
                const unsigned sum = img.at(2 * x, 2 * y, c) + img.at(2 * x + 1, 2 * y, c) +
                                     img.at(2 * x, 2 * y + 1, c) +
                                     img.at(2 * x + 1, 2 * y + 1, c);
                out.at(x, y, c) = static_cast<std::uint8_t>((sum + 2) >> 2);
            }
        }
    }
    return out;
}

Raster resample(const Raster& img, int out_w, int out_h, KernelKind kernel) {
    if (out_w <= 0 || out_h <= 0)
        fail(Errc::image_too_small, "output dimensions must be positive");
    if (static_cast<long long>(out_w) > (1 << 24) || static_cast<long long>(out_h) > (1 << 24))
        fail(Errc::config_invalid, "output dimensions too large");
    if (kernel == KernelKind::box && (out_w > img.width || out_h > img.height))
        fail(Errc::invalid_kernel, "box kernel only shrinks; cannot go " +
                                       std::to_string(img.width) + "x" +
                                       std::to_string(img.height) + " -> " +
                                       std::to_string(out_w) + "x" + std::to_string(out_h));

    const int ch = img.channels;
    const AxisTaps tx = build_taps(img.width, out_w, kernel);
    const AxisTaps ty = build_taps(img.height, out_h, kernel);

    // horizontal pass into a double buffer, then vertical; one rounding at
    // the very end
    std::vector<double> mid(static_cast<std::size_t>(out_w) * img.height * ch);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < out_w; ++x) {
            const int first = tx.first[x];
            const double* w = &tx.weights[static_cast<std::size_t>(x) * tx.count];
            for (int c = 0; c < ch; ++c) {
                double acc = 0.0;
                for (int k = 0; k < tx.count; ++k)
                    acc += w[k] * img.at(clamp_index(first + k, img.width), y, c);
                mid[(static_cast<std::size_t>(y) * out_w + x) * ch + c] = acc;
            }
        }
    }

    Raster out = Raster::make(out_w, out_h, ch);
    for (int y = 0; y < out_h; ++y) {
        const int first = ty.first[y];
        const double* w = &ty.weights[static_cast<std::size_t>(y) * ty.count];
        for (int x = 0; x < out_w; ++x) {
            for (int c = 0; c < ch; ++c) {
                double acc = 0.0;
                for (int k = 0; k < ty.count; ++k) {
                    const int yy = clamp_index(first + k, img.height);
                    acc += w[k] * mid[(static_cast<std::size_t>(yy) * out_w + x) * ch + c];
                }
                out.at(x, y, c) = round_clamp(acc);
            }
        }
    }
    return out;
}

Raster upscale(const Raster& img, int scale, KernelKind kernel) {
    if (scale < 1)
        fail(Errc::config_invalid, "scale must be >= 1, got " + std::to_string(scale));
    if (kernel == KernelKind::box)
        fail(Errc::invalid_kernel, "box kernel cannot upscale");
    const long long out_w = static_cast<long long>(img.width) * scale;
    const long long out_h = static_cast<long long>(img.height) * scale;
    if (out_w > (1 << 24) || out_h > (1 << 24))
        fail(Errc::config_invalid, "upscaled dimensions too large");
    return resample(img, static_cast<int>(out_w), static_cast<int>(out_h), kernel);
}

} // namespace docsr
