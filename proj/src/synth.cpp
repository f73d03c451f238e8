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

#include "docsr/synth.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "docsr/error.hpp"

namespace docsr {

namespace {

void stamp(BinaryMask& gt, int x, int y, int thickness) {
    const int x1 = std::min(gt.width, x + thickness);
    const int y1 = std::min(gt.height, y + thickness);
    for (int yy = std::max(0, y); yy < y1; ++yy)
        for (int xx = std::max(0, x); xx < x1; ++xx)
            gt.set(xx, yy, true);
}

// Integer Bresenham so the stroke geometry is exactly reproducible.
void draw_line(BinaryMask& gt, int x0, int y0, int x1, int y1, int thickness) {
    const int dx = std::abs(x1 - x0), sx = x0 < x1 ? 1 : -1;
    const int dy = -std::abs(y1 - y0), sy = y0 < y1 ? 1 : -1;
    int err = dx + dy;
    for (;;) {
        stamp(gt, x0, y0, thickness);
        if (x0 == x1 && y0 == y1)
            break;
        const int e2 = 2 * err;
        if (e2 >= dy) {
            err += dy;
            x0 += sx;
        }
        if (e2 <= dx) {
            err += dx;
            y0 += sy;
        }
    }
}

void draw_rect(BinaryMask& gt, int x, int y, int rw, int rh) {
    const int x1 = std::min(gt.width, x + rw);
    const int y1 = std::min(gt.height, y + rh);
    for (int yy = y; yy < y1; ++yy)
        for (int xx = x; xx < x1; ++xx)
            gt.set(xx, yy, true);
}

} // namespace

SynthDocument synthesize_document(std::uint64_t seed, int w, int h, double noise_sigma,
                                  int stroke_count) {
    if (w < 64 || h < 64)
        fail(Errc::image_too_small, "synthetic documents must be at least 64x64, got " +
                                        std::to_string(w) + "x" + std::to_string(h));
    if (stroke_count < 0)
        fail(Errc::config_invalid, "stroke count must be non-negative");
    if (noise_sigma < 0.0)
        fail(Errc::config_invalid, "noise sigma must be non-negative");

    SplitMix64 rng(seed);
    BinaryMask gt = BinaryMask::make(w, h);

    const int max_rect_w = std::max(1, w / 8);
    const int max_rect_h = std::max(1, h / 8);
    for (int i = 0; i < stroke_count; ++i) {
        if ((rng.next() & 1) == 0) {
            const int x = static_cast<int>(rng.bounded(w));
            const int y = static_cast<int>(rng.bounded(h));
            const int rw = 1 + static_cast<int>(rng.bounded(max_rect_w));
            const int rh = 1 + static_cast<int>(rng.bounded(max_rect_h));
            draw_rect(gt, x, y, rw, rh);
        } else {
            const int x0 = static_cast<int>(rng.bounded(w));
            const int y0 = static_cast<int>(rng.bounded(h));
            const int x1 = static_cast<int>(rng.bounded(w));
            const int y1 = static_cast<int>(rng.bounded(h));
            const int thickness = 1 + static_cast<int>(rng.bounded(3));
            draw_line(gt, x0, y0, x1, y1, thickness);
        }
    }

    // text renders black on white, then per-pixel noise, then a 3x3 box blur
    // over the window intersected with the image; one rounding at the end
    std::vector<double> noisy(static_cast<std::size_t>(w) * h);
    for (std::size_t i = 0; i < noisy.size(); ++i) {
        double v = gt.foreground[i] ? 0.0 : 255.0;
        if (noise_sigma > 0.0) {
            double acc = 0.0;
            for (int d = 0; d < 12; ++d)
                acc += rng.unit();
            v += noise_sigma * (acc - 6.0);
        }
        noisy[i] = v;
    }

    Raster input = Raster::make(w, h, 1);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double sum = 0.0;
            int count = 0;
            for (int dy = -1; dy <= 1; ++dy) {
                const int yy = y + dy;
                if (yy < 0 || yy >= h)
                    continue;
                for (int dx = -1; dx <= 1; ++dx) {
                    const int xx = x + dx;
                    if (xx < 0 || xx >= w)
                        continue;
                    sum += noisy[static_cast<std::size_t>(yy) * w + xx];
                    ++count;
                }
            }
            const double blurred = sum / count;
            const double r = std::floor(blurred + 0.5);
            input.at(x, y) = static_cast<std::uint8_t>(std::clamp(r, 0.0, 255.0));
        }
    }

    return SynthDocument{std::move(input), std::move(gt)};
}

} // namespace docsr
