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

#ifndef DOCSR_SYNTH_HPP
#define DOCSR_SYNTH_HPP

#include <cstdint>

#include "docsr/raster.hpp"

namespace docsr {

/// splitmix64: one-line, exactly specified, reproducible in any language.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t bounded(std::uint64_t n) { return next() % n; }

    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

struct SynthDocument {
    Raster input;  // grayscale render + noise + 3x3 box blur
    BinaryMask gt; // union of random strokes
};

/// Deterministic synthetic document for desk-scale experiments. For a fixed
/// argument tuple the output is bit-identical across runs and platforms.
/// Draw order (one splitmix64 stream seeded with `seed`):
///   per stroke: kind (next() & 1; 0 = rectangle, 1 = line), then for a
///   rectangle x, y, w, h; for a line x0, y0, x1, y1, thickness — each via
///   bounded(). After all strokes, if noise_sigma > 0, one noise value per
///   pixel in row-major order, each the sum of 12 unit() draws minus 6,
///   scaled by noise_sigma.
SynthDocument synthesize_document(std::uint64_t seed, int w, int h, double noise_sigma,
                                  int stroke_count);

} // namespace docsr

#endif // DOCSR_SYNTH_HPP
