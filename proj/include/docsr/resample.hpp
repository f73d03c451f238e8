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

#ifndef DOCSR_RESAMPLE_HPP
#define DOCSR_RESAMPLE_HPP

#include <optional>
#include <string_view>

#include "docsr/raster.hpp"

namespace docsr {

// bicubic is the Keys kernel with a = -0.5; lanczos3 is sinc windowed to
// 3 lobes; box averages the source footprint and is downscale-only.
enum class KernelKind { nearest, bilinear, bicubic, lanczos3, box };

const char* kernel_name(KernelKind kind);
std::optional<KernelKind> kernel_from_name(std::string_view name);

/// Continuous kernel weight at offset x (not defined for box/nearest taps,
/// which are handled by footprint/rounding rules instead).
double kernel_weight(KernelKind kind, double x);

/// Kernel support radius in source pixels.
double kernel_support(KernelKind kind);

/// Output is (floor(W/2), floor(H/2)); each output pixel is the
/// round-half-up mean of its 2x2 source block. A trailing odd row/column
/// is dropped.
Raster downscale_half(const Raster& img);

/// Output is (W*scale, H*scale). Sampling grid is center-aligned:
/// src = (dst + 0.5)/scale - 0.5. Out-of-range taps clamp to the edge and
/// per-pixel weights are renormalized to sum 1. Accumulation in double,
/// rounded half up and clamped to [0,255] once at output. box is rejected.
Raster upscale(const Raster& img, int scale, KernelKind kernel);

/// General form of the same grid convention; box is accepted only when
/// neither axis grows.
Raster resample(const Raster& img, int out_w, int out_h, KernelKind kernel);

} // namespace docsr

#endif // DOCSR_RESAMPLE_HPP
