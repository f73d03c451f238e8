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

#ifndef DOCSR_STAGES_HPP
#define DOCSR_STAGES_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "docsr/raster.hpp"
#include "docsr/resample.hpp"

namespace docsr {

// The two pipeline stages: a super-resolution pre-processing stage and a
// segmentation (binarization) stage. Each has classical built-ins plus an
// "external" adapter that pulls pre-computed outputs of a learned model
// from a flat directory keyed by input stem (<dir>/<stem>.png).

struct SrSpec {
    enum class Kind { identity, classical, external };

    Kind kind = Kind::identity;
    KernelKind kernel = KernelKind::bicubic;
    int scale = 1;
    std::filesystem::path dir;

    static SrSpec identity();
    static SrSpec classical(KernelKind kernel, int scale);
    static SrSpec external(std::filesystem::path dir, int scale); // dir must exist
};

struct SegSpec {
    enum class Kind { otsu, niblack, sauvola, external };

    Kind kind = Kind::otsu;
    int window = 25;
    double k = 0.2;
    double r = 128.0;
    std::filesystem::path dir;

    static SegSpec otsu();
    static SegSpec niblack(int window = 25, double k = -0.2);
    static SegSpec sauvola(int window = 25, double k = 0.2, double r = 128.0);
    static SegSpec external(std::filesystem::path dir); // dir must exist
};

/// Runs the SR stage. Output dimensions are input dimensions x spec.scale;
/// external outputs are checked against that contract, not trusted.
Raster apply_sr(const Raster& img, const SrSpec& spec, const std::string& stem);

/// Runs the segmentation stage; output mask has the input's dimensions.
/// 3-channel inputs are grayscaled first; external outputs are decoded with
/// the standard threshold (value < 128 = text).
BinaryMask binarize(const Raster& img, const SegSpec& spec, const std::string& stem);

std::array<std::uint64_t, 256> histogram(const Raster& img); // 1-channel

/// Threshold maximizing between-class variance over classes [0..t] and
/// [t+1..255]; ties break toward the smallest t. Pixels with value <= t are
/// foreground. The argmax comparison is exact (integer rationals), so the
/// tie-break never depends on floating-point rounding.
int otsu_threshold(const std::array<std::uint64_t, 256>& hist);

enum class LocalMethod { niblack, sauvola };

/// Per-pixel windowed mean and population standard deviation, computed via
/// integral images of value and value^2; the window clamps at image edges.
struct LocalStats {
    int width = 0;
    int height = 0;
    std::vector<double> mean;
    std::vector<double> stddev;
};

LocalStats local_stats(const Raster& img, int window); // 1-channel, window odd

/// Niblack: T = m + k*s. Sauvola: T = m*(1 + k*(s/r - 1)).
/// Foreground iff value < T.
BinaryMask local_threshold(const Raster& img, LocalMethod method, int window, double k,
                           double r = 128.0);

/// Loads <dir>/<stem>.png, verifies dimensions, converts to grayscale.
Raster load_external_output(const std::filesystem::path& dir, const std::string& stem,
                            int expected_w, int expected_h);

} // namespace docsr

#endif // DOCSR_STAGES_HPP
