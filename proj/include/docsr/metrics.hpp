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

#ifndef DOCSR_METRICS_HPP
#define DOCSR_METRICS_HPP

#include <cstdint>
#include <optional>

#include "docsr/raster.hpp"

namespace docsr {

/// mse in double precision; psnr_db = 10*log10(255^2/mse). mse = 0 leaves
/// psnr_db empty (infinite), never a numeric cap.
struct PsnrResult {
    double mse = 0.0;
    std::optional<double> psnr_db;
};

PsnrResult psnr(const Raster& a, const Raster& b); // 1-channel, same size

/// Mean local SSIM over all fully-interior 11x11 windows, Gaussian weighted
/// (sigma 1.5, kernel normalized to sum 1), C1 = (0.01*255)^2,
/// C2 = (0.03*255)^2. Both images must be at least 11x11.
double ssim(const Raster& a, const Raster& b);

struct ConfusionCounts {
    std::uint64_t tp = 0, fp = 0, fn = 0, tn = 0;
    bool operator==(const ConfusionCounts&) const = default;
};

// Empty-denominator conventions: no predicted foreground -> precision is 1
// when there was nothing to find, else 0; no ground-truth foreground ->
// recall is 1 when nothing was predicted, else 0; P+R = 0 -> FM = 0. Hence
// (gt empty, pred empty) gives FM 1 and (gt empty, pred nonempty) gives 0.
struct FMeasureResult {
    double precision = 0.0;
    double recall = 0.0;
    double f_measure = 0.0;
    ConfusionCounts counts;
};

FMeasureResult f_measure(const BinaryMask& pred, const BinaryMask& gt);

/// One row of the comparison table: PSNR and SSIM computed on the rendered
/// binary images (0/255), F-measure on the masks themselves.
struct MetricReport {
    double mse = 0.0;
    std::optional<double> psnr_db;
    double ssim = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f_measure = 0.0;
    ConfusionCounts counts;
    int width = 0;
    int height = 0;

    bool operator==(const MetricReport&) const = default;
};

MetricReport metric_suite(const BinaryMask& pred, const BinaryMask& gt);

} // namespace docsr

#endif // DOCSR_METRICS_HPP
