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

#ifndef DOCSR_RENDER_HPP
#define DOCSR_RENDER_HPP

#include <optional>
#include <string>
#include <string_view>

#include "docsr/metrics.hpp"
#include "docsr/protocol.hpp"

namespace docsr {

enum class ReportFormat { json, csv, markdown };

std::optional<ReportFormat> format_from_name(std::string_view name);

/// Locale-independent fixed-point formatting (period decimal separator).
std::string format_fixed(double value, int decimals);

/// markdown: one row per branch with PSNR (2 decimals), SSIM (4) and FM (4)
/// plus a delta row when both branches ran. csv: RFC-4180, per-image rows
/// followed by aggregate and delta rows at round-trip precision. json: the
/// canonical report (lossless).
std::string render_report(const ExperimentReport& report, ReportFormat format);

/// Same three formats for a single image-pair evaluation.
std::string render_metric_report(const MetricReport& report, ReportFormat format);

/// Horizontal strip: (a) input, (b) ground truth, (c) with-SR result,
/// (d) without-SR result, separated by 4-pixel mid-gray (128) columns.
/// Panels are nearest-resampled to a common height (the tallest panel),
/// masks rendered black-on-white; output is grayscale.
Raster render_montage(const Raster& input, const BinaryMask& gt, const BinaryMask& with_sr,
                      const BinaryMask& without_sr);

} // namespace docsr

#endif // DOCSR_RENDER_HPP
