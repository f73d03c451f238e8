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

#ifndef DOCSR_PROTOCOL_HPP
#define DOCSR_PROTOCOL_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "docsr/metrics.hpp"
#include "docsr/raster.hpp"
#include "docsr/stages.hpp"

namespace docsr {

// The experiment has two branches. Both start from the half-size input:
//   without_sr: binarize the half-size image, compare against the
//               downscaled ground truth at (floor(W/2), floor(H/2));
//   with_sr:    enlarge the half-size image by 2 with the SR stage, binarize,
//               compare against the original ground truth cropped to
//               (2*floor(W/2), 2*floor(H/2)).

struct ManifestEntry {
    std::string id; // input file stem; unique within a manifest
    std::filesystem::path input_path;
    std::filesystem::path gt_path;
};

struct Manifest {
    std::string dataset_name;
    std::vector<ManifestEntry> entries; // sorted by id
};

/// Pairs every non-GT image in dir with the ground truth named
/// <stem><gt_suffix>.<ext> (suffix matched case-insensitively, any supported
/// extension). Unpaired files go to `diagnostics` and are skipped; an empty
/// result is an error.
Manifest scan_dataset(const std::filesystem::path& dir, const std::string& gt_suffix = "_GT",
                      std::vector<std::string>* diagnostics = nullptr);

nlohmann::ordered_json manifest_to_json(const Manifest& manifest);
Manifest manifest_from_json(const nlohmann::ordered_json& j,
                            const std::filesystem::path& base_dir = {});
Manifest load_manifest(const std::filesystem::path& path);
void save_manifest(const Manifest& manifest, const std::filesystem::path& path);

struct ExperimentConfig {
    SrSpec sr;
    SegSpec seg;
    bool branch_with_sr = true;
    bool branch_without_sr = true;
    int threads = 1;
};

/// 2x ground-truth reduction: each output pixel covers a 2x2 block and is
/// text iff at least 3 of the 4 block pixels are text (a 2-2 tie is
/// background, so strokes never thicken). Trailing odd row/column dropped.
BinaryMask downscale_gt(const BinaryMask& gt);

MetricReport run_without_sr(const Raster& input, const BinaryMask& gt, const SegSpec& seg,
                            const std::string& stem);
MetricReport run_with_sr(const Raster& input, const BinaryMask& gt, const SrSpec& sr,
                         const SegSpec& seg, const std::string& stem);

struct EntryResult {
    std::string id;
    std::optional<MetricReport> with_sr;
    std::optional<MetricReport> without_sr;
    std::optional<std::string> error; // set when the entry failed; metrics then absent

    bool failed() const { return error.has_value(); }
};

/// Arithmetic mean per metric over images in id order. Images with infinite
/// PSNR (mse = 0) are excluded from the PSNR mean and counted separately.
struct Aggregate {
    std::optional<double> psnr_db; // empty when every image had infinite PSNR
    double ssim = 0.0;
    double f_measure = 0.0;
    int infinite_psnr_count = 0;
    int image_count = 0;
};

Aggregate aggregate(const std::vector<MetricReport>& per_image);

struct DeltaSet {
    std::optional<double> psnr_db; // empty when either side's PSNR mean is absent
    double ssim = 0.0;
    double f_measure = 0.0;
};

/// delta = aggregate(with) - aggregate(without), metric by metric.
DeltaSet compute_deltas(const Aggregate& with_sr, const Aggregate& without_sr);

struct ExperimentReport {
    ExperimentConfig config; // echo
    std::string dataset_name;
    std::vector<EntryResult> entries; // id-sorted
    std::optional<Aggregate> with_sr;
    std::optional<Aggregate> without_sr;
    std::optional<DeltaSet> deltas; // present when both branches ran
    int excluded_count = 0;         // failed entries, excluded from aggregates
};

/// Runs the requested branches for every manifest entry. Per-image failures
/// are recorded on the entry and excluded from the aggregates; the run only
/// fails outright if the config is invalid or every entry failed. Output is
/// deterministic and independent of the thread count.
ExperimentReport run_experiment(const Manifest& manifest, const ExperimentConfig& config);

nlohmann::ordered_json report_to_json(const ExperimentReport& report);
ExperimentReport report_from_json(const nlohmann::ordered_json& j);
ExperimentReport load_report(const std::filesystem::path& path);
void save_report(const ExperimentReport& report, const std::filesystem::path& path);

nlohmann::ordered_json metric_report_to_json(const MetricReport& m);
MetricReport metric_report_from_json(const nlohmann::ordered_json& j);

} // namespace docsr

#endif // DOCSR_PROTOCOL_HPP
