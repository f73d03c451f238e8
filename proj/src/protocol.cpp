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

#include "docsr/protocol.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <map>
#include <thread>

#include "docsr/error.hpp"
#include "docsr/io.hpp"
#include "docsr/resample.hpp"

namespace docsr {

namespace {

using Json = nlohmann::ordered_json;

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

bool supported_extension(const std::filesystem::path& p) {
    const std::string ext = lower(p.extension().string());
    return ext == ".png" || ext == ".pgm" || ext == ".ppm";
}

} // namespace

Manifest scan_dataset(const std::filesystem::path& dir, const std::string& gt_suffix,
                      std::vector<std::string>* diagnostics) {
    if (!std::filesystem::is_directory(dir))
        fail(Errc::file_not_found, "dataset directory does not exist: " + dir.string());

    const std::string suffix = lower(gt_suffix);
    std::map<std::string, std::filesystem::path> inputs; // stem -> path
    std::map<std::string, std::filesystem::path> gts;    // base stem -> path
    std::vector<std::string> notes;

    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.is_regular_file() && supported_extension(e.path()))
            files.push_back(e.path());
    std::sort(files.begin(), files.end());

    for (const auto& p : files) {
        const std::string stem = p.stem().string();
        const std::string stem_lc = lower(stem);
        const bool is_gt = stem_lc.size() > suffix.size() &&
                           stem_lc.compare(stem_lc.size() - suffix.size(), suffix.size(),
                                           suffix) == 0;
        if (is_gt) {
            const std::string base = stem.substr(0, stem.size() - suffix.size());
            if (!gts.emplace(base, p).second)
                notes.push_back(p.filename().string() + " ignored (duplicate ground truth)");
        } else {
            if (!inputs.emplace(stem, p).second)
                notes.push_back(p.filename().string() + " ignored (duplicate stem)");
        }
    }

    Manifest manifest;
    manifest.dataset_name = dir.filename().string();
    if (manifest.dataset_name.empty())
        manifest.dataset_name = dir.parent_path().filename().string();

    for (const auto& [stem, path] : inputs) {
        const auto gt = gts.find(stem);
        if (gt == gts.end()) {
            notes.push_back(path.filename().string() + " unpaired");
            continue;
        }
        manifest.entries.push_back({stem, std::filesystem::absolute(path),
                                    std::filesystem::absolute(gt->second)});
        gts.erase(gt);
    }
    for (const auto& [base, path] : gts)
        notes.push_back(path.filename().string() + " unpaired (no matching input)");

    if (diagnostics)
        *diagnostics = notes;
    if (manifest.entries.empty()) {
        std::string detail = "no input/ground-truth pairs found in " + dir.string();
        for (const auto& n : notes)
            detail += "; " + n;
        fail(Errc::empty_dataset, detail);
    }
    return manifest; // std::map iteration already sorted by id
}

nlohmann::ordered_json manifest_to_json(const Manifest& manifest) {
    Json j;
    j["dataset_name"] = manifest.dataset_name;
    j["entries"] = Json::array();
    for (const auto& e : manifest.entries)
        j["entries"].push_back(Json{{"id", e.id},
                                    {"input_path", e.input_path.string()},
                                    {"gt_path", e.gt_path.string()}});
    return j;
}

Manifest manifest_from_json(const nlohmann::ordered_json& j,
                            const std::filesystem::path& base_dir) {
    Manifest manifest;
    try {
        manifest.dataset_name = j.at("dataset_name").get<std::string>();
        for (const auto& e : j.at("entries")) {
            ManifestEntry entry;
            entry.id = e.at("id").get<std::string>();
            entry.input_path = e.at("input_path").get<std::string>();
            entry.gt_path = e.at("gt_path").get<std::string>();
            if (!base_dir.empty()) {
                if (entry.input_path.is_relative())
                    entry.input_path = base_dir / entry.input_path;
                if (entry.gt_path.is_relative())
                    entry.gt_path = base_dir / entry.gt_path;
            }
            manifest.entries.push_back(std::move(entry));
        }
    } catch (const nlohmann::json::exception& e) {
        fail(Errc::config_invalid, std::string("malformed manifest: ") + e.what());
    }
    std::sort(manifest.entries.begin(), manifest.entries.end(),
              [](const ManifestEntry& a, const ManifestEntry& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < manifest.entries.size(); ++i)
        if (manifest.entries[i].id == manifest.entries[i - 1].id)
            fail(Errc::config_invalid, "duplicate manifest id: " + manifest.entries[i].id);
    for (const auto& e : manifest.entries) {
        if (!std::filesystem::exists(e.input_path))
            fail(Errc::file_not_found, "manifest input missing: " + e.input_path.string());
        if (!std::filesystem::exists(e.gt_path))
            fail(Errc::file_not_found, "manifest ground truth missing: " + e.gt_path.string());
    }
    return manifest;
}

Manifest load_manifest(const std::filesystem::path& path) {
    const auto bytes = read_file_bytes(path);
    Json j = Json::parse(bytes.begin(), bytes.end(), nullptr, false);
    if (j.is_discarded())
        fail(Errc::config_invalid, "manifest is not valid JSON: " + path.string());
    return manifest_from_json(j, std::filesystem::absolute(path).parent_path());
}

void save_manifest(const Manifest& manifest, const std::filesystem::path& path) {
    write_text_atomic(path, manifest_to_json(manifest).dump(2) + "\n");
}

BinaryMask downscale_gt(const BinaryMask& gt) {
    const int out_w = gt.width / 2;
    const int out_h = gt.height / 2;
    if (out_w < 1 || out_h < 1)
        fail(Errc::image_too_small, "cannot halve a " + std::to_string(gt.width) + "x" +
                                        std::to_string(gt.height) + " ground truth");
    BinaryMask out = BinaryMask::make(out_w, out_h);
    for (int y = 0; y < out_h; ++y)
        for (int x = 0; x < out_w; ++x) {
            const int count = gt.at(2 * x, 2 * y) + gt.at(2 * x + 1, 2 * y) +
                              gt.at(2 * x, 2 * y + 1) + gt.at(2 * x + 1, 2 * y + 1);
            out.set(x, y, count >= 3);
        }
    return out;
}

namespace {

BinaryMask crop_mask(const BinaryMask& mask, int w, int h) {
    BinaryMask out = BinaryMask::make(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            out.set(x, y, mask.at(x, y));
    return out;
}

[[noreturn]] void rethrow_annotated(const Error& e, const char* branch,
                                    const std::string& stem) {
    throw Error(e.code(), std::string("[") + branch + "/" + stem + "] " + e.what());
}

void require_input_matches_gt(const Raster& input, const BinaryMask& gt,
                              const std::string& stem) {
    if (input.width != gt.width || input.height != gt.height)
        fail(Errc::size_mismatch, "entry " + stem + ": input " + std::to_string(input.width) +
                                      "x" + std::to_string(input.height) +
                                      " vs ground truth " + std::to_string(gt.width) + "x" +
                                      std::to_string(gt.height));
}

} // namespace

MetricReport run_without_sr(const Raster& input, const BinaryMask& gt, const SegSpec& seg,
                            const std::string& stem) {
    require_input_matches_gt(input, gt, stem);
    try {
        const Raster half = downscale_half(to_grayscale(input));
        const BinaryMask mask = binarize(half, seg, stem);
        return metric_suite(mask, downscale_gt(gt));
    } catch (const Error& e) {
        rethrow_annotated(e, "without_sr", stem);
    }
}

MetricReport run_with_sr(const Raster& input, const BinaryMask& gt, const SrSpec& sr,
                         const SegSpec& seg, const std::string& stem) {
    require_input_matches_gt(input, gt, stem);
    if (sr.scale != 2)
        fail(Errc::config_invalid,
             "the with-SR branch is defined for scale 2, got " + std::to_string(sr.scale));
    try {
        const Raster half = downscale_half(to_grayscale(input));
        const Raster up = apply_sr(half, sr, stem);
        const int cmp_w = 2 * (input.width / 2);
        const int cmp_h = 2 * (input.height / 2);
        if (up.width != cmp_w || up.height != cmp_h)
            fail(Errc::external_size_mismatch,
                 "SR stage produced " + std::to_string(up.width) + "x" +
                     std::to_string(up.height) + ", expected " + std::to_string(cmp_w) + "x" +
                     std::to_string(cmp_h));
        const BinaryMask mask = binarize(up, seg, stem);
        return metric_suite(mask, crop_mask(gt, cmp_w, cmp_h));
    } catch (const Error& e) {
        rethrow_annotated(e, "with_sr", stem);
    }
}

Aggregate aggregate(const std::vector<MetricReport>& per_image) {
    if (per_image.empty())
        fail(Errc::empty_input, "nothing to aggregate");
    Aggregate agg;
    agg.image_count = static_cast<int>(per_image.size());
    double psnr_sum = 0.0, ssim_sum = 0.0, fm_sum = 0.0;
    int finite = 0;
    for (const auto& r : per_image) {
        if (r.psnr_db) {
            psnr_sum += *r.psnr_db;
            ++finite;
        } else {
            ++agg.infinite_psnr_count;
        }
        ssim_sum += r.ssim;
        fm_sum += r.f_measure;
    }
    if (finite > 0)
        agg.psnr_db = psnr_sum / finite;
    agg.ssim = ssim_sum / per_image.size();
    agg.f_measure = fm_sum / per_image.size();
    return agg;
}

DeltaSet compute_deltas(const Aggregate& with_sr, const Aggregate& without_sr) {
    DeltaSet d;
    if (with_sr.psnr_db && without_sr.psnr_db)
        d.psnr_db = *with_sr.psnr_db - *without_sr.psnr_db;
    d.ssim = with_sr.ssim - without_sr.ssim;
    d.f_measure = with_sr.f_measure - without_sr.f_measure;
    return d;
}

namespace {

EntryResult process_entry(const ManifestEntry& entry, const ExperimentConfig& config) {
    EntryResult result;
    result.id = entry.id;
    try {
        const Raster input = load_image(entry.input_path);
        const Raster gt_raster = load_image(entry.gt_path);
        const BinaryMask gt = mask_from_raster(to_grayscale(gt_raster), 128);
        require_input_matches_gt(input, gt, entry.id);
        if (config.branch_without_sr)
            result.without_sr = run_without_sr(input, gt, config.seg, entry.id);
        if (config.branch_with_sr)
            result.with_sr = run_with_sr(input, gt, config.sr, config.seg, entry.id);
    } catch (const std::exception& e) {
        result.with_sr.reset();
        result.without_sr.reset();
        result.error = e.what();
    }
    return result;
}

} // namespace

ExperimentReport run_experiment(const Manifest& manifest, const ExperimentConfig& config) {
    if (manifest.entries.empty())
        fail(Errc::config_invalid, "manifest has no entries");
    if (!config.branch_with_sr && !config.branch_without_sr)
        fail(Errc::config_invalid, "at least one branch must be enabled");
    if (config.branch_with_sr && config.sr.scale != 2)
        fail(Errc::config_invalid, "the with-SR branch requires an SR scale of 2, got " +
                                       std::to_string(config.sr.scale));

    const std::size_t n = manifest.entries.size();
    std::vector<EntryResult> results(n);
    const int threads = std::clamp(config.threads, 1, 256);

    // results land in per-entry slots, so the outcome is identical for any
    // thread count
    if (threads == 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i)
            results[i] = process_entry(manifest.entries[i], config);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i; (i = next.fetch_add(1)) < n;)
                results[i] = process_entry(manifest.entries[i], config);
        };
        std::vector<std::thread> pool;
        const std::size_t pool_size = std::min<std::size_t>(threads, n);
        pool.reserve(pool_size);
        for (std::size_t t = 0; t < pool_size; ++t)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }

    ExperimentReport report;
    report.config = config;
    report.dataset_name = manifest.dataset_name;
    report.entries = std::move(results);

    std::vector<MetricReport> with_reports, without_reports;
    std::string first_error;
    for (const auto& r : report.entries) {
        if (r.failed()) {
            ++report.excluded_count;
            if (first_error.empty())
                first_error = *r.error;
            continue;
        }
        if (r.with_sr)
            with_reports.push_back(*r.with_sr);
        if (r.without_sr)
            without_reports.push_back(*r.without_sr);
    }
    if (report.excluded_count == static_cast<int>(n))
        fail(Errc::all_entries_failed, "all " + std::to_string(n) +
                                           " entries failed; first error: " + first_error);

    if (config.branch_with_sr)
        report.with_sr = aggregate(with_reports);
    if (config.branch_without_sr)
        report.without_sr = aggregate(without_reports);
    if (report.with_sr && report.without_sr)
        report.deltas = compute_deltas(*report.with_sr, *report.without_sr);
    return report;
}

namespace {

Json sr_to_json(const SrSpec& sr) {
    switch (sr.kind) {
    case SrSpec::Kind::identity:
        return Json{{"variant", "identity"}};
    case SrSpec::Kind::classical:
        return Json{{"variant", "classical"},
                    {"kernel", kernel_name(sr.kernel)},
                    {"scale", sr.scale}};
    case SrSpec::Kind::external:
        return Json{{"variant", "external"}, {"dir", sr.dir.string()}, {"scale", sr.scale}};
    }
    return Json{};
}

SrSpec sr_from_json(const Json& j) {
    // echoes are reconstructed verbatim; no directory re-validation here
    SrSpec sr;
    const std::string variant = j.at("variant").get<std::string>();
    if (variant == "identity") {
        sr.kind = SrSpec::Kind::identity;
        sr.scale = 1;
    } else if (variant == "classical") {
        sr.kind = SrSpec::Kind::classical;
        const auto kernel = kernel_from_name(j.at("kernel").get<std::string>());
        if (!kernel)
            fail(Errc::config_invalid, "unknown kernel in report config");
        sr.kernel = *kernel;
        sr.scale = j.at("scale").get<int>();
    } else if (variant == "external") {
        sr.kind = SrSpec::Kind::external;
        sr.dir = j.at("dir").get<std::string>();
        sr.scale = j.at("scale").get<int>();
    } else {
        fail(Errc::config_invalid, "unknown SR variant: " + variant);
    }
    return sr;
}

Json seg_to_json(const SegSpec& seg) {
    switch (seg.kind) {
    case SegSpec::Kind::otsu:
        return Json{{"variant", "otsu"}};
    case SegSpec::Kind::niblack:
        return Json{{"variant", "niblack"}, {"window", seg.window}, {"k", seg.k}};
    case SegSpec::Kind::sauvola:
        return Json{{"variant", "sauvola"},
                    {"window", seg.window},
                    {"k", seg.k},
                    {"r", seg.r}};
    case SegSpec::Kind::external:
        return Json{{"variant", "external"}, {"dir", seg.dir.string()}};
    }
    return Json{};
}

SegSpec seg_from_json(const Json& j) {
    SegSpec seg;
    const std::string variant = j.at("variant").get<std::string>();
    if (variant == "otsu") {
        seg.kind = SegSpec::Kind::otsu;
    } else if (variant == "niblack") {
        seg.kind = SegSpec::Kind::niblack;
        seg.window = j.at("window").get<int>();
        seg.k = j.at("k").get<double>();
    } else if (variant == "sauvola") {
        seg.kind = SegSpec::Kind::sauvola;
        seg.window = j.at("window").get<int>();
        seg.k = j.at("k").get<double>();
        seg.r = j.at("r").get<double>();
    } else if (variant == "external") {
        seg.kind = SegSpec::Kind::external;
        seg.dir = j.at("dir").get<std::string>();
    } else {
        fail(Errc::config_invalid, "unknown segmentation variant: " + variant);
    }
    return seg;
}

Json aggregate_to_json(const Aggregate& a) {
    Json j;
    if (a.psnr_db)
        j["psnr_db"] = *a.psnr_db;
    else
        j["psnr_db"] = nullptr;
    j["ssim"] = a.ssim;
    j["f_measure"] = a.f_measure;
    j["infinite_psnr_count"] = a.infinite_psnr_count;
    j["image_count"] = a.image_count;
    return j;
}

Aggregate aggregate_from_json(const Json& j) {
    Aggregate a;
    if (!j.at("psnr_db").is_null())
        a.psnr_db = j.at("psnr_db").get<double>();
    a.ssim = j.at("ssim").get<double>();
    a.f_measure = j.at("f_measure").get<double>();
    a.infinite_psnr_count = j.at("infinite_psnr_count").get<int>();
    a.image_count = j.at("image_count").get<int>();
    return a;
}

// conventions echoed so every report is self-describing
Json settings_echo() {
    Json j;
    j["grayscale"] = "bt601 luma, round half up";
    j["input_downscale"] = "2x2 box mean, round half up, trailing odd row/column dropped";
    j["gt_downscale"] = "2x2 block, text iff >=3 of 4 pixels are text, tie -> background";
    j["with_sr_reference"] = "original ground truth cropped to (2*floor(W/2), 2*floor(H/2))";
    j["psnr"] = "peak 255, computed on 0/255 mask renders";
    j["ssim"] = "11x11 gaussian sigma 1.5, K1 0.01, K2 0.03, L 255, interior windows only";
    j["polarity"] = "text = black(0), background = white(255)";
    j["aggregation"] = "arithmetic mean over images; infinite PSNR excluded and counted";
    j["external_naming"] = "<dir>/<stem>.png";
    return j;
}

} // namespace

nlohmann::ordered_json metric_report_to_json(const MetricReport& m) {
    Json j;
    j["mse"] = m.mse;
    if (m.psnr_db)
        j["psnr_db"] = *m.psnr_db;
    else
        j["psnr_db"] = nullptr;
    j["ssim"] = m.ssim;
    j["precision"] = m.precision;
    j["recall"] = m.recall;
    j["f_measure"] = m.f_measure;
    j["tp"] = m.counts.tp;
    j["fp"] = m.counts.fp;
    j["fn"] = m.counts.fn;
    j["tn"] = m.counts.tn;
    j["width"] = m.width;
    j["height"] = m.height;
    return j;
}

MetricReport metric_report_from_json(const nlohmann::ordered_json& j) {
    MetricReport m;
    m.mse = j.at("mse").get<double>();
    if (!j.at("psnr_db").is_null())
        m.psnr_db = j.at("psnr_db").get<double>();
    m.ssim = j.at("ssim").get<double>();
    m.precision = j.at("precision").get<double>();
    m.recall = j.at("recall").get<double>();
    m.f_measure = j.at("f_measure").get<double>();
    m.counts.tp = j.at("tp").get<std::uint64_t>();
    m.counts.fp = j.at("fp").get<std::uint64_t>();
    m.counts.fn = j.at("fn").get<std::uint64_t>();
    m.counts.tn = j.at("tn").get<std::uint64_t>();
    m.width = j.at("width").get<int>();
    m.height = j.at("height").get<int>();
    return m;
}

nlohmann::ordered_json report_to_json(const ExperimentReport& report) {
    Json j;
    j["dataset_name"] = report.dataset_name;

    Json config;
    config["sr"] = sr_to_json(report.config.sr);
    config["seg"] = seg_to_json(report.config.seg);
    Json branches = Json::array();
    if (report.config.branch_with_sr)
        branches.push_back("with_sr");
    if (report.config.branch_without_sr)
        branches.push_back("without_sr");
    config["branches"] = branches;
    // the thread count is a runtime hint, deliberately not echoed: reports
    // must be byte-identical for any thread count
    config["settings"] = settings_echo();
    j["config"] = config;

    Json per_image = Json::object();
    for (const auto& e : report.entries) {
        Json entry = Json::object();
        if (e.with_sr)
            entry["with_sr"] = metric_report_to_json(*e.with_sr);
        if (e.without_sr)
            entry["without_sr"] = metric_report_to_json(*e.without_sr);
        if (e.error)
            entry["error"] = *e.error;
        per_image[e.id] = entry;
    }
    j["per_image"] = per_image;

    Json aggregates = Json::object();
    if (report.with_sr)
        aggregates["with_sr"] = aggregate_to_json(*report.with_sr);
    if (report.without_sr)
        aggregates["without_sr"] = aggregate_to_json(*report.without_sr);
    j["aggregates"] = aggregates;

    if (report.deltas) {
        Json d;
        if (report.deltas->psnr_db)
            d["psnr_db"] = *report.deltas->psnr_db;
        else
            d["psnr_db"] = nullptr;
        d["ssim"] = report.deltas->ssim;
        d["f_measure"] = report.deltas->f_measure;
        j["deltas"] = d;
    }
    j["excluded"] = report.excluded_count;
    return j;
}

ExperimentReport report_from_json(const nlohmann::ordered_json& j) {
    ExperimentReport report;
    try {
        report.dataset_name = j.at("dataset_name").get<std::string>();
        const Json& config = j.at("config");
        report.config.sr = sr_from_json(config.at("sr"));
        report.config.seg = seg_from_json(config.at("seg"));
        report.config.branch_with_sr = false;
        report.config.branch_without_sr = false;
        for (const auto& b : config.at("branches")) {
            if (b == "with_sr")
                report.config.branch_with_sr = true;
            else if (b == "without_sr")
                report.config.branch_without_sr = true;
        }

        for (const auto& [id, entry] : j.at("per_image").items()) {
            EntryResult r;
            r.id = id;
            if (entry.contains("with_sr"))
                r.with_sr = metric_report_from_json(entry.at("with_sr"));
            if (entry.contains("without_sr"))
                r.without_sr = metric_report_from_json(entry.at("without_sr"));
            if (entry.contains("error"))
                r.error = entry.at("error").get<std::string>();
            report.entries.push_back(std::move(r));
        }

        const Json& aggregates = j.at("aggregates");
        if (aggregates.contains("with_sr"))
            report.with_sr = aggregate_from_json(aggregates.at("with_sr"));
        if (aggregates.contains("without_sr"))
            report.without_sr = aggregate_from_json(aggregates.at("without_sr"));

        if (j.contains("deltas")) {
            DeltaSet d;
            if (!j.at("deltas").at("psnr_db").is_null())
                d.psnr_db = j.at("deltas").at("psnr_db").get<double>();
            d.ssim = j.at("deltas").at("ssim").get<double>();
            d.f_measure = j.at("deltas").at("f_measure").get<double>();
            report.deltas = d;
        }
        report.excluded_count = j.at("excluded").get<int>();
    } catch (const nlohmann::json::exception& e) {
        fail(Errc::config_invalid, std::string("malformed report: ") + e.what());
    }
    return report;
}

ExperimentReport load_report(const std::filesystem::path& path) {
    const auto bytes = read_file_bytes(path);
    Json j = Json::parse(bytes.begin(), bytes.end(), nullptr, false);
    if (j.is_discarded())
        fail(Errc::config_invalid, "report is not valid JSON: " + path.string());
    return report_from_json(j);
}

void save_report(const ExperimentReport& report, const std::filesystem::path& path) {
    write_text_atomic(path, report_to_json(report).dump(2) + "\n");
}

} // namespace docsr
