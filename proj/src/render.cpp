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

#include "docsr/render.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "docsr/error.hpp"
#include "docsr/resample.hpp"

namespace docsr {

std::optional<ReportFormat> format_from_name(std::string_view name) {
    if (name == "json")
        return ReportFormat::json;
    if (name == "csv")
        return ReportFormat::csv;
    if (name == "markdown")
        return ReportFormat::markdown;
    return std::nullopt;
}

std::string format_fixed(double value, int decimals) {
    char buf[64];
    const auto res =
        std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed, decimals);
    return std::string(buf, res.ptr);
}

namespace {

// shortest representation that parses back to the same double
std::string format_full(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& value) {
    if (value.find_first_of(",\"\r\n") == std::string::npos)
        return value;
    std::string quoted = "\"";
    for (char c : value) {
        if (c == '"')
            quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::string csv_row(const std::vector<std::string>& fields) {
    std::string row;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i)
            row += ',';
        row += csv_field(fields[i]);
    }
    row += "\r\n";
    return row;
}

const std::vector<std::string> kCsvHeader = {
    "section", "branch",    "id", "psnr_db", "mse", "ssim",
    "precision", "recall",  "f_measure", "tp", "fp", "fn", "tn",
    "width",   "height",    "infinite_psnr_count", "image_count", "error"};

std::vector<std::string> metric_csv_fields(const std::string& section,
                                           const std::string& branch, const std::string& id,
                                           const MetricReport& m) {
    return {section,
            branch,
            id,
            m.psnr_db ? format_full(*m.psnr_db) : "",
            format_full(m.mse),
            format_full(m.ssim),
            format_full(m.precision),
            format_full(m.recall),
            format_full(m.f_measure),
            std::to_string(m.counts.tp),
            std::to_string(m.counts.fp),
            std::to_string(m.counts.fn),
            std::to_string(m.counts.tn),
            std::to_string(m.width),
            std::to_string(m.height),
            "",
            "",
            ""};
}

std::string describe_sr(const SrSpec& sr) {
    switch (sr.kind) {
    case SrSpec::Kind::identity:
        return "identity";
    case SrSpec::Kind::classical:
        return std::string(kernel_name(sr.kernel)) + " x" + std::to_string(sr.scale);
    case SrSpec::Kind::external:
        return "external:" + sr.dir.string() + " x" + std::to_string(sr.scale);
    }
    return "?";
}

std::string describe_seg(const SegSpec& seg) {
    switch (seg.kind) {
    case SegSpec::Kind::otsu:
        return "otsu";
    case SegSpec::Kind::niblack:
        return "niblack(window=" + std::to_string(seg.window) + ", k=" + format_full(seg.k) +
               ")";
    case SegSpec::Kind::sauvola:
        return "sauvola(window=" + std::to_string(seg.window) + ", k=" + format_full(seg.k) +
               ", r=" + format_full(seg.r) + ")";
    case SegSpec::Kind::external:
        return "external:" + seg.dir.string();
    }
    return "?";
}

// PSNR at 2 decimals, SSIM and FM at 4, matching the comparison-table style
std::string table_row(const std::string& label, const std::optional<double>& psnr,
                      double ssim_value, double fm, const char* absent) {
    return "| " + label + " | " + (psnr ? format_fixed(*psnr, 2) : absent) + " | " +
           format_fixed(ssim_value, 4) + " | " + format_fixed(fm, 4) + " |\n";
}

std::string render_markdown(const ExperimentReport& report) {
    std::string out;
    out += "# Experiment report: " + report.dataset_name + "\n\n";
    out += "- sr: " + describe_sr(report.config.sr) + "\n";
    out += "- seg: " + describe_seg(report.config.seg) + "\n";
    const int total = static_cast<int>(report.entries.size());
    out += "- images: " + std::to_string(total);
    if (report.excluded_count > 0)
        out += " (" + std::to_string(report.excluded_count) + " excluded after errors)";
    out += "\n\n";
    out += "| Method | PSNR | SSIM | FM |\n";
    out += "| --- | --- | --- | --- |\n";
    if (report.with_sr)
        out += table_row("w/ SR", report.with_sr->psnr_db, report.with_sr->ssim,
                         report.with_sr->f_measure, "inf");
    if (report.without_sr)
        out += table_row("w/o SR", report.without_sr->psnr_db, report.without_sr->ssim,
                         report.without_sr->f_measure, "inf");
    if (report.deltas)
        out += table_row("delta", report.deltas->psnr_db, report.deltas->ssim,
                         report.deltas->f_measure, "n/a");
    return out;
}

std::string render_csv(const ExperimentReport& report) {
    std::string out = csv_row(kCsvHeader);
    for (const auto& e : report.entries) {
        if (e.with_sr)
            out += csv_row(metric_csv_fields("image", "with_sr", e.id, *e.with_sr));
        if (e.without_sr)
            out += csv_row(metric_csv_fields("image", "without_sr", e.id, *e.without_sr));
        if (e.error) {
            std::vector<std::string> fields(kCsvHeader.size());
            fields[0] = "image";
            fields[2] = e.id;
            fields.back() = *e.error;
            out += csv_row(fields);
        }
    }
    auto aggregate_fields = [](const std::string& branch, const Aggregate& a) {
        std::vector<std::string> fields(kCsvHeader.size());
        fields[0] = "aggregate";
        fields[1] = branch;
        fields[3] = a.psnr_db ? format_full(*a.psnr_db) : "";
        fields[5] = format_full(a.ssim);
        fields[8] = format_full(a.f_measure);
        fields[15] = std::to_string(a.infinite_psnr_count);
        fields[16] = std::to_string(a.image_count);
        return fields;
    };
    if (report.with_sr)
        out += csv_row(aggregate_fields("with_sr", *report.with_sr));
    if (report.without_sr)
        out += csv_row(aggregate_fields("without_sr", *report.without_sr));
    if (report.deltas) {
        std::vector<std::string> fields(kCsvHeader.size());
        fields[0] = "delta";
        fields[3] = report.deltas->psnr_db ? format_full(*report.deltas->psnr_db) : "";
        fields[5] = format_full(report.deltas->ssim);
        fields[8] = format_full(report.deltas->f_measure);
        out += csv_row(fields);
    }
    return out;
}

} // namespace

std::string render_report(const ExperimentReport& report, ReportFormat format) {
    switch (format) {
    case ReportFormat::json:
        return report_to_json(report).dump(2) + "\n";
    case ReportFormat::csv:
        return render_csv(report);
    case ReportFormat::markdown:
        return render_markdown(report);
    }
    fail(Errc::config_invalid, "bad report format");
}

std::string render_metric_report(const MetricReport& report, ReportFormat format) {
    switch (format) {
    case ReportFormat::json:
        return metric_report_to_json(report).dump(2) + "\n";
    case ReportFormat::csv:
        return csv_row(kCsvHeader) + csv_row(metric_csv_fields("image", "", "", report));
    case ReportFormat::markdown: {
        std::string out = "| PSNR | MSE | SSIM | Precision | Recall | FM |\n";
        out += "| --- | --- | --- | --- | --- | --- |\n";
        out += "| " + (report.psnr_db ? format_fixed(*report.psnr_db, 2) : "inf") + " | " +
               format_full(report.mse) + " | " + format_fixed(report.ssim, 4) + " | " +
               format_fixed(report.precision, 4) + " | " + format_fixed(report.recall, 4) +
               " | " + format_fixed(report.f_measure, 4) + " |\n";
        return out;
    }
    }
    fail(Errc::config_invalid, "bad report format");
}

namespace {

Raster to_panel_height(const Raster& panel, int target_height) {
    if (panel.height == target_height)
        return panel;
    const double scale = static_cast<double>(target_height) / panel.height;
    const int w = std::max(1, static_cast<int>(std::floor(panel.width * scale + 0.5)));
    return resample(panel, w, target_height, KernelKind::nearest);
}

} // namespace

Raster render_montage(const Raster& input, const BinaryMask& gt, const BinaryMask& with_sr,
                      const BinaryMask& without_sr) {
    constexpr int kSeparator = 4;
    constexpr std::uint8_t kSeparatorValue = 128;

    std::vector<Raster> panels;
    panels.push_back(to_grayscale(input));
    panels.push_back(raster_from_mask(gt));
    panels.push_back(raster_from_mask(with_sr));
    panels.push_back(raster_from_mask(without_sr));

    int height = 0;
    for (const auto& p : panels)
        height = std::max(height, p.height);
    for (auto& p : panels)
        p = to_panel_height(p, height);

    int width = kSeparator * (static_cast<int>(panels.size()) - 1);
    for (const auto& p : panels)
        width += p.width;

    Raster out = Raster::make(width, height, 1, kSeparatorValue);
    int x0 = 0;
    for (const auto& p : panels) {
        for (int y = 0; y < p.height; ++y)
            for (int x = 0; x < p.width; ++x)
                out.at(x0 + x, y) = p.at(x, y);
        x0 += p.width + kSeparator;
    }
    return out;
}

} // namespace docsr
