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

// Exit codes: 0 success, 1 usage error, 2 data/processing error.
// Diagnostics go to stderr; data goes to files or stdout.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "docsr/error.hpp"
#include "docsr/io.hpp"
#include "docsr/metrics.hpp"
#include "docsr/protocol.hpp"
#include "docsr/raster.hpp"
#include "docsr/render.hpp"
#include "docsr/resample.hpp"
#include "docsr/stages.hpp"
#include "docsr/synth.hpp"

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

docsr::KernelKind parse_kernel(const std::string& name) {
    const auto kernel = docsr::kernel_from_name(name);
    if (!kernel)
        throw UsageError("unknown kernel: " + name);
    return *kernel;
}

docsr::ReportFormat parse_format(const std::string& name) {
    const auto format = docsr::format_from_name(name);
    if (!format)
        throw UsageError("unknown format: " + name);
    return *format;
}

docsr::SrSpec parse_sr(const std::string& text) {
    if (text == "identity")
        return docsr::SrSpec::identity();
    if (text.rfind("external:", 0) == 0)
        return docsr::SrSpec::external(text.substr(9), 2);
    const auto kernel = docsr::kernel_from_name(text);
    if (!kernel || *kernel == docsr::KernelKind::box)
        throw UsageError("--sr must be identity, nearest, bilinear, bicubic, lanczos3 "
                         "or external:DIR, got: " +
                         text);
    return docsr::SrSpec::classical(*kernel, 2);
}

docsr::SegSpec parse_seg(const std::string& text) {
    if (text == "otsu")
        return docsr::SegSpec::otsu();
    if (text == "niblack")
        return docsr::SegSpec::niblack();
    if (text == "sauvola")
        return docsr::SegSpec::sauvola();
    if (text.rfind("external:", 0) == 0)
        return docsr::SegSpec::external(text.substr(9));
    throw UsageError("--seg must be otsu, niblack, sauvola or external:DIR, got: " + text);
}

docsr::BinaryMask load_mask(const std::string& path) {
    return docsr::mask_from_raster(docsr::to_grayscale(docsr::load_image(path)), 128);
}

std::string synth_stem(std::uint64_t seed) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "doc_%05llu", static_cast<unsigned long long>(seed));
    return buf;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"docsr: super-resolution pre-processing for document image binarization, "
                 "with a w/SR vs w/o-SR evaluation harness"};
    app.require_subcommand(1);

    std::string in_path, out_path, pred_path, gt_path;
    std::string kernel_name = "bicubic";
    std::string method, format_name = "json";
    std::string dir_path, gt_suffix = "_GT";
    std::string sr_text, seg_text, branches_text = "with,without";
    std::string input_path, with_sr_path, without_sr_path, manifest_path, out_dir;
    int scale = 2, window = 25, width = 512, height = 512, stroke_count = 40, threads = 1;
    double k = 0.0, r = 128.0, noise = 0.0;
    std::uint64_t seed = 1;
    bool k_given = false;

    auto* cmd_downscale = app.add_subcommand("downscale", "Halve an image (2x2 box mean)");
    cmd_downscale->add_option("--in", in_path)->required();
    cmd_downscale->add_option("--out", out_path)->required();

    auto* cmd_upscale = app.add_subcommand("upscale", "Enlarge an image by an integer factor");
    cmd_upscale->add_option("--in", in_path)->required();
    cmd_upscale->add_option("--out", out_path)->required();
    cmd_upscale->add_option("--scale", scale)->required();
    cmd_upscale->add_option("--kernel", kernel_name)
        ->check(CLI::IsMember({"nearest", "bilinear", "bicubic", "lanczos3"}))
        ->required();

    auto* cmd_binarize = app.add_subcommand("binarize", "Binarize an image (black = text)");
    cmd_binarize->add_option("--in", in_path)->required();
    cmd_binarize->add_option("--out", out_path)->required();
    cmd_binarize->add_option("--method", method)
        ->check(CLI::IsMember({"otsu", "niblack", "sauvola", "external"}))
        ->required();
    cmd_binarize->add_option("--window", window);
    cmd_binarize->add_option("--k", k)->each([&](const std::string&) { k_given = true; });
    cmd_binarize->add_option("--r", r);
    cmd_binarize->add_option("--dir", dir_path);

    auto* cmd_eval = app.add_subcommand("eval", "Compare a binarization against ground truth");
    cmd_eval->add_option("--pred", pred_path)->required();
    cmd_eval->add_option("--gt", gt_path)->required();
    cmd_eval->add_option("--format", format_name)
        ->check(CLI::IsMember({"json", "csv", "markdown"}));

    auto* cmd_scan = app.add_subcommand("scan", "Pair inputs with ground truths in a directory");
    cmd_scan->add_option("--dir", dir_path)->required();
    cmd_scan->add_option("--gt-suffix", gt_suffix);
    cmd_scan->add_option("--out", out_path)->required();

    auto* cmd_synth = app.add_subcommand("synth", "Generate one synthetic document pair");
    cmd_synth->set_help_flag("--help", "print help"); // frees -h so --h can mean height
    cmd_synth->add_option("--seed", seed)->required();
    cmd_synth->add_option("--w", width);
    cmd_synth->add_option("--h", height);
    cmd_synth->add_option("--count", stroke_count);
    cmd_synth->add_option("--noise", noise);
    cmd_synth->add_option("--out-dir", out_dir)->required();

    auto* cmd_experiment =
        app.add_subcommand("experiment", "Run the w/SR vs w/o-SR comparison over a manifest");
    cmd_experiment->add_option("--manifest", manifest_path)->required();
    cmd_experiment->add_option("--sr", sr_text)->required();
    cmd_experiment->add_option("--seg", seg_text)->required();
    cmd_experiment->add_option("--branches", branches_text);
    cmd_experiment->add_option("--threads", threads);
    cmd_experiment->add_option("--out", out_path)->required();

    auto* cmd_report = app.add_subcommand("report", "Render a saved experiment report");
    cmd_report->add_option("--in", in_path)->required();
    cmd_report->add_option("--format", format_name)
        ->check(CLI::IsMember({"json", "csv", "markdown"}));

    auto* cmd_montage =
        app.add_subcommand("montage", "Side-by-side strip: input, GT, w/SR, w/o SR");
    cmd_montage->add_option("--input", input_path)->required();
    cmd_montage->add_option("--gt", gt_path)->required();
    cmd_montage->add_option("--with-sr", with_sr_path)->required();
    cmd_montage->add_option("--without-sr", without_sr_path)->required();
    cmd_montage->add_option("--out", out_path)->required();

    if (argc <= 1) {
        std::cerr << app.help();
        return 1;
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e); // --help lands here with code 0
        return code == 0 ? 0 : 1;
    }

    try {
        if (*cmd_downscale) {
            docsr::save_image(docsr::downscale_half(docsr::load_image(in_path)), out_path);
        } else if (*cmd_upscale) {
            docsr::save_image(
                docsr::upscale(docsr::load_image(in_path), scale, parse_kernel(kernel_name)),
                out_path);
        } else if (*cmd_binarize) {
            docsr::SegSpec seg;
            if (method == "otsu") {
                seg = docsr::SegSpec::otsu();
            } else if (method == "niblack") {
                seg = docsr::SegSpec::niblack(window, k_given ? k : -0.2);
            } else if (method == "sauvola") {
                seg = docsr::SegSpec::sauvola(window, k_given ? k : 0.2, r);
            } else {
                if (dir_path.empty())
                    throw UsageError("--method external requires --dir");
                seg = docsr::SegSpec::external(dir_path);
            }
            const std::string stem = std::filesystem::path(in_path).stem().string();
            const docsr::Raster img = docsr::load_image(in_path);
            docsr::save_image(docsr::raster_from_mask(docsr::binarize(img, seg, stem)),
                              out_path);
        } else if (*cmd_eval) {
            const docsr::MetricReport report =
                docsr::metric_suite(load_mask(pred_path), load_mask(gt_path));
            std::cout << docsr::render_metric_report(report, parse_format(format_name));
        } else if (*cmd_scan) {
            std::vector<std::string> diagnostics;
            const docsr::Manifest manifest =
                docsr::scan_dataset(dir_path, gt_suffix, &diagnostics);
            for (const auto& d : diagnostics)
                std::cerr << "scan: " << d << "\n";
            docsr::save_manifest(manifest, out_path);
            std::cerr << "scan: " << manifest.entries.size() << " pairs -> " << out_path
                      << "\n";
        } else if (*cmd_synth) {
            const docsr::SynthDocument doc =
                docsr::synthesize_document(seed, width, height, noise, stroke_count);
            std::filesystem::create_directories(out_dir);
            const std::string stem = synth_stem(seed);
            const auto input_file = std::filesystem::path(out_dir) / (stem + ".png");
            const auto gt_file = std::filesystem::path(out_dir) / (stem + "_GT.png");
            docsr::save_image(doc.input, input_file);
            docsr::save_image(docsr::raster_from_mask(doc.gt), gt_file);
            std::cerr << "synth: wrote " << input_file.string() << " and " << gt_file.string()
                      << "\n";
        } else if (*cmd_experiment) {
            docsr::ExperimentConfig config;
            config.sr = parse_sr(sr_text);
            config.seg = parse_seg(seg_text);
            config.threads = threads;
            config.branch_with_sr = false;
            config.branch_without_sr = false;
            std::stringstream branches(branches_text);
            std::string branch;
            while (std::getline(branches, branch, ',')) {
                if (branch == "with")
                    config.branch_with_sr = true;
                else if (branch == "without")
                    config.branch_without_sr = true;
                else
                    throw UsageError("--branches takes a comma list of with,without; got: " +
                                     branch);
            }
            const docsr::Manifest manifest = docsr::load_manifest(manifest_path);
            const docsr::ExperimentReport report = docsr::run_experiment(manifest, config);
            docsr::save_report(report, out_path);
            std::cout << docsr::render_report(report, docsr::ReportFormat::markdown);
            std::cerr << "experiment: report -> " << out_path << "\n";
        } else if (*cmd_report) {
            const docsr::ExperimentReport report = docsr::load_report(in_path);
            std::cout << docsr::render_report(report, parse_format(format_name));
        } else if (*cmd_montage) {
            const docsr::Raster montage =
                docsr::render_montage(docsr::load_image(input_path), load_mask(gt_path),
                                      load_mask(with_sr_path), load_mask(without_sr_path));
            docsr::save_image(montage, out_path);
        }
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const docsr::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
