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

#include <doctest.h>

#include "docsr/protocol.hpp"
#include "docsr/raster.hpp"
#include "docsr/synth.hpp"
#include "support.hpp"

using namespace docsr;
using support::run_cli;

TEST_CASE("no arguments prints usage and exits 1") {
    support::TempDir tmp;
    const auto err = tmp.file("err.txt");
    CHECK(run_cli("2> " + err.string()) == 1);
    const std::string text = support::read_text(err);
    CHECK(text.find("Usage") != std::string::npos);
}

TEST_CASE("unknown flags are fatal usage errors") {
    support::TempDir tmp;
    CHECK(run_cli("downscale --in a.png --out b.png --bogus 2> /dev/null") == 1);
    CHECK(run_cli("frobnicate 2> /dev/null") == 1);
}

TEST_CASE("--help exits 0") {
    CHECK(run_cli("--help > /dev/null") == 0);
}

TEST_CASE("upscale doubles dimensions and exits 0") {
    support::TempDir tmp;
    save_image(Raster::make(6, 5, 1, 42), tmp.file("x.png"));
    const auto out = tmp.file("y.png");
    CHECK(run_cli("upscale --in " + tmp.file("x.png").string() + " --out " + out.string() +
                  " --scale 2 --kernel bicubic 2> /dev/null") == 0);
    const Raster up = load_image(out);
    CHECK(up.width == 12);
    CHECK(up.height == 10);
}

TEST_CASE("downscale halves dimensions") {
    support::TempDir tmp;
    save_image(Raster::make(6, 5, 1, 42), tmp.file("x.png"));
    const auto out = tmp.file("y.png");
    CHECK(run_cli("downscale --in " + tmp.file("x.png").string() + " --out " + out.string() +
                  " 2> /dev/null") == 0);
    const Raster down = load_image(out);
    CHECK(down.width == 3);
    CHECK(down.height == 2);
}

TEST_CASE("eval with mismatched sizes exits 2 and names both dimension pairs") {
    support::TempDir tmp;
    save_image(Raster::make(16, 16, 1, 0), tmp.file("a.png"));
    save_image(Raster::make(12, 16, 1, 0), tmp.file("b.png"));
    const auto err = tmp.file("err.txt");
    CHECK(run_cli("eval --pred " + tmp.file("a.png").string() + " --gt " +
                  tmp.file("b.png").string() + " 2> " + err.string()) == 2);
    const std::string text = support::read_text(err);
    CHECK(text.find("16x16") != std::string::npos);
    CHECK(text.find("12x16") != std::string::npos);
}

TEST_CASE("eval on matching masks emits the metric report") {
    support::TempDir tmp;
    save_image(Raster::make(16, 16, 1, 0), tmp.file("a.png"));
    save_image(Raster::make(16, 16, 1, 0), tmp.file("b.png"));
    const auto out = tmp.file("out.json");
    CHECK(run_cli("eval --pred " + tmp.file("a.png").string() + " --gt " +
                  tmp.file("b.png").string() + " --format json > " + out.string()) == 0);
    const auto j = nlohmann::ordered_json::parse(support::read_text(out));
    CHECK(j.at("psnr_db").is_null());
    CHECK(j.at("f_measure").get<double>() == 1.0);
}

TEST_CASE("binarize writes a black-on-white image") {
    support::TempDir tmp;
    const SynthDocument doc = synthesize_document(5, 64, 64, 6.0, 10);
    save_image(doc.input, tmp.file("doc.png"));
    const auto out = tmp.file("bin.png");
    CHECK(run_cli("binarize --in " + tmp.file("doc.png").string() + " --out " + out.string() +
                  " --method sauvola 2> /dev/null") == 0);
    const Raster bin = load_image(out);
    for (std::uint8_t v : bin.samples)
        CHECK((v == 0 || v == 255));

    // external without --dir is a usage error
    CHECK(run_cli("binarize --in " + tmp.file("doc.png").string() + " --out " + out.string() +
                  " --method external 2> /dev/null") == 1);
}

TEST_CASE("missing input file is a data error (2), not usage (1)") {
    support::TempDir tmp;
    CHECK(run_cli("downscale --in " + tmp.file("nope.png").string() + " --out " +
                  tmp.file("o.png").string() + " 2> /dev/null") == 2);
}

TEST_CASE("synth + scan + experiment + report pipeline works end to end") {
    support::TempDir tmp;
    const auto data = tmp.file("data");
    for (int seed = 1; seed <= 3; ++seed)
        CHECK(run_cli("synth --seed " + std::to_string(seed) +
                      " --w 64 --h 64 --count 12 --noise 8 --out-dir " + data.string() +
                      " 2> /dev/null") == 0);

    const auto manifest = tmp.file("manifest.json");
    CHECK(run_cli("scan --dir " + data.string() + " --out " + manifest.string() +
                  " 2> /dev/null") == 0);
    const Manifest loaded = load_manifest(manifest);
    CHECK(loaded.entries.size() == 3);

    const auto report_path = tmp.file("report.json");
    CHECK(run_cli("experiment --manifest " + manifest.string() +
                  " --sr bicubic --seg sauvola --branches with,without --out " +
                  report_path.string() + " > /dev/null 2> /dev/null") == 0);
    const ExperimentReport report = load_report(report_path);
    CHECK(report.entries.size() == 3);
    CHECK(report.deltas.has_value());

    const auto md = tmp.file("report.md");
    CHECK(run_cli("report --in " + report_path.string() + " --format markdown > " +
                  md.string()) == 0);
    const std::string text = support::read_text(md);
    CHECK(text.find("| Method | PSNR | SSIM | FM |") != std::string::npos);

    // montage over the first entry and its branch outputs
    const auto montage = tmp.file("montage.png");
    const auto first = loaded.entries[0];
    const auto bin1 = tmp.file("with.png");
    const auto bin2 = tmp.file("without.png");
    CHECK(run_cli("binarize --in " + first.input_path.string() + " --out " + bin1.string() +
                  " --method otsu 2> /dev/null") == 0);
    CHECK(run_cli("binarize --in " + first.input_path.string() + " --out " + bin2.string() +
                  " --method sauvola 2> /dev/null") == 0);
    CHECK(run_cli("montage --input " + first.input_path.string() + " --gt " +
                  first.gt_path.string() + " --with-sr " + bin1.string() + " --without-sr " +
                  bin2.string() + " --out " + montage.string() + " 2> /dev/null") == 0);
    const Raster strip = load_image(montage);
    CHECK(strip.width == 64 * 4 + 3 * 4);
    CHECK(strip.height == 64);
}

TEST_CASE("experiment with identity SR and the with branch is a config error") {
    support::TempDir tmp;
    const auto data = tmp.file("data");
    CHECK(run_cli("synth --seed 1 --w 64 --h 64 --count 5 --noise 2 --out-dir " +
                  data.string() + " 2> /dev/null") == 0);
    const auto manifest = tmp.file("m.json");
    CHECK(run_cli("scan --dir " + data.string() + " --out " + manifest.string() +
                  " 2> /dev/null") == 0);
    CHECK(run_cli("experiment --manifest " + manifest.string() +
                  " --sr identity --seg otsu --branches with --out " +
                  tmp.file("r.json").string() + " > /dev/null 2> /dev/null") == 2);
    // identity SR is fine for the without-only run
    CHECK(run_cli("experiment --manifest " + manifest.string() +
                  " --sr identity --seg otsu --branches without --out " +
                  tmp.file("r2.json").string() + " > /dev/null 2> /dev/null") == 0);
}
