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

#include <functional>
#include <random>

#include "docsr/error.hpp"
#include "docsr/io.hpp"
#include "docsr/raster.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace docsr;

namespace {

void write_bytes(const std::filesystem::path& path, std::initializer_list<int> bytes) {
    std::vector<std::uint8_t> data;
    for (int b : bytes)
        data.push_back(static_cast<std::uint8_t>(b));
    write_file_atomic(path, data.data(), data.size());
}

Errc code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected a docsr::Error");
    return Errc::io_error;
}

} // namespace

TEST_CASE("grayscale conversion follows BT.601 with round half up") {
    Raster rgb = Raster::make(3, 1, 3);
    const int pixels[3][3] = {{255, 255, 255}, {255, 0, 0}, {0, 0, 255}};
    for (int i = 0; i < 3; ++i)
        for (int c = 0; c < 3; ++c)
            rgb.at(i, 0, c) = static_cast<std::uint8_t>(pixels[i][c]);

    const Raster gray = to_grayscale(rgb);
    CHECK(gray.channels == 1);
    CHECK(gray.at(0, 0) == 255);
    CHECK(gray.at(1, 0) == 76); // 0.299*255 = 76.245
    CHECK(gray.at(2, 0) == 29); // 0.114*255 = 29.07

    // against the direct-formula oracle on random pixels
    std::mt19937_64 rng(7);
    const Raster random_rgb = support::random_raster(rng, 16, 16, 3);
    const Raster g2 = to_grayscale(random_rgb);
    for (int y = 0; y < 16; ++y)
        for (int x = 0; x < 16; ++x)
            CHECK(g2.at(x, y) == oracle::bt601_luma(random_rgb.at(x, y, 0),
                                                    random_rgb.at(x, y, 1),
                                                    random_rgb.at(x, y, 2)));
}

TEST_CASE("grayscale is the identity on 1-channel input") {
    std::mt19937_64 rng(8);
    const Raster img = support::random_raster(rng, 9, 4);
    CHECK(to_grayscale(img) == img);
    CHECK(to_grayscale(to_grayscale(img)) == to_grayscale(img));
}

TEST_CASE("mask polarity and threshold boundary") {
    const Raster img = support::make_raster(2, 1, {127, 128});
    const BinaryMask m = mask_from_raster(img, 128);
    CHECK(m.at(0, 0) == true); // strict less-than
    CHECK(m.at(1, 0) == false);

    const Raster extremes = support::make_raster(2, 1, {0, 255});
    const BinaryMask m2 = mask_from_raster(extremes);
    CHECK(m2.at(0, 0) == true);
    CHECK(m2.at(1, 0) == false);

    const Raster white = Raster::make(4, 4, 1, 255);
    CHECK(mask_from_raster(white).foreground_count() == 0);

    Raster rgb = Raster::make(2, 2, 3);
    CHECK(code_of([&] { mask_from_raster(rgb); }) == Errc::channels_mismatch);
}

TEST_CASE("mask renders black text on white and round-trips") {
    const BinaryMask m = support::make_mask(2, 1, {1, 0});
    const Raster r = raster_from_mask(m);
    CHECK(r.samples == std::vector<std::uint8_t>{0, 255});

    const BinaryMask empty = BinaryMask::make(3, 3);
    CHECK(raster_from_mask(empty).samples == std::vector<std::uint8_t>(9, 255));

    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        const BinaryMask mask = support::random_mask(rng, 8, 5);
        CHECK(mask_from_raster(raster_from_mask(mask), 128) == mask);
    }
}

TEST_CASE("hand-written P5 bytes decode to the expected raster") {
    support::TempDir tmp;
    const auto path = tmp.file("hand.pgm");
    write_bytes(path, {'P', '5', ' ', '2', ' ', '1', ' ', '2', '5', '5', '\n', 0, 128});
    const Raster img = load_image(path);
    CHECK(img.width == 2);
    CHECK(img.height == 1);
    CHECK(img.channels == 1);
    CHECK(img.samples == std::vector<std::uint8_t>{0, 128});
}

TEST_CASE("PNM header quirks: comments, 16-bit rejection, truncation") {
    support::TempDir tmp;

    const auto commented = tmp.file("c.pgm");
    write_bytes(commented, {'P', '5', '\n', '#', ' ', 'x', '\n', '1', ' ', '1', '\n', '2',
                            '5', '5', '\n', 42});
    CHECK(load_image(commented).samples == std::vector<std::uint8_t>{42});

    const auto deep = tmp.file("deep.pgm");
    write_bytes(deep, {'P', '5', ' ', '1', ' ', '1', ' ', '6', '5', '5', '3', '5', '\n', 0, 0});
    CHECK(code_of([&] { load_image(deep); }) == Errc::unsupported_format);

    const auto truncated = tmp.file("t.pgm");
    write_bytes(truncated, {'P', '5', ' ', '4', ' ', '4', ' ', '2', '5', '5', '\n', 1, 2, 3});
    CHECK(code_of([&] { load_image(truncated); }) == Errc::corrupt_image);
}

TEST_CASE("save/load round-trip is bit exact for PNG, PGM and PPM") {
    support::TempDir tmp;
    std::mt19937_64 rng(10);

    const Raster gray = support::random_raster(rng, 13, 7);
    const Raster rgb = support::random_raster(rng, 6, 9, 3);
    const Raster tiny = support::make_raster(1, 1, {0});

    for (const char* name : {"a.png", "a.pgm"}) {
        save_image(gray, tmp.file(name));
        CHECK(load_image(tmp.file(name)) == gray);
    }
    for (const char* name : {"b.png", "b.ppm"}) {
        save_image(rgb, tmp.file(name));
        CHECK(load_image(tmp.file(name)) == rgb);
    }
    save_image(tiny, tmp.file("tiny.png"));
    CHECK(load_image(tmp.file("tiny.png")) == tiny);

    const Raster quad = support::make_raster(2, 2, {0, 64, 128, 255});
    save_image(quad, tmp.file("quad.pgm"));
    CHECK(load_image(tmp.file("quad.pgm")) == quad);
}

TEST_CASE("channel/format mismatches are rejected on save") {
    support::TempDir tmp;
    std::mt19937_64 rng(11);
    const Raster rgb = support::random_raster(rng, 2, 2, 3);
    const Raster gray = support::random_raster(rng, 2, 2, 1);
    CHECK(code_of([&] { save_image(rgb, tmp.file("x.pgm")); }) == Errc::unsupported_format);
    CHECK(code_of([&] { save_image(gray, tmp.file("x.ppm")); }) == Errc::unsupported_format);
    CHECK(code_of([&] { save_image(gray, tmp.file("x.tiff")); }) == Errc::unsupported_format);
}

TEST_CASE("load error taxonomy: missing, foreign and truncated files") {
    support::TempDir tmp;
    CHECK(code_of([&] { load_image(tmp.file("nope.png")); }) == Errc::file_not_found);

    const auto tiff = tmp.file("t.tif");
    write_bytes(tiff, {'I', 'I', '*', 0, 1, 2, 3, 4});
    try {
        load_image(tiff);
        FAIL("expected UnsupportedFormat");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::unsupported_format);
        CHECK(std::string(e.what()).find("convert") != std::string::npos);
    }

    const auto bmp = tmp.file("b.bmp");
    write_bytes(bmp, {'B', 'M', 9, 9, 9, 9});
    CHECK(code_of([&] { load_image(bmp); }) == Errc::unsupported_format);

    const auto garbage = tmp.file("g.dat");
    write_bytes(garbage, {9, 9, 9, 9, 9, 9, 9, 9});
    CHECK(code_of([&] { load_image(garbage); }) == Errc::unsupported_format);

    // a valid PNG cut short
    const Raster img = Raster::make(8, 8, 1, 100);
    save_image(img, tmp.file("whole.png"));
    auto bytes = read_file_bytes(tmp.file("whole.png"));
    bytes.resize(bytes.size() / 2);
    write_file_atomic(tmp.file("cut.png"), bytes.data(), bytes.size());
    CHECK(code_of([&] { load_image(tmp.file("cut.png")); }) == Errc::corrupt_image);

    // flip one byte inside the IDAT payload: CRC must catch it
    auto corrupted = read_file_bytes(tmp.file("whole.png"));
    corrupted[corrupted.size() - 20] ^= 0xFF;
    write_file_atomic(tmp.file("flip.png"), corrupted.data(), corrupted.size());
    CHECK(code_of([&] { load_image(tmp.file("flip.png")); }) == Errc::corrupt_image);
}

TEST_CASE("raster invariants hold for everything the module produces") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 10; ++trial) {
        const Raster img = support::random_raster(rng, 5 + trial, 3 + trial,
                                                  trial % 2 ? 3 : 1);
        CHECK(img.samples.size() ==
              static_cast<std::size_t>(img.width) * img.height * img.channels);
        const Raster gray = to_grayscale(img);
        CHECK(gray.samples.size() == static_cast<std::size_t>(gray.width) * gray.height);
    }
}
