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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "docsr/error.hpp"
#include "docsr/metrics.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace docsr;

TEST_CASE("psnr anchors: identity, opposite constants, one-pixel difference") {
    const Raster a = Raster::make(16, 16, 1, 77);
    const auto same = psnr(a, a);
    CHECK(same.mse == 0.0);
    CHECK(!same.psnr_db.has_value());

    const Raster black = Raster::make(16, 16, 1, 0);
    const Raster white = Raster::make(16, 16, 1, 255);
    const auto opposite = psnr(black, white);
    CHECK(opposite.mse == 255.0 * 255.0);
    CHECK(*opposite.psnr_db == 0.0);

    Raster b = Raster::make(4, 4, 1, 0);
    b.at(1, 2) = 255;
    const Raster zero = Raster::make(4, 4, 1, 0);
    const auto one_pixel = psnr(b, zero);
    CHECK(one_pixel.mse == doctest::Approx(255.0 * 255.0 / 16.0).epsilon(1e-12));
    CHECK(*one_pixel.psnr_db == doctest::Approx(10.0 * std::log10(16.0)).epsilon(1e-9));
}

TEST_CASE("psnr requires equal dimensions and reports both in the message") {
    const Raster a = Raster::make(4, 4, 1);
    const Raster b = Raster::make(8, 8, 1);
    try {
        psnr(a, b);
        FAIL("expected SizeMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::size_mismatch);
        CHECK(std::string(e.what()).find("4x4") != std::string::npos);
        CHECK(std::string(e.what()).find("8x8") != std::string::npos);
    }
}

TEST_CASE("ssim anchors") {
    const Raster black = Raster::make(16, 16, 1, 0);
    const Raster white = Raster::make(16, 16, 1, 255);
    // all variances vanish: C1 / (255^2 + C1)
    CHECK(ssim(black, white) == doctest::Approx(6.5025 / 65031.5025).epsilon(1e-12));

    std::mt19937_64 rng(51);
    const Raster img = support::random_raster(rng, 20, 14);
    CHECK(ssim(img, img) == 1.0); // exact

    CHECK_THROWS_AS(ssim(Raster::make(10, 16, 1), Raster::make(10, 16, 1)), Error);
}

TEST_CASE("psnr and ssim match the brute-force oracles on random pairs") {
    std::mt19937_64 rng(52);
    for (int trial = 0; trial < 100; ++trial) {
        const Raster a = support::random_raster(rng, 16, 16);
        const Raster b = support::random_raster(rng, 16, 16);

        const auto ours = psnr(a, b);
        const auto ref = oracle::psnr(a, b);
        CHECK(ours.mse == doctest::Approx(ref.mse).epsilon(1e-12));
        if (ref.psnr_db)
            CHECK(*ours.psnr_db == doctest::Approx(*ref.psnr_db).epsilon(1e-9));

        CHECK(ssim(a, b) == doctest::Approx(oracle::ssim(a, b)).epsilon(1e-9));
    }
}

TEST_CASE("psnr and ssim are symmetric") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 20; ++trial) {
        const Raster a = support::random_raster(rng, 16, 16);
        const Raster b = support::random_raster(rng, 16, 16);
        CHECK(psnr(a, b).mse == psnr(b, a).mse);
        CHECK(ssim(a, b) == doctest::Approx(ssim(b, a)).epsilon(1e-12));
        const double s = ssim(a, b);
        CHECK(s >= -1.0);
        CHECK(s <= 1.0);
        CHECK(*psnr(a, b).psnr_db >= 0.0);
    }
}

TEST_CASE("each extra disagreeing pixel strictly lowers psnr") {
    const int side = 16;
    Raster noisy = Raster::make(side, side, 1, 0);
    const Raster ref = Raster::make(side, side, 1, 0);
    double last = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 12; ++i) {
        noisy.samples[i * 7] = 255;
        const double now = *psnr(noisy, ref).psnr_db;
        CHECK(now < last);
        last = now;
    }
}

TEST_CASE("f-measure: perfect, half-covered, and empty-set conventions") {
    std::mt19937_64 rng(54);
    const BinaryMask gt = support::random_mask(rng, 8, 8);
    if (gt.foreground_count() > 0) {
        const auto perfect = f_measure(gt, gt);
        CHECK(perfect.precision == 1.0);
        CHECK(perfect.recall == 1.0);
        CHECK(perfect.f_measure == 1.0);
    }

    // prediction covers everything, truth covers half
    BinaryMask all = BinaryMask::make(4, 4, true);
    BinaryMask half = BinaryMask::make(4, 4);
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 2; ++y)
            half.set(x, y, true);
    const auto covered = f_measure(all, half);
    CHECK(covered.precision == doctest::Approx(0.5));
    CHECK(covered.recall == doctest::Approx(1.0));
    CHECK(covered.f_measure == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

    const BinaryMask empty = BinaryMask::make(4, 4);
    CHECK(f_measure(empty, empty).f_measure == 1.0);
    CHECK(f_measure(all, empty).f_measure == 0.0);
    CHECK(f_measure(empty, all).f_measure == 0.0);
}

TEST_CASE("f-measure counts partition the image and match the oracle") {
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 50; ++trial) {
        const BinaryMask pred = support::random_mask(rng, 9, 7);
        const BinaryMask gt = support::random_mask(rng, 9, 7);
        const auto ours = f_measure(pred, gt);
        CHECK(ours.counts.tp + ours.counts.fp + ours.counts.fn + ours.counts.tn == 63);
        const auto ref = oracle::f_measure(pred, gt);
        CHECK(ours.precision == doctest::Approx(ref.precision).epsilon(1e-12));
        CHECK(ours.recall == doctest::Approx(ref.recall).epsilon(1e-12));
        CHECK(ours.f_measure == doctest::Approx(ref.f_measure).epsilon(1e-12));
    }
}

TEST_CASE("f-measure is invariant under a shared pixel permutation") {
    std::mt19937_64 rng(56);
    const BinaryMask pred = support::random_mask(rng, 8, 8);
    const BinaryMask gt = support::random_mask(rng, 8, 8);
    std::vector<std::size_t> perm(64);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    BinaryMask pred2 = BinaryMask::make(8, 8), gt2 = BinaryMask::make(8, 8);
    for (std::size_t i = 0; i < 64; ++i) {
        pred2.foreground[perm[i]] = pred.foreground[i];
        gt2.foreground[perm[i]] = gt.foreground[i];
    }
    const auto before = f_measure(pred, gt);
    const auto after = f_measure(pred2, gt2);
    CHECK(before.f_measure == after.f_measure);
    CHECK(before.counts == after.counts);
}

TEST_CASE("metric_suite composes the scalar metrics on rendered masks") {
    std::mt19937_64 rng(57);
    const BinaryMask pred = support::random_mask(rng, 16, 16);
    const BinaryMask gt = support::random_mask(rng, 16, 16);

    const MetricReport suite = metric_suite(pred, gt);
    const auto scalar_psnr = psnr(raster_from_mask(pred), raster_from_mask(gt));
    CHECK(suite.mse == scalar_psnr.mse);
    CHECK(suite.psnr_db == scalar_psnr.psnr_db);
    CHECK(suite.ssim == ssim(raster_from_mask(pred), raster_from_mask(gt)));
    CHECK(suite.f_measure == f_measure(pred, gt).f_measure);
    CHECK(suite.width == 16);
    CHECK(suite.height == 16);

    const MetricReport same = metric_suite(gt, gt);
    CHECK(!same.psnr_db.has_value());
    CHECK(same.mse == 0.0);
    CHECK(same.ssim == 1.0);
    CHECK(same.f_measure == 1.0);

    BinaryMask inverted = gt;
    for (auto& f : inverted.foreground)
        f = f ? 0 : 1;
    const MetricReport opposite = metric_suite(inverted, gt);
    CHECK(opposite.mse == 255.0 * 255.0);
    CHECK(*opposite.psnr_db == 0.0);
    CHECK(opposite.f_measure == 0.0);
    CHECK(opposite.counts.tp == 0);
}
