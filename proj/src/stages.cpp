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

#include "docsr/stages.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "docsr/error.hpp"

namespace docsr {

SrSpec SrSpec::identity() {
    SrSpec s;
    s.kind = Kind::identity;
    s.scale = 1;
    return s;
}

SrSpec SrSpec::classical(KernelKind kernel, int scale) {
    if (scale < 1)
        fail(Errc::config_invalid, "SR scale must be >= 1, got " + std::to_string(scale));
    if (kernel == KernelKind::box)
        fail(Errc::invalid_kernel, "box kernel cannot serve as the SR enlargement");
    SrSpec s;
    s.kind = Kind::classical;
    s.kernel = kernel;
    s.scale = scale;
    return s;
}

SrSpec SrSpec::external(std::filesystem::path dir, int scale) {
    if (scale < 1)
        fail(Errc::config_invalid, "SR scale must be >= 1, got " + std::to_string(scale));
    if (!std::filesystem::is_directory(dir))
        fail(Errc::config_invalid, "external SR directory does not exist: " + dir.string());
    SrSpec s;
    s.kind = Kind::external;
    s.scale = scale;
    s.dir = std::move(dir);
    return s;
}

SegSpec SegSpec::otsu() {
    SegSpec s;
    s.kind = Kind::otsu;
    return s;
}

SegSpec SegSpec::niblack(int window, double k) {
    if (window < 3 || window % 2 == 0)
        fail(Errc::config_invalid,
             "niblack window must be odd and >= 3, got " + std::to_string(window));
    SegSpec s;
    s.kind = Kind::niblack;
    s.window = window;
    s.k = k;
    return s;
}

SegSpec SegSpec::sauvola(int window, double k, double r) {
    if (window < 3 || window % 2 == 0)
        fail(Errc::config_invalid,
             "sauvola window must be odd and >= 3, got " + std::to_string(window));
    if (r <= 0.0)
        fail(Errc::config_invalid, "sauvola R must be positive");
    SegSpec s;
    s.kind = Kind::sauvola;
    s.window = window;
    s.k = k;
    s.r = r;
    return s;
}

SegSpec SegSpec::external(std::filesystem::path dir) {
    if (!std::filesystem::is_directory(dir))
        fail(Errc::config_invalid,
             "external segmentation directory does not exist: " + dir.string());
    SegSpec s;
    s.kind = Kind::external;
    s.dir = std::move(dir);
    return s;
}

Raster load_external_output(const std::filesystem::path& dir, const std::string& stem,
                            int expected_w, int expected_h) {
    const std::filesystem::path file = dir / (stem + ".png");
    if (!std::filesystem::exists(file))
        fail(Errc::external_output_missing, "expected external stage output at " +
                                                file.string());
    const Raster img = load_image(file);
    if (img.width != expected_w || img.height != expected_h)
        fail(Errc::external_size_mismatch,
             file.string() + ": expected " + std::to_string(expected_w) + "x" +
                 std::to_string(expected_h) + ", got " + std::to_string(img.width) + "x" +
                 std::to_string(img.height));
    return to_grayscale(img);
}

Raster apply_sr(const Raster& img, const SrSpec& spec, const std::string& stem) {
    switch (spec.kind) {
    case SrSpec::Kind::identity:
        return img;
    case SrSpec::Kind::classical:
        if (spec.scale == 1)
            return img;
        return upscale(img, spec.scale, spec.kernel);
    case SrSpec::Kind::external:
        return load_external_output(spec.dir, stem, img.width * spec.scale,
                                    img.height * spec.scale);
    }
    fail(Errc::config_invalid, "bad SR spec");
}

std::array<std::uint64_t, 256> histogram(const Raster& img) {
    if (img.channels != 1)
        fail(Errc::channels_mismatch, "histogram needs a 1-channel raster");
    std::array<std::uint64_t, 256> hist{};
    for (std::uint8_t v : img.samples)
        ++hist[v];
    return hist;
}

namespace {

using u128 = unsigned __int128;

// Exact comparison of a/b vs c/d (all non-negative, b and d nonzero) via
// continued-fraction descent; never overflows.
int frac_cmp(u128 a, u128 b, u128 c, u128 d) {
    for (;;) {
        const u128 qa = a / b;
        const u128 qc = c / d;
        if (qa != qc)
            return qa < qc ? -1 : 1;
        a -= qa * b;
        c -= qc * d;
        if (a == 0 && c == 0)
            return 0;
        if (a == 0)
            return -1;
        if (c == 0)
            return 1;
        // a/b vs c/d with both in (0,1): compare reciprocals, flipped
        const u128 na = d, nb = c, nc = b, nd = a;
        a = na;
        b = nb;
        c = nc;
        d = nd;
    }
}

} // namespace

int otsu_threshold(const std::array<std::uint64_t, 256>& hist) {
    std::uint64_t total = 0, total_sum = 0;
    for (int v = 0; v < 256; ++v) {
        total += hist[v];
        total_sum += hist[v] * static_cast<std::uint64_t>(v);
    }
    if (total == 0)
        fail(Errc::empty_histogram, "histogram has no samples");

    // sigma_B^2(t) = w0*w1*(mu0-mu1)^2 is proportional to
    // (s0*N - S*n0)^2 / (n0*(N-n0)); compare those rationals exactly so the
    // smallest-t tie-break is deterministic.
    int best_t = 0;
    u128 best_num = 0, best_den = 1;
    std::uint64_t n0 = 0, s0 = 0;
    for (int t = 0; t < 256; ++t) {
        n0 += hist[t];
        s0 += hist[t] * static_cast<std::uint64_t>(t);
        const std::uint64_t n1 = total - n0;
        if (n0 == 0 || n1 == 0)
            continue; // empty class: sigma_B^2 = 0, never beats best >= 0
        const __int128 d = static_cast<__int128>(s0) * total -
                           static_cast<__int128>(total_sum) * n0;
        const u128 num = static_cast<u128>(d < 0 ? -d : d);
        const u128 num_sq = num * num;
        const u128 den = static_cast<u128>(n0) * n1;
        if (frac_cmp(num_sq, den, best_num, best_den) > 0) {
            best_num = num_sq;
            best_den = den;
            best_t = t;
        }
    }
    return best_t;
}

namespace {

// Integral images with a zero row/column of padding; sums are exact in
// uint64 for any plausible image.
struct IntegralPair {
    int w, h;
    std::vector<std::uint64_t> sum;
    std::vector<std::uint64_t> sq;

    explicit IntegralPair(const Raster& img) : w(img.width), h(img.height) {
        sum.assign(static_cast<std::size_t>(w + 1) * (h + 1), 0);
        sq.assign(static_cast<std::size_t>(w + 1) * (h + 1), 0);
        for (int y = 0; y < h; ++y) {
            std::uint64_t row = 0, row_sq = 0;
            for (int x = 0; x < w; ++x) {
                const std::uint64_t v = img.at(x, y);
                row += v;
                row_sq += v * v;
                const std::size_t i = static_cast<std::size_t>(y + 1) * (w + 1) + (x + 1);
                sum[i] = sum[i - (w + 1)] + row;
                sq[i] = sq[i - (w + 1)] + row_sq;
            }
        }
    }

    // window [x0,x1] x [y0,y1], inclusive
    void window(int x0, int y0, int x1, int y1, std::uint64_t& out_sum,
                std::uint64_t& out_sq) const {
        const std::size_t stride = w + 1;
        const std::size_t a = static_cast<std::size_t>(y0) * stride + x0;
        const std::size_t b = static_cast<std::size_t>(y0) * stride + (x1 + 1);
        const std::size_t c = static_cast<std::size_t>(y1 + 1) * stride + x0;
        const std::size_t d = static_cast<std::size_t>(y1 + 1) * stride + (x1 + 1);
        out_sum = sum[d] + sum[a] - sum[b] - sum[c];
        out_sq = sq[d] + sq[a] - sq[b] - sq[c];
    }
};

} // namespace

LocalStats local_stats(const Raster& img, int window) {
    if (img.channels != 1)
        fail(Errc::channels_mismatch, "local_stats needs a 1-channel raster");
    if (window % 2 == 0)
        fail(Errc::even_window, "window must be odd, got " + std::to_string(window));
    if (window < 1)
        fail(Errc::config_invalid, "window must be positive");

    const int half = window / 2;
    const IntegralPair integral(img);
    LocalStats stats;
    stats.width = img.width;
    stats.height = img.height;
    stats.mean.resize(img.pixel_count());
    stats.stddev.resize(img.pixel_count());

    for (int y = 0; y < img.height; ++y) {
        const int y0 = std::max(0, y - half);
        const int y1 = std::min(img.height - 1, y + half);
        for (int x = 0; x < img.width; ++x) {
            const int x0 = std::max(0, x - half);
            const int x1 = std::min(img.width - 1, x + half);
            std::uint64_t wsum, wsq;
            integral.window(x0, y0, x1, y1, wsum, wsq);
            const double area = static_cast<double>(x1 - x0 + 1) * (y1 - y0 + 1);
            const double mean = static_cast<double>(wsum) / area;
            // clamp: E[x^2]-E[x]^2 can dip below zero in float arithmetic
            const double var =
                std::max(0.0, static_cast<double>(wsq) / area - mean * mean);
            const std::size_t i = static_cast<std::size_t>(y) * img.width + x;
            stats.mean[i] = mean;
            stats.stddev[i] = std::sqrt(var);
        }
    }
    return stats;
}

BinaryMask local_threshold(const Raster& img, LocalMethod method, int window, double k,
                           double r) {
    if (method == LocalMethod::sauvola && r <= 0.0)
        fail(Errc::config_invalid, "sauvola R must be positive");
    const LocalStats stats = local_stats(img, window);
    BinaryMask out = BinaryMask::make(img.width, img.height);
    const std::size_t n = img.pixel_count();
    for (std::size_t i = 0; i < n; ++i) {
        const double m = stats.mean[i];
        const double s = stats.stddev[i];
        const double threshold =
            method == LocalMethod::niblack ? m + k * s : m * (1.0 + k * (s / r - 1.0));
        out.foreground[i] = img.samples[i] < threshold ? 1 : 0;
    }
    return out;
}

BinaryMask binarize(const Raster& img, const SegSpec& spec, const std::string& stem) {
    switch (spec.kind) {
    case SegSpec::Kind::otsu: {
        const Raster gray = to_grayscale(img);
        const int t = otsu_threshold(histogram(gray));
        BinaryMask out = BinaryMask::make(gray.width, gray.height);
        const std::size_t n = gray.pixel_count();
        for (std::size_t i = 0; i < n; ++i)
            out.foreground[i] = gray.samples[i] <= t ? 1 : 0;
        return out;
    }
    case SegSpec::Kind::niblack:
        return local_threshold(to_grayscale(img), LocalMethod::niblack, spec.window, spec.k);
    case SegSpec::Kind::sauvola:
        return local_threshold(to_grayscale(img), LocalMethod::sauvola, spec.window, spec.k,
                               spec.r);
    case SegSpec::Kind::external: {
        const Raster ext = load_external_output(spec.dir, stem, img.width, img.height);
        return mask_from_raster(ext, 128);
    }
    }
    fail(Errc::config_invalid, "bad segmentation spec");
}

} // namespace docsr
