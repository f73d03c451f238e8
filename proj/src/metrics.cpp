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

#include "docsr/metrics.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "docsr/error.hpp"

namespace docsr {

namespace {

void require_1ch_same_size(const Raster& a, const Raster& b, const char* op) {
    if (a.channels != 1 || b.channels != 1)
        fail(Errc::channels_mismatch, std::string(op) + " needs 1-channel rasters");
    if (!a.same_size(b))
        fail(Errc::size_mismatch, std::string(op) + ": " + std::to_string(a.width) + "x" +
                                      std::to_string(a.height) + " vs " +
                                      std::to_string(b.width) + "x" +
                                      std::to_string(b.height));
}

constexpr int kSsimWindow = 11;
constexpr double kSsimSigma = 1.5;
constexpr double kC1 = (0.01 * 255.0) * (0.01 * 255.0); // 6.5025
constexpr double kC2 = (0.03 * 255.0) * (0.03 * 255.0); // 58.5225

// Normalized 1-D Gaussian; the 2-D window is its outer product, so the 2-D
// kernel sums to 1 as well.
const std::vector<double>& gaussian_taps() {
    static const std::vector<double> taps = [] {
        std::vector<double> t(kSsimWindow);
        double sum = 0.0;
        for (int i = 0; i < kSsimWindow; ++i) {
            const double d = i - (kSsimWindow - 1) / 2.0;
            t[i] = std::exp(-(d * d) / (2.0 * kSsimSigma * kSsimSigma));
            sum += t[i];
        }
        for (double& v : t)
            v /= sum;
        return t;
    }();
    return taps;
}

// Gaussian-filters `plane` (w x h) at all fully-interior window centers;
// output is (w-10) x (h-10).
std::vector<double> blur_valid(const std::vector<double>& plane, int w, int h) {
    const auto& g = gaussian_taps();
    const int out_w = w - kSsimWindow + 1;
    const int out_h = h - kSsimWindow + 1;
    std::vector<double> mid(static_cast<std::size_t>(out_w) * h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < out_w; ++x) {
            double acc = 0.0;
            for (int k = 0; k < kSsimWindow; ++k)
                acc += g[k] * plane[static_cast<std::size_t>(y) * w + x + k];
            mid[static_cast<std::size_t>(y) * out_w + x] = acc;
        }
    std::vector<double> out(static_cast<std::size_t>(out_w) * out_h);
    for (int y = 0; y < out_h; ++y)
        for (int x = 0; x < out_w; ++x) {
            double acc = 0.0;
            for (int k = 0; k < kSsimWindow; ++k)
                acc += g[k] * mid[static_cast<std::size_t>(y + k) * out_w + x];
            out[static_cast<std::size_t>(y) * out_w + x] = acc;
        }
    return out;
}

} // namespace

PsnrResult psnr(const Raster& a, const Raster& b) {
    require_1ch_same_size(a, b, "psnr");
    const std::size_t n = a.pixel_count();
    std::uint64_t sq_err = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const int d = static_cast<int>(a.samples[i]) - static_cast<int>(b.samples[i]);
        sq_err += static_cast<std::uint64_t>(d) * d;
    }
    PsnrResult res;
    res.mse = static_cast<double>(sq_err) / static_cast<double>(n);
    if (sq_err != 0)
        res.psnr_db = 10.0 * std::log10(255.0 * 255.0 / res.mse);
    return res;
}

double ssim(const Raster& a, const Raster& b) {
    require_1ch_same_size(a, b, "ssim");
    if (a.width < kSsimWindow || a.height < kSsimWindow)
        fail(Errc::image_too_small, "ssim needs at least " + std::to_string(kSsimWindow) +
                                        "x" + std::to_string(kSsimWindow) + " images, got " +
                                        std::to_string(a.width) + "x" +
                                        std::to_string(a.height));

    const int w = a.width, h = a.height;
    const std::size_t n = a.pixel_count();
    std::vector<double> x(n), y(n), xx(n), yy(n), xy(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = a.samples[i];
        y[i] = b.samples[i];
        xx[i] = x[i] * x[i];
        yy[i] = y[i] * y[i];
        xy[i] = x[i] * y[i];
    }

    const std::vector<double> mu_x = blur_valid(x, w, h);
    const std::vector<double> mu_y = blur_valid(y, w, h);
    const std::vector<double> m_xx = blur_valid(xx, w, h);
    const std::vector<double> m_yy = blur_valid(yy, w, h);
    const std::vector<double> m_xy = blur_valid(xy, w, h);

    double total = 0.0;
    const std::size_t windows = mu_x.size();
    for (std::size_t i = 0; i < windows; ++i) {
        const double mx = mu_x[i], my = mu_y[i];
        const double var_x = m_xx[i] - mx * mx;
        const double var_y = m_yy[i] - my * my;
        const double cov = m_xy[i] - mx * my;
        const double num = (2.0 * mx * my + kC1) * (2.0 * cov + kC2);
        const double den = (mx * mx + my * my + kC1) * (var_x + var_y + kC2);
        total += num / den;
    }
    return total / static_cast<double>(windows);
}

FMeasureResult f_measure(const BinaryMask& pred, const BinaryMask& gt) {
    if (pred.width != gt.width || pred.height != gt.height)
        fail(Errc::size_mismatch, "f_measure: " + std::to_string(pred.width) + "x" +
                                      std::to_string(pred.height) + " vs " +
                                      std::to_string(gt.width) + "x" +
                                      std::to_string(gt.height));
    FMeasureResult res;
    const std::size_t n = pred.foreground.size();
    for (std::size_t i = 0; i < n; ++i) {
        const bool p = pred.foreground[i] != 0;
        const bool g = gt.foreground[i] != 0;
        if (p && g)
            ++res.counts.tp;
        else if (p && !g)
            ++res.counts.fp;
        else if (!p && g)
            ++res.counts.fn;
        else
            ++res.counts.tn;
    }
    const auto& c = res.counts;
    res.precision = (c.tp + c.fp) ? static_cast<double>(c.tp) / (c.tp + c.fp)
                                  : (c.fn == 0 ? 1.0 : 0.0);
    res.recall = (c.tp + c.fn) ? static_cast<double>(c.tp) / (c.tp + c.fn)
                               : (c.fp == 0 ? 1.0 : 0.0);
    const double pr = res.precision + res.recall;
    res.f_measure = pr > 0.0 ? 2.0 * res.precision * res.recall / pr : 0.0;
    // empty ground truth: perfect only if prediction is empty too
    if (c.tp + c.fn == 0)
        res.f_measure = (c.fp == 0) ? 1.0 : 0.0;
    return res;
}

MetricReport metric_suite(const BinaryMask& pred, const BinaryMask& gt) {
    const Raster pred_img = raster_from_mask(pred);
    const Raster gt_img = raster_from_mask(gt);
    const PsnrResult p = psnr(pred_img, gt_img);
    const double s = ssim(pred_img, gt_img);
    const FMeasureResult f = f_measure(pred, gt);

    MetricReport report;
    report.mse = p.mse;
    report.psnr_db = p.psnr_db;
    report.ssim = s;
    report.precision = f.precision;
    report.recall = f.recall;
    report.f_measure = f.f_measure;
    report.counts = f.counts;
    report.width = pred.width;
    report.height = pred.height;
    return report;
}

} // namespace docsr
