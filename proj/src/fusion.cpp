#include "gi/fusion.hpp"

#include "gi/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

namespace gi {

DefectMask::DefectMask(std::size_t height, std::size_t width)
    : height_(height), width_(width), bits_(height * width, 0) {
    if (height == 0 || width == 0) {
        throw InvalidArgument("DefectMask: dimensions must be positive");
    }
}

std::size_t DefectMask::population() const noexcept {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

GrayImage DefectMask::to_image(double on) const {
    GrayImage img(height_, width_);
    auto px = img.pixels();
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        px[i] = bits_[i] ? on : 0.0;
    }
    return img;
}

DefectMask rasterize_boundaries(std::span<const CropDetection> detections, std::size_t height,
                                std::size_t width) {
    DefectMask mask(height, width);
    for (const CropDetection& det : detections) {
        for (std::size_t k : det.blocks) {
            const Rect rect = det.grid.block_rect(k);
            if (rect.row + rect.height > height || rect.col + rect.width > width) {
                throw InvalidArgument("block " + std::to_string(k) + " of the " +
                                      std::string(corner_name(det.grid.crop().corner)) +
                                      " crop does not fit the " + std::to_string(height) + "x" +
                                      std::to_string(width) + " canvas");
            }
            const std::size_t last_r = rect.row + rect.height - 1;
            const std::size_t last_c = rect.col + rect.width - 1;
            for (std::size_t c = rect.col; c <= last_c; ++c) {
                mask.set(rect.row, c);
                mask.set(last_r, c);
            }
            for (std::size_t r = rect.row; r <= last_r; ++r) {
                mask.set(r, rect.col);
                mask.set(r, last_c);
            }
        }
    }
    return mask;
}

DefectMask fill_holes(const DefectMask& mask) {
    const std::size_t h = mask.height();
    const std::size_t w = mask.width();
    std::vector<std::uint8_t> outside(h * w, 0);
    std::vector<std::size_t> queue;
    queue.reserve(2 * (h + w));

    auto seed = [&](std::size_t r, std::size_t c) {
        const std::size_t i = r * w + c;
        if (!mask(r, c) && !outside[i]) {
            outside[i] = 1;
            queue.push_back(i);
        }
    };
    for (std::size_t c = 0; c < w; ++c) {
        seed(0, c);
        seed(h - 1, c);
    }
    for (std::size_t r = 0; r < h; ++r) {
        seed(r, 0);
        seed(r, w - 1);
    }

    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::size_t r = queue[head] / w;
        const std::size_t c = queue[head] % w;
        if (r > 0) seed(r - 1, c);
        if (r + 1 < h) seed(r + 1, c);
        if (c > 0) seed(r, c - 1);
        if (c + 1 < w) seed(r, c + 1);
    }

    DefectMask filled(h, w);
    for (std::size_t r = 0; r < h; ++r) {
        for (std::size_t c = 0; c < w; ++c) {
            filled.set(r, c, !outside[r * w + c]);
        }
    }
    return filled;
}

void CannyParams::validate() const {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw InvalidArgument("canny: sigma must be positive");
    }
    if (!(high_percentile > 0.0 && high_percentile <= 100.0)) {
        throw InvalidArgument("canny: high percentile must lie in (0, 100]");
    }
    if (!(low_ratio > 0.0 && low_ratio <= 1.0)) {
        throw InvalidArgument("canny: low ratio must lie in (0, 1]");
    }
}

std::vector<double> gaussian_kernel(double sigma) {
    if (!(sigma > 0.0)) {
        throw InvalidArgument("gaussian_kernel: sigma must be positive");
    }
    const auto half = static_cast<std::ptrdiff_t>(std::ceil(3.0 * sigma));
    std::vector<double> taps(static_cast<std::size_t>(2 * half + 1));
    double sum = 0.0;
    for (std::ptrdiff_t i = -half; i <= half; ++i) {
        const double x = static_cast<double>(i);
        const double v = std::exp(-(x * x) / (2.0 * sigma * sigma));
        taps[static_cast<std::size_t>(i + half)] = v;
        sum += v;
    }
    for (double& t : taps) {
        t /= sum;
    }
    return taps;
}

GrayImage gaussian_smooth(const GrayImage& img, double sigma) {
    const std::vector<double> taps = gaussian_kernel(sigma);
    const std::size_t h = img.height();
    const std::size_t w = img.width();
    if (h < taps.size() || w < taps.size()) {
        throw InvalidArgument("gaussian_smooth: " + std::to_string(h) + "x" + std::to_string(w) +
                              " image is smaller than the " + std::to_string(taps.size()) +
                              "-tap kernel");
    }
    const auto half = static_cast<std::ptrdiff_t>(taps.size() / 2);
    auto clamp = [](std::ptrdiff_t v, std::size_t n) {
        return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(v, 0, static_cast<std::ptrdiff_t>(n) - 1));
    };

    GrayImage horiz(h, w);
    for (std::size_t r = 0; r < h; ++r) {
        for (std::size_t c = 0; c < w; ++c) {
            double acc = 0.0;
            for (std::ptrdiff_t k = -half; k <= half; ++k) {
                acc += taps[static_cast<std::size_t>(k + half)] *
                       img(r, clamp(static_cast<std::ptrdiff_t>(c) + k, w));
            }
            horiz(r, c) = acc;
        }
    }
    GrayImage out(h, w);
    for (std::size_t r = 0; r < h; ++r) {
        for (std::size_t c = 0; c < w; ++c) {
            double acc = 0.0;
            for (std::ptrdiff_t k = -half; k <= half; ++k) {
                acc += taps[static_cast<std::size_t>(k + half)] *
                       horiz(clamp(static_cast<std::ptrdiff_t>(r) + k, h), c);
            }
            out(r, c) = acc;
        }
    }
    return out;
}

namespace {

// Row/column step along the quantised gradient direction.
std::pair<int, int> direction_step(double gx, double gy) {
    double angle = std::atan2(gy, gx) * 180.0 / std::numbers::pi;
    if (angle < 0.0) {
        angle += 180.0;
    }
    if (angle < 22.5 || angle >= 157.5) {
        return {0, 1};
    }
    if (angle < 67.5) {
        return {1, 1};
    }
    if (angle < 112.5) {
        return {1, 0};
    }
    return {1, -1};
}

} // namespace

DefectMask canny_edges(const GrayImage& img, const CannyParams& params) {
    params.validate();
    const GrayImage smooth = gaussian_smooth(img, params.sigma);
    const std::size_t h = smooth.height();
    const std::size_t w = smooth.width();

    GrayImage gx(h, w);
    GrayImage gy(h, w);
    GrayImage mag(h, w);
    for (std::size_t r = 0; r < h; ++r) {
        for (std::size_t c = 0; c < w; ++c) {
            const double right = smooth(r, std::min(c + 1, w - 1));
            const double left = smooth(r, c > 0 ? c - 1 : 0);
            const double down = smooth(std::min(r + 1, h - 1), c);
            const double up = smooth(r > 0 ? r - 1 : 0, c);
            gx(r, c) = 0.5 * (right - left);
            gy(r, c) = 0.5 * (down - up);
            mag(r, c) = std::hypot(gx(r, c), gy(r, c));
        }
    }

    auto at = [&](std::ptrdiff_t r, std::ptrdiff_t c) {
        if (r < 0 || c < 0 || r >= static_cast<std::ptrdiff_t>(h) ||
            c >= static_cast<std::ptrdiff_t>(w)) {
            return 0.0;
        }
        return mag(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
    };

    std::vector<std::uint8_t> peak(h * w, 0);
    std::vector<double> nonzero;
    for (std::size_t r = 0; r < h; ++r) {
        for (std::size_t c = 0; c < w; ++c) {
            const double m = mag(r, c);
            if (m <= 0.0) {
                continue;
            }
            nonzero.push_back(m);
            const auto [dr, dc] = direction_step(gx(r, c), gy(r, c));
            const auto ri = static_cast<std::ptrdiff_t>(r);
            const auto ci = static_cast<std::ptrdiff_t>(c);
            if (m > at(ri - dr, ci - dc) && m >= at(ri + dr, ci + dc)) {
                peak[r * w + c] = 1;
            }
        }
    }

    DefectMask edges(h, w);
    if (nonzero.empty()) {
        return edges;
    }
    std::sort(nonzero.begin(), nonzero.end());
    const auto rank = static_cast<std::size_t>(
        std::ceil(params.high_percentile / 100.0 * static_cast<double>(nonzero.size())));
    const double high = nonzero[std::clamp<std::size_t>(rank, 1, nonzero.size()) - 1];
    const double low = params.low_ratio * high;

    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < h * w; ++i) {
        if (peak[i] && mag.pixels()[i] >= high) {
            edges.set(i / w, i % w);
            stack.push_back(i);
        }
    }
    while (!stack.empty()) {
        const std::size_t i = stack.back();
        stack.pop_back();
        const auto r = static_cast<std::ptrdiff_t>(i / w);
        const auto c = static_cast<std::ptrdiff_t>(i % w);
        for (std::ptrdiff_t dr = -1; dr <= 1; ++dr) {
            for (std::ptrdiff_t dc = -1; dc <= 1; ++dc) {
                const std::ptrdiff_t nr = r + dr;
                const std::ptrdiff_t nc = c + dc;
                if ((dr == 0 && dc == 0) || nr < 0 || nc < 0 ||
                    nr >= static_cast<std::ptrdiff_t>(h) || nc >= static_cast<std::ptrdiff_t>(w)) {
                    continue;
                }
                const std::size_t j = static_cast<std::size_t>(nr) * w + static_cast<std::size_t>(nc);
                if (peak[j] && !edges(j / w, j % w) && mag.pixels()[j] >= low) {
                    edges.set(j / w, j % w);
                    stack.push_back(j);
                }
            }
        }
    }
    return edges;
}

FusedDefects fuse(std::span<const CropDetection> detections, std::size_t height,
                  std::size_t width, const CannyParams& params) {
    FusedDefects out;
    out.filled = fill_holes(rasterize_boundaries(detections, height, width));
    if (out.filled.population() == 0) {
        params.validate();
        out.edges = DefectMask(height, width);
        return out;
    }
    out.edges = canny_edges(out.filled.to_image(kMaxIntensity), params);
    return out;
}

GrayImage overlay(const GrayImage& base, const DefectMask& edges) {
    if (base.height() != edges.height() || base.width() != edges.width()) {
        throw InvalidArgument("overlay: image is " + std::to_string(base.height()) + "x" +
                              std::to_string(base.width()) + " but edge mask is " +
                              std::to_string(edges.height()) + "x" +
                              std::to_string(edges.width()));
    }
    GrayImage out = base;
    for (std::size_t r = 0; r < base.height(); ++r) {
        for (std::size_t c = 0; c < base.width(); ++c) {
            if (edges(r, c)) {
                out(r, c) = kMaxIntensity;
            }
        }
    }
    return out;
}

} // namespace gi
