#include "gi/image.hpp"

#include "gi/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gi {

GrayImage::GrayImage(std::size_t height, std::size_t width, double fill)
    : height_(height), width_(width) {
    if (height == 0 || width == 0) {
        throw InvalidArgument("GrayImage: dimensions must be positive, got " +
                              std::to_string(height) + "x" + std::to_string(width));
    }
    if (!std::isfinite(fill)) {
        throw InvalidArgument("GrayImage: fill value is not finite");
    }
    pixels_.assign(height * width, fill);
}

GrayImage::GrayImage(std::size_t height, std::size_t width, std::vector<double> pixels)
    : height_(height), width_(width), pixels_(std::move(pixels)) {
    if (height == 0 || width == 0) {
        throw InvalidArgument("GrayImage: dimensions must be positive, got " +
                              std::to_string(height) + "x" + std::to_string(width));
    }
    if (pixels_.size() != height * width) {
        throw InvalidArgument("GrayImage: expected " + std::to_string(height * width) +
                              " pixels, got " + std::to_string(pixels_.size()));
    }
    if (!std::all_of(pixels_.begin(), pixels_.end(), [](double v) { return std::isfinite(v); })) {
        throw InvalidArgument("GrayImage: pixel values must be finite");
    }
}

GradientField forward_differences(const GrayImage& img) {
    const std::size_t h = img.height();
    const std::size_t w = img.width();
    GradientField field{GrayImage(h, w), GrayImage(h, w), GrayImage(h, w)};

    for (std::size_t r = 0; r < h; ++r) {
        for (std::size_t c = 0; c < w; ++c) {
            const double f = img(r, c);
            const double dx = c + 1 < w ? img(r, c + 1) - f : 0.0;
            const double dy = r + 1 < h ? img(r + 1, c) - f : 0.0;
            field.gx(r, c) = dx;
            field.gy(r, c) = dy;
            field.magnitude(r, c) = std::sqrt(dx * dx + dy * dy);
        }
    }
    return field;
}

GrayImage gradient_space(const GrayImage& img) {
    return forward_differences(img).magnitude;
}

} // namespace gi
