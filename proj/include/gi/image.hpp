#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gi {

/**
 * @brief Row-major grayscale raster with real-valued intensities.
 *
 * Pixel (row, col) lives at index row * width + col. 8-bit inputs are
 * promoted to double on load so block sums never saturate.
 */
class GrayImage {
public:
    GrayImage() = default;

    /// Zero-initialised image. Throws InvalidArgument on a zero dimension.
    GrayImage(std::size_t height, std::size_t width, double fill = 0.0);

    /// Adopts @p pixels; throws unless pixels.size() == height * width and
    /// every value is finite.
    GrayImage(std::size_t height, std::size_t width, std::vector<double> pixels);

    std::size_t height() const noexcept { return height_; }
    std::size_t width() const noexcept { return width_; }
    std::size_t size() const noexcept { return pixels_.size(); }
    bool empty() const noexcept { return pixels_.empty(); }

    double operator()(std::size_t row, std::size_t col) const noexcept {
        return pixels_[row * width_ + col];
    }
    double& operator()(std::size_t row, std::size_t col) noexcept {
        return pixels_[row * width_ + col];
    }

    std::span<const double> pixels() const noexcept { return pixels_; }
    std::span<double> pixels() noexcept { return pixels_; }

    std::span<const double> row(std::size_t r) const noexcept {
        return std::span<const double>(pixels_).subspan(r * width_, width_);
    }

    bool operator==(const GrayImage&) const = default;

private:
    std::size_t height_ = 0;
    std::size_t width_ = 0;
    std::vector<double> pixels_;
};

/// Horizontal and vertical forward differences plus their Euclidean norm.
struct GradientField {
    GrayImage gx;
    GrayImage gy;
    GrayImage magnitude;
};

/**
 * Forward differences with the (-1, 1) mask along each axis:
 *   gx(r, c) = f(r, c + 1) - f(r, c),  gy(r, c) = f(r + 1, c) - f(r, c).
 * x is the column index and y the row index. The last column of gx and the
 * last row of gy are 0 (replicated border), so the field keeps the input's
 * M x N shape.
 */
GradientField forward_differences(const GrayImage& img);

/// Magnitude plane of forward_differences(): the gradient-space image.
GrayImage gradient_space(const GrayImage& img);

} // namespace gi
