#pragma once

#include "gi/image.hpp"
#include "gi/tiling.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace gi {

/// Binary mask in full-image coordinates (1 = defect / edge).
class DefectMask {
public:
    DefectMask() = default;
    DefectMask(std::size_t height, std::size_t width);

    std::size_t height() const noexcept { return height_; }
    std::size_t width() const noexcept { return width_; }

    bool operator()(std::size_t r, std::size_t c) const noexcept {
        return bits_[r * width_ + c] != 0;
    }
    void set(std::size_t r, std::size_t c, bool value = true) noexcept {
        bits_[r * width_ + c] = value ? 1 : 0;
    }

    std::span<const std::uint8_t> bits() const noexcept { return bits_; }
    std::size_t population() const noexcept;

    /// Mask scaled to {0, on}.
    GrayImage to_image(double on = 255.0) const;

    bool operator==(const DefectMask&) const = default;

private:
    std::size_t height_ = 0;
    std::size_t width_ = 0;
    std::vector<std::uint8_t> bits_;
};

/// Defective blocks found in one crop.
struct CropDetection {
    BlockGrid grid;
    std::vector<std::size_t> blocks; ///< 1-based block indices of grid
};

/**
 * One-pixel-wide outline of every detected block, unioned over all crops.
 * Throws InvalidArgument if a block index is out of range or a block does
 * not fit the height x width canvas.
 */
DefectMask rasterize_boundaries(std::span<const CropDetection> detections, std::size_t height,
                                std::size_t width);

/// Sets every background pixel that has no 4-connected background path to
/// the image border.
DefectMask fill_holes(const DefectMask& mask);

struct CannyParams {
    double sigma = 1.4;
    double high_percentile = 90.0; ///< of the nonzero gradient magnitudes
    double low_ratio = 0.4;        ///< low threshold = low_ratio * high

    /// Throws InvalidArgument unless sigma > 0, 0 < high_percentile <= 100
    /// and 0 < low_ratio <= 1.
    void validate() const;
};

/// Normalised 1-D Gaussian taps, half-width ceil(3 sigma).
std::vector<double> gaussian_kernel(double sigma);

/// Separable Gaussian blur with replicated borders. Throws InvalidArgument
/// when the image is smaller than the kernel along either axis.
GrayImage gaussian_smooth(const GrayImage& img, double sigma);

/**
 * Canny edge detector:
 *  1. Gaussian smoothing (gaussian_smooth),
 *  2. centred-difference gradient,
 *  3. non-maximum suppression along the gradient direction quantised to
 *     0/45/90/135 degrees; a pixel survives if it is strictly greater than
 *     its backward neighbour and not smaller than its forward neighbour,
 *  4. thresholds: high is the given percentile (nearest rank) of the
 *     nonzero magnitudes, low = low_ratio * high,
 *  5. hysteresis: strong pixels plus weak pixels 8-connected to them.
 */
DefectMask canny_edges(const GrayImage& img, const CannyParams& params);

struct FusedDefects {
    DefectMask filled;
    DefectMask edges;
};

/// rasterize_boundaries -> fill_holes -> canny_edges on the filled mask
/// scaled to {0, 255}.
FusedDefects fuse(std::span<const CropDetection> detections, std::size_t height,
                  std::size_t width, const CannyParams& params);

inline constexpr double kMaxIntensity = 255.0;

/// Copy of @p base with every edge pixel burnt in at kMaxIntensity.
GrayImage overlay(const GrayImage& base, const DefectMask& edges);

} // namespace gi
