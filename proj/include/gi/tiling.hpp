#pragma once

#include "gi/image.hpp"

#include <array>
#include <cstddef>
#include <string_view>

namespace gi {

/**
 * Size of one periodic unit of the texture.
 *
 * rows is the number of image rows spanned by a unit (vertical period) and
 * cols the number of columns (horizontal period).
 */
struct Periodicity {
    std::size_t rows = 0;
    std::size_t cols = 0;

    bool operator==(const Periodicity&) const = default;
};

/// Enumerator values double as indices into kCorners.
enum class Corner { TopLeft, BottomLeft, TopRight, BottomRight };

/// The four corners in the order crops are produced and reported.
inline constexpr std::array<Corner, 4> kCorners{Corner::TopLeft, Corner::BottomLeft,
                                                Corner::TopRight, Corner::BottomRight};

std::string_view corner_name(Corner corner) noexcept;

/// Parses "top_left", "bottom_left", "top_right" or "bottom_right".
Corner parse_corner(std::string_view name);

/// Half-open pixel rectangle [row, row + height) x [col, col + width).
struct Rect {
    std::size_t row = 0;
    std::size_t col = 0;
    std::size_t height = 0;
    std::size_t width = 0;

    bool contains(std::size_t r, std::size_t c) const noexcept {
        return r >= row && r < row + height && c >= col && c < col + width;
    }
    bool operator==(const Rect&) const = default;
};

/// Largest whole-period sub-image anchored at one image corner.
struct CropSpec {
    Corner corner = Corner::TopLeft;
    std::size_t row_offset = 0;
    std::size_t col_offset = 0;
    std::size_t height = 0;
    std::size_t width = 0;

    Rect rect() const noexcept { return {row_offset, col_offset, height, width}; }
    bool operator==(const CropSpec&) const = default;
};

/**
 * Crops of an M x N image from all four corners. Each crop is
 * floor(M / rows) * rows high and floor(N / cols) * cols wide; when M and N
 * are exact multiples the four crops coincide with the full image.
 *
 * Throws PeriodicityError when fewer than two whole units fit along either
 * axis, and InvalidArgument for a zero period.
 */
std::array<CropSpec, 4> four_crops(std::size_t height, std::size_t width, Periodicity period);

/**
 * Decomposition of a crop into periodic blocks, numbered 1..n row-major.
 *
 * Block k covers rows [row_offset + ((k-1) / cols_of_blocks) * period.rows, +period.rows)
 * and columns [col_offset + ((k-1) % cols_of_blocks) * period.cols, +period.cols).
 */
class BlockGrid {
public:
    BlockGrid(const CropSpec& crop, Periodicity period);

    const CropSpec& crop() const noexcept { return crop_; }
    Periodicity period() const noexcept { return period_; }
    std::size_t rows_of_blocks() const noexcept { return rows_of_blocks_; }
    std::size_t cols_of_blocks() const noexcept { return cols_of_blocks_; }
    std::size_t block_count() const noexcept { return rows_of_blocks_ * cols_of_blocks_; }

    /// Pixel rectangle of 1-based block @p k in full-image coordinates.
    Rect block_rect(std::size_t k) const;

    /// 1-based index of the block containing full-image pixel (r, c), or 0
    /// when the pixel lies outside the crop.
    std::size_t block_at(std::size_t r, std::size_t c) const noexcept;

private:
    CropSpec crop_;
    Periodicity period_;
    std::size_t rows_of_blocks_;
    std::size_t cols_of_blocks_;
};

BlockGrid block_grid(const CropSpec& crop, Periodicity period);

/// Copy of the period.rows x period.cols sub-image for block @p k (1-based).
GrayImage extract_block(const GrayImage& g, const BlockGrid& grid, std::size_t k);

} // namespace gi
