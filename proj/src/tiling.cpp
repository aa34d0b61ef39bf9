#include "gi/tiling.hpp"

#include "gi/error.hpp"

#include <string>

namespace gi {

std::string_view corner_name(Corner corner) noexcept {
    switch (corner) {
    case Corner::TopLeft: return "top_left";
    case Corner::BottomLeft: return "bottom_left";
    case Corner::TopRight: return "top_right";
    case Corner::BottomRight: return "bottom_right";
    }
    return "unknown";
}

Corner parse_corner(std::string_view name) {
    for (Corner c : kCorners) {
        if (corner_name(c) == name) {
            return c;
        }
    }
    throw InvalidArgument("unknown corner '" + std::string(name) + "'");
}

std::array<CropSpec, 4> four_crops(std::size_t height, std::size_t width, Periodicity period) {
    if (period.rows == 0 || period.cols == 0) {
        throw InvalidArgument("periodicity must be at least 1x1");
    }
    const std::size_t units_down = height / period.rows;
    const std::size_t units_across = width / period.cols;
    if (units_down < 2) {
        throw PeriodicityError("image height " + std::to_string(height) + " holds " +
                               std::to_string(units_down) + " whole vertical period(s) of " +
                               std::to_string(period.rows) + " rows; at least 2 are required");
    }
    if (units_across < 2) {
        throw PeriodicityError("image width " + std::to_string(width) + " holds " +
                               std::to_string(units_across) + " whole horizontal period(s) of " +
                               std::to_string(period.cols) + " columns; at least 2 are required");
    }

    const std::size_t crop_h = units_down * period.rows;
    const std::size_t crop_w = units_across * period.cols;
    const std::size_t bottom = height - crop_h;
    const std::size_t right = width - crop_w;

    std::array<CropSpec, 4> crops{};
    for (std::size_t i = 0; i < kCorners.size(); ++i) {
        const Corner corner = kCorners[i];
        const bool at_bottom = corner == Corner::BottomLeft || corner == Corner::BottomRight;
        const bool at_right = corner == Corner::TopRight || corner == Corner::BottomRight;
        crops[i] = CropSpec{corner, at_bottom ? bottom : 0, at_right ? right : 0, crop_h, crop_w};
    }
    return crops;
}

BlockGrid::BlockGrid(const CropSpec& crop, Periodicity period)
    : crop_(crop), period_(period), rows_of_blocks_(0), cols_of_blocks_(0) {
    if (period.rows == 0 || period.cols == 0) {
        throw InvalidArgument("periodicity must be at least 1x1");
    }
    if (crop.height == 0 || crop.width == 0 || crop.height % period.rows != 0 ||
        crop.width % period.cols != 0) {
        throw InvalidArgument("crop " + std::to_string(crop.height) + "x" +
                              std::to_string(crop.width) + " is not a whole multiple of the " +
                              std::to_string(period.rows) + "x" + std::to_string(period.cols) +
                              " period");
    }
    rows_of_blocks_ = crop.height / period.rows;
    cols_of_blocks_ = crop.width / period.cols;
}

Rect BlockGrid::block_rect(std::size_t k) const {
    if (k < 1 || k > block_count()) {
        throw InvalidArgument("block index " + std::to_string(k) + " outside 1.." +
                              std::to_string(block_count()));
    }
    const std::size_t i = k - 1;
    return Rect{crop_.row_offset + (i / cols_of_blocks_) * period_.rows,
                crop_.col_offset + (i % cols_of_blocks_) * period_.cols, period_.rows,
                period_.cols};
}

std::size_t BlockGrid::block_at(std::size_t r, std::size_t c) const noexcept {
    if (!crop_.rect().contains(r, c)) {
        return 0;
    }
    const std::size_t br = (r - crop_.row_offset) / period_.rows;
    const std::size_t bc = (c - crop_.col_offset) / period_.cols;
    return br * cols_of_blocks_ + bc + 1;
}

BlockGrid block_grid(const CropSpec& crop, Periodicity period) {
    return BlockGrid(crop, period);
}

GrayImage extract_block(const GrayImage& g, const BlockGrid& grid, std::size_t k) {
    const Rect rect = grid.block_rect(k);
    if (rect.row + rect.height > g.height() || rect.col + rect.width > g.width()) {
        throw InvalidArgument("block " + std::to_string(k) + " extends outside the " +
                              std::to_string(g.height()) + "x" + std::to_string(g.width()) +
                              " image");
    }
    GrayImage block(rect.height, rect.width);
    for (std::size_t r = 0; r < rect.height; ++r) {
        for (std::size_t c = 0; c < rect.width; ++c) {
            block(r, c) = g(rect.row + r, rect.col + c);
        }
    }
    return block;
}

} // namespace gi
