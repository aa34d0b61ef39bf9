#include "gi/features.hpp"

#include "gi/error.hpp"

#include <cmath>
#include <string>

namespace gi {

EnergyVector block_energies(const GrayImage& g, const BlockGrid& grid) {
    const CropSpec& crop = grid.crop();
    if (crop.row_offset + crop.height > g.height() || crop.col_offset + crop.width > g.width()) {
        throw InvalidArgument("crop at (" + std::to_string(crop.row_offset) + ", " +
                              std::to_string(crop.col_offset) + ") of size " +
                              std::to_string(crop.height) + "x" + std::to_string(crop.width) +
                              " does not fit the " + std::to_string(g.height()) + "x" +
                              std::to_string(g.width()) + " gradient image");
    }

    EnergyVector energies(grid.block_count(), 0.0);
    for (std::size_t k = 1; k <= grid.block_count(); ++k) {
        const Rect rect = grid.block_rect(k);
        double sum = 0.0;
        for (std::size_t r = rect.row; r < rect.row + rect.height; ++r) {
            const auto line = g.row(r).subspan(rect.col, rect.width);
            for (double v : line) {
                sum += std::abs(v);
            }
        }
        energies[k - 1] = sum;
    }
    return energies;
}

} // namespace gi
