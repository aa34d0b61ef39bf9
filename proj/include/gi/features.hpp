#pragma once

#include "gi/image.hpp"
#include "gi/tiling.hpp"

#include <vector>

namespace gi {

/// L1 energy of every block of a grid; values[k - 1] belongs to block k.
using EnergyVector = std::vector<double>;

/**
 * Sum of |g| over each block of @p grid. @p g is the full gradient-space
 * image; the grid carries the crop offsets. Each block is reduced
 * left-to-right, top-to-bottom so results are bit-stable.
 *
 * Throws InvalidArgument when the crop does not fit inside @p g.
 */
EnergyVector block_energies(const GrayImage& g, const BlockGrid& grid);

} // namespace gi
