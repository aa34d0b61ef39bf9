#pragma once

#include "gi/fusion.hpp"
#include "gi/image.hpp"
#include "gi/tiling.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace gi {

/// Procedural stand-ins for dot-, star- and box-patterned fabrics.
enum class Motif { Dot, Star, Box };

enum class DefectShape {
    Blob,        ///< disk of radius `size` centred at (row, col)
    Scratch,     ///< 2-row horizontal streak of length `size` starting at (row, col)
    MissingMotif ///< motif of the periodic cell containing (row, col) erased
};

struct DefectSpec {
    DefectShape shape = DefectShape::Blob;
    std::size_t row = 0;
    std::size_t col = 0;
    std::size_t size = 1;
    double delta = 0.0; ///< intensity added inside the region (ignored for MissingMotif)

    bool operator==(const DefectSpec&) const = default;
};

struct SyntheticSpec {
    Motif motif = Motif::Dot;
    Periodicity period{25, 30};
    std::size_t repeat_rows = 10; ///< whole periodic units down
    std::size_t repeat_cols = 8;  ///< whole periodic units across
    std::size_t margin_rows = 0;  ///< fractional strip appended at the bottom
    std::size_t margin_cols = 0;  ///< fractional strip appended at the right
    std::vector<DefectSpec> defects;
    double noise = 0.0; ///< half-width of the uniform per-pixel noise
    std::uint64_t seed = 1;

    std::size_t height() const noexcept { return period.rows * repeat_rows + margin_rows; }
    std::size_t width() const noexcept { return period.cols * repeat_cols + margin_cols; }

    bool operator==(const SyntheticSpec&) const = default;
};

struct SyntheticTexture {
    GrayImage image;     ///< 8-bit valued intensities in [0, 255]
    DefectMask defects;  ///< exact defect pixel region
};

inline constexpr double kBackgroundLevel = 90.0;
inline constexpr double kMotifLevel = 200.0;

/**
 * Renders the motif on every periodic cell, adds seeded uniform noise, then
 * composites the defects. Output is rounded and clamped to [0, 255].
 *
 * Noise comes from std::mt19937_64 seeded with spec.seed, one draw per pixel
 * in raster order, mapped to [-noise, noise) via the top 53 bits; the stream
 * is identical on every conforming platform.
 *
 * Throws InvalidArgument for zero repetitions or periods, negative noise, or
 * a defect that does not lie entirely inside the image.
 */
SyntheticTexture generate_texture(const SyntheticSpec& spec);

/// 1-based blocks of @p grid whose rectangle intersects a set pixel of
/// @p defect_pixels, ascending.
std::vector<std::size_t> ground_truth_blocks(const DefectMask& defect_pixels,
                                             const BlockGrid& grid);
std::vector<std::size_t> ground_truth_blocks(const SyntheticSpec& spec, const BlockGrid& grid);

std::string_view motif_name(Motif motif) noexcept;
std::string_view defect_shape_name(DefectShape shape) noexcept;

/**
 * Plain-text `key = value` document, one entry per line, `#` comments.
 * Keys: motif, period_rows, period_cols, repeat_rows, repeat_cols,
 * margin_rows, margin_cols, noise, seed, and any number of
 * `defect = <blob|scratch|missing_motif> <row> <col> <size> <delta>`.
 * Throws FormatError on unknown keys or malformed values.
 */
SyntheticSpec parse_synthetic_spec(std::istream& in);
SyntheticSpec parse_synthetic_spec(std::string_view text);
std::string format_synthetic_spec(const SyntheticSpec& spec);

} // namespace gi
