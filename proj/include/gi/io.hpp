#pragma once

#include "gi/image.hpp"

#include <filesystem>
#include <iosfwd>
#include <string_view>

namespace gi {

/// Reads a binary (P5) or ASCII (P2) PGM with maxval <= 255.
GrayImage read_pgm(std::istream& in);

/// Writes a binary P5 PGM; values are rounded and clamped to [0, 255].
void write_pgm(std::ostream& out, const GrayImage& img);

/// Whether this build can decode PNG input.
bool png_supported() noexcept;

/**
 * Decodes a PGM or PNG file, picked by magic bytes. Colour PNGs are reduced
 * with luminance weights 0.299 R + 0.587 G + 0.114 B.
 *
 * Throws Error when the file cannot be opened and FormatError when its
 * contents cannot be decoded.
 */
GrayImage read_image(const std::filesystem::path& path);

/// Writes to a sibling temporary file, then renames it over @p path, so a
/// failed run never leaves a partial file behind.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

void write_pgm_file(const std::filesystem::path& path, const GrayImage& img);

} // namespace gi
