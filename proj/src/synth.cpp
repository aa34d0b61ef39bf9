#include "gi/synth.hpp"

#include "gi/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <random>
#include <sstream>

namespace gi {
namespace {

constexpr double kMotifAmplitude = kMotifLevel - kBackgroundLevel;

// Motif contribution above background at cell-local (y, x).
double motif_value(Motif motif, Periodicity period, std::size_t y, std::size_t x) {
    const double cy = (static_cast<double>(period.rows) - 1.0) / 2.0;
    const double cx = (static_cast<double>(period.cols) - 1.0) / 2.0;
    const double dy = static_cast<double>(y) - cy;
    const double dx = static_cast<double>(x) - cx;
    const double unit = static_cast<double>(std::min(period.rows, period.cols));

    switch (motif) {
    case Motif::Dot: {
        const double s = unit / 6.0;
        return kMotifAmplitude * std::exp(-(dy * dy + dx * dx) / (2.0 * s * s));
    }
    case Motif::Star: {
        const double arm = unit / 3.0;
        const bool horizontal = std::abs(dy) <= 1.0 && std::abs(dx) <= arm;
        const bool vertical = std::abs(dx) <= 1.0 && std::abs(dy) <= arm;
        return horizontal || vertical ? kMotifAmplitude : 0.0;
    }
    case Motif::Box: {
        const double inset = std::floor(unit / 5.0);
        const double top = inset;
        const double left = inset;
        const double bottom = static_cast<double>(period.rows) - 1.0 - inset;
        const double right = static_cast<double>(period.cols) - 1.0 - inset;
        const auto fy = static_cast<double>(y);
        const auto fx = static_cast<double>(x);
        const bool inside = fy >= top && fy <= bottom && fx >= left && fx <= right;
        const bool core = fy >= top + 2 && fy <= bottom - 2 && fx >= left + 2 && fx <= right - 2;
        return inside && !core ? kMotifAmplitude : 0.0;
    }
    }
    return 0.0;
}

void require_inside(bool ok, const DefectSpec& d, const SyntheticSpec& spec) {
    if (!ok) {
        throw InvalidArgument(std::string(defect_shape_name(d.shape)) + " defect at (" +
                              std::to_string(d.row) + ", " + std::to_string(d.col) +
                              ") with size " + std::to_string(d.size) +
                              " does not fit inside the " + std::to_string(spec.height()) + "x" +
                              std::to_string(spec.width()) + " image");
    }
}

} // namespace

std::string_view motif_name(Motif motif) noexcept {
    switch (motif) {
    case Motif::Dot: return "dot";
    case Motif::Star: return "star";
    case Motif::Box: return "box";
    }
    return "unknown";
}

std::string_view defect_shape_name(DefectShape shape) noexcept {
    switch (shape) {
    case DefectShape::Blob: return "blob";
    case DefectShape::Scratch: return "scratch";
    case DefectShape::MissingMotif: return "missing_motif";
    }
    return "unknown";
}

SyntheticTexture generate_texture(const SyntheticSpec& spec) {
    if (spec.period.rows == 0 || spec.period.cols == 0) {
        throw InvalidArgument("synthetic texture: periods must be positive");
    }
    if (spec.repeat_rows == 0 || spec.repeat_cols == 0) {
        throw InvalidArgument("synthetic texture: repetitions must be positive");
    }
    if (!(spec.noise >= 0.0) || !std::isfinite(spec.noise)) {
        throw InvalidArgument("synthetic texture: noise amplitude must be finite and >= 0");
    }

    const std::size_t h = spec.height();
    const std::size_t w = spec.width();
    const Periodicity p = spec.period;

    // One tile is enough; the image is exactly periodic before noise.
    std::vector<double> tile(p.rows * p.cols);
    for (std::size_t y = 0; y < p.rows; ++y) {
        for (std::size_t x = 0; x < p.cols; ++x) {
            tile[y * p.cols + x] = motif_value(spec.motif, p, y, x);
        }
    }

    std::vector<double> px(h * w);
    std::mt19937_64 rng(spec.seed);
    for (std::size_t r = 0; r < h; ++r) {
        for (std::size_t c = 0; c < w; ++c) {
            double v = kBackgroundLevel + tile[(r % p.rows) * p.cols + (c % p.cols)];
            if (spec.noise > 0.0) {
                const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
                v += spec.noise * (2.0 * u - 1.0);
            }
            px[r * w + c] = v;
        }
    }

    DefectMask region(h, w);
    for (const DefectSpec& d : spec.defects) {
        switch (d.shape) {
        case DefectShape::Blob: {
            require_inside(d.size >= 1 && d.row >= d.size && d.col >= d.size &&
                               d.row + d.size < h && d.col + d.size < w,
                           d, spec);
            const auto rad = static_cast<double>(d.size);
            for (std::size_t r = d.row - d.size; r <= d.row + d.size; ++r) {
                for (std::size_t c = d.col - d.size; c <= d.col + d.size; ++c) {
                    const double dy = static_cast<double>(r) - static_cast<double>(d.row);
                    const double dx = static_cast<double>(c) - static_cast<double>(d.col);
                    if (dy * dy + dx * dx <= rad * rad) {
                        px[r * w + c] += d.delta;
                        region.set(r, c);
                    }
                }
            }
            break;
        }
        case DefectShape::Scratch: {
            require_inside(d.size >= 1 && d.row + 2 <= h && d.col + d.size <= w, d, spec);
            for (std::size_t r = d.row; r < d.row + 2; ++r) {
                for (std::size_t c = d.col; c < d.col + d.size; ++c) {
                    px[r * w + c] += d.delta;
                    region.set(r, c);
                }
            }
            break;
        }
        case DefectShape::MissingMotif: {
            require_inside(d.row < h && d.col < w, d, spec);
            const std::size_t top = d.row / p.rows * p.rows;
            const std::size_t left = d.col / p.cols * p.cols;
            for (std::size_t r = top; r < std::min(top + p.rows, h); ++r) {
                for (std::size_t c = left; c < std::min(left + p.cols, w); ++c) {
                    const double m = tile[(r - top) * p.cols + (c - left)];
                    if (m > 0.5) {
                        px[r * w + c] -= m;
                        region.set(r, c);
                    }
                }
            }
            break;
        }
        }
    }

    for (double& v : px) {
        v = std::clamp(std::round(v), 0.0, 255.0);
    }
    return SyntheticTexture{GrayImage(h, w, std::move(px)), std::move(region)};
}

std::vector<std::size_t> ground_truth_blocks(const DefectMask& defect_pixels,
                                             const BlockGrid& grid) {
    std::vector<std::uint8_t> hit(grid.block_count() + 1, 0);
    for (std::size_t r = 0; r < defect_pixels.height(); ++r) {
        for (std::size_t c = 0; c < defect_pixels.width(); ++c) {
            if (defect_pixels(r, c)) {
                hit[grid.block_at(r, c)] = 1;
            }
        }
    }
    std::vector<std::size_t> blocks;
    for (std::size_t k = 1; k < hit.size(); ++k) {
        if (hit[k]) {
            blocks.push_back(k);
        }
    }
    return blocks;
}

std::vector<std::size_t> ground_truth_blocks(const SyntheticSpec& spec, const BlockGrid& grid) {
    return ground_truth_blocks(generate_texture(spec).defects, grid);
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view text, std::string_view key, std::size_t line) {
    T value{};
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw FormatError("line " + std::to_string(line) + ": '" + std::string(text) +
                          "' is not a valid value for " + std::string(key));
    }
    return value;
}

std::vector<std::string_view> split_words(std::string_view s) {
    std::vector<std::string_view> words;
    while (!(s = trim(s)).empty()) {
        const auto end = s.find_first_of(" \t");
        words.push_back(s.substr(0, end));
        if (end == std::string_view::npos) {
            break;
        }
        s.remove_prefix(end);
    }
    return words;
}

} // namespace

SyntheticSpec parse_synthetic_spec(std::istream& in) {
    SyntheticSpec spec;
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string_view text = raw;
        if (const auto hash = text.find('#'); hash != std::string_view::npos) {
            text = text.substr(0, hash);
        }
        text = trim(text);
        if (text.empty()) {
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string_view::npos) {
            throw FormatError("line " + std::to_string(line) + ": expected 'key = value'");
        }
        const std::string_view key = trim(text.substr(0, eq));
        const std::string_view value = trim(text.substr(eq + 1));

        if (key == "motif") {
            if (value == "dot") {
                spec.motif = Motif::Dot;
            } else if (value == "star") {
                spec.motif = Motif::Star;
            } else if (value == "box") {
                spec.motif = Motif::Box;
            } else {
                throw FormatError("line " + std::to_string(line) + ": unknown motif '" +
                                  std::string(value) + "'");
            }
        } else if (key == "period_rows") {
            spec.period.rows = parse_number<std::size_t>(value, key, line);
        } else if (key == "period_cols") {
            spec.period.cols = parse_number<std::size_t>(value, key, line);
        } else if (key == "repeat_rows") {
            spec.repeat_rows = parse_number<std::size_t>(value, key, line);
        } else if (key == "repeat_cols") {
            spec.repeat_cols = parse_number<std::size_t>(value, key, line);
        } else if (key == "margin_rows") {
            spec.margin_rows = parse_number<std::size_t>(value, key, line);
        } else if (key == "margin_cols") {
            spec.margin_cols = parse_number<std::size_t>(value, key, line);
        } else if (key == "noise") {
            spec.noise = parse_number<double>(value, key, line);
        } else if (key == "seed") {
            spec.seed = parse_number<std::uint64_t>(value, key, line);
        } else if (key == "defect") {
            const auto words = split_words(value);
            if (words.size() != 5) {
                throw FormatError("line " + std::to_string(line) +
                                  ": defect needs '<shape> <row> <col> <size> <delta>'");
            }
            DefectSpec d;
            if (words[0] == "blob") {
                d.shape = DefectShape::Blob;
            } else if (words[0] == "scratch") {
                d.shape = DefectShape::Scratch;
            } else if (words[0] == "missing_motif") {
                d.shape = DefectShape::MissingMotif;
            } else {
                throw FormatError("line " + std::to_string(line) + ": unknown defect shape '" +
                                  std::string(words[0]) + "'");
            }
            d.row = parse_number<std::size_t>(words[1], "defect row", line);
            d.col = parse_number<std::size_t>(words[2], "defect col", line);
            d.size = parse_number<std::size_t>(words[3], "defect size", line);
            d.delta = parse_number<double>(words[4], "defect delta", line);
            spec.defects.push_back(d);
        } else {
            throw FormatError("line " + std::to_string(line) + ": unknown key '" +
                              std::string(key) + "'");
        }
    }
    return spec;
}

SyntheticSpec parse_synthetic_spec(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_synthetic_spec(in);
}

std::string format_synthetic_spec(const SyntheticSpec& spec) {
    std::ostringstream out;
    out.precision(17);
    out << "motif = " << motif_name(spec.motif) << '\n'
        << "period_rows = " << spec.period.rows << '\n'
        << "period_cols = " << spec.period.cols << '\n'
        << "repeat_rows = " << spec.repeat_rows << '\n'
        << "repeat_cols = " << spec.repeat_cols << '\n'
        << "margin_rows = " << spec.margin_rows << '\n'
        << "margin_cols = " << spec.margin_cols << '\n'
        << "noise = " << spec.noise << '\n'
        << "seed = " << spec.seed << '\n';
    for (const DefectSpec& d : spec.defects) {
        out << "defect = " << defect_shape_name(d.shape) << ' ' << d.row << ' ' << d.col << ' '
            << d.size << ' ' << d.delta << '\n';
    }
    return out.str();
}

} // namespace gi
